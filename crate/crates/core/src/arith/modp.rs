//! Polynomials over F_p and root finding over F_{p^d}.
//!
//! Polynomials are `Vec<u64>` lowest degree first with no trailing zeros.
//! Primes must be below 2^32 so products fit a u64.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::poly::IntPoly;

pub type FpPoly = Vec<u64>;

pub fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn reduce(f: &IntPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i] * inv % p;
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for (j, y) in b.iter().enumerate() {
            let k = i - db + j;
            r[k] = (r[k] + p - c * y % p) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => vec![],
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|c| c * inv % p).collect()
        }
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn derivative(a: &[u64], p: u64) -> FpPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// base^e mod m over F_p.
pub fn pow_rem(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> FpPoly {
    let mut result = rem(&[1], m, p);
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        result = rem(&mul(&result, &result, p), m, p);
        if e.bit(i) {
            result = rem(&mul(&result, &b, p), m, p);
        }
    }
    result
}

pub fn is_squarefree(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    if f.len() <= 2 {
        return !f.is_empty();
    }
    let d = derivative(&f, p);
    if d.is_empty() {
        return false;
    }
    gcd(&f, &d, p).len() == 1
}

/// Degrees of the irreducible factors of a squarefree f, sorted ascending,
/// by distinct-degree factorization.
pub fn factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
    let mut g = monic(&trim(f.to_vec()), p);
    let mut out = vec![];
    let x = vec![0, 1];
    let pb = BigUint::from(p);
    let mut h = x.clone();
    let mut d = 1;
    while g.len() > 1 {
        if 2 * d > g.len() - 1 {
            out.push(g.len() - 1);
            break;
        }
        h = pow_rem(&h, &pb, &g, p);
        let t = gcd(&g, &sub(&h, &x, p), p);
        let k = t.len() - 1;
        if k > 0 {
            for _ in 0..k / d {
                out.push(d);
            }
            g = divrem(&g, &t, p).0;
            h = rem(&h, &g, p);
        }
        d += 1;
    }
    out.sort();
    out
}

pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    f.len() >= 2 && is_squarefree(&f, p) && factor_degrees(&f, p).len() == 1
}

/// The lexicographically least monic irreducible polynomial of degree d over F_p,
/// comparing coefficient vectors from the constant term upwards.
pub fn least_irreducible(p: u64, d: usize) -> FpPoly {
    assert!(d >= 1);
    if d == 1 {
        return vec![0, 1];
    }
    let total = (p as u128).pow(d as u32);
    // Enumerate lower coefficients in lexicographic order: constant term most significant.
    for idx in 0..total {
        let mut digits = vec![0u64; d];
        let mut v = idx;
        for k in (0..d).rev() {
            digits[k] = (v % p as u128) as u64;
            v /= p as u128;
        }
        let mut f = digits;
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// The finite field F_p[t]/(m) with m monic irreducible of degree d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    pub p: u64,
    pub modulus: FpPoly,
}

pub type FqElem = Vec<u64>;
pub type FqPoly = Vec<FqElem>;

impl Fq {
    pub fn new(p: u64, d: usize) -> Fq {
        Fq {
            p,
            modulus: least_irreducible(p, d),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.p), self.degree())
    }

    pub fn zero(&self) -> FqElem {
        vec![]
    }

    pub fn one(&self) -> FqElem {
        vec![1]
    }

    pub fn from_u64(&self, c: u64) -> FqElem {
        trim(vec![c % self.p])
    }

    /// The i-th element in a fixed enumeration (base-p digits as coordinates).
    pub fn element(&self, mut i: u128) -> FqElem {
        let mut v = vec![];
        for _ in 0..self.degree() {
            v.push((i % self.p as u128) as u64);
            i /= self.p as u128;
        }
        trim(v)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> FqElem {
        add(a, b, self.p)
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> FqElem {
        sub(a, b, self.p)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> FqElem {
        rem(&mul(a, b, self.p), &self.modulus, self.p)
    }

    pub fn inv(&self, a: &[u64]) -> FqElem {
        assert!(!a.is_empty(), "inverse of zero in F_q");
        let e = self.order() - BigUint::from(2u32);
        pow_rem(a, &e, &self.modulus, self.p)
    }

    fn poly_trim(mut a: FqPoly) -> FqPoly {
        while a.last().is_some_and(|c| c.is_empty()) {
            a.pop();
        }
        a
    }

    pub fn poly_from_fp(&self, f: &[u64]) -> FqPoly {
        Self::poly_trim(f.iter().map(|&c| self.from_u64(c)).collect())
    }

    pub fn poly_mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![vec![]; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let t = self.mul(x, y);
                out[i + j] = self.add(&out[i + j], &t);
            }
        }
        Self::poly_trim(out)
    }

    pub fn poly_divrem(&self, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
        let b = Self::poly_trim(b.clone());
        assert!(!b.is_empty());
        let mut r = Self::poly_trim(a.clone());
        if r.len() < b.len() {
            return (vec![], r);
        }
        let db = b.len() - 1;
        let inv = self.inv(&b[db]);
        let mut q = vec![vec![]; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = self.mul(&r[i], &inv);
            if c.is_empty() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let k = i - db + j;
                r[k] = self.sub(&r[k], &self.mul(&c, y));
            }
            q[i - db] = c;
        }
        r.truncate(db);
        (Self::poly_trim(q), Self::poly_trim(r))
    }

    pub fn poly_monic(&self, a: &FqPoly) -> FqPoly {
        match a.last() {
            None => vec![],
            Some(l) => {
                let inv = self.inv(l);
                a.iter().map(|c| self.mul(c, &inv)).collect()
            }
        }
    }

    pub fn poly_gcd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (mut a, mut b) = (Self::poly_trim(a.clone()), Self::poly_trim(b.clone()));
        while !b.is_empty() {
            let r = self.poly_divrem(&a, &b).1;
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    fn poly_pow_rem(&self, base: &FqPoly, e: &BigUint, m: &FqPoly) -> FqPoly {
        let mut result = self.poly_divrem(&vec![self.one()], m).1;
        let b = self.poly_divrem(base, m).1;
        for i in (0..e.bits()).rev() {
            result = self.poly_divrem(&self.poly_mul(&result, &result), m).1;
            if e.bit(i) {
                result = self.poly_divrem(&self.poly_mul(&result, &b), m).1;
            }
        }
        result
    }

    /// All roots of a squarefree f that splits into linear factors over F_q,
    /// sorted lexicographically by coordinate vector.
    pub fn roots(&self, f: &FqPoly) -> Vec<FqElem> {
        let f = self.poly_monic(&Self::poly_trim(f.clone()));
        let mut out = vec![];
        self.split(f, &mut out);
        for r in out.iter_mut() {
            r.resize(self.degree(), 0);
        }
        out.sort();
        out.iter().map(|r| trim(r.clone())).collect()
    }

    fn split(&self, f: FqPoly, out: &mut Vec<FqElem>) {
        let n = f.len().saturating_sub(1);
        if n == 0 {
            return;
        }
        if n == 1 {
            // x + c0 with monic f
            out.push(self.sub(&[], &f[0]));
            return;
        }
        let e: BigUint = (self.order() - BigUint::one()) >> 1;
        let q = self.order().to_u128().unwrap_or(u128::MAX);
        let mut c: u128 = 0;
        loop {
            assert!(c < q, "polynomial does not split into distinct linear factors");
            let shift = vec![self.element(c), self.one()];
            let h = self.poly_pow_rem(&shift, &e, &f);
            let mut hm1 = h.clone();
            if hm1.is_empty() {
                hm1.push(vec![]);
            }
            hm1[0] = self.sub(&hm1[0], &self.one());
            let g = self.poly_gcd(&f, &Self::poly_trim(hm1));
            let dg = g.len().saturating_sub(1);
            if dg > 0 && dg < n {
                let other = self.poly_monic(&self.poly_divrem(&f, &g).0);
                self.split(g, out);
                self.split(other, out);
                return;
            }
            c += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_degree_patterns() {
        // x^2 - 2 mod 7 splits, mod 5 is irreducible
        assert_eq!(factor_degrees(&[5, 0, 1], 7), vec![1, 1]);
        assert_eq!(factor_degrees(&[3, 0, 1], 5), vec![2]);
        // x^3 - 2 mod 31 splits completely
        assert_eq!(factor_degrees(&[29, 0, 0, 1], 31), vec![1, 1, 1]);
        // x^4 + 1 mod 3: two quadratics
        assert_eq!(factor_degrees(&[1, 0, 0, 0, 1], 3), vec![2, 2]);
    }

    #[test]
    fn squarefree_mod_p() {
        assert!(is_squarefree(&[2, 0, 1], 7));
        // (x-1)^2 = x^2 - 2x + 1
        assert!(!is_squarefree(&[1, 5, 1], 7));
        // x^2 - 2 mod 2 = x^2 has derivative 0
        assert!(!is_squarefree(&[0, 0, 1], 2));
    }

    #[test]
    fn least_irreducible_small() {
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(5, 2), vec![1, 1, 1]);
        assert!(is_irreducible(&least_irreducible(7, 3), 7));
    }

    #[test]
    fn roots_over_extension() {
        let fq = Fq::new(5, 2);
        // x^2 - 2 over F_25
        let f = fq.poly_from_fp(&[3, 0, 1]);
        let r = fq.roots(&f);
        assert_eq!(r.len(), 2);
        for x in &r {
            let sq = fq.mul(x, x);
            assert_eq!(fq.sub(&sq, &[2]), Vec::<u64>::new());
        }
        let fp = Fq::new(31, 1);
        let r = fp.roots(&fp.poly_from_fp(&[29, 0, 0, 1]));
        assert_eq!(r.len(), 3);
        assert!(r.contains(&vec![4]));
    }

    #[test]
    fn field_inverse() {
        let fq = Fq::new(7, 3);
        for i in 1..50u128 {
            let a = fq.element(i);
            assert_eq!(fq.mul(&a, &fq.inv(&a)), vec![1]);
        }
    }
}
