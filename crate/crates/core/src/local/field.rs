//! The unramified extension Z_p[t]/(m) truncated at precision p^k.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::modp::{self, Fq, FqElem};
use crate::arith::{IntPoly, Rat, RatPoly};
use crate::error::{Error, Result};

/// Element of the local ring: d coordinates in [0, p^k) on the basis 1, t, ..., t^{d-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalElem(pub Vec<BigInt>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "FieldRepr", into = "FieldRepr")]
pub struct LocalField {
    pub p: u64,
    pub k: u32,
    /// Monic, irreducible mod p, lowest degree first.
    pub modulus: Vec<u64>,
    pk: BigInt,
}

#[derive(Clone, Serialize, Deserialize)]
struct FieldRepr {
    p: u64,
    k: u32,
    modulus: Vec<u64>,
}

impl From<FieldRepr> for LocalField {
    fn from(r: FieldRepr) -> LocalField {
        LocalField::with_modulus(r.p, r.modulus, r.k)
    }
}

impl From<LocalField> for FieldRepr {
    fn from(f: LocalField) -> FieldRepr {
        FieldRepr {
            p: f.p,
            k: f.k,
            modulus: f.modulus,
        }
    }
}

impl LocalField {
    pub fn new(p: u64, d: usize, k: u32) -> LocalField {
        Self::with_modulus(p, modp::least_irreducible(p, d), k)
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>, k: u32) -> LocalField {
        let pk = num_traits::pow(BigInt::from(p), k as usize);
        LocalField { p, k, modulus, pk }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus_power(&self) -> &BigInt {
        &self.pk
    }

    pub fn residue_field(&self) -> Fq {
        Fq {
            p: self.p,
            modulus: self.modulus.clone(),
        }
    }

    pub fn at_precision(&self, k: u32) -> LocalField {
        Self::with_modulus(self.p, self.modulus.clone(), k)
    }

    fn norm(&self, x: BigInt) -> BigInt {
        x.mod_floor(&self.pk)
    }

    pub fn zero(&self) -> LocalElem {
        LocalElem(vec![BigInt::zero(); self.degree()])
    }

    pub fn one(&self) -> LocalElem {
        self.from_int(&BigInt::one())
    }

    pub fn from_int(&self, c: &BigInt) -> LocalElem {
        let mut v = self.zero();
        v.0[0] = self.norm(c.clone());
        v
    }

    pub fn from_i64(&self, c: i64) -> LocalElem {
        self.from_int(&BigInt::from(c))
    }

    /// Embed a rational whose denominator is prime to p.
    pub fn from_rat(&self, c: &Rat) -> Result<LocalElem> {
        let den = self.norm(c.denom().clone());
        if (&den % BigInt::from(self.p)).is_zero() {
            return Err(Error::NotRational);
        }
        let inv = self.int_inverse(&den);
        Ok(self.from_int(&(c.numer() * inv)))
    }

    fn int_inverse(&self, a: &BigInt) -> BigInt {
        let e = a.extended_gcd(&self.pk);
        self.norm(e.x)
    }

    /// Lift of a residue-field element with coordinates in [0, p).
    pub fn from_residue(&self, r: &FqElem) -> LocalElem {
        let mut v = self.zero();
        for (i, c) in r.iter().enumerate() {
            v.0[i] = BigInt::from(*c);
        }
        v
    }

    pub fn residue(&self, a: &LocalElem) -> FqElem {
        let p = BigInt::from(self.p);
        modp::trim(a.0.iter().map(|c| (c % &p).to_u64().unwrap()).collect())
    }

    pub fn add(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        LocalElem(a.0.iter().zip(&b.0).map(|(x, y)| self.norm(x + y)).collect())
    }

    pub fn sub(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        LocalElem(a.0.iter().zip(&b.0).map(|(x, y)| self.norm(x - y)).collect())
    }

    pub fn neg(&self, a: &LocalElem) -> LocalElem {
        LocalElem(a.0.iter().map(|x| self.norm(-x)).collect())
    }

    pub fn scale(&self, a: &LocalElem, c: &BigInt) -> LocalElem {
        LocalElem(a.0.iter().map(|x| self.norm(x * c)).collect())
    }

    pub fn mul(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        let d = self.degree();
        if d == 1 {
            return LocalElem(vec![self.norm(&a.0[0] * &b.0[0])]);
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        // t^d = -(m_0 + m_1 t + ... + m_{d-1} t^{d-1})
        for i in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                if self.modulus[j] != 0 {
                    prod[i - d + j] -= &c * self.modulus[j];
                }
            }
        }
        prod.truncate(d);
        LocalElem(prod.into_iter().map(|x| self.norm(x)).collect())
    }

    pub fn pow(&self, a: &LocalElem, mut e: u64) -> LocalElem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn is_zero(&self, a: &LocalElem) -> bool {
        a.0.iter().all(|c| c.is_zero())
    }

    pub fn is_unit(&self, a: &LocalElem) -> bool {
        !self.residue(a).is_empty()
    }

    /// Inverse of a unit by Newton iteration from the residue-field inverse.
    pub fn inv(&self, a: &LocalElem) -> Result<LocalElem> {
        let r = self.residue(a);
        if r.is_empty() {
            return Err(Error::NotRational);
        }
        let fq = self.residue_field();
        let mut x = self.from_residue(&fq.inv(&r));
        let two = self.from_i64(2);
        let mut prec = 1u32;
        while prec < self.k {
            x = self.mul(&x, &self.sub(&two, &self.mul(a, &x)));
            prec *= 2;
        }
        Ok(x)
    }

    pub fn eval_int(&self, f: &IntPoly, x: &LocalElem) -> LocalElem {
        let mut acc = self.zero();
        for c in f.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.from_int(c));
        }
        acc
    }

    pub fn eval_rat(&self, f: &RatPoly, x: &LocalElem) -> Result<LocalElem> {
        let mut acc = self.zero();
        for c in f.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.from_rat(c)?);
        }
        Ok(acc)
    }

    /// Reduce to a lower precision.
    pub fn truncate(&self, a: &LocalElem, k: u32) -> LocalElem {
        let m = num_traits::pow(BigInt::from(self.p), k as usize);
        LocalElem(a.0.iter().map(|c| c.mod_floor(&m)).collect())
    }

    /// Balanced representative of an integer residue, in (-p^k/2, p^k/2].
    pub fn balanced(&self, x: &BigInt) -> BigInt {
        let x = self.norm(x.clone());
        if &x * 2 > self.pk {
            x - &self.pk
        } else {
            x
        }
    }

    /// The exact integer w with |w| <= bound represented by v.
    pub fn reconstruct_integer(&self, v: &LocalElem, bound: &BigInt) -> Result<BigInt> {
        if v.0[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotRational);
        }
        if self.pk <= bound * 2 {
            return Err(Error::PrecisionExhausted(format!(
                "p^k = {}^{} does not exceed twice the bound",
                self.p, self.k
            )));
        }
        let w = self.balanced(&v.0[0]);
        if w.abs() > *bound {
            return Err(Error::ExceedsBound);
        }
        Ok(w)
    }

    /// Smallest k with p^k > 2 * bound.
    pub fn precision_for(&self, bound: &BigInt) -> u32 {
        let target = bound * 2;
        let p = BigInt::from(self.p);
        let mut k = 1u32;
        let mut pk = p.clone();
        while pk <= target {
            pk *= &p;
            k += 1;
        }
        k
    }

    /// Frobenius x -> x^p on the residue field, as a map on residues.
    pub fn residue_frobenius(&self, r: &FqElem) -> FqElem {
        modp::pow_rem(r, &BigUint::from(self.p), &self.modulus, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_lift_examples() {
        let f = LocalField::new(7, 1, 2);
        let b = BigInt::from(5);
        assert_eq!(f.reconstruct_integer(&f.from_i64(45), &b).unwrap(), BigInt::from(-4));
        assert_eq!(f.reconstruct_integer(&f.from_i64(3), &b).unwrap(), BigInt::from(3));
        assert!(matches!(
            f.reconstruct_integer(&f.from_i64(20), &b),
            Err(Error::ExceedsBound)
        ));
    }

    #[test]
    fn non_rational_rejected() {
        let f = LocalField::new(5, 2, 3);
        let t = LocalElem(vec![BigInt::zero(), BigInt::one()]);
        assert!(matches!(
            f.reconstruct_integer(&t, &BigInt::from(3)),
            Err(Error::NotRational)
        ));
    }

    #[test]
    fn inverse_and_rationals() {
        let f = LocalField::new(11, 3, 10);
        let a = LocalElem(vec![BigInt::from(3), BigInt::from(7), BigInt::from(1)]);
        let ai = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &ai), f.one());
        let h = f.from_rat(&crate::arith::rat_frac(1, 2)).unwrap();
        assert_eq!(f.mul(&h, &f.from_i64(2)), f.one());
    }
}
