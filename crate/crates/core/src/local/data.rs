use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::field::{LocalElem, LocalField};
use crate::arith::modp;
use crate::arith::{squarefree_part, IntPoly};
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

/// Upper end of the range in which primes compete on residue degree.
const PRIME_WINDOW: u64 = 200;
const PRIME_SANITY_CAP: u64 = 1_000_000;

/// Prime forced through the `GALOIS_PRIME` environment variable.
pub fn prime_override() -> Option<u64> {
    std::env::var("GALOIS_PRIME").ok()?.trim().parse().ok()
}

fn product(polys: &[IntPoly]) -> IntPoly {
    polys.iter().fold(IntPoly::from_i64(&[1]), |a, b| a.mul(b))
}

/// Residue degree d for p if p is good for the product, else None.
pub fn prime_quality(polys: &[IntPoly], p: u64) -> Option<usize> {
    if p == 2 || !modp::is_prime(p) {
        return None;
    }
    let f = product(polys);
    let pb = BigInt::from(p);
    if (f.leading() % &pb).is_zero() {
        return None;
    }
    let fp = modp::reduce(&f, p);
    if fp.len() != f.coeffs().len() || !modp::is_squarefree(&fp, p) {
        return None;
    }
    let d = modp::factor_degrees(&fp, p)
        .into_iter()
        .fold(1usize, |a, b| a.lcm(&b));
    Some(d)
}

/// A good odd prime p >= p_min and the splitting degree d of the product mod p.
/// Among primes up to 200 the one with least d wins (ties to the smaller prime).
pub fn select_prime(polys: &[IntPoly], p_min: u64) -> Result<(u64, usize)> {
    let mut best: Option<(usize, u64)> = None;
    let mut p = p_min.max(3);
    while p <= PRIME_WINDOW {
        if let Some(d) = prime_quality(polys, p) {
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, p));
            }
        }
        p += 1;
    }
    if let Some((d, p)) = best {
        return Ok((p, d));
    }
    while p < PRIME_SANITY_CAP {
        if let Some(d) = prime_quality(polys, p) {
            return Ok((p, d));
        }
        p += 1;
    }
    Err(Error::NoPrime(PRIME_SANITY_CAP))
}

/// Roots of the monic f in the local field, sorted by residue coordinates and
/// lifted to the field's precision by Newton iteration.
pub fn hensel_roots(f: &IntPoly, local: &LocalField) -> Result<Vec<LocalElem>> {
    let p = local.p;
    let fp = modp::reduce(f, p);
    if !modp::is_squarefree(&fp, p) {
        return Err(Error::NotSquarefree(format!("modulo {p}")));
    }
    let fq = local.residue_field();
    let res = fq.roots(&fq.poly_from_fp(&fp));
    if res.len() != f.deg() {
        return Err(Error::Construction(format!(
            "polynomial does not split over the degree-{} residue field",
            local.degree()
        )));
    }
    res.iter()
        .map(|r| lift_root(f, local, local.from_residue(r), 1))
        .collect()
}

/// Newton iteration from precision `from` to the field's precision.
fn lift_root(f: &IntPoly, local: &LocalField, mut r: LocalElem, from: u32) -> Result<LocalElem> {
    let df = f.derivative();
    let mut prec = from;
    while prec < local.k {
        prec = (2 * prec).min(local.k);
        let step = local.at_precision(prec);
        let fr = step.eval_int(f, &r);
        let dinv = step.inv(&step.eval_int(&df, &r))?;
        r = step.sub(&r, &step.mul(&fr, &dinv));
    }
    Ok(local.truncate(&r, local.k))
}

/// Local splitting data for a squarefree product of monic integral polynomials.
/// Roots are grouped by input polynomial, each group in residue order.
#[derive(Clone, Debug)]
pub struct GaloisData {
    pub polys: Vec<IntPoly>,
    pub local: LocalField,
    pub roots: Vec<LocalElem>,
    pub group: Option<PermGroup>,
}

/// Starting precision before any bound is known.
pub const INITIAL_PRECISION: u32 = 8;

impl GaloisData {
    pub fn new(polys: &[IntPoly], forced_prime: Option<u64>) -> Result<GaloisData> {
        let f = product(polys);
        for g in polys {
            if !g.is_monic() || g.deg() == 0 {
                return Err(Error::NotMonicIntegral);
            }
        }
        if squarefree_part(&f.to_rat()).deg() != f.deg() {
            return Err(Error::NotSquarefree("over Q".into()));
        }
        let n = f.deg() as u64;
        let (p, d) = match forced_prime {
            Some(p) => (p, prime_quality(polys, p).ok_or(Error::NoPrime(p))?),
            None => select_prime(polys, (n + 1).max(11))?,
        };
        let local = LocalField::new(p, d, INITIAL_PRECISION);
        let mut roots = vec![];
        for g in polys {
            roots.extend(hensel_roots(g, &local)?);
        }
        Ok(GaloisData {
            polys: polys.to_vec(),
            local,
            roots,
            group: None,
        })
    }

    pub fn single(f: &IntPoly, forced_prime: Option<u64>) -> Result<GaloisData> {
        Self::new(std::slice::from_ref(f), forced_prime)
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn product(&self) -> IntPoly {
        product(&self.polys)
    }

    /// Index ranges of the root blocks, one per input polynomial.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = vec![];
        let mut start = 0;
        for g in &self.polys {
            out.push(start..start + g.deg());
            start += g.deg();
        }
        out
    }

    /// Same roots to precision p^k_new; each new root reduces to the old one.
    pub fn raise_precision(&self, k_new: u32) -> Result<GaloisData> {
        if k_new <= self.local.k {
            return Ok(self.clone());
        }
        let local = self.local.at_precision(k_new);
        let mut roots = Vec::with_capacity(self.roots.len());
        for (g, range) in self.polys.iter().zip(self.blocks()) {
            for r in &self.roots[range] {
                roots.push(lift_root(g, &local, r.clone(), self.local.k)?);
            }
        }
        Ok(GaloisData {
            polys: self.polys.clone(),
            local,
            roots,
            group: self.group.clone(),
        })
    }

    /// Precision at least k.
    pub fn ensure_precision(&self, k: u32) -> Result<GaloisData> {
        self.raise_precision(k.max(self.local.k))
    }

    /// The Frobenius automorphism as a permutation of the root indices.
    pub fn frobenius(&self) -> Perm {
        let res: Vec<_> = self.roots.iter().map(|r| self.local.residue(r)).collect();
        let images = res
            .iter()
            .map(|r| {
                let img = self.local.residue_frobenius(r);
                res.iter().position(|s| *s == img).expect("Frobenius permutes the roots")
            })
            .collect();
        Perm::from_images(images).unwrap()
    }

    /// Check f(r_i) = 0 mod p^k for all roots and the coefficient-root relations.
    pub fn check_roots(&self) -> bool {
        let l = &self.local;
        for (g, range) in self.polys.iter().zip(self.blocks()) {
            let rs = &self.roots[range];
            if !rs.iter().all(|r| l.is_zero(&l.eval_int(g, r))) {
                return false;
            }
            let n = g.deg();
            let sum = rs.iter().fold(l.zero(), |a, r| l.add(&a, r));
            let prod = rs.iter().fold(l.one(), |a, r| l.mul(&a, r));
            let a0 = if n % 2 == 0 { g.coeff(0) } else { -g.coeff(0) };
            if sum != l.from_int(&-g.coeff(n - 1)) || prod != l.from_int(&a0) {
                return false;
            }
        }
        let distinct: std::collections::HashSet<_> =
            self.roots.iter().map(|r| l.residue(r)).collect();
        distinct.len() == self.roots.len()
    }
}
