use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::invariant::Invariant;
use crate::arith::IntPoly;
use crate::error::{Error, Result};
use crate::local::{GaloisData, LocalElem};
use crate::perm::Perm;

/// Candidates tried before giving up on separation.
pub const TSCHIRN_CAP: usize = 64;

const HEAD: &[&[i64]] = &[
    &[0, 1],
    &[1, 1],
    &[-1, 1],
    &[0, 0, 1],
    &[0, 1, 1],
    &[1, -1, 2],
];

/// Base-5 digits of j over {0, 1, -1, 2, -2} below a leading 1, degree at least 2.
fn generated(mut j: usize) -> Vec<i64> {
    let digits = [0i64, 1, -1, 2, -2];
    let mut c = vec![];
    while j > 0 {
        c.push(digits[j % 5]);
        j /= 5;
    }
    let deg = c.len().max(2);
    c.resize(deg, 0);
    c.push(1);
    c
}

/// A substitution x -> T(x) applied to every root, with its index in the fixed sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tschirn {
    pub index: usize,
    pub poly: IntPoly,
}

impl Tschirn {
    pub fn identity() -> Tschirn {
        Tschirn::nth(0)
    }

    /// The i-th candidate: a fixed head, then the generated tail without repeats.
    pub fn nth(index: usize) -> Tschirn {
        let poly = if index < HEAD.len() {
            IntPoly::from_i64(HEAD[index])
        } else {
            let mut left = index - HEAD.len();
            let mut j = 1;
            loop {
                let c = generated(j);
                j += 1;
                if HEAD.contains(&c.as_slice()) {
                    continue;
                }
                if left == 0 {
                    break IntPoly::from_i64(&c);
                }
                left -= 1;
            }
        };
        Tschirn { index, poly }
    }

    pub fn apply(&self, data: &GaloisData) -> Vec<LocalElem> {
        data.roots
            .iter()
            .map(|r| data.local.eval_int(&self.poly, r))
            .collect()
    }

    /// |T|(R) = sum |t_i| R^i.
    pub fn magnitude_bound(&self, r: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.poly.coeffs().iter().rev() {
            acc = acc * r + c.abs();
        }
        acc
    }
}

/// Values of I^t at the transformed roots, one per permutation.
pub fn evaluations(inv: &Invariant, tr: &Tschirn, data: &GaloisData, reps: &[Perm]) -> Vec<LocalElem> {
    let v = tr.apply(data);
    reps.iter().map(|t| inv.eval_at(&data.local, &v, t)).collect()
}

/// Value of I^s(T(r_1), ..., T(r_n)).
pub fn evaluate(inv: &Invariant, tr: &Tschirn, data: &GaloisData, s: &Perm) -> LocalElem {
    inv.eval_at(&data.local, &tr.apply(data), s)
}

fn pairwise_distinct(v: &[LocalElem]) -> bool {
    let mut s: Vec<&LocalElem> = v.iter().collect();
    s.sort();
    s.windows(2).all(|w| w[0] != w[1])
}

/// First T in the sequence, starting at `from`, giving pairwise distinct evaluations.
pub fn tschirnhausen_distinct_from(
    data: &GaloisData,
    inv: &Invariant,
    reps: &[Perm],
    from: usize,
) -> Result<Tschirn> {
    let n = data.degree();
    let mut tried = 0;
    let mut i = from;
    while tried < TSCHIRN_CAP {
        let t = Tschirn::nth(i);
        i += 1;
        if t.poly.deg() >= n.max(2) {
            continue;
        }
        tried += 1;
        if pairwise_distinct(&evaluations(inv, &t, data, reps)) {
            return Ok(t);
        }
        if i > 10_000 {
            break;
        }
    }
    Err(Error::Separation)
}

pub fn tschirnhausen_distinct(data: &GaloisData, inv: &Invariant, reps: &[Perm]) -> Result<Tschirn> {
    tschirnhausen_distinct_from(data, inv, reps, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{right_transversal, PermGroup};

    #[test]
    fn sequence_is_fixed() {
        assert_eq!(Tschirn::nth(0).poly, IntPoly::from_i64(&[0, 1]));
        assert_eq!(Tschirn::nth(5).poly, IntPoly::from_i64(&[1, -1, 2]));
        let a: Vec<IntPoly> = (0..30).map(|i| Tschirn::nth(i).poly).collect();
        let mut b = a.clone();
        b.sort_by_key(|p| format!("{p:?}"));
        b.dedup();
        assert_eq!(b.len(), a.len());
    }

    #[test]
    fn single_coset_uses_identity() {
        let data = GaloisData::single(&IntPoly::from_i64(&[1, 0, 0, 0, 1]), None).unwrap();
        let id = Perm::identity(4);
        let t = tschirnhausen_distinct(&data, &Invariant::variable(4, 0), &[id]).unwrap();
        assert_eq!(t.index, 0);
    }

    #[test]
    fn separates_quartic_pairs() {
        // x1 x2 + x3 x4 over S4 has three values, and the choice is reproducible
        let data = GaloisData::single(&IntPoly::from_i64(&[1, 0, 0, 0, 1]), None)
            .unwrap()
            .raise_precision(20)
            .unwrap();
        let g = PermGroup::symmetric(4);
        let h = PermGroup::parse(4, "(1,2);(1,3)(2,4)").unwrap();
        let reps = right_transversal(&g, &h).unwrap();
        let inv = Invariant::from_terms(
            4,
            vec![
                (BigInt::from(1), vec![1, 1, 0, 0]),
                (BigInt::from(1), vec![0, 0, 1, 1]),
            ],
        );
        let t = tschirnhausen_distinct(&data, &inv, &reps).unwrap();
        assert!(pairwise_distinct(&evaluations(&inv, &t, &data, &reps)));
        let again = tschirnhausen_distinct(&data, &inv, &reps).unwrap();
        assert_eq!(t, again);
    }
}
