//! Size bounds on complex absolute values, used to pick p-adic precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::invariant::Invariant;
use super::tschirn::Tschirn;
use crate::arith::IntPoly;

/// Multiplier applied to every bound before deriving a precision.
pub const BOUND_SLACK: u32 = 2;

/// Cauchy bound 1 + max |a_i| for a monic f (all roots have modulus below it).
pub fn root_bound(f: &IntPoly) -> BigInt {
    let n = f.deg();
    let m = f.coeffs()[..n]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    m + 1
}

/// Bound on |I^t(T(r_1), ..., T(r_n))| given |r_i| <= R.
pub fn invariant_bound(inv: &Invariant, tr: &Tschirn, r: &BigInt) -> BigInt {
    inv.magnitude_bound(&tr.magnitude_bound(r))
}

/// Bound on the first m power sums of m values of modulus at most M.
pub fn powersum_bound(m_vals: &BigInt, m: usize) -> BigInt {
    BigInt::from(m) * num_traits::pow(m_vals.clone().max(BigInt::one()), m)
}

/// Hadamard-style bound on the dual basis determinant for a tower with
/// absolute degree `deg`, built from levels with coset counts `t[j]` and
/// evaluation bounds `m[j]` (j = 1..k-1). The discriminant divisor is taken as 1.
pub fn hadamard_dual_bound(deg: usize, t: &[usize], m: &[BigInt]) -> BigInt {
    assert_eq!(t.len(), m.len());
    let d = BigInt::from(deg);
    let dm1 = deg.saturating_sub(1);
    // ceil((deg-1)^{(deg-1)/2}) = ceil(sqrt((deg-1)^{deg-1}))
    let full = num_traits::pow(BigInt::from(dm1), dm1);
    let mut root = full.sqrt();
    if &root * &root < full {
        root += 1;
    }
    let mut acc = d * 2 * root;
    for j in 0..m.len() {
        let e: usize = t[j..].iter().product();
        acc *= num_traits::pow(m[j].clone().max(BigInt::one()), e);
    }
    acc
}

/// The bound actually fed to precision choice.
pub fn with_slack(b: &BigInt) -> BigInt {
    b * BOUND_SLACK
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_values() {
        assert_eq!(root_bound(&IntPoly::from_i64(&[-2, 0, 1])), BigInt::from(3));
        let sum = Invariant::from_terms(
            2,
            vec![(BigInt::one(), vec![1, 0]), (BigInt::one(), vec![0, 1])],
        );
        assert_eq!(
            invariant_bound(&sum, &Tschirn::identity(), &BigInt::from(3)),
            BigInt::from(6)
        );
        assert_eq!(powersum_bound(&BigInt::from(6), 2), BigInt::from(72));
    }

    #[test]
    fn hadamard_monotone() {
        let a = hadamard_dual_bound(6, &[3, 2], &[BigInt::from(3), BigInt::from(5)]);
        let b = hadamard_dual_bound(6, &[3, 2], &[BigInt::from(4), BigInt::from(5)]);
        assert!(b > a);
        assert_eq!(hadamard_dual_bound(1, &[], &[]), BigInt::from(2));
    }
}
