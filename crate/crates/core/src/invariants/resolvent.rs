use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bounds::{invariant_bound, powersum_bound, root_bound, with_slack};
use super::invariant::Invariant;
use super::tschirn::{evaluations, Tschirn};
use crate::arith::{Rat, RatPoly};
use crate::error::{Error, Result};
use crate::local::{GaloisData, LocalElem, LocalField};
use crate::perm::{right_transversal, PermGroup};

/// Precision doublings allowed after the bound-derived precision fails.
pub const PRECISION_RETRIES: u32 = 4;

/// Monic polynomial with the given power sums p_1..p_m of its roots.
pub fn newton_from_power_sums(ps: &[Rat]) -> RatPoly {
    let m = ps.len();
    let mut e: Vec<Rat> = vec![Rat::one()];
    for k in 1..=m {
        let mut acc = Rat::zero();
        for i in 1..=k {
            let term = &e[k - i] * &ps[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / Rat::from_integer(BigInt::from(k)));
    }
    // prod (y - c) = sum_k (-1)^k e_k y^{m-k}
    let mut coeffs = vec![Rat::zero(); m + 1];
    for (k, ek) in e.into_iter().enumerate() {
        coeffs[m - k] = if k % 2 == 0 { ek } else { -ek };
    }
    RatPoly::new(coeffs)
}

/// p_1..p_m of local values.
pub fn local_power_sums(local: &LocalField, vals: &[LocalElem]) -> Vec<LocalElem> {
    let m = vals.len();
    let mut pw: Vec<LocalElem> = vals.to_vec();
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        if j > 0 {
            for (p, v) in pw.iter_mut().zip(vals) {
                *p = local.mul(p, v);
            }
        }
        out.push(pw.iter().fold(local.zero(), |a, b| local.add(&a, b)));
    }
    out
}

/// Bound M on every evaluation of I^t(T(r)) over the data's roots.
pub fn evaluation_bound(data: &GaloisData, inv: &Invariant, tr: &Tschirn) -> BigInt {
    let r = data.polys.iter().map(root_bound).max().unwrap_or_else(BigInt::one);
    invariant_bound(inv, tr, &r)
}

/// The resolvent prod_{t in G//H} (y - I^t(T(r))) over Q.
pub fn resolvent(
    data: &GaloisData,
    g: &PermGroup,
    h: &PermGroup,
    inv: &Invariant,
    tr: &Tschirn,
) -> Result<RatPoly> {
    let reps = right_transversal(g, h)?;
    let m = reps.len();
    let bound = with_slack(&powersum_bound(&evaluation_bound(data, inv, tr), m));
    let mut k = data.local.precision_for(&bound);
    let mut last = Error::PrecisionExhausted("resolvent".into());
    for _ in 0..=PRECISION_RETRIES {
        let d = data.ensure_precision(k)?;
        let vals = evaluations(inv, tr, &d, &reps);
        let ps = local_power_sums(&d.local, &vals);
        let ints: Result<Vec<BigInt>> = ps.iter().map(|s| d.local.reconstruct_integer(s, &bound)).collect();
        match ints {
            Ok(v) => {
                let ps: Vec<Rat> = v.into_iter().map(Rat::from_integer).collect();
                return Ok(newton_from_power_sums(&ps));
            }
            Err(e @ (Error::ExceedsBound | Error::NotRational)) => last = e,
            Err(e) => return Err(e),
        }
        k *= 2;
    }
    Err(Error::PrecisionExhausted(format!("resolvent reconstruction: {last}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, IntPoly};

    #[test]
    fn newton_round_trip() {
        // roots 1, 2, -3/2
        let roots = [rat(1), rat(2), crate::arith::rat_frac(-3, 2)];
        let ps: Vec<Rat> = (1..=3)
            .map(|j| roots.iter().map(|r| num_traits::pow(r.clone(), j)).sum())
            .collect();
        let a = &RatPoly::from_i64(&[-1, 1]) * &RatPoly::from_i64(&[-2, 1]);
        let expect = &a * &RatPoly::new(vec![crate::arith::rat_frac(3, 2), rat(1)]);
        assert_eq!(newton_from_power_sums(&ps), expect);
    }

    #[test]
    fn resolvent_of_roots_is_f() {
        let f = IntPoly::from_i64(&[-2, 0, 1]);
        let data = GaloisData::single(&f, None).unwrap();
        let g = PermGroup::symmetric(2);
        let h = PermGroup::trivial(2);
        let r = resolvent(&data, &g, &h, &Invariant::variable(2, 0), &Tschirn::identity()).unwrap();
        assert_eq!(r, f.to_rat());
    }

    #[test]
    fn discriminant_resolvent() {
        let f = IntPoly::from_i64(&[-2, 0, 0, 1]);
        let data = GaloisData::single(&f, None).unwrap();
        let r = resolvent(
            &data,
            &PermGroup::symmetric(3),
            &PermGroup::alternating(3),
            &Invariant::Vandermonde { n: 3 },
            &Tschirn::identity(),
        )
        .unwrap();
        assert_eq!(r, RatPoly::from_i64(&[108, 0, 1]));
    }

    #[test]
    fn trivial_index_is_linear() {
        let f = IntPoly::from_i64(&[-2, 0, 0, 1]);
        let data = GaloisData::single(&f, None).unwrap();
        let g = PermGroup::symmetric(3);
        let inv = crate::invariants::relative_invariant(&g, &g).unwrap();
        let r = resolvent(&data, &g, &g, &inv, &Tschirn::identity()).unwrap();
        assert_eq!(r, RatPoly::from_i64(&[0, 1]));
    }
}
