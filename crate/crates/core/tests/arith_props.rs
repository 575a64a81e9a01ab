use galois_core::arith::{discriminant, squarefree_part, RatPoly};
use num_traits::Zero;
use proptest::prelude::*;

fn small_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1)
        .prop_map(|c| RatPoly::from_i64(&c))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn nonconstant(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    small_poly(max_deg).prop_filter("degree >= 1", |p| p.deg() >= 1)
}

proptest! {
    #[test]
    fn divrem_round_trip(f in small_poly(6), g in small_poly(6)) {
        let prod = &f * &g;
        let (q, r) = prod.divrem(&g);
        prop_assert!(r.is_zero());
        prop_assert_eq!(q, f);
    }

    #[test]
    fn divrem_identity(a in small_poly(8), b in small_poly(4)) {
        let (q, r) = a.divrem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.deg() < b.deg());
    }

    #[test]
    fn squarefree_ignores_powers(f in nonconstant(3), g in nonconstant(3), k in 2u32..=3) {
        prop_assume!(f.gcd(&g).deg() == 0);
        let lhs = squarefree_part(&(&f.pow(k) * &g));
        let rhs = squarefree_part(&(&f * &g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_vanishes_iff_repeated_root(f in nonconstant(5)) {
        let d = discriminant(&f);
        let repeated = f.gcd(&f.derivative()).deg() > 0;
        prop_assert_eq!(d.is_zero(), repeated);
    }

    #[test]
    fn squared_factor_kills_discriminant(f in nonconstant(3), g in small_poly(2)) {
        let h = &(&f * &f) * &g;
        prop_assert!(discriminant(&h).is_zero());
    }
}
