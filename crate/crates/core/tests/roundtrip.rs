mod common;

use std::sync::OnceLock;

use common::ip;
use galois_core::arith::Rat;
use galois_core::constructions::{minimal_chain, solve_by_radicals, splitting_tower, SplittingTower};
use galois_core::engine::galois_group;
use galois_core::towers::{dual_basis_local, TowerElement};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

/// Splitting towers of absolute degree at most 12, plus a radical tower with changed generators.
fn towers() -> &'static Vec<(String, SplittingTower)> {
    static T: OnceLock<Vec<(String, SplittingTower)>> = OnceLock::new();
    T.get_or_init(|| {
        let mut out = vec![];
        for c in [
            vec![-2, 0, 1],
            vec![-1, -3, 0, 1],
            vec![-2, 0, 0, 1],
            vec![1, 0, 0, 0, 1],
            vec![-2, 0, 0, 0, 1],
            vec![12, 8, 0, 0, 1],
            vec![1, 3, -3, -4, 1, 1],
        ] {
            let (g, data) = galois_group(&ip(&c)).unwrap();
            assert!(g.order() <= 12);
            let t = splitting_tower(&data, &minimal_chain(&data).unwrap()).unwrap();
            out.push((format!("{c:?}"), t));
        }
        let (rt, _) = solve_by_radicals(&ip(&[-2, 0, 0, 1])).unwrap();
        out.push(("radical x^3-2".into(), rt.tower));
        out
    })
}

/// Embed s*e, reconstruct, and divide by s, where s clears the generator denominators.
fn round_trip(t: &SplittingTower, coords: &[i64]) -> (TowerElement, TowerElement, bool) {
    let k = &t.field;
    let nb = k.absolute_degree();
    let c: Vec<Rat> = coords.iter().take(nb).map(|&x| Rat::from_integer(x.into())).collect();
    let e = k.from_flat(k.height(), &c);
    let mut s = BigInt::one();
    for (r, m) in t.ctx.recipes.iter().zip(k.degrees()) {
        s *= r.denominator.pow(m as u32 - 1);
    }
    let se = k.scale_at(k.height(), &e, &Rat::from_integer(s.clone()));
    let bound = t.ctx.element_bound(&se);
    let data = t.data.ensure_precision(t.ctx.precision_for(&t.data.local, &bound)).unwrap();
    let dual = dual_basis_local(k, &data, &t.ctx).unwrap();
    let conj = dual.embed(k, &se).unwrap();
    let back = dual.reconstruct(k, &conj, &bound).unwrap();
    let back = k.scale_at(k.height(), &back, &Rat::new(BigInt::one(), s));
    (e, back, dual.check_identity(k))
}

#[test]
fn dual_identity_holds_for_every_tower() {
    for (name, t) in towers() {
        assert!(t.field.absolute_degree() <= 12, "{name}");
        let coords: Vec<i64> = (0..12).map(|i| 3 - i).collect();
        let (e, back, ok) = round_trip(t, &coords);
        assert!(ok, "{name}");
        assert_eq!(e, back, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]
    #[test]
    fn random_elements_survive(idx in 0usize..8, coords in proptest::collection::vec(-50i64..50, 12)) {
        let (_, t) = &towers()[idx];
        let (e, back, _) = round_trip(t, &coords);
        prop_assert_eq!(e, back);
    }
}
