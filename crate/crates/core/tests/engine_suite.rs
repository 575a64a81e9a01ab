mod common;

use common::{ip, oracle_order, suite};
use galois_core::engine::{frobenius_cycle_type, galois_group, galois_group_product};
use galois_core::perm::PermGroup;

#[test]
fn suite_orders_match_oracles() {
    for (name, f) in suite() {
        let (g, data) = galois_group(&f).unwrap();
        assert_eq!(g.order(), oracle_order(&f), "{name}");
        assert!(g.is_transitive(), "{name}");
        assert!(data.check_roots());
    }
}

#[test]
fn klein_group_for_x4_plus_1() {
    let (g, _) = galois_group(&ip(&[1, 0, 0, 0, 1])).unwrap();
    assert_eq!(g.order(), 4);
    assert!(g.elements().iter().all(|e| e.order() <= 2));
}

#[test]
fn product_examples() {
    let (g, _) = galois_group_product(&[ip(&[-2, 0, 1]), ip(&[-3, 0, 1])]).unwrap();
    assert_eq!(g.order(), 4);
    let (g, _) = galois_group_product(&[ip(&[-2, 0, 1]), ip(&[-8, 0, 1])]).unwrap();
    assert_eq!(g.order(), 2);
    let (g, _) = galois_group_product(&[ip(&[-2, 0, 0, 1]), ip(&[1, 1, 1])]).unwrap();
    assert_eq!(g.order(), 6);
    assert!(!g.is_transitive());
}

#[test]
fn reducible_input_is_intransitive() {
    // (x^2 - 2)(x^3 - 2)
    let f = ip(&[-2, 0, 1]).mul(&ip(&[-2, 0, 0, 1]));
    let (g, _) = galois_group(&f).unwrap();
    assert_eq!(g.order(), 12);
    assert_eq!(g.orbits().len(), 2);
}

#[test]
fn frobenius_examples() {
    assert_eq!(frobenius_cycle_type(&ip(&[-2, 0, 1]), 7).unwrap(), vec![1, 1]);
    assert_eq!(frobenius_cycle_type(&ip(&[-2, 0, 1]), 5).unwrap(), vec![2]);
    assert_eq!(frobenius_cycle_type(&ip(&[-2, 0, 0, 1]), 31).unwrap(), vec![1, 1, 1]);
    assert!(frobenius_cycle_type(&ip(&[-2, 0, 1]), 2).is_err());
}

#[test]
fn discriminant_agrees_with_alternating_containment() {
    for (name, f) in suite() {
        let (g, _) = galois_group(&f).unwrap();
        let n = f.deg();
        let sq = galois_core::arith::is_rational_square(&galois_core::arith::discriminant(&f.to_rat()));
        assert_eq!(g.is_subgroup_of(&PermGroup::alternating(n)), sq, "{name}");
    }
}

#[test]
fn frobenius_types_occur_in_group() {
    for (name, f) in suite() {
        let (g, _) = galois_group(&f).unwrap();
        let types: std::collections::HashSet<Vec<usize>> = g.elements().iter().map(|e| e.cycle_type()).collect();
        for (p, t) in common::cycle_types(&f, 20) {
            assert!(types.contains(&t), "{name} at {p}: {t:?}");
        }
    }
}
