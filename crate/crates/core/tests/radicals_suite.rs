mod common;

use common::ip;
use galois_core::constructions::{roots_split, solve_by_radicals, LevelTag};

#[test]
fn radical_towers() {
    for (coeffs, total) in [
        (vec![1, 1, 1], 2usize),
        (vec![-2, 0, 0, 1], 6),
        (vec![-2, 0, 0, 0, 0, 1], 20),
        (vec![1, 1, 0, 0, 1], 48),
        (vec![1, 0, 0, 0, 1], 4),
    ] {
        let f = ip(&coeffs);
        let t0 = std::time::Instant::now();
        let (rt, roots) = solve_by_radicals(&f).unwrap();
        eprintln!("{coeffs:?}: {:?} {:?} {:?}\n{}", rt.field().degrees(), rt.tags, t0.elapsed(), rt.render());
        assert_eq!(rt.degree(), total, "{coeffs:?}");
        assert!(rt.check_structure());
        assert!(roots_split(rt.field(), &f.to_rat(), &roots));
    }
}

#[test]
fn x3_minus_2_levels() {
    let (rt, _) = solve_by_radicals(&ip(&[-2, 0, 0, 1])).unwrap();
    assert_eq!(rt.tags, vec![LevelTag::Unity { m: 3 }, LevelTag::Radical { d: 3 }]);
    let k = rt.field();
    assert_eq!(k.render_poly_at(0, &k.levels[0].poly, "x"), "x^2 + 3/4");
}
