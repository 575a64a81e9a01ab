//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons, wall-clock limits.

mod common;

use std::time::{Duration, Instant};

use common::{cycle_types, ip, oracle_order, same_square_class, suite};
use galois_core::arith::{discriminant, Rat, RatPoly};
use galois_core::constructions::{
    express_roots, fixed_field, minimal_chain, minimal_splitting_tower, roots_split, solve_by_radicals,
    splitting_tower, SplittingTower,
};
use galois_core::engine::galois_group;
use galois_core::local::select_prime;
use galois_core::perm::lattice::subgroups_of_order;
use galois_core::perm::{right_transversal, Perm, PermGroup, ORDER_CAP};
use galois_core::towers::dual_basis_local;
use num_bigint::BigInt;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn group_facts() -> Outcome {
    let g6 = PermGroup::parse(6, "(2,3)(5,6);(1,2)(4,5);(1,4)(2,5)(3,6)").map_err(|e| e.to_string())?;
    let g9 = PermGroup::parse(9, "(2,7)(4,8)(6,9);(2,4)(3,5)(7,8);(1,2)(3,9)(4,5)(6,7)").map_err(|e| e.to_string())?;
    let h = PermGroup::parse(
        18,
        "(11,15)(12,17)(13,14);\
         (1,7,6)(2,5,4)(3,9,8)(10,16,18)(11,13,17)(12,15,14);\
         (2,9)(3,4)(5,8);\
         (1,5,8)(2,9,6)(3,7,4);\
         (2,4)(3,9)(6,7)(12,14)(13,17)(16,18);\
         (10,11,15)(12,18,17)(13,14,16)",
    )
    .map_err(|e| e.to_string())?;
    check(g6.order() == 12, format!("six points: {}", g6.order()))?;
    check(g9.order() == 36, format!("nine points: {}", g9.order()))?;
    check(h.order() == 216, format!("eighteen points: {}", h.order()))?;
    let proj = |lo: usize| {
        let gens = h
            .generators()
            .iter()
            .map(|g| Perm::from_images((lo..lo + 9).map(|i| g.apply(i) - lo).collect()).unwrap())
            .collect();
        PermGroup::new(9, gens).unwrap()
    };
    let (p1, p2) = (proj(0), proj(9));
    let shift: Vec<usize> = (9..18).collect();
    let mut gens: Vec<Perm> = p1.generators().iter().map(|p| p.extend(18)).collect();
    gens.extend(p2.generators().iter().map(|p| p.relabel(&shift, 18)));
    let big = PermGroup::new(18, gens).map_err(|e| e.to_string())?;
    check(big.order() == 36 * 36 && h.is_subgroup_of(&big), "product of projections")?;
    let index = right_transversal(&big, &h).map_err(|e| e.to_string())?.len();
    check(index == 6, format!("index {index}"))?;
    Ok("orders 12, 36, 216; index 6".into())
}

fn engine_suite() -> Outcome {
    let s = suite();
    for (name, f) in &s {
        let (g, _) = galois_group(f).map_err(|e| format!("{name}: {e}"))?;
        let want = oracle_order(f);
        check(g.order() == want, format!("{name}: engine {} oracle {want}", g.order()))?;
    }
    Ok(format!("{} polynomials agree with the oracles", s.len()))
}

fn splitting_towers() -> Outcome {
    let s = suite();
    for (name, f) in &s {
        let (g, data) = galois_group(f).map_err(|e| format!("{name}: {e}"))?;
        let (t, _) = minimal_splitting_tower(&data).map_err(|e| format!("{name}: {e}"))?;
        check(t.field.absolute_degree() as u128 == g.order(), format!("{name}: degree {:?}", t.field.degrees()))?;
        let roots = express_roots(&t).map_err(|e| format!("{name}: {e}"))?;
        check(roots.len() == f.deg() && roots_split(&t.field, &f.to_rat(), &roots), format!("{name}: roots"))?;
    }
    Ok(format!("{} towers of degree |G| with all roots distinct and exact", s.len()))
}

/// Square class of the field a quadratic defines, via b^2 - 4c.
fn quad_class(g: &RatPoly) -> Rat {
    let (b, c) = (g.coeff(1), g.coeff(0));
    &b * &b - Rat::from_integer(4.into()) * c
}

fn fixed_fields() -> Outcome {
    let (g, data) = galois_group(&ip(&[1, 0, 0, 0, 1])).map_err(|e| e.to_string())?;
    let mut classes = vec![];
    for u in subgroups_of_order(&g, 2, ORDER_CAP).map_err(|e| e.to_string())? {
        let q = fixed_field(&data, &u).map_err(|e| e.to_string())?;
        check(q.deg() == 2, format!("degree {}", q.deg()))?;
        classes.push(quad_class(&q));
    }
    check(classes.len() == 3, format!("{} index-2 fields", classes.len()))?;
    for t in [-1, 2, -2] {
        let t = Rat::from_integer(t.into());
        let hits = classes.iter().filter(|c| same_square_class(c, &t)).count();
        check(hits == 1, format!("class {t} hit {hits} times"))?;
    }
    let f = ip(&[-2, 0, 0, 1]);
    let (g, data) = galois_group(&f).map_err(|e| e.to_string())?;
    let q = fixed_field(&data, &g.intersection(&PermGroup::alternating(3))).map_err(|e| e.to_string())?;
    let disc = discriminant(&f.to_rat());
    check(disc == Rat::from_integer((-108).into()), "disc")?;
    check(q.deg() == 2 && same_square_class(&quad_class(&q), &disc), format!("A3 field {q}"))?;
    Ok("x^4+1 classes {-1, 2, -2}; x^3-2 class of -108".into())
}

fn round_trip() -> Outcome {
    let mut towers: Vec<SplittingTower> = vec![];
    for c in [
        vec![-2, 0, 1],
        vec![-1, -3, 0, 1],
        vec![-2, 0, 0, 1],
        vec![1, 0, 0, 0, 1],
        vec![-2, 0, 0, 0, 1],
        vec![12, 8, 0, 0, 1],
        vec![1, 0, -10, 0, 1],
        vec![1, 3, -3, -4, 1, 1],
    ] {
        let (_, data) = galois_group(&ip(&c)).map_err(|e| e.to_string())?;
        let plan = minimal_chain(&data).map_err(|e| e.to_string())?;
        towers.push(splitting_tower(&data, &plan).map_err(|e| e.to_string())?);
    }
    let (rt, _) = solve_by_radicals(&ip(&[-2, 0, 0, 1])).map_err(|e| e.to_string())?;
    towers.push(rt.tower);
    let mut rng = StdRng::seed_from_u64(20261015);
    for t in &towers {
        let k = &t.field;
        check(k.absolute_degree() <= 12, "tower too large")?;
        let data = t.data.ensure_precision(t.ctx.precision_for(&t.data.local, &BigInt::one())).map_err(|e| e.to_string())?;
        let dual = dual_basis_local(k, &data, &t.ctx).map_err(|e| e.to_string())?;
        check(dual.check_identity(k), format!("identity fails for {:?}", k.degrees()))?;
    }
    for i in 0..50 {
        let t = &towers[rng.gen_range(0..towers.len())];
        let k = &t.field;
        let coords: Vec<Rat> = (0..k.absolute_degree()).map(|_| Rat::from_integer(rng.gen_range(-99..=99).into())).collect();
        let e = k.from_flat(k.height(), &coords);
        // clear the denominators of changed generators so the element is integral
        let mut s = BigInt::one();
        for (r, m) in t.ctx.recipes.iter().zip(k.degrees()) {
            s *= r.denominator.pow(m as u32 - 1);
        }
        let se = k.scale_at(k.height(), &e, &Rat::from_integer(s.clone()));
        let bound = t.ctx.element_bound(&se);
        let data = t.data.ensure_precision(t.ctx.precision_for(&t.data.local, &bound)).map_err(|e| e.to_string())?;
        let dual = dual_basis_local(k, &data, &t.ctx).map_err(|e| e.to_string())?;
        let conj = dual.embed(k, &se).map_err(|e| e.to_string())?;
        let back = dual.reconstruct(k, &conj, &bound).map_err(|e| format!("element {i}: {e}"))?;
        let back = k.scale_at(k.height(), &back, &Rat::new(BigInt::one(), s));
        check(back == e, format!("element {i} in tower {:?}", k.degrees()))?;
    }
    Ok(format!("50 elements over {} towers; dual identity holds", towers.len()))
}

fn radical_suite() -> Outcome {
    let (rt, roots) = solve_by_radicals(&ip(&[1, 1, 1])).map_err(|e| e.to_string())?;
    let k = rt.field();
    check(k.height() == 1, "x^2+x+1 height")?;
    let shown = k.render_poly_at(0, &k.levels[0].poly, "x");
    check(shown == "x^2 + 3/4", format!("x^2+x+1 gave {shown}"))?;
    check(roots_split(k, &ip(&[1, 1, 1]).to_rat(), &roots), "x^2+x+1 roots")?;
    for (c, total) in [(vec![-2, 0, 0, 1], 6usize), (vec![-2, 0, 0, 0, 0, 1], 20)] {
        let f = ip(&c);
        let (rt, roots) = solve_by_radicals(&f).map_err(|e| e.to_string())?;
        check(rt.check_structure(), format!("{f}: structure"))?;
        check(rt.degree() == total, format!("{f}: degree {}", rt.degree()))?;
        check(roots_split(rt.field(), &f.to_rat(), &roots), format!("{f}: roots"))?;
    }
    Ok("x^2 + 3/4; degrees 6 and 20 with valid structure".into())
}

fn chebotarev() -> Outcome {
    for (name, f) in suite() {
        let (g, _) = galois_group(&f).map_err(|e| e.to_string())?;
        let types: std::collections::BTreeSet<Vec<usize>> = g.elements().iter().map(|p| p.cycle_type()).collect();
        for (p, mut t) in cycle_types(&f, 20) {
            t.sort();
            check(types.contains(&t), format!("{name}: type {t:?} at {p} not in the group"))?;
        }
    }
    Ok("20 primes per polynomial".into())
}

fn prime_independence() -> Outcome {
    for (name, f) in suite() {
        let (p1, _) = select_prime(std::slice::from_ref(&f), 3).map_err(|e| e.to_string())?;
        let (p2, _) = select_prime(std::slice::from_ref(&f), p1 + 1).map_err(|e| e.to_string())?;
        let mut seen = vec![];
        for p in [p1, p2] {
            std::env::set_var("GALOIS_PRIME", p.to_string());
            let (g, data) = galois_group(&f).map_err(|e| e.to_string())?;
            check(data.local.p == p, "forced prime ignored")?;
            let an = g.intersection(&PermGroup::alternating(f.deg()));
            let fixed = fixed_field(&data, &an).map_err(|e| e.to_string())?;
            let (t, _) = minimal_splitting_tower(&data).map_err(|e| e.to_string())?;
            seen.push((fixed, level_polys(&t)));
        }
        std::env::remove_var("GALOIS_PRIME");
        check(seen[0] == seen[1], format!("{name}: outputs differ between {p1} and {p2}"))?;
    }
    Ok("fixed fields and towers identical under two primes".into())
}

fn level_polys(t: &SplittingTower) -> Vec<String> {
    t.field.levels.iter().enumerate().map(|(h, l)| t.field.render_poly_at(h, &l.poly, "x")).collect()
}

fn degree_nine() -> Outcome {
    let f = ip(&[-62, 24, -12, -61, 6, 3, -12, -3, 0, 1]);
    let (g, _) = galois_group(&f).map_err(|e| e.to_string())?;
    check(g.order() == 36 && g.is_transitive(), format!("order {}", g.order()))?;
    Ok("order 36, transitive".into())
}

fn main() {
    let criteria: Vec<(&str, &str, u64, fn() -> Outcome)> = vec![
        ("1", "group-order facts", 1, group_facts),
        ("2", "engine suite against oracles", 60, engine_suite),
        ("3", "splitting towers", 120, splitting_towers),
        ("4", "fixed-field square classes", 10, fixed_fields),
        ("5", "reconstruction round trip", 60, round_trip),
        ("6", "radical suite", 120, radical_suite),
        ("7", "Frobenius cycle types", 30, chebotarev),
        ("8", "prime independence", 60, prime_independence),
        ("9", "degree-9 group (slow tier)", 600, degree_nine),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let t0 = Instant::now();
        let res = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t0.elapsed();
        let res = match res {
            Ok(m) if dt > Duration::from_secs(limit) => Err(format!("{m}, but took longer than {limit} s")),
            r => r,
        };
        match res {
            Ok(m) => println!("PASS criterion {id}: {name}: {m} [{:.2} s, limit {limit} s]", dt.as_secs_f64()),
            Err(m) => {
                failed += 1;
                println!("FAIL criterion {id}: {name}: {m} [{:.2} s, limit {limit} s]", dt.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
