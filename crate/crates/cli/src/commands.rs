use std::collections::BTreeSet;
use std::path::Path;

use galois_core::arith::{normalize_monic, parse_poly, Normalized};
use galois_core::constructions::{
    express_roots, fixed_field as core_fixed_field, galois_quotient, galois_quotients_of_order,
    minimal_splitting_tower, roots_split, solve_by_radicals, LevelTag, SplittingTower,
};
use galois_core::engine::{factor_by_roots, frobenius_cycle_type, galois_group, galois_group_of_data};
use galois_core::local::{GaloisData, Session};
use galois_core::perm::PermGroup;
use galois_core::towers::{dual_basis_local, TowerElement, TowerField};
use galois_core::{Error, Rat, RatPoly};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::Source;

pub struct Output {
    pub json: Value,
    pub text: String,
    /// False when a check failed; the process then exits with 3.
    pub ok: bool,
}

type Res = Result<Output, (&'static str, Error)>;

fn stage(name: &'static str) -> impl Fn(Error) -> (&'static str, Error) {
    move |e| (name, e)
}

fn ok(json: Value, text: String) -> Res {
    Ok(Output { json, text, ok: true })
}

fn normalize(src: &str) -> Result<Normalized, Error> {
    let f = parse_poly(src)?;
    if f.deg() < 1 {
        return Err(Error::Parse("polynomial must have degree at least 1".into()));
    }
    Ok(normalize_monic(&f))
}

/// Input text, the monic integral polynomial used, and data with the group computed.
struct Loaded {
    input: String,
    norm: Normalized,
    data: GaloisData,
    group: PermGroup,
}

fn load(src: &Source) -> Result<Loaded, (&'static str, Error)> {
    if let Some(path) = &src.session {
        let s = Session::load(path).map_err(stage("session"))?;
        let norm = normalize(&s.input).map_err(stage("session"))?;
        let data = s.data().map_err(stage("session"))?;
        let (group, data) = match &data.group {
            Some(g) => (g.clone(), data.clone()),
            None => galois_group_of_data(data).map_err(stage("engine"))?,
        };
        return Ok(Loaded { input: s.input, norm, data, group });
    }
    let Some(p) = &src.poly else {
        return Err(("input", Error::Parse("give --poly or --session".into())));
    };
    let norm = normalize(p).map_err(stage("parse"))?;
    let (group, data) = galois_group(&norm.poly).map_err(stage("engine"))?;
    Ok(Loaded { input: p.clone(), norm, data, group })
}

fn rat_str(q: &Rat) -> String {
    q.to_string()
}

fn poly_json(f: &RatPoly) -> Value {
    json!({
        "polynomial": f.to_string(),
        "coefficients": f.coeffs().iter().map(rat_str).collect::<Vec<_>>(),
    })
}

fn group_json(g: &PermGroup) -> Value {
    json!({
        "degree": g.degree(),
        "order": g.order().to_string(),
        "generators": g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

fn input_json(l: &Loaded) -> Value {
    json!({
        "input": l.input,
        "monic": l.norm.poly.to_string(),
        "scale": l.norm.scale.to_string(),
        "prime": l.data.local.p,
    })
}

pub fn group(poly: &str, session: Option<&Path>) -> Res {
    let norm = normalize(poly).map_err(stage("parse"))?;
    let (g, data) = galois_group(&norm.poly).map_err(stage("engine"))?;
    if let Some(path) = session {
        Session::new(poly, &data).save(path).map_err(stage("session"))?;
    }
    let gens: Vec<String> = g.generators().iter().map(|p| p.to_string()).collect();
    let json = json!({
        "input": poly,
        "monic": norm.poly.to_string(),
        "scale": norm.scale.to_string(),
        "prime": data.local.p,
        "degree": g.degree(),
        "order": g.order().to_string(),
        "generators": gens,
        "transitive": g.is_transitive(),
        "solvable": g.is_solvable(),
    });
    let text = format!("order {}\ngenerators {}\n", g.order(), gens.join(", "));
    ok(json, text)
}

pub fn fixed_field(src: &Source, subgroup: &str) -> Res {
    let l = load(src)?;
    let u = PermGroup::parse(l.group.degree(), subgroup).map_err(stage("parse"))?;
    let f = core_fixed_field(&l.data, &u).map_err(stage("fixed field"))?;
    let json = json!({
        "source": input_json(&l),
        "subgroup": group_json(&u),
        "field": poly_json(&f),
    });
    ok(json, format!("{f}\n"))
}

pub fn quotient(src: &Source, order: u128, q: Option<&str>, q_degree: Option<usize>) -> Res {
    let l = load(src)?;
    let list: Vec<(RatPoly, Option<PermGroup>)> = match q {
        Some(s) => {
            let n = q_degree.unwrap_or(order as usize);
            let qg = PermGroup::parse(n, s).map_err(stage("parse"))?;
            if qg.order() != order {
                return Err(("parse", Error::Parse(format!("--group has order {}, not {order}", qg.order()))));
            }
            galois_quotient(&l.data, &qg)
                .map_err(stage("quotient"))?
                .into_iter()
                .map(|f| (f, None))
                .collect()
        }
        None => galois_quotients_of_order(&l.data, order)
            .map_err(stage("quotient"))?
            .into_iter()
            .map(|(f, a)| (f, Some(a)))
            .collect(),
    };
    let fields: Vec<Value> = list
        .iter()
        .map(|(f, a)| {
            let mut v = poly_json(f);
            if let Some(a) = a {
                v["action"] = group_json(a);
            }
            v
        })
        .collect();
    let text: String = list.iter().map(|(f, _)| format!("{f}\n")).collect();
    ok(json!({ "source": input_json(&l), "order": order.to_string(), "fields": fields }), text)
}

fn tower_json(k: &TowerField, tags: Option<&[LevelTag]>) -> Value {
    let levels: Vec<Value> = k
        .levels
        .iter()
        .enumerate()
        .map(|(h, lv)| {
            let mut v = json!({
                "name": lv.name,
                "degree": lv.degree(),
                "polynomial": k.render_poly_at(h, &lv.poly, "x"),
                "coefficients": lv.poly,
            });
            if let Some(t) = tags {
                v["tag"] = serde_json::to_value(&t[h]).expect("tags serialize");
            }
            v
        })
        .collect();
    json!({ "absolute_degree": k.absolute_degree(), "levels": levels })
}

/// Roots of the user's polynomial: roots of the monic form divided by the scale.
fn user_roots(k: &TowerField, norm: &Normalized, roots: &[TowerElement]) -> Vec<TowerElement> {
    let inv = Rat::new(BigInt::one(), norm.scale.clone());
    roots.iter().map(|r| k.scale_at(k.height(), r, &inv)).collect()
}

fn roots_json(k: &TowerField, roots: &[TowerElement]) -> Vec<Value> {
    roots.iter().map(|r| json!({ "display": k.render(r), "tree": r })).collect()
}

fn roots_text(k: &TowerField, roots: &[TowerElement]) -> String {
    roots.iter().enumerate().map(|(i, r)| format!("r{} = {}\n", i + 1, k.render(r))).collect()
}

pub fn split(src: &Source, simple: bool) -> Res {
    let l = load(src)?;
    if simple {
        let trivial = PermGroup::trivial(l.group.degree());
        let f = core_fixed_field(&l.data, &trivial).map_err(stage("fixed field"))?;
        return ok(json!({ "source": input_json(&l), "mode": "simple", "field": poly_json(&f) }), format!("{f}\n"));
    }
    let data = GaloisData { group: Some(l.group.clone()), ..l.data.clone() };
    let (t, _) = minimal_splitting_tower(&data).map_err(stage("splitting tower"))?;
    let json = json!({ "source": input_json(&l), "mode": "tower", "tower": tower_json(&t.field, None) });
    ok(json, t.field.render_tower())
}

pub fn radicals(src: &Source) -> Res {
    let l = load(src)?;
    let (rt, roots) = solve_by_radicals(&l.norm.poly).map_err(stage("radicals"))?;
    let k = rt.field();
    let roots = user_roots(k, &l.norm, &roots);
    let changes: Vec<Value> = rt
        .changes
        .iter()
        .enumerate()
        .map(|(h, c)| match c {
            None => Value::Null,
            Some(c) => json!({
                "cyclic": k.render_poly_at(h, &c.cyclic, "x"),
                "new_in_old": k.render_poly_at(h, &c.new_in_old, "t"),
                "old_in_new": k.render_poly_at(h, &c.old_in_new, "t"),
            }),
        })
        .collect();
    let mut tower = tower_json(k, Some(&rt.tags));
    tower["changes"] = Value::Array(changes);
    let json = json!({
        "source": input_json(&l),
        "group_order": rt.group.order().to_string(),
        "structure_ok": rt.check_structure(),
        "tower": tower,
        "roots": roots_json(k, &roots),
    });
    ok(json, format!("{}{}", rt.render(), roots_text(k, &roots)))
}

pub fn roots(src: &Source) -> Res {
    let l = load(src)?;
    let data = GaloisData { group: Some(l.group.clone()), ..l.data.clone() };
    let (t, _) = minimal_splitting_tower(&data).map_err(stage("splitting tower"))?;
    let roots = express_roots(&t).map_err(stage("roots"))?;
    let roots = user_roots(&t.field, &l.norm, &roots);
    let json = json!({
        "source": input_json(&l),
        "tower": tower_json(&t.field, None),
        "roots": roots_json(&t.field, &roots),
    });
    ok(json, format!("{}{}", t.field.render_tower(), roots_text(&t.field, &roots)))
}

/// Largest tower for which the O(n^3) dual identity check is run.
const IDENTITY_CHECK_MAX: usize = 48;
const CHEBOTAREV_PRIMES: usize = 20;

fn chebotarev(f: &galois_core::IntPoly, g: &PermGroup) -> bool {
    let types: BTreeSet<Vec<usize>> = g.elements().iter().map(|p| p.cycle_type()).collect();
    let mut seen = 0;
    let mut p = 3u64;
    while seen < CHEBOTAREV_PRIMES {
        if galois_core::arith::modp::is_prime(p) {
            if let Ok(mut t) = frobenius_cycle_type(f, p) {
                t.sort();
                if !types.contains(&t) {
                    return false;
                }
                seen += 1;
            }
        }
        p += 2;
    }
    true
}

fn tower_checks(t: &SplittingTower, f: &RatPoly, order: u128) -> Result<Vec<(&'static str, bool)>, Error> {
    let k = &t.field;
    let roots = express_roots(t)?;
    let mut out = vec![
        ("tower degree equals group order", k.absolute_degree() as u128 == order),
        ("roots split in the tower", roots_split(k, f, &roots)),
    ];
    if k.absolute_degree() <= IDENTITY_CHECK_MAX {
        let data = t.data.ensure_precision(t.ctx.precision_for(&t.data.local, &BigInt::one()))?;
        let dual = dual_basis_local(k, &data, &t.ctx)?;
        out.push(("dual basis identity", dual.check_identity(k)));
    }
    Ok(out)
}

pub fn verify(src: &Source) -> Res {
    let l = load(src)?;
    let g = &l.group;
    let f = l.data.product();
    let all: Vec<usize> = (0..l.data.degree()).collect();
    let (blocks, _) = factor_by_roots(&l.data, &all, &f).map_err(stage("factor"))?;
    let mut checks: Vec<(&'static str, bool)> = vec![
        ("roots satisfy the polynomial", l.data.check_roots()),
        ("frobenius lies in the group", g.contains(&l.data.frobenius())),
        ("orbits match rational factors", g.orbits().len() == blocks.len()),
        ("frobenius cycle types occur in the group", chebotarev(&f, g)),
    ];
    let data = GaloisData { group: Some(g.clone()), ..l.data.clone() };
    let (t, _) = minimal_splitting_tower(&data).map_err(stage("splitting tower"))?;
    checks.extend(tower_checks(&t, &f.to_rat(), g.order()).map_err(stage("splitting tower"))?);
    let all_ok = checks.iter().all(|c| c.1);
    let json = json!({
        "source": input_json(&l),
        "checks": checks.iter().map(|(n, b)| json!({ "name": n, "ok": b })).collect::<Vec<_>>(),
        "ok": all_ok,
    });
    let text: String = checks.iter().map(|(n, b)| format!("{} {n}\n", if *b { "ok  " } else { "FAIL" })).collect();
    Ok(Output { json, text, ok: all_ok })
}
