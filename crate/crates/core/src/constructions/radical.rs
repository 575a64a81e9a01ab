//! Splitting fields as towers of radical extensions for solvable polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::chain::{ChainPlan, Origin};
use super::split::{express_roots_at, next_resolvent, reconstruct_with, roots_split, SplittingTower};
use crate::arith::{cyclotomic, IntPoly, Rat};
use crate::engine::{galois_group_product_with, galois_group_with};
use crate::error::{Error, Result};
use crate::invariants::resolvent::PRECISION_RETRIES;
use crate::invariants::{relative_invariant, verify_relative, Invariant};
use crate::local::{prime_override, GaloisData};
use crate::perm::{composition_series_solvable, prime_steps_between, Perm, PermGroup};
use crate::towers::{generators_under, LevelRecipe, ReconstructionContext, TowerElement, TowerField, TowerPoly};

/// Tries allowed for the element a in the conversion of a cyclic level of odd degree.
pub const RADICAL_CANDIDATES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LevelTag {
    /// Part of the subtower adjoining a primitive m-th root of unity.
    Unity { m: u64 },
    /// x^d - a with d an odd prime.
    Radical { d: usize },
    /// x^2 - c.
    Quadratic,
}

/// How a converted level's generator relates to the root of the cyclic resolvent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorChange {
    /// The cyclic resolvent over the level below.
    pub cyclic: TowerPoly,
    /// New generator as a polynomial in the old one.
    pub new_in_old: TowerPoly,
    /// Old generator as a polynomial in the new one.
    pub old_in_new: TowerPoly,
}

#[derive(Clone, Debug)]
pub struct RadicalTower {
    pub tower: SplittingTower,
    pub tags: Vec<LevelTag>,
    pub changes: Vec<Option<GeneratorChange>>,
    /// Root index of the chosen primitive m-th root of unity, per adjoined m.
    pub unity_points: BTreeMap<u64, usize>,
    /// Height at which each primitive m-th root of unity becomes available.
    pub unity_heights: BTreeMap<u64, usize>,
    pub group: PermGroup,
}

fn odd_prime_factors(mut n: u128) -> Vec<u64> {
    let mut out = vec![];
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            if p > 2 {
                out.push(p as u64);
            }
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 2 {
        out.push(n as u64);
    }
    out
}

/// Odd primes p dividing the order, closed under adding the odd primes dividing p - 1.
pub fn unity_orders(order: u128) -> Vec<u64> {
    let mut todo = odd_prime_factors(order);
    let mut out: Vec<u64> = vec![];
    while let Some(p) = todo.pop() {
        if out.contains(&p) {
            continue;
        }
        out.push(p);
        todo.extend(odd_prime_factors((p - 1) as u128));
    }
    out.sort();
    out
}

/// Sum of x_j over the orbit of the point u under X.
fn orbit_sum(n: usize, x: &PermGroup, u: usize) -> Invariant {
    let terms = x
        .orbit(u)
        .into_iter()
        .map(|j| {
            let mut e = vec![0u8; n];
            e[j] = 1;
            (BigInt::one(), e)
        })
        .collect();
    Invariant::from_terms(n, terms)
}

fn is_radical_shape(k: &TowerField, h: usize, g: &TowerPoly) -> bool {
    g[1..g.len() - 1].iter().all(|c| k.is_zero(c)) && g[g.len() - 1] == k.one_at(h)
}

/// Solve sum_i e_i v_i = target over the field at height h; v_i and target are coefficient vectors.
fn solve_linear(k: &TowerField, h: usize, cols: &[Vec<TowerElement>], target: &[TowerElement]) -> Result<Vec<TowerElement>> {
    let d = cols.len();
    // rows: equations j, columns i, augmented
    let mut a: Vec<Vec<TowerElement>> = (0..d)
        .map(|j| {
            let mut row: Vec<TowerElement> = cols.iter().map(|c| c[j].clone()).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    for c in 0..d {
        let piv = (c..d)
            .find(|&r| !k.is_zero(&a[r][c]))
            .ok_or_else(|| Error::Construction("singular change of generator".into()))?;
        a.swap(c, piv);
        let inv = k.inv_at(h, &a[c][c])?;
        let row: Vec<TowerElement> = a[c].iter().map(|x| k.mul_at(h, x, &inv)).collect();
        a[c] = row;
        for r in 0..d {
            if r != c && !k.is_zero(&a[r][c]) {
                let f = a[r][c].clone();
                for j in c..=d {
                    let t = k.mul_at(h, &f, &a[c][j]);
                    a[r][j] = k.sub_at(h, &a[r][j], &t);
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[d].clone()).collect())
}

/// Result of converting one cyclic level.
struct Converted {
    poly: TowerPoly,
    recipe: LevelRecipe,
    change: Option<GeneratorChange>,
    data: GaloisData,
}

fn ceil_half(b: &BigInt) -> BigInt {
    (b + 1) / 2
}

/// Turn a cyclic level of prime degree d over K into a radical one:
/// completing the square for d = 2, a Lagrange resolvent against zeta_d otherwise.
/// The automorphism is read off from permuted conjugate vectors, never by factoring.
#[allow(clippy::too_many_arguments)]
fn cyclic_to_radical(
    k: &TowerField,
    ctx: &ReconstructionContext,
    data: &GaloisData,
    g: TowerPoly,
    recipe: LevelRecipe,
    zeta: Option<(&TowerElement, usize)>,
) -> Result<Converted> {
    let h = k.height();
    let d = g.len() - 1;
    if is_radical_shape(k, h, &g) {
        return Ok(Converted { poly: g, recipe, change: None, data: data.clone() });
    }
    if d == 2 {
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let a1 = &g[1];
        let a1h = k.scale_at(h, a1, &half);
        let c0 = k.sub_at(h, &g[0], &k.mul_at(h, &a1h, &a1h));
        let poly = vec![c0, k.zero_at(h), k.one_at(h)];
        let bound = &recipe.bound + ceil_half(&ctx.element_bound(a1));
        let new_in_old = vec![a1h.clone(), k.one_at(h)];
        let old_in_new = vec![k.neg_at(h, &a1h), k.one_at(h)];
        let recipe = LevelRecipe {
            bound,
            change: Some(new_in_old.clone()),
            denominator: BigInt::from(2),
            ..recipe
        };
        let change = GeneratorChange { cyclic: g, new_in_old, old_in_new };
        return Ok(Converted { poly, recipe, change: Some(change), data: data.clone() });
    }
    let (zeta, u) = zeta.ok_or_else(|| Error::Construction(format!("no primitive {d}-th root of unity below")))?;
    let raw = k.extend(g.clone(), "t")?;
    let rctx = ctx.extend(recipe.clone());
    let hr = h + 1;
    let beta = raw.generator_at(hr);
    let z = raw.embed(zeta, h, hr);
    let one = raw.one_at(hr);
    let sigma = recipe.reps[1].clone();
    let mut sig_pows: Vec<Perm> = vec![Perm::identity(sigma.degree())];
    for i in 1..d {
        sig_pows.push(sig_pows[i - 1].mul(&sigma));
    }
    let mut data = data.clone();
    let mut tried = 0;
    let mut e = 1u64;
    while tried < RADICAL_CANDIDATES {
        let be = raw.pow_at(hr, &beta, e);
        e += 1;
        for a in [be.clone(), raw.add_at(hr, &be, &one), raw.add_at(hr, &raw.mul_at(hr, &be, &z), &one)] {
            tried += 1;
            let bound = rctx.element_bound(&a) * BigInt::from(d);
            let (b, dd) = reconstruct_with(&raw, &rctx, &data, &bound, |dd, _| {
                let l = &dd.local;
                let mut v = Vec::with_capacity(rctx.perms.len());
                for pi in &rctx.perms {
                    let zp = &dd.roots[pi.apply(u)];
                    let mut acc = l.zero();
                    let mut zi = l.one();
                    for i in 0..d {
                        let rho = sig_pows[(d - i) % d].mul(pi);
                        let gens = generators_under(&raw, &rctx, dd, &rho)?;
                        let ai = raw.to_local(hr, &a, &gens, l)?;
                        acc = l.add(&acc, &l.mul(&zi, &ai));
                        zi = l.mul(&zi, zp);
                    }
                    v.push(acc);
                }
                Ok(vec![v])
            })?;
            data = dd;
            let b = b.into_iter().next().unwrap();
            if raw.is_zero(&b) {
                continue;
            }
            let bd = raw.pow_at(hr, &b, d as u64);
            let TowerElement::Ext(parts) = &bd else { unreachable!() };
            if parts[1..].iter().any(|c| !raw.is_zero(c)) {
                return Err(Error::Construction("b^d does not lie in the field below".into()));
            }
            let TowerElement::Ext(bparts) = &b else { unreachable!() };
            if bparts[1..].iter().all(|c| raw.is_zero(c)) {
                continue;
            }
            let mut poly: TowerPoly = (0..=d).map(|_| k.zero_at(h)).collect();
            poly[0] = k.neg_at(h, &parts[0]);
            poly[d] = k.one_at(h);
            // old generator in powers of b
            let mut cols = vec![];
            let mut pw = raw.one_at(hr);
            for _ in 0..d {
                let TowerElement::Ext(pp) = &pw else { unreachable!() };
                cols.push(pp.clone());
                pw = raw.mul_at(hr, &pw, &b);
            }
            let TowerElement::Ext(target) = &beta else { unreachable!() };
            let old_in_new = solve_linear(k, h, &cols, target)?;
            let new_in_old = bparts.clone();
            let recipe = LevelRecipe { bound, change: Some(new_in_old.clone()), ..recipe };
            let change = GeneratorChange { cyclic: g, new_in_old, old_in_new };
            return Ok(Converted { poly, recipe, change: Some(change), data });
        }
    }
    Err(Error::Construction(format!(
        "no element gave a nonzero Lagrange resolvent after {RADICAL_CANDIDATES} tries"
    )))
}

/// Index of a root of f that is a primitive m-th root of unity, when Phi_m divides f.
fn unity_point_in(data: &GaloisData, f: &IntPoly, m: u64) -> Option<usize> {
    let phi = cyclotomic(m);
    f.to_rat().div_exact(&phi.to_rat())?;
    (0..f.deg()).find(|&i| data.local.is_zero(&data.local.eval_int(&phi, &data.roots[i])))
}

/// The chain of unity stabilizers refined to prime steps, then a composition series.
fn radical_plan(
    g: &PermGroup,
    unity_points: &BTreeMap<u64, usize>,
) -> Result<(ChainPlan, Vec<LevelTag>, BTreeMap<u64, usize>)> {
    let n = g.degree();
    let mut plan = ChainPlan::new(g.clone());
    let mut tags = vec![];
    let mut heights = BTreeMap::new();
    let mut cur = g.clone();
    for (&m, &u) in unity_points {
        let next = cur.stabilizer_pointwise(&[u]);
        if next.order() < cur.order() {
            for x in prime_steps_between(&cur, &next)? {
                let mut inv = orbit_sum(n, &x, u);
                if !verify_relative(&inv, plan.last(), &x)? {
                    inv = relative_invariant(plan.last(), &x)?;
                }
                plan.push(x, inv, Origin::UnityStabilizer)?;
                tags.push(LevelTag::Unity { m });
            }
        }
        heights.insert(m, tags.len());
        cur = next;
    }
    let series = composition_series_solvable(&cur)?;
    for x in series.into_iter().skip(1) {
        let d = (plan.last().order() / x.order()) as usize;
        let inv = relative_invariant(plan.last(), &x)?;
        plan.push(x, inv, Origin::CompositionStep)?;
        tags.push(if d == 2 { LevelTag::Quadratic } else { LevelTag::Radical { d } });
    }
    Ok((plan, tags, heights))
}

/// A radical splitting tower of a solvable f and the roots of f inside it.
pub fn solve_by_radicals_with(f: &IntPoly, forced_prime: Option<u64>) -> Result<(RadicalTower, Vec<TowerElement>)> {
    let (gf, _) = galois_group_with(f, forced_prime)?;
    if !gf.is_solvable() {
        return Err(Error::NotSolvable);
    }
    let needed = unity_orders(gf.order());
    let mut polys = vec![f.clone()];
    let mut inside_f = vec![];
    for &m in &needed {
        if f.to_rat().div_exact(&cyclotomic(m).to_rat()).is_some() {
            inside_f.push(m);
        } else {
            polys.push(cyclotomic(m));
        }
    }
    let (g, data) = galois_group_product_with(&polys, forced_prime)?;
    let mut unity_points = BTreeMap::new();
    let blocks = data.blocks();
    let mut next_block = 0;
    for &m in &needed {
        let u = if inside_f.contains(&m) {
            unity_point_in(&data, f, m).ok_or_else(|| Error::Construction(format!("root of unity of order {m} not found")))?
        } else {
            next_block += 1;
            blocks[next_block].start
        };
        unity_points.insert(m, u);
    }
    let (plan, tags, heights) = radical_plan(&g, &unity_points)?;

    let mut data = data;
    for _ in 0..=PRECISION_RETRIES {
        if let Some((tower, changes, roots)) = build(f, &g, &data, &plan, &tags, &unity_points, &heights)? {
            let rt = RadicalTower { tower, tags, changes, unity_points, unity_heights: heights, group: g };
            return Ok((rt, roots));
        }
        let k = data.local.k * 2;
        data = data.ensure_precision(k)?;
    }
    Err(Error::PrecisionExhausted("radical tower: f does not split".into()))
}

type Built = (SplittingTower, Vec<Option<GeneratorChange>>, Vec<TowerElement>);

/// One attempt at the level-by-level build; None when the roots fail the exact check.
fn build(
    f: &IntPoly,
    g: &PermGroup,
    data: &GaloisData,
    plan: &ChainPlan,
    tags: &[LevelTag],
    unity_points: &BTreeMap<u64, usize>,
    heights: &BTreeMap<u64, usize>,
) -> Result<Option<Built>> {
    let n = data.degree();
    let mut k = TowerField::rational();
    let mut ctx = ReconstructionContext::trivial(n);
    let mut data = data.clone();
    let mut upper = g.clone();
    let mut changes = vec![];
    let mut zetas: BTreeMap<u64, TowerElement> = BTreeMap::new();
    for (step, tag) in plan.steps.iter().zip(tags) {
        let h = k.height();
        let (raw, recipe, d) = next_resolvent(&data, &k, &ctx, &upper, &step.group, &step.invariant)?;
        data = d;
        let deg = (raw.len() - 1) as u64;
        let mut zeta = None;
        if deg > 2 {
            if let Some(&u) = unity_points.get(&deg) {
                if heights[&deg] <= h {
                    if let std::collections::btree_map::Entry::Vacant(e) = zetas.entry(deg) {
                        let (z, dd) = reconstruct_with(&k, &ctx, &data, &BigInt::one(), |dd, _| {
                            Ok(vec![ctx.perms.iter().map(|pi| dd.roots[pi.apply(u)].clone()).collect()])
                        })?;
                        data = dd;
                        e.insert(z.into_iter().next().unwrap());
                    }
                    zeta = Some((&zetas[&deg], u));
                }
            }
        }
        let c = cyclic_to_radical(&k, &ctx, &data, raw, recipe, zeta)?;
        data = c.data;
        let name = match tag {
            LevelTag::Unity { m } => format!("z{m}_{}", h + 1),
            LevelTag::Radical { d } => format!("r{d}_{}", h + 1),
            LevelTag::Quadratic => format!("s{}", h + 1),
        };
        k = k.extend(c.poly, &name)?;
        ctx = ctx.extend(c.recipe);
        changes.push(c.change);
        upper = step.group.clone();
        // zeta values embedded in the old field stay valid one level up
        for z in zetas.values_mut() {
            *z = k.embed(z, h, h + 1);
        }
    }
    let tower = SplittingTower { field: k, ctx, data };
    let (roots, data) = express_roots_at(&tower, &(0..f.deg()).collect::<Vec<_>>())?;
    let tower = SplittingTower { data, ..tower };
    if !roots_split(&tower.field, &f.to_rat(), &roots) {
        return Ok(None);
    }
    Ok(Some((tower, changes, roots)))
}

pub fn solve_by_radicals(f: &IntPoly) -> Result<(RadicalTower, Vec<TowerElement>)> {
    solve_by_radicals_with(f, prime_override())
}

impl RadicalTower {
    pub fn field(&self) -> &TowerField {
        &self.tower.field
    }

    pub fn degree(&self) -> usize {
        self.tower.field.absolute_degree()
    }

    /// Every level tagged, of prime degree, of shape x^d - a, with zeta_d strictly below
    /// whenever d > 2.
    pub fn check_structure(&self) -> bool {
        let k = &self.tower.field;
        if self.tags.len() != k.height() {
            return false;
        }
        for (j, (tag, level)) in self.tags.iter().zip(&k.levels).enumerate() {
            let d = level.degree();
            if !crate::arith::modp::is_prime(d as u64) || !is_radical_shape(k, j, &level.poly) {
                return false;
            }
            match tag {
                LevelTag::Quadratic if d != 2 => return false,
                LevelTag::Radical { d: t } if *t != d || d == 2 => return false,
                _ => {}
            }
            if d > 2 && !self.unity_heights.get(&(d as u64)).is_some_and(|&hz| hz <= j) {
                return false;
            }
        }
        true
    }

    /// Indented display with each level's tag.
    pub fn render(&self) -> String {
        let k = &self.tower.field;
        let mut out = String::new();
        for h in (1..=k.height()).rev() {
            let l = &k.levels[h - 1];
            let tag = match &self.tags[h - 1] {
                LevelTag::Unity { m } => format!("unity({m})"),
                LevelTag::Radical { d } => format!("radical({d})"),
                LevelTag::Quadratic => "quadratic".to_string(),
            };
            out.push_str(&format!("  K{h}<{}>  {tag}\n", l.name));
            out.push_str("    |\n");
            out.push_str(&format!("    | {}\n", k.render_poly_at(h - 1, &l.poly, "x")));
            out.push_str("    |\n");
        }
        out.push_str("Rational Field\n");
        out
    }
}
