//! Splitting fields as towers, built one resolvent at a time without factoring.

use num_bigint::BigInt;
use num_traits::One;

use super::chain::{ChainPlan, Origin};
use super::fixed::group_of;
use crate::arith::{Rat, RatPoly};
use crate::error::{Error, Result};
use crate::invariants::resolvent::{evaluation_bound, local_power_sums, PRECISION_RETRIES};
use crate::invariants::tschirn::tschirnhausen_distinct;
use crate::invariants::{powersum_bound, root_bound, Invariant};
use crate::local::{GaloisData, LocalElem};
use crate::perm::{right_transversal, PermGroup};
use crate::towers::{
    dual_basis_local, tower_extend, LevelRecipe, LocalDual, ReconstructionContext, TowerElement, TowerField,
    TowerPoly,
};

/// A tower together with the data needed to embed and reconstruct its elements.
#[derive(Clone, Debug)]
pub struct SplittingTower {
    pub field: TowerField,
    pub ctx: ReconstructionContext,
    pub data: GaloisData,
}

/// Reconstruct several elements from a function computing their conjugate vectors at a
/// given precision, raising precision when an attempt fails.
pub fn reconstruct_with<F>(
    k: &TowerField,
    ctx: &ReconstructionContext,
    data: &GaloisData,
    bound: &BigInt,
    mut conj: F,
) -> Result<(Vec<TowerElement>, GaloisData)>
where
    F: FnMut(&GaloisData, &LocalDual) -> Result<Vec<Vec<LocalElem>>>,
{
    let mut prec = ctx.precision_for(&data.local, bound);
    let mut last = Error::PrecisionExhausted("tower reconstruction".into());
    for _ in 0..=PRECISION_RETRIES {
        let d = data.ensure_precision(prec)?;
        let dual = dual_basis_local(k, &d, ctx)?;
        let vs = conj(&d, &dual)?;
        let res: Result<Vec<TowerElement>> = vs.iter().map(|v| dual.reconstruct(k, v, bound)).collect();
        match res {
            Ok(e) => return Ok((e, d)),
            Err(e @ (Error::ExceedsBound | Error::NotRational)) => last = e,
            Err(e) => return Err(e),
        }
        prec *= 2;
    }
    Err(Error::PrecisionExhausted(format!("tower reconstruction: {last}")))
}

/// Newton's identities over the tower: monic polynomial from power sums s_1..s_m.
fn newton_over(k: &TowerField, s: &[TowerElement]) -> TowerPoly {
    let h = k.height();
    let m = s.len();
    let mut e = vec![k.one()];
    for j in 1..=m {
        let mut acc = k.zero();
        for i in 1..=j {
            let t = k.mul(&e[j - i], &s[i - 1]);
            acc = if i % 2 == 1 { k.add(&acc, &t) } else { k.sub(&acc, &t) };
        }
        e.push(k.scale_at(h, &acc, &Rat::new(BigInt::one(), BigInt::from(j))));
    }
    let mut g: TowerPoly = (0..=m).map(|_| k.zero()).collect();
    for (j, ej) in e.into_iter().enumerate() {
        g[m - j] = if j % 2 == 0 { ej } else { k.neg(&ej) };
    }
    g
}

/// The resolvent prod_{t in T}(x - I^t(T(r))) over the tower K, with the recipe of its root.
pub fn next_resolvent(
    data: &GaloisData,
    k: &TowerField,
    ctx: &ReconstructionContext,
    upper: &PermGroup,
    lower: &PermGroup,
    inv: &Invariant,
) -> Result<(TowerPoly, LevelRecipe, GaloisData)> {
    let reps = right_transversal(upper, lower)?;
    let tr = tschirnhausen_distinct(data, inv, &reps)?;
    let m = reps.len();
    let bound = evaluation_bound(data, inv, &tr);
    let ps_bound = powersum_bound(&bound, m);
    let (sums, data) = reconstruct_with(k, ctx, data, &ps_bound, |d, _| {
        let v = tr.apply(d);
        let per_pi: Vec<Vec<LocalElem>> = ctx
            .perms
            .iter()
            .map(|pi| {
                let vals: Vec<LocalElem> = reps.iter().map(|t| inv.eval_at(&d.local, &v, &t.mul(pi))).collect();
                local_power_sums(&d.local, &vals)
            })
            .collect();
        Ok((0..m).map(|j| per_pi.iter().map(|s| s[j].clone()).collect()).collect())
    })?;
    let g = newton_over(k, &sums);
    Ok((g, LevelRecipe::new(inv.clone(), tr, reps, bound), data))
}

/// Build the tower K_0 = Q < K_1 < ... following the chain, one level per step.
pub fn splitting_tower(data: &GaloisData, plan: &ChainPlan) -> Result<SplittingTower> {
    let n = data.degree();
    let mut k = TowerField::rational();
    let mut ctx = ReconstructionContext::trivial(n);
    let mut data = data.clone();
    let mut upper = plan.top.clone();
    for step in &plan.steps {
        let (g, recipe, d) = next_resolvent(&data, &k, &ctx, &upper, &step.group, &step.invariant)?;
        k = tower_extend(&k, g)?;
        ctx = ctx.extend(recipe);
        data = d;
        upper = step.group.clone();
    }
    Ok(SplittingTower { field: k, ctx, data })
}

/// Prime-independent ordering key for level polynomials.
fn poly_key(g: &TowerPoly) -> (usize, String) {
    (g.len(), serde_json::to_string(g).expect("tower polynomials serialize"))
}

/// Minimal splitting field as a tower: at each step adjoin a root whose stabilizer is
/// smallest. Among tied points the orbit whose level polynomial has the least key wins,
/// then the smallest index, so the output does not depend on how roots were labelled.
pub fn minimal_splitting_tower(data: &GaloisData) -> Result<(SplittingTower, ChainPlan)> {
    let g = group_of(data)?.clone();
    let n = g.degree();
    let mut plan = ChainPlan::new(g.clone());
    let mut k = TowerField::rational();
    let mut ctx = ReconstructionContext::trivial(n);
    let mut data = data.clone();
    let mut fixed: Vec<usize> = vec![];
    loop {
        let cur = plan.last().clone();
        if cur.is_trivial() {
            break;
        }
        let mut best_order = cur.order();
        let mut tied: Vec<(usize, PermGroup)> = vec![];
        for d in (0..n).filter(|d| !fixed.contains(d)) {
            let mut pts = fixed.clone();
            pts.push(d);
            let s = g.stabilizer_pointwise(&pts);
            if s.order() < best_order {
                best_order = s.order();
                tied.clear();
            }
            if s.order() == best_order && s.order() < cur.order() {
                tied.push((d, s));
            }
        }
        let mut seen: Vec<usize> = vec![];
        let mut best: Option<((usize, String), usize, PermGroup, TowerPoly, LevelRecipe, GaloisData)> = None;
        for (d, s) in tied {
            if seen.contains(&d) {
                continue;
            }
            seen.extend(cur.orbit(d));
            let inv = Invariant::variable(n, d);
            let (p, recipe, dd) = next_resolvent(&data, &k, &ctx, &cur, &s, &inv)?;
            let key = poly_key(&p);
            if best.as_ref().is_none_or(|b| key < b.0) {
                best = Some((key, d, s, p, recipe, dd));
            }
        }
        let (_, d, s, p, recipe, dd) = best.expect("a proper stabilizer exists below a nontrivial group");
        fixed.push(d);
        plan.push(s, Invariant::variable(n, d), Origin::PointStabilizer)?;
        k = tower_extend(&k, p)?;
        ctx = ctx.extend(recipe);
        data = dd;
    }
    Ok((SplittingTower { field: k, ctx, data }, plan))
}

/// The roots r_i (for the given root indices) as elements of the tower.
pub fn express_roots_at(t: &SplittingTower, indices: &[usize]) -> Result<(Vec<TowerElement>, GaloisData)> {
    let r = t.data.polys.iter().map(root_bound).max().unwrap_or_else(BigInt::one);
    reconstruct_with(&t.field, &t.ctx, &t.data, &r, |d, _| {
        Ok(indices
            .iter()
            .map(|&i| t.ctx.perms.iter().map(|pi| d.roots[pi.apply(i)].clone()).collect())
            .collect())
    })
}

/// All roots of the data's polynomial, in root order, as elements of a splitting tower.
pub fn express_roots(t: &SplittingTower) -> Result<Vec<TowerElement>> {
    let idx: Vec<usize> = (0..t.data.degree()).collect();
    Ok(express_roots_at(t, &idx)?.0)
}

/// Exact check that the elements are pairwise distinct roots of f.
pub fn roots_split(k: &TowerField, f: &RatPoly, roots: &[TowerElement]) -> bool {
    let distinct = roots.iter().enumerate().all(|(i, a)| roots[i + 1..].iter().all(|b| a != b));
    distinct && roots.iter().all(|r| k.is_zero(&k.eval_rat_poly(f, r)))
}
