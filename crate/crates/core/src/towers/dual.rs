//! Conjugates of tower elements and their exact recovery through the scaled dual basis.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::{TowerElement, TowerField, TowerPoly};
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::invariants::{Invariant, Tschirn};
use crate::invariants::bounds::with_slack;
use crate::local::{GaloisData, LocalElem, LocalField};
use crate::perm::Perm;

/// How the conjugates of one level generator are produced: the generator is
/// I(T(r_1), ..., T(r_n)) and its conjugates over the level below are I^t(T(r)) for t in `reps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecipe {
    pub invariant: Invariant,
    pub tschirn: Tschirn,
    /// Right coset representatives of the level's group in the one below, identity first.
    pub reps: Vec<Perm>,
    /// Bound on the absolute value of every conjugate of the generator.
    pub bound: BigInt,
    /// When present the generator is change(a) with a = I(T(r)), coefficients in the level below.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub change: Option<TowerPoly>,
    /// A positive integer taking the generator to an algebraic integer.
    #[serde(default = "one_int")]
    pub denominator: BigInt,
}

fn one_int() -> BigInt {
    BigInt::one()
}

impl LevelRecipe {
    pub fn new(invariant: Invariant, tschirn: Tschirn, reps: Vec<Perm>, bound: BigInt) -> LevelRecipe {
        LevelRecipe { invariant, tschirn, reps, bound, change: None, denominator: BigInt::one() }
    }

    /// Bound on the scaled, integral generator.
    fn integral_bound(&self) -> BigInt {
        &self.bound * &self.denominator
    }
}

/// Per-level recipes and the ordered embeddings P of the tower into the local splitting field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionContext {
    pub recipes: Vec<LevelRecipe>,
    pub perms: Vec<Perm>,
}

impl ReconstructionContext {
    /// Context of the base field Q: the single embedding.
    pub fn trivial(n: usize) -> ReconstructionContext {
        ReconstructionContext { recipes: vec![], perms: vec![Perm::identity(n)] }
    }

    /// P <- [t*pi : pi in P, t in reps], the new level's recipe appended.
    pub fn extend(&self, recipe: LevelRecipe) -> ReconstructionContext {
        let mut perms = Vec::with_capacity(self.perms.len() * recipe.reps.len());
        for t in &recipe.reps {
            for pi in &self.perms {
                perms.push(t.mul(pi));
            }
        }
        let mut recipes = self.recipes.clone();
        recipes.push(recipe);
        ReconstructionContext { recipes, perms }
    }

    pub fn degree(&self) -> usize {
        self.perms.len()
    }

    fn level_factor(&self) -> BigInt {
        // prod_j (2 M_j)^(m_j - 1), bounding |prod_j h_j'(a_j)| under any embedding
        self.recipes.iter().fold(BigInt::one(), |acc, r| {
            acc * num_traits::pow(r.integral_bound() * 2, r.reps.len() - 1)
        })
    }

    /// Bound on the integer scale D = N(prod_j h_j'(a_j)).
    pub fn scale_bound(&self) -> BigInt {
        num_traits::pow(self.level_factor(), self.perms.len())
    }

    /// Bound on every entry of the scaled dual matrix.
    pub fn entry_bound(&self) -> BigInt {
        let d = self.recipes.iter().fold(BigInt::one(), |acc, r| {
            acc * num_traits::pow(r.integral_bound() + 1, r.reps.len() - 1)
        });
        d * num_traits::pow(self.level_factor(), self.perms.len() - 1)
    }

    /// Bound on every conjugate of an element of the tower, from its coordinates.
    pub fn element_bound(&self, e: &TowerElement) -> BigInt {
        let sum = e.flatten().iter().fold(Rat::zero(), |acc, c| acc + c.abs());
        let basis = self.recipes.iter().fold(BigInt::one(), |acc, r| {
            acc * num_traits::pow(r.bound.clone().max(BigInt::one()), r.reps.len() - 1)
        });
        sum.ceil().to_integer() * basis
    }

    /// Bound on D times a coordinate of an element whose conjugates are at most `value_bound`.
    pub fn coordinate_bound(&self, value_bound: &BigInt) -> BigInt {
        self.entry_bound() * value_bound * BigInt::from(self.perms.len())
    }

    /// Precision needed to reconstruct elements whose conjugates are bounded by `value_bound`.
    pub fn precision_for(&self, local: &LocalField, value_bound: &BigInt) -> u32 {
        let b = self.coordinate_bound(value_bound).max(self.scale_bound());
        local.precision_for(&with_slack(&b))
    }
}

/// The dual-basis data at the precision of a particular GaloisData.
#[derive(Clone, Debug)]
pub struct LocalDual {
    pub local: LocalField,
    /// gens[j][i]: image of the level-(j+1) generator under the i-th embedding.
    pub gens: Vec<Vec<LocalElem>>,
    /// matrix[b][i]: D times the i-th conjugate of the b-th dual basis element.
    pub matrix: Vec<Vec<LocalElem>>,
    pub scale: BigInt,
    pub scale_local: LocalElem,
    denominators: Vec<BigInt>,
    entry_bound: BigInt,
    perms: usize,
}

/// Coefficients of prod (x - v), lowest first.
fn poly_from_roots(local: &LocalField, vals: &[&LocalElem]) -> Vec<LocalElem> {
    let mut c = vec![local.one()];
    for r in vals {
        let mut next = vec![local.zero(); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] = local.add(&next[i + 1], a);
            next[i] = local.sub(&next[i], &local.mul(a, r));
        }
        c = next;
    }
    c
}

/// Image of a level generator given the image of its raw invariant value and of the levels below.
fn apply_change(
    k: &TowerField,
    level: usize,
    r: &LevelRecipe,
    raw: &LocalElem,
    below: &[LocalElem],
    local: &LocalField,
) -> Result<LocalElem> {
    let Some(c) = &r.change else { return Ok(raw.clone()) };
    let mut acc = local.zero();
    for x in c.iter().rev() {
        let y = k.to_local(level, x, below, local)?;
        acc = local.add(&local.mul(&acc, raw), &y);
    }
    Ok(acc)
}

/// Images of all level generators under the embedding `rho`.
pub fn generators_under(
    k: &TowerField,
    ctx: &ReconstructionContext,
    data: &GaloisData,
    rho: &Perm,
) -> Result<Vec<LocalElem>> {
    let local = &data.local;
    let mut out: Vec<LocalElem> = vec![];
    for (j, r) in ctx.recipes.iter().enumerate() {
        let raw = r.invariant.eval_at(local, &r.tschirn.apply(data), rho);
        let g = apply_change(k, j, r, &raw, &out, local)?;
        out.push(g);
    }
    Ok(out)
}

/// Conjugates of the dual basis of the product power basis, scaled to be integral.
pub fn dual_basis_local(k: &TowerField, data: &GaloisData, ctx: &ReconstructionContext) -> Result<LocalDual> {
    if k.height() != ctx.recipes.len() {
        return Err(Error::Tower("context does not match the tower".into()));
    }
    let local = &data.local;
    let np = ctx.perms.len();
    let mut gens: Vec<Vec<LocalElem>> = vec![];
    let mut dcoef: Vec<Vec<Vec<LocalElem>>> = vec![]; // [level][pi][i]
    let mut h = vec![local.one(); np];
    for (j, r) in ctx.recipes.iter().enumerate() {
        let v = r.tschirn.apply(data);
        let delta = local.from_int(&r.denominator);
        let mut g = Vec::with_capacity(np);
        let mut dl = Vec::with_capacity(np);
        for (i, pi) in ctx.perms.iter().enumerate() {
            let below: Vec<LocalElem> = gens.iter().map(|row| row[i].clone()).collect();
            let mut vals = Vec::with_capacity(r.reps.len());
            for t in &r.reps {
                let raw = r.invariant.eval_at(local, &v, &t.mul(pi));
                vals.push(apply_change(k, j, r, &raw, &below, local)?);
            }
            g.push(vals[0].clone());
            // the dual is taken for the integral generator delta * a
            let vals: Vec<LocalElem> = vals.iter().map(|x| local.mul(x, &delta)).collect();
            let others: Vec<&LocalElem> = vals[1..].iter().collect();
            dl.push(poly_from_roots(local, &others));
            let hp = others.iter().fold(local.one(), |acc, o| local.mul(&acc, &local.sub(&vals[0], o)));
            h[i] = local.mul(&h[i], &hp);
        }
        gens.push(g);
        dcoef.push(dl);
    }
    // Q(pi) = prod over the other embeddings of H
    let mut prefix = vec![local.one(); np + 1];
    for i in 0..np {
        prefix[i + 1] = local.mul(&prefix[i], &h[i]);
    }
    let mut suffix = vec![local.one(); np + 1];
    for i in (0..np).rev() {
        suffix[i] = local.mul(&suffix[i + 1], &h[i]);
    }
    let scale_local = prefix[np].clone();
    let scale = local.reconstruct_integer(&scale_local, &ctx.scale_bound())?;
    if scale.is_zero() {
        return Err(Error::Tower("level generators are not separated".into()));
    }
    let nb = k.absolute_degree();
    let mut matrix = vec![vec![local.zero(); np]; nb];
    for i in 0..np {
        let q = local.mul(&prefix[i], &suffix[i + 1]);
        let mut col = vec![q];
        for dl in &dcoef {
            let mut next = Vec::with_capacity(col.len() * dl[i].len());
            for d in &dl[i] {
                for x in &col {
                    next.push(local.mul(x, d));
                }
            }
            col = next;
        }
        for (b, x) in col.into_iter().enumerate() {
            matrix[b][i] = x;
        }
    }
    let denominators = ctx.recipes.iter().map(|r| r.denominator.clone()).collect();
    Ok(LocalDual {
        local: local.clone(),
        gens,
        denominators,
        matrix,
        scale,
        scale_local,
        entry_bound: ctx.entry_bound(),
        perms: np,
    })
}

impl LocalDual {
    /// Images of an element of the tower under every embedding in P.
    pub fn embed(&self, k: &TowerField, e: &TowerElement) -> Result<Vec<LocalElem>> {
        (0..self.perms)
            .map(|i| {
                let g: Vec<LocalElem> = self.gens.iter().map(|row| row[i].clone()).collect();
                k.to_local(k.height(), e, &g, &self.local)
            })
            .collect()
    }

    /// a[i][b] = image under embedding i of the b-th product of powers of the
    /// integral generators delta_j * a_j.
    pub fn basis_conjugates(&self, k: &TowerField) -> Vec<Vec<LocalElem>> {
        let l = &self.local;
        let degs = k.degrees();
        let deltas: Vec<LocalElem> = self.denominators.iter().map(|d| l.from_int(d)).collect();
        (0..self.perms)
            .map(|i| {
                let mut row = vec![l.one()];
                for (j, m) in degs.iter().enumerate() {
                    let mut next = Vec::with_capacity(row.len() * m);
                    let mut pw = l.one();
                    for _ in 0..*m {
                        for x in &row {
                            next.push(l.mul(x, &pw));
                        }
                        pw = l.mul(&pw, &l.mul(&self.gens[j][i], &deltas[j]));
                    }
                    row = next;
                }
                row
            })
            .collect()
    }

    /// Check dual matrix * conjugates = identity modulo p^k. When D is not a unit the
    /// dual itself is not p-integral and the scaled form matrix * conjugates = D * I is checked.
    pub fn check_identity(&self, k: &TowerField) -> bool {
        let l = &self.local;
        let a = self.basis_conjugates(k);
        let nb = self.matrix.len();
        let (inv, diag) = match l.inv(&self.scale_local) {
            Ok(x) => (x, l.one()),
            Err(_) => (l.one(), self.scale_local.clone()),
        };
        for b in 0..nb {
            let row: Vec<LocalElem> = self.matrix[b].iter().map(|x| l.mul(x, &inv)).collect();
            for c in 0..nb {
                let mut s = l.zero();
                for i in 0..self.perms {
                    s = l.add(&s, &l.mul(&row[i], &a[i][c]));
                }
                let expect = if b == c { diag.clone() } else { l.zero() };
                if s != expect {
                    return false;
                }
            }
        }
        true
    }

    /// The unique element of the tower with the given conjugates, each at most `bound` in absolute value.
    pub fn reconstruct(&self, k: &TowerField, conj: &[LocalElem], bound: &BigInt) -> Result<TowerElement> {
        if conj.len() != self.perms {
            return Err(Error::Tower("conjugate vector has the wrong length".into()));
        }
        let l = &self.local;
        let cb = &self.entry_bound * bound * BigInt::from(self.perms);
        let scale = Rat::from_integer(self.scale.clone());
        let mut coords = Vec::with_capacity(self.matrix.len());
        for row in &self.matrix {
            let mut s = l.zero();
            for (x, v) in row.iter().zip(conj) {
                s = l.add(&s, &l.mul(x, v));
            }
            let z = l.reconstruct_integer(&s, &cb)?;
            coords.push(Rat::from_integer(z) / &scale);
        }
        // coordinates were taken in the basis of the integral generators delta_j * a_j
        if self.denominators.iter().any(|d| !d.is_one()) {
            let mut mult = vec![Rat::one()];
            for (d, m) in self.denominators.iter().zip(k.degrees()) {
                let mut next = Vec::with_capacity(mult.len() * m);
                let mut pw = Rat::one();
                for _ in 0..m {
                    next.extend(mult.iter().map(|x| x * &pw));
                    pw *= Rat::from_integer(d.clone());
                }
                mult = next;
            }
            for (c, f) in coords.iter_mut().zip(mult) {
                *c *= f;
            }
        }
        Ok(k.from_flat(k.height(), &coords))
    }
}

/// The element with the given conjugates; see `LocalDual::reconstruct`.
pub fn reconstruct_element(
    conj: &[LocalElem],
    k: &TowerField,
    dual: &LocalDual,
    bound: &BigInt,
) -> Result<TowerElement> {
    dual.reconstruct(k, conj, bound)
}
