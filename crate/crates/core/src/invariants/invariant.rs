//! Multivariate integer invariants under the substitution action
//! I^t(x_1, ..., x_n) = I(x_{t(1)}, ..., x_{t(n)}).

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local::{LocalElem, LocalField};
use crate::perm::{right_transversal, Perm, PermGroup};

/// Exponent vector: e[i] is the exponent of x_{i+1}.
pub type Exponents = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Invariant {
    /// Sparse sum of c * prod x_i^{e_i}, sorted by exponent vector.
    Terms { n: usize, terms: Vec<(BigInt, Exponents)> },
    /// prod_{i<j} (x_i - x_j), kept unexpanded; its image under t is sign(t) times itself.
    Vandermonde { n: usize },
}

impl Invariant {
    pub fn variable(n: usize, i: usize) -> Invariant {
        let mut e = vec![0u8; n];
        e[i] = 1;
        Invariant::Terms {
            n,
            terms: vec![(BigInt::one(), e)],
        }
    }

    pub fn from_terms(n: usize, terms: Vec<(BigInt, Exponents)>) -> Invariant {
        let mut map: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (c, e) in terms {
            assert_eq!(e.len(), n);
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Invariant::Terms {
            n,
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (c, e))
                .collect(),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Invariant::Terms { n, .. } | Invariant::Vandermonde { n } => *n,
        }
    }

    pub fn total_degree(&self) -> usize {
        match self {
            Invariant::Terms { terms, .. } => terms
                .iter()
                .map(|(_, e)| e.iter().map(|&x| x as usize).sum())
                .max()
                .unwrap_or(0),
            Invariant::Vandermonde { n } => n * (n - 1) / 2,
        }
    }

    /// Whether I^t and I agree as polynomials.
    pub fn fixed_by(&self, t: &Perm) -> bool {
        match self {
            Invariant::Vandermonde { .. } => t.is_even(),
            Invariant::Terms { n, terms } => {
                let moved = act_terms(*n, terms, t);
                moved == *terms
            }
        }
    }

    /// Value of I^t at v, i.e. x_i receives v[t(i)].
    pub fn eval_at(&self, local: &LocalField, v: &[LocalElem], t: &Perm) -> LocalElem {
        match self {
            Invariant::Vandermonde { n } => {
                let mut acc = local.one();
                for i in 0..*n {
                    for j in i + 1..*n {
                        acc = local.mul(&acc, &local.sub(&v[t.apply(i)], &v[t.apply(j)]));
                    }
                }
                acc
            }
            Invariant::Terms { terms, .. } => {
                let mut acc = local.zero();
                for (c, e) in terms {
                    let mut m = local.from_int(c);
                    for (i, &k) in e.iter().enumerate() {
                        if k > 0 {
                            m = local.mul(&m, &local.pow(&v[t.apply(i)], k as u64));
                        }
                    }
                    acc = local.add(&acc, &m);
                }
                acc
            }
        }
    }

    /// Bound on |I(z)| when every |z_i| <= r.
    pub fn magnitude_bound(&self, r: &BigInt) -> BigInt {
        match self {
            Invariant::Vandermonde { n } => num_traits::pow(r * 2, n * (n - 1) / 2),
            Invariant::Terms { terms, .. } => terms
                .iter()
                .map(|(c, e)| {
                    let d: usize = e.iter().map(|&x| x as usize).sum();
                    c.abs() * num_traits::pow(r.clone(), d)
                })
                .sum(),
        }
    }

    /// Human-readable form in x1..xn.
    pub fn render(&self) -> String {
        match self {
            Invariant::Vandermonde { n } => format!("prod_{{i<j<={n}}} (x_i - x_j)"),
            Invariant::Terms { terms, .. } => {
                let parts: Vec<String> = terms
                    .iter()
                    .map(|(c, e)| {
                        let mono: Vec<String> = e
                            .iter()
                            .enumerate()
                            .filter(|(_, &k)| k > 0)
                            .map(|(i, &k)| {
                                if k == 1 {
                                    format!("x{}", i + 1)
                                } else {
                                    format!("x{}^{}", i + 1, k)
                                }
                            })
                            .collect();
                        let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
                        if c.is_one() {
                            mono
                        } else {
                            format!("{c}*{mono}")
                        }
                    })
                    .collect();
                parts.join(" + ")
            }
        }
    }
}

fn act_exponents(e: &[u8], t: &Perm) -> Exponents {
    let mut out = vec![0u8; e.len()];
    for (i, &k) in e.iter().enumerate() {
        out[t.apply(i)] = k;
    }
    out
}

fn act_terms(n: usize, terms: &[(BigInt, Exponents)], t: &Perm) -> Vec<(BigInt, Exponents)> {
    match Invariant::from_terms(n, terms.iter().map(|(c, e)| (c.clone(), act_exponents(e, t))).collect()) {
        Invariant::Terms { terms, .. } => terms,
        Invariant::Vandermonde { .. } => unreachable!(),
    }
}

fn orbit_of(e: &Exponents, h: &PermGroup) -> Vec<Exponents> {
    let mut seen: HashSet<Exponents> = HashSet::new();
    seen.insert(e.clone());
    let mut list = vec![e.clone()];
    let mut i = 0;
    while i < list.len() {
        for g in h.generators() {
            let f = act_exponents(&list[i], g);
            if seen.insert(f.clone()) {
                list.push(f);
            }
        }
        i += 1;
    }
    list
}

/// Exponent vectors of total degree d, as nondecreasing index multisets in lexicographic order.
fn monomials(n: usize, d: usize) -> Vec<Exponents> {
    fn rec(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Exponents>) {
        if cur.len() == d {
            let mut e = vec![0u8; n];
            for &i in cur.iter() {
                e[i] += 1;
            }
            out.push(e);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, d, i, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(n, d, 0, &mut vec![], &mut out);
    out
}

/// Largest monomial degree tried in orbit-sum search.
pub const SEARCH_DEGREE_CAP: usize = 6;
/// Orbit sums with more terms than this are skipped during search.
const ORBIT_TERM_CAP: usize = 2000;

/// A G-relative H-invariant: fixed by H, and by no element of G outside H.
pub fn relative_invariant(g: &PermGroup, h: &PermGroup) -> Result<Invariant> {
    let n = g.degree();
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("invariant search needs H <= G".into()));
    }
    let reps = right_transversal(g, h)?;
    let mut pending: Vec<Perm> = reps.into_iter().filter(|t| !h.contains(t)).collect();
    if pending.is_empty() {
        let terms = (0..n).map(|i| Invariant::variable(n, i)).flat_map(|v| match v {
            Invariant::Terms { terms, .. } => terms,
            Invariant::Vandermonde { .. } => unreachable!(),
        });
        return Ok(Invariant::from_terms(n, terms.collect()));
    }
    // Single variables: H is the stabilizer of a point.
    for i in 0..n {
        if h.generators().iter().all(|x| x.apply(i) == i) && g.orbit(i).len() as u128 * h.order() == g.order() {
            return Ok(Invariant::variable(n, i));
        }
    }
    // Sign kernel.
    if !g.is_even() && h.order() * 2 == g.order() && h.is_even() {
        return Ok(Invariant::Vandermonde { n });
    }
    // Orbit sums with distinct weights, added while they cut the remaining cosets.
    let mut chosen: Vec<(BigInt, Exponents)> = vec![];
    let mut covered: HashSet<Exponents> = HashSet::new();
    let mut weight = 1i64;
    for d in 1..=SEARCH_DEGREE_CAP {
        for m in monomials(n, d) {
            if covered.contains(&m) {
                continue;
            }
            let orbit = orbit_of(&m, h);
            for e in &orbit {
                covered.insert(e.clone());
            }
            if orbit.len() > ORBIT_TERM_CAP {
                continue;
            }
            let terms: Vec<(BigInt, Exponents)> =
                orbit.iter().map(|e| (BigInt::one(), e.clone())).collect();
            let inv = Invariant::from_terms(n, terms);
            let before = pending.len();
            pending.retain(|t| inv.fixed_by(t));
            if pending.len() < before {
                for e in orbit {
                    chosen.push((BigInt::from(weight), e));
                }
                weight += 1;
            }
            if pending.is_empty() {
                let out = Invariant::from_terms(n, chosen);
                debug_assert!(verify_relative(&out, g, h).unwrap_or(false));
                return Ok(out);
            }
        }
    }
    staircase(g, h)
}

/// H-orbit sum of x_2 x_3^2 ... x_n^{n-1}; its stabilizer in S_n is exactly H.
pub fn staircase(g: &PermGroup, h: &PermGroup) -> Result<Invariant> {
    let n = g.degree();
    let e: Exponents = (0..n).map(|i| i as u8).collect();
    let orbit = orbit_of(&e, h);
    if orbit.len() as u128 != h.order() {
        return Err(Error::InvariantSearch {
            group: g.order(),
            sub: h.order(),
        });
    }
    Ok(Invariant::from_terms(
        n,
        orbit.into_iter().map(|e| (BigInt::one(), e)).collect(),
    ))
}

/// Exact check that Stab_G(I) = H.
pub fn verify_relative(inv: &Invariant, g: &PermGroup, h: &PermGroup) -> Result<bool> {
    if !h.generators().iter().all(|x| inv.fixed_by(x)) {
        return Ok(false);
    }
    let reps = right_transversal(g, h)?;
    Ok(reps.iter().filter(|t| !h.contains(t)).all(|t| !inv.fixed_by(t)))
}
