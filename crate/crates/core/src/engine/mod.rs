//! Galois groups by descent from a known overgroup, testing one maximal
//! subgroup at a time with relative invariants evaluated at local roots.

pub mod factor;

use std::collections::HashSet;

use crate::arith::modp;
use crate::arith::{cyclotomic, discriminant, is_rational_square, IntPoly};
use crate::error::{Error, Result};
use crate::invariants::bounds::with_slack;
use crate::invariants::resolvent::evaluation_bound;
use crate::invariants::tschirn::{evaluations, tschirnhausen_distinct_from};
use crate::invariants::relative_invariant;
use crate::local::{prime_override, GaloisData};
use crate::perm::lattice::maximal_subgroups;
use crate::perm::table::{alternating_transitive_maximals, symmetric_transitive_maximals, TABLE_MAX_DEGREE};
use crate::perm::{right_transversal, Perm, PermGroup};

pub use factor::{factor_by_roots, Block};

/// Number of primes whose Frobenius patterns prune candidate subgroups.
const PATTERN_PRIMES: usize = 40;

/// Multiset of factor degrees of f mod p.
pub fn frobenius_cycle_type(f: &IntPoly, p: u64) -> Result<Vec<usize>> {
    let fp = modp::reduce(f, p);
    if fp.len() != f.coeffs().len() || !modp::is_squarefree(&fp, p) {
        return Err(Error::NotSquarefree(format!("modulo {p}")));
    }
    Ok(modp::factor_degrees(&fp, p))
}

/// Cycle types of an element restricted to each block of points.
type Pattern = Vec<Vec<usize>>;

fn restricted_cycle_type(g: &Perm, block: &[usize]) -> Vec<usize> {
    let mut seen = HashSet::new();
    let mut t = vec![];
    for &x in block {
        if seen.contains(&x) {
            continue;
        }
        let mut len = 0;
        let mut y = x;
        while seen.insert(y) {
            len += 1;
            y = g.apply(y);
        }
        t.push(len);
    }
    t.sort();
    t
}

fn pattern_of(g: &Perm, blocks: &[Block]) -> Pattern {
    blocks.iter().map(|b| restricted_cycle_type(g, &b.indices)).collect()
}

fn frobenius_patterns(blocks: &[Block]) -> Vec<Pattern> {
    let mut out = HashSet::new();
    let mut p = 3u64;
    let mut count = 0;
    while count < PATTERN_PRIMES && p < 10_000 {
        if modp::is_prime(p) {
            let pat: Result<Pattern> = blocks.iter().map(|b| frobenius_cycle_type(&b.poly, p)).collect();
            let prod = blocks.iter().fold(IntPoly::from_i64(&[1]), |a, b| a.mul(&b.poly));
            if let Ok(pat) = pat {
                if frobenius_cycle_type(&prod, p).is_ok() {
                    out.insert(pat);
                    count += 1;
                }
            }
        }
        p += 2;
    }
    out.into_iter().collect()
}

fn patterns_allowed(h: &PermGroup, blocks: &[Block], needed: &[Pattern]) -> bool {
    if h.order() > 20_000 {
        return true;
    }
    let have: HashSet<Pattern> = h.elements().iter().map(|g| pattern_of(g, blocks)).collect();
    needed.iter().all(|p| have.contains(p))
}

/// What is known about the current overgroup U, which decides how its maximal
/// subgroups are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum UKind {
    Symmetric,
    Alternating,
    Generic,
}

/// Embed a group on block-local points into n points.
fn lift_group(g: &PermGroup, idx: &[usize], n: usize) -> PermGroup {
    let gens = g.generators().iter().map(|s| s.relabel(idx, n)).collect();
    PermGroup::new(n, gens).unwrap()
}

/// Restrict the data to a subset of its roots, as data for one polynomial.
fn sub_data(data: &GaloisData, b: &Block) -> GaloisData {
    GaloisData {
        polys: vec![b.poly.clone()],
        local: data.local.clone(),
        roots: b.indices.iter().map(|&i| data.roots[i].clone()).collect(),
        group: None,
    }
}

/// Find t in the transversal of H in U with I^t(T(r)) an integer, proving
/// Gal <= t^-1 H t. The value w found has |w| <= M, and the product over all
/// cosets of (w - c_s) is an integer of size below (2M)^m that vanishes mod p^k,
/// so it vanishes exactly; separation makes w a simple root.
fn certify_containment(
    data: &mut GaloisData,
    u: &PermGroup,
    h: &PermGroup,
    frob: &Perm,
) -> Result<Option<Perm>> {
    let reps = right_transversal(u, h)?;
    let live: Vec<usize> = (0..reps.len())
        .filter(|&i| {
            let t = &reps[i];
            h.contains(&t.mul(frob).mul(&t.inv()))
        })
        .collect();
    if live.is_empty() {
        return Ok(None);
    }
    let inv = relative_invariant(u, h)?;
    let m = reps.len();
    let mut start = 0;
    loop {
        let tr = tschirnhausen_distinct_from(data, &inv, &reps, start)?;
        let big_m = with_slack(&evaluation_bound(data, &inv, &tr));
        let cert = num_traits::pow(&big_m * 2, m) * 2;
        let k = data.local.precision_for(&cert);
        *data = data.ensure_precision(k)?;
        let vals = evaluations(&inv, &tr, data, &reps);
        let mut sorted: Vec<_> = vals.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            start = tr.index + 1;
            continue;
        }
        for &i in &live {
            if data.local.reconstruct_integer(&vals[i], &big_m).is_ok() {
                return Ok(Some(reps[i].clone()));
            }
        }
        return Ok(None);
    }
}

struct Descent<'a> {
    blocks: &'a [Block],
    patterns: Vec<Pattern>,
    frob: Perm,
}

impl Descent<'_> {
    fn candidates(&self, u: &PermGroup, kind: UKind, accept: &dyn Fn(&PermGroup) -> bool) -> Result<Vec<(PermGroup, UKind)>> {
        let n = u.degree();
        let list: Vec<(PermGroup, UKind)> = match kind {
            UKind::Symmetric => symmetric_transitive_maximals(n)
                .ok_or(Error::DegreeCap(n))?
                .into_iter()
                .map(|c| (c.group, UKind::Generic))
                .collect(),
            UKind::Alternating => alternating_transitive_maximals(n)
                .ok_or(Error::DegreeCap(n))?
                .into_iter()
                .map(|c| (c.group, UKind::Generic))
                .collect(),
            UKind::Generic => maximal_subgroups(u)?
                .into_iter()
                .map(|g| (g, UKind::Generic))
                .collect(),
        };
        Ok(list
            .into_iter()
            .filter(|(h, _)| accept(h) && patterns_allowed(h, self.blocks, &self.patterns))
            .collect())
    }

    fn run(
        &self,
        data: &mut GaloisData,
        mut u: PermGroup,
        mut kind: UKind,
        accept: &dyn Fn(&PermGroup) -> bool,
    ) -> Result<PermGroup> {
        'descend: loop {
            for (h, hk) in self.candidates(&u, kind, accept)? {
                if let Some(t) = certify_containment(data, &u, &h, &self.frob)? {
                    u = h.conjugate(&t);
                    kind = hk;
                    continue 'descend;
                }
            }
            return Ok(u);
        }
    }
}

/// Galois group of one irreducible block, on the block's own points.
fn transitive_group(data: &GaloisData, b: &Block) -> Result<(PermGroup, GaloisData)> {
    let m = b.indices.len();
    let mut sub = sub_data(data, b);
    if m == 1 {
        return Ok((PermGroup::trivial(1), sub));
    }
    if let Some(g) = cyclotomic_group(&sub)? {
        return Ok((g, sub));
    }
    if m > TABLE_MAX_DEGREE {
        return Err(Error::DegreeCap(m));
    }
    let local_block = Block {
        indices: (0..m).collect(),
        poly: b.poly.clone(),
    };
    let blocks = [local_block];
    let d = Descent {
        patterns: frobenius_patterns(&blocks),
        blocks: &blocks,
        frob: sub.frobenius(),
    };
    let accept = |h: &PermGroup| h.is_transitive();
    let disc = discriminant(&b.poly.to_rat());
    let (u, kind) = if is_rational_square(&disc) {
        (PermGroup::alternating(m), UKind::Alternating)
    } else {
        (PermGroup::symmetric(m), UKind::Symmetric)
    };
    let g = d.run(&mut sub, u, kind, &accept)?;
    Ok((g, sub))
}

/// The known group of a cyclotomic polynomial: a -> (zeta -> zeta^a) for units a.
fn cyclotomic_group(sub: &GaloisData) -> Result<Option<PermGroup>> {
    let g = &sub.polys[0];
    let deg = g.deg();
    let Some(m) = (1..=2 * deg * deg + 2).find(|&m| {
        totient(m) == deg && cyclotomic(m as u64) == *g
    }) else {
        return Ok(None);
    };
    let res: Vec<_> = sub.roots.iter().map(|r| sub.local.residue(r)).collect();
    let fq = sub.local.residue_field();
    let mut gens = vec![];
    for a in 1..m {
        if num_integer::gcd(a, m) != 1 {
            continue;
        }
        let images = res
            .iter()
            .map(|r| {
                let img = modp::pow_rem(r, &num_bigint::BigUint::from(a), &fq.modulus, fq.p);
                res.iter().position(|s| *s == img).expect("unity roots are closed under powers")
            })
            .collect();
        gens.push(Perm::from_images(images)?);
    }
    Ok(Some(PermGroup::new(deg, gens)?))
}

fn totient(m: usize) -> usize {
    (1..=m).filter(|&a| num_integer::gcd(a, m) == 1).count()
}

/// Galois group of the product of the given polynomials (each monic, integral,
/// product squarefree), acting on all their roots in data order.
pub fn galois_group_product_with(fs: &[IntPoly], forced_prime: Option<u64>) -> Result<(PermGroup, GaloisData)> {
    let data = GaloisData::new(fs, forced_prime)?;
    galois_group_of_data(data)
}

pub fn galois_group_product(fs: &[IntPoly]) -> Result<(PermGroup, GaloisData)> {
    galois_group_product_with(fs, prime_override())
}

pub fn galois_group_with(f: &IntPoly, forced_prime: Option<u64>) -> Result<(PermGroup, GaloisData)> {
    if f.deg() > TABLE_MAX_DEGREE {
        return Err(Error::DegreeCap(f.deg()));
    }
    galois_group_product_with(std::slice::from_ref(f), forced_prime)
}

pub fn galois_group(f: &IntPoly) -> Result<(PermGroup, GaloisData)> {
    galois_group_with(f, prime_override())
}

/// Factor every input polynomial over Q, find each factor's group, then descend
/// from their direct product through subdirect subgroups.
pub fn galois_group_of_data(data: GaloisData) -> Result<(PermGroup, GaloisData)> {
    let n = data.degree();
    let mut data = data;
    let mut blocks = vec![];
    for (g, range) in data.polys.clone().iter().zip(data.blocks()) {
        let idx: Vec<usize> = range.collect();
        let (bs, d) = factor_by_roots(&data, &idx, g)?;
        data = d;
        blocks.extend(bs);
    }
    let mut factor_groups = vec![];
    for b in &blocks {
        let (g, sub) = transitive_group(&data, b)?;
        if sub.local.k > data.local.k {
            data = data.ensure_precision(sub.local.k)?;
        }
        factor_groups.push(lift_group(&g, &b.indices, n));
    }
    let mut gens: Vec<Perm> = factor_groups.iter().flat_map(|g| g.generators().to_vec()).collect();
    if gens.is_empty() {
        gens.push(Perm::identity(n));
    }
    let u = PermGroup::new(n, gens)?;
    let group = if blocks.len() <= 1 || factor_groups.iter().filter(|g| g.order() > 1).count() <= 1 {
        u
    } else {
        let orders: Vec<u128> = factor_groups.iter().map(|g| g.order()).collect();
        let accept = |h: &PermGroup| {
            blocks.iter().zip(&orders).all(|(b, &o)| projection_order(h, &b.indices) == o)
        };
        let d = Descent {
            patterns: frobenius_patterns(&blocks),
            blocks: &blocks,
            frob: data.frobenius(),
        };
        d.run(&mut data, u, UKind::Generic, &accept)?
    };
    data.group = Some(group.clone());
    Ok((group, data))
}

/// Order of the image of H acting on a union of orbits.
fn projection_order(h: &PermGroup, idx: &[usize]) -> u128 {
    let m = idx.len();
    let mut pos = vec![usize::MAX; h.degree()];
    for (i, &x) in idx.iter().enumerate() {
        pos[x] = i;
    }
    let gens: Vec<Perm> = h
        .generators()
        .iter()
        .map(|g| Perm::from_images(idx.iter().map(|&x| pos[g.apply(x)]).collect()).unwrap())
        .collect();
    if gens.is_empty() {
        return 1;
    }
    PermGroup::new(m, gens).unwrap().order()
}
