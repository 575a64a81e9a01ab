use std::collections::HashMap;

use super::group::{CosetTable, PermGroup};
use super::permutation::Perm;
use crate::error::{Error, Result};

/// Cap on group orders for isomorphism testing.
pub const ISO_CAP: u128 = 10_000;

/// The image of G permuting the right cosets of U by right multiplication.
pub fn coset_action(g: &PermGroup, u: &PermGroup) -> Result<PermGroup> {
    let t = CosetTable::new(g, u)?;
    let m = t.len();
    let gens = g
        .generators()
        .iter()
        .map(|s| {
            let img: Vec<usize> = t.reps.iter().map(|r| t.coset_of(&r.mul(s))).collect();
            Perm::from_images(img).unwrap()
        })
        .collect();
    PermGroup::new(m, gens)
}

fn reduced_generators(a: &PermGroup) -> Vec<Perm> {
    let mut gens = vec![];
    let mut h = PermGroup::trivial(a.degree());
    for g in a.generators() {
        if !h.contains(g) {
            gens.push(g.clone());
            h = h.join(std::slice::from_ref(g));
        }
    }
    gens
}

fn order_profile(g: &PermGroup) -> Vec<u64> {
    let mut v: Vec<u64> = g.elements().iter().map(|e| e.order()).collect();
    v.sort();
    v
}

/// Exact isomorphism test by backtracking over generator images.
pub fn is_isomorphic(a: &PermGroup, b: &PermGroup) -> Result<bool> {
    for g in [a, b] {
        if g.order() > ISO_CAP {
            return Err(Error::OrderCap {
                order: g.order(),
                cap: ISO_CAP,
            });
        }
    }
    if a.order() != b.order() {
        return Ok(false);
    }
    if order_profile(a) != order_profile(b) {
        return Ok(false);
    }
    let gens = reduced_generators(a);
    if gens.is_empty() {
        return Ok(true);
    }
    // Words for the elements of A: each element is a parent element times a generator.
    let elts_a = a.elements();
    let mut word: HashMap<Perm, (usize, usize)> = HashMap::new();
    let mut order: Vec<Perm> = vec![Perm::identity(a.degree())];
    let mut pos: HashMap<Perm, usize> = HashMap::new();
    pos.insert(order[0].clone(), 0);
    let mut i = 0;
    while i < order.len() {
        for (gi, g) in gens.iter().enumerate() {
            let e = order[i].mul(g);
            if !pos.contains_key(&e) {
                pos.insert(e.clone(), order.len());
                word.insert(e.clone(), (i, gi));
                order.push(e);
            }
        }
        i += 1;
    }
    debug_assert_eq!(order.len(), elts_a.len());
    let candidates: Vec<Vec<Perm>> = gens
        .iter()
        .map(|g| {
            let o = g.order();
            b.elements().iter().filter(|e| e.order() == o).cloned().collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    Ok(search(&gens, &candidates, &order, &word, &pos, b, 0, &mut choice))
}

#[allow(clippy::too_many_arguments)]
fn search(
    gens: &[Perm],
    cands: &[Vec<Perm>],
    order: &[Perm],
    word: &HashMap<Perm, (usize, usize)>,
    pos: &HashMap<Perm, usize>,
    b: &PermGroup,
    k: usize,
    choice: &mut Vec<usize>,
) -> bool {
    if k == gens.len() {
        let imgs: Vec<&Perm> = choice.iter().enumerate().map(|(i, &c)| &cands[i][c]).collect();
        return check_hom(gens, &imgs, order, word, pos, b);
    }
    for c in 0..cands[k].len() {
        choice[k] = c;
        if search(gens, cands, order, word, pos, b, k + 1, choice) {
            return true;
        }
    }
    false
}

fn check_hom(
    gens: &[Perm],
    imgs: &[&Perm],
    order: &[Perm],
    word: &HashMap<Perm, (usize, usize)>,
    pos: &HashMap<Perm, usize>,
    b: &PermGroup,
) -> bool {
    let id = Perm::identity(b.degree());
    let mut phi: Vec<Perm> = Vec::with_capacity(order.len());
    phi.push(id);
    for e in &order[1..] {
        let (parent, gi) = word[e];
        phi.push(phi[parent].mul(imgs[gi]));
    }
    for (i, e) in order.iter().enumerate() {
        for (gi, g) in gens.iter().enumerate() {
            let j = pos[&e.mul(g)];
            if phi[j] != phi[i].mul(imgs[gi]) {
                return false;
            }
        }
    }
    let mut seen: Vec<&Perm> = phi.iter().collect();
    seen.sort();
    seen.dedup();
    seen.len() == order.len()
}
