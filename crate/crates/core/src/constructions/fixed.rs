//! Fixed fields of subgroups of the Galois group and subfields with a prescribed group.

use crate::arith::RatPoly;
use crate::error::{Error, Result};
use crate::invariants::{relative_invariant, resolvent, tschirnhausen_distinct};
use crate::local::GaloisData;
use crate::perm::lattice::subgroups_of_order;
use crate::perm::{coset_action, is_isomorphic, right_transversal, PermGroup, ORDER_CAP};

pub(crate) fn group_of(data: &GaloisData) -> Result<&PermGroup> {
    data.group
        .as_ref()
        .ok_or_else(|| Error::Construction("Galois group has not been computed".into()))
}

/// Defining polynomial of the subfield of the splitting field fixed by U.
pub fn fixed_field(data: &GaloisData, u: &PermGroup) -> Result<RatPoly> {
    let g = group_of(data)?;
    if !u.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("U is not contained in the Galois group".into()));
    }
    let inv = relative_invariant(g, u)?;
    let reps = right_transversal(g, u)?;
    let tr = tschirnhausen_distinct(data, &inv, &reps)?;
    resolvent(data, g, u, &inv, &tr)
}

/// Fixed fields of the subgroups U with |U| = |G|/|Q| on whose cosets G acts like Q.
pub fn galois_quotient(data: &GaloisData, q: &PermGroup) -> Result<Vec<RatPoly>> {
    let g = group_of(data)?;
    if g.order() % q.order() != 0 {
        return Err(Error::Construction(format!(
            "|Q| = {} does not divide |G| = {}",
            q.order(),
            g.order()
        )));
    }
    let mut out: Vec<RatPoly> = vec![];
    for u in subgroups_of_order(g, g.order() / q.order(), ORDER_CAP)? {
        let action = coset_action(g, &u)?;
        if action.order() != q.order() || !is_isomorphic(&action, q)? {
            continue;
        }
        let f = fixed_field(data, &u)?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Galois subfields of degree k: fixed fields of the normal subgroups of index k,
/// each with the regular action of G on the cosets.
pub fn galois_quotients_of_order(data: &GaloisData, k: u128) -> Result<Vec<(RatPoly, PermGroup)>> {
    let g = group_of(data)?;
    if k == 0 || g.order() % k != 0 {
        return Err(Error::Construction(format!("{k} does not divide |G| = {}", g.order())));
    }
    let mut out: Vec<(RatPoly, PermGroup)> = vec![];
    for u in subgroups_of_order(g, g.order() / k, ORDER_CAP)? {
        if !u.is_normal_in(g) {
            continue;
        }
        let f = fixed_field(data, &u)?;
        if out.iter().all(|(h, _)| *h != f) {
            out.push((f, coset_action(g, &u)?));
        }
    }
    Ok(out)
}
