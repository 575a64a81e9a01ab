//! Subgroup lattice of a small group by explicit enumeration.
//!
//! Elements are numbered, products come from a multiplication table, and
//! subgroups are bitsets. The lattice is built upwards by joining each known
//! class representative with one extra element, keeping one representative per
//! conjugacy class. A class is maximal when every such join is the whole group.

use std::collections::HashMap;

use super::group::PermGroup;
use super::permutation::Perm;
use crate::error::{Error, Result};

/// Default order cap for explicit enumeration.
pub const ORDER_CAP: u128 = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }
    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }
    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Clone, Debug)]
struct Sub {
    bits: Bits,
    gens: Vec<usize>,
    order: usize,
}

/// Explicitly enumerated group with a multiplication table.
pub struct ElementTable {
    degree: usize,
    elts: Vec<Perm>,
    table: Vec<u16>,
    inv: Vec<u16>,
    class_of: Vec<u16>,
}

impl ElementTable {
    pub fn new(g: &PermGroup, cap: u128) -> Result<ElementTable> {
        let order = g.order();
        if order > cap || order > u16::MAX as u128 {
            return Err(Error::OrderCap { order, cap });
        }
        let elts = g.elements().to_vec();
        let n = elts.len();
        let idx: HashMap<&Perm, u16> = elts.iter().enumerate().map(|(i, e)| (e, i as u16)).collect();
        let mut table = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = idx[&elts[i].mul(&elts[j])];
            }
        }
        let inv = elts.iter().map(|e| idx[&e.inv()]).collect();
        let mut t = ElementTable {
            degree: g.degree(),
            elts,
            table,
            inv,
            class_of: vec![],
        };
        t.class_of = t.conjugacy_classes();
        Ok(t)
    }

    fn n(&self) -> usize {
        self.elts.len()
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n() + b] as usize
    }

    #[inline]
    fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv[x] as usize, a), x)
    }

    fn conjugacy_classes(&self) -> Vec<u16> {
        let n = self.n();
        let mut class = vec![u16::MAX; n];
        let mut next = 0u16;
        for a in 0..n {
            if class[a] != u16::MAX {
                continue;
            }
            for x in 0..n {
                class[self.conj(a, x)] = next;
            }
            next += 1;
        }
        class
    }

    fn identity(&self) -> usize {
        self.elts.iter().position(|e| e.is_identity()).unwrap()
    }

    /// Closure of `base` together with extra generators.
    fn closure(&self, base: &Sub, extra: usize) -> Sub {
        let mut bits = base.bits.clone();
        let mut gens = base.gens.clone();
        gens.push(extra);
        let mut list: Vec<usize> = (0..self.n()).filter(|&i| bits.get(i)).collect();
        let mut i = 0;
        // Multiply every element by every generator until stable.
        while i < list.len() {
            let a = list[i];
            for &g in &gens {
                let b = self.mul(a, g);
                if !bits.get(b) {
                    bits.set(b);
                    list.push(b);
                }
            }
            i += 1;
        }
        Sub {
            order: list.len(),
            bits,
            gens,
        }
    }

    fn signature(&self, s: &Sub) -> Vec<u32> {
        let nclasses = *self.class_of.iter().max().unwrap() as usize + 1;
        let mut sig = vec![0u32; nclasses + 1];
        sig[0] = s.order as u32;
        for i in 0..self.n() {
            if s.bits.get(i) {
                sig[1 + self.class_of[i] as usize] += 1;
            }
        }
        sig
    }

    fn conjugate_to(&self, a: &Sub, b: &Sub) -> bool {
        if a.order != b.order {
            return false;
        }
        (0..self.n()).any(|x| a.gens.iter().all(|&g| b.bits.get(self.conj(g, x))))
    }

    fn to_group(&self, s: &Sub) -> PermGroup {
        PermGroup::new(
            self.degree,
            s.gens.iter().map(|&i| self.elts[i].clone()).collect(),
        )
        .unwrap()
    }

    /// One representative per conjugacy class of subgroups, and which are maximal.
    fn lattice(&self) -> (Vec<Sub>, Vec<bool>) {
        let n = self.n();
        let id = self.identity();
        let mut triv = Bits::new(n);
        triv.set(id);
        let mut reps = vec![Sub {
            bits: triv,
            gens: vec![],
            order: 1,
        }];
        let mut by_sig: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        by_sig.entry(self.signature(&reps[0])).or_default().push(0);
        let mut maximal = vec![];
        let mut k = 0;
        while k < reps.len() {
            let h = reps[k].clone();
            let mut done = h.bits.clone();
            let mut is_max = h.order < n;
            for g in 0..n {
                if done.get(g) {
                    continue;
                }
                // Joins only depend on the double coset HgH.
                for a in 0..n {
                    if h.bits.get(a) {
                        let ag = self.mul(a, g);
                        for b in 0..n {
                            if h.bits.get(b) {
                                done.set(self.mul(ag, b));
                            }
                        }
                    }
                }
                let j = self.closure(&h, g);
                if j.order == n {
                    continue;
                }
                is_max = false;
                let sig = self.signature(&j);
                let known = by_sig
                    .get(&sig)
                    .is_some_and(|v| v.iter().any(|&r| self.conjugate_to(&j, &reps[r])));
                if !known {
                    by_sig.entry(sig).or_default().push(reps.len());
                    reps.push(j);
                }
            }
            maximal.push(is_max);
            k += 1;
        }
        (reps, maximal)
    }
}

/// One representative per conjugacy class of maximal subgroups.
pub fn maximal_subgroups(u: &PermGroup) -> Result<Vec<PermGroup>> {
    maximal_subgroups_capped(u, ORDER_CAP)
}

pub fn maximal_subgroups_capped(u: &PermGroup, cap: u128) -> Result<Vec<PermGroup>> {
    if u.order() == 1 {
        return Ok(vec![]);
    }
    let t = ElementTable::new(u, cap)?;
    let (reps, maximal) = t.lattice();
    let mut out: Vec<PermGroup> = reps
        .iter()
        .zip(maximal)
        .filter(|(_, m)| *m)
        .map(|(s, _)| t.to_group(s))
        .collect();
    out.sort_by_key(|g| std::cmp::Reverse(g.order()));
    Ok(out)
}

/// One representative per conjugacy class of all subgroups (including the
/// trivial group, excluding the whole group).
pub fn subgroup_classes(u: &PermGroup, cap: u128) -> Result<Vec<PermGroup>> {
    let t = ElementTable::new(u, cap)?;
    let (reps, _) = t.lattice();
    Ok(reps.iter().map(|s| t.to_group(s)).collect())
}

/// Every subgroup of the given order (not up to conjugacy).
pub fn subgroups_of_order(u: &PermGroup, order: u128, cap: u128) -> Result<Vec<PermGroup>> {
    if order == u.order() {
        return Ok(vec![u.clone()]);
    }
    let t = ElementTable::new(u, cap)?;
    let (reps, _) = t.lattice();
    let mut out: Vec<Sub> = vec![];
    for r in reps.iter().filter(|r| r.order as u128 == order) {
        for x in 0..t.n() {
            let mut bits = Bits::new(t.n());
            for i in 0..t.n() {
                if r.bits.get(i) {
                    bits.set(t.conj(i, x));
                }
            }
            if !out.iter().any(|s| s.bits == bits) {
                let gens = r.gens.iter().map(|&g| t.conj(g, x)).collect();
                debug_assert_eq!(bits.count(), r.order);
                out.push(Sub {
                    bits,
                    gens,
                    order: r.order,
                });
            }
        }
    }
    Ok(out.iter().map(|s| t.to_group(s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, s: &str) -> PermGroup {
        PermGroup::parse(n, s).unwrap()
    }

    #[test]
    fn maximal_of_s3() {
        let m = maximal_subgroups(&PermGroup::symmetric(3)).unwrap();
        let mut orders: Vec<u128> = m.iter().map(|g| g.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![2, 3]);
    }

    #[test]
    fn maximal_of_prime_cyclic() {
        let m = maximal_subgroups(&PermGroup::cyclic(5)).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 1);
    }

    #[test]
    fn maximal_of_klein_four() {
        // three C2 subgroups, pairwise non-conjugate in an abelian group
        let v4 = grp(4, "(1,2)(3,4);(1,3)(2,4)");
        let m = maximal_subgroups(&v4).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.iter().all(|g| g.order() == 2));
    }

    #[test]
    fn subgroup_counts() {
        // S4 has 11 conjugacy classes of subgroups, 10 proper ones
        let c = subgroup_classes(&PermGroup::symmetric(4), ORDER_CAP).unwrap();
        assert_eq!(c.len(), 10);
        // S4 has exactly four subgroups of order 6... (point stabilizers)
        assert_eq!(subgroups_of_order(&PermGroup::symmetric(4), 6, ORDER_CAP).unwrap().len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            maximal_subgroups_capped(&PermGroup::symmetric(6), 100),
            Err(Error::OrderCap { .. })
        ));
    }
}
