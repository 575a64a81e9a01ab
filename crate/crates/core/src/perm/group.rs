use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use super::permutation::Perm;
use crate::error::{Error, Result};

/// One level of a stabilizer chain: the orbit of `point` under `gens`, with
/// a transversal element for each orbit point.
#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    // trans[x] maps `point` to x
    trans: Vec<Option<Perm>>,
}

impl Level {
    fn new(point: usize, n: usize) -> Level {
        let mut l = Level {
            point,
            gens: vec![],
            orbit: vec![],
            trans: vec![None; n],
        };
        l.rebuild(n);
        l
    }

    fn rebuild(&mut self, n: usize) {
        self.trans = vec![None; n];
        self.trans[self.point] = Some(Perm::identity(n));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            let ux = self.trans[x].clone().unwrap();
            for g in &self.gens {
                let y = g.apply(x);
                if self.trans[y].is_none() {
                    self.trans[y] = Some(ux.mul(g));
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// A base and strong generating set built by deterministic Schreier-Sims.
#[derive(Clone, Debug)]
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(n: usize, gens: &[Perm], prefix: &[usize]) -> StabChain {
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push((0..n).find(|&i| g.apply(i) != i).unwrap());
            }
        }
        let mut levels: Vec<Level> = vec![];
        for (i, &b) in base.iter().enumerate() {
            let mut l = Level::new(b, n);
            l.gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                .cloned()
                .collect();
            l.rebuild(n);
            levels.push(l);
        }
        let mut chain = StabChain { n, levels };
        if chain.levels.is_empty() {
            return chain;
        }
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut jumped = None;
            'search: for oi in 0..chain.levels[iu].orbit.len() {
                let x = chain.levels[iu].orbit[oi];
                for si in 0..chain.levels[iu].gens.len() {
                    let lvl = &chain.levels[iu];
                    let s = &lvl.gens[si];
                    let ux = lvl.trans[x].as_ref().unwrap();
                    let y = s.apply(x);
                    let uy = lvl.trans[y].as_ref().unwrap();
                    let g = ux.mul(s).mul(&uy.inv());
                    if g.is_identity() {
                        continue;
                    }
                    let (h, j) = chain.sift_from(g, iu + 1);
                    if !h.is_identity() {
                        if j == chain.levels.len() {
                            let pt = (0..n).find(|&k| h.apply(k) != k).unwrap();
                            chain.levels.push(Level::new(pt, n));
                        }
                        for l in iu + 1..=j {
                            chain.levels[l].gens.push(h.clone());
                            chain.levels[l].rebuild(n);
                        }
                        jumped = Some(j);
                        break 'search;
                    }
                }
            }
            match jumped {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        chain
    }

    fn sift_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (i, l) in self.levels.iter().enumerate().skip(start) {
            let y = g.apply(l.point);
            match &l.trans[y] {
                None => return (g, i),
                Some(u) => g = g.mul(&u.inv()),
            }
        }
        (g, self.levels.len())
    }

    fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    fn contains(&self, g: &Perm) -> bool {
        let (h, _) = self.sift_from(g.clone(), 0);
        h.is_identity()
    }

    fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    fn strong_gens(&self) -> Vec<Perm> {
        let mut seen = HashSet::new();
        let mut out = vec![];
        for l in &self.levels {
            for g in &l.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    fn tail(&self, from: usize) -> StabChain {
        StabChain {
            n: self.n,
            levels: self.levels[from.min(self.levels.len())..].to_vec(),
        }
    }
}

/// A permutation group given by generators, with a lazily built stabilizer
/// chain for order and membership.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: Arc<OnceLock<StabChain>>,
    elements: Arc<OnceLock<Vec<Perm>>>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.gens.iter().all(|g| self.contains(g))
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens = dedupe(gens.into_iter().filter(|g| !g.is_identity()).collect());
        Ok(PermGroup {
            degree,
            gens,
            chain: Arc::new(OnceLock::new()),
            elements: Arc::new(OnceLock::new()),
        })
    }

    /// Group closure of a non-empty generator list sharing one degree.
    pub fn from_generators(gens: Vec<Perm>) -> Result<PermGroup> {
        let n = gens
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::Parse("empty generator list; use trivial(n)".into()))?;
        PermGroup::new(n, gens)
    }

    /// Parse generators in cycle notation separated by `;` or `,` between cycles groups.
    pub fn parse(n: usize, s: &str) -> Result<PermGroup> {
        let gens = s
            .split(';')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| Perm::parse(n, t))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(n, gens)
    }

    fn with_chain(degree: usize, chain: StabChain) -> PermGroup {
        let gens = chain.strong_gens();
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        PermGroup {
            degree,
            gens,
            chain: Arc::new(cell),
            elements: Arc::new(OnceLock::new()),
        }
    }

    pub fn trivial(n: usize) -> PermGroup {
        PermGroup::new(n, vec![]).unwrap()
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = vec![];
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[1, 2]]).unwrap());
            let cyc: Vec<usize> = (1..=n).collect();
            gens.push(Perm::from_cycles(n, &[&cyc]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> PermGroup {
        let gens = (3..=n)
            .map(|k| Perm::from_cycles(n, &[&[1, 2, k]]).unwrap())
            .collect();
        PermGroup::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let cyc: Vec<usize> = (1..=n).collect();
        PermGroup::new(n, vec![Perm::from_cycles(n, &[&cyc]).unwrap()]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.gens, &[]))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.chain().contains(g)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.gens.iter().all(|x| g.contains(x))
    }

    /// All elements, sorted. Intended for small groups.
    pub fn elements(&self) -> &[Perm] {
        self.elements.get_or_init(|| {
            let chain = self.chain();
            let mut elts = vec![Perm::identity(self.degree)];
            for l in chain.levels.iter().rev() {
                let mut next = Vec::with_capacity(elts.len() * l.orbit.len());
                for e in &elts {
                    for x in &l.orbit {
                        next.push(e.mul(l.trans[*x].as_ref().unwrap()));
                    }
                }
                elts = next;
            }
            elts.sort();
            elts
        })
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            for g in &self.gens {
                let y = g.apply(out[i]);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = vec![];
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Subgroup fixing each listed point.
    pub fn stabilizer_pointwise(&self, points: &[usize]) -> PermGroup {
        if points.is_empty() {
            return self.clone();
        }
        let chain = StabChain::build(self.degree, &self.gens, points);
        PermGroup::with_chain(self.degree, chain.tail(points.len()))
    }

    pub fn conjugate(&self, a: &Perm) -> PermGroup {
        PermGroup::new(self.degree, self.gens.iter().map(|g| g.conj(a)).collect()).unwrap()
    }

    pub fn join(&self, extra: &[Perm]) -> PermGroup {
        let mut gens = self.gens.clone();
        for e in extra {
            if !self.contains(e) {
                gens.push(e.clone());
            }
        }
        PermGroup::new(self.degree, gens).unwrap()
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && g.gens
                .iter()
                .all(|x| self.gens.iter().all(|h| self.contains(&h.conj(x))))
    }

    /// Smallest subgroup of `self` normal in `self` containing `s`.
    pub fn normal_closure(&self, s: &[Perm]) -> PermGroup {
        let mut n = PermGroup::new(self.degree, s.to_vec()).unwrap();
        loop {
            let mut added = vec![];
            for h in n.generators() {
                for g in &self.gens {
                    let c = h.conj(g);
                    if !n.contains(&c) && !added.contains(&c) {
                        added.push(c);
                    }
                }
            }
            if added.is_empty() {
                return n;
            }
            n = n.join(&added);
        }
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = vec![];
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                comms.push(a.inv().mul(&b.inv()).mul(a).mul(b));
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_solvable(&self) -> bool {
        let mut g = self.clone();
        loop {
            if g.is_trivial() || g.order() == 1 {
                return true;
            }
            let d = g.derived_subgroup();
            if d.order() == g.order() {
                return false;
            }
            g = d;
        }
    }

    /// Even permutations of the group.
    pub fn even_part(&self) -> PermGroup {
        let Some(t) = self.gens.iter().find(|g| !g.is_even()) else {
            return self.clone();
        };
        // Schreier generators for the index-2 kernel of the sign map.
        let reps = [Perm::identity(self.degree), t.clone()];
        let mut gens = vec![];
        for r in &reps {
            for s in &self.gens {
                let rs = r.mul(s);
                let back = if rs.is_even() { &reps[0] } else { &reps[1] };
                gens.push(rs.mul(&back.inv()));
            }
        }
        PermGroup::new(self.degree, gens).unwrap()
    }

    pub fn is_even(&self) -> bool {
        self.gens.iter().all(|g| g.is_even())
    }

    /// Intersection by filtering the elements of the smaller group.
    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let mut h = PermGroup::trivial(self.degree);
        for e in small.elements() {
            if big.contains(e) && !h.contains(e) {
                h = h.join(std::slice::from_ref(e));
            }
        }
        h
    }

    /// Canonical representative of the right coset self*t, using the chain of self.
    pub fn coset_canonical(&self, t: &Perm) -> Perm {
        let chain = self.chain();
        let mut c = t.clone();
        for l in &chain.levels {
            let best = l
                .orbit
                .iter()
                .min_by_key(|&&x| c.apply(x))
                .copied()
                .unwrap();
            c = l.trans[best].as_ref().unwrap().mul(&c);
        }
        c
    }

    /// Is the group primitive (transitive with no nontrivial block system)?
    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        (1..self.degree).all(|b| self.minimal_block(0, b).len() == self.degree)
    }

    /// Smallest block containing points a and b.
    pub fn minimal_block(&self, a: usize, b: usize) -> Vec<usize> {
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        let mut queue = VecDeque::new();
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[rb] = ra;
            queue.push_back((a, b));
        }
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.gens {
                let (gx, gy) = (g.apply(x), g.apply(y));
                let (r1, r2) = (find(&mut parent, gx), find(&mut parent, gy));
                if r1 != r2 {
                    parent[r2] = r1;
                    queue.push_back((gx, gy));
                }
            }
        }
        let ra = find(&mut parent, a);
        (0..n).filter(|&x| find(&mut parent, x) == ra).collect()
    }
}

fn dedupe(gens: Vec<Perm>) -> Vec<Perm> {
    let mut seen = HashSet::new();
    gens.into_iter().filter(|g| seen.insert(g.clone())).collect()
}

/// Right cosets H*t of H in G with fast lookup of the coset containing an element.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub sub: PermGroup,
    pub reps: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl CosetTable {
    pub fn new(g: &PermGroup, h: &PermGroup) -> Result<CosetTable> {
        if !h.is_subgroup_of(g) {
            return Err(Error::NotSubgroup(format!(
                "subgroup of order {} is not contained in group of order {}",
                h.order(),
                g.order()
            )));
        }
        let id = Perm::identity(g.degree());
        let mut reps = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(h.coset_canonical(&id), 0);
        let mut i = 0;
        while i < reps.len() {
            for s in g.generators() {
                let t = reps[i].mul(s);
                let key = h.coset_canonical(&t);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
                    e.insert(reps.len());
                    reps.push(t);
                }
            }
            i += 1;
        }
        Ok(CosetTable {
            sub: h.clone(),
            reps,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the right coset containing x.
    pub fn coset_of(&self, x: &Perm) -> usize {
        self.index[&self.sub.coset_canonical(x)]
    }
}

/// One representative per right coset H*t, identity first.
pub fn right_transversal(g: &PermGroup, h: &PermGroup) -> Result<Vec<Perm>> {
    Ok(CosetTable::new(g, h)?.reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, s: &str) -> PermGroup {
        PermGroup::parse(n, s).unwrap()
    }

    #[test]
    fn classical_orders() {
        for n in 1..=9 {
            let f: u128 = (1..=n as u128).product();
            assert_eq!(PermGroup::symmetric(n).order(), f);
            if n >= 2 {
                assert_eq!(PermGroup::alternating(n).order(), f / 2);
            }
        }
        assert_eq!(PermGroup::cyclic(7).order(), 7);
    }

    #[test]
    fn membership_is_exact() {
        let a5 = PermGroup::alternating(5);
        assert!(a5.contains(&Perm::parse(5, "(1,2)(3,4)").unwrap()));
        assert!(!a5.contains(&Perm::parse(5, "(1,2)").unwrap()));
    }

    #[test]
    fn stabilizer_examples() {
        let s3 = PermGroup::symmetric(3);
        let st = s3.stabilizer_pointwise(&[2]);
        assert_eq!(st.order(), 2);
        assert!(st.contains(&Perm::parse(3, "(1,2)").unwrap()));
        assert_eq!(s3.stabilizer_pointwise(&[]).order(), 6);
    }

    #[test]
    fn transversal_s3() {
        let s3 = PermGroup::symmetric(3);
        let a3 = PermGroup::alternating(3);
        let t = right_transversal(&s3, &a3).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t[0].is_identity());
        assert_eq!(right_transversal(&s3, &s3).unwrap().len(), 1);
        let h = grp(3, "(1,2)");
        let t = right_transversal(&s3, &h).unwrap();
        assert_eq!(t.len(), 3);
        // right cosets H*t have pairwise distinct images of point 3 under t
        let mut imgs: Vec<usize> = t.iter().map(|x| x.apply(2)).collect();
        imgs.sort();
        imgs.dedup();
        assert_eq!(imgs.len(), 3);
        assert!(right_transversal(&h, &s3).is_err());
    }

    #[test]
    fn block_systems() {
        let d4 = grp(4, "(1,2,3,4);(1,3)");
        assert!(d4.is_transitive());
        assert!(!d4.is_primitive());
        assert_eq!(d4.minimal_block(0, 2), vec![0, 2]);
        assert!(PermGroup::symmetric(4).is_primitive());
    }

    #[test]
    fn even_part_and_solvable() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.even_part().order(), 12);
        assert!(s4.is_solvable());
        assert!(!PermGroup::symmetric(5).is_solvable());
        assert!(grp(5, "(1,2,3,4,5);(2,3,5,4)").is_solvable());
        assert_eq!(s4.derived_subgroup().order(), 12);
    }
}
