use super::group::PermGroup;
use super::permutation::Perm;
use crate::error::{Error, Result};

fn smallest_prime_factor(n: u128) -> u128 {
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    n
}

/// Given N normal in G with G/N solvable and G != N, a subgroup X with
/// N <= X, X normal in G and [G:X] prime. X is the preimage of a hyperplane of
/// the elementary abelian quotient G / (N [G,G] G^p).
pub fn prime_step_below(g: &PermGroup, n: &PermGroup) -> Result<PermGroup> {
    if g.order() == n.order() {
        return Err(Error::Construction("no proper step below equal groups".into()));
    }
    let mut seeds: Vec<Perm> = n.generators().to_vec();
    let gens = g.generators();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            seeds.push(a.inv().mul(&b.inv()).mul(a).mul(b));
        }
    }
    let d = g.normal_closure(&seeds);
    if d.order() == g.order() {
        return Err(Error::NotSolvable);
    }
    let p = smallest_prime_factor(g.order() / d.order());
    let powers: Vec<Perm> = gens.iter().map(|x| x.pow(p as u64)).collect();
    let e = d.join(&powers);
    let i = gens
        .iter()
        .position(|x| !e.contains(x))
        .expect("some generator survives in the p-quotient");
    let gi = &gens[i];
    let mut s = e;
    for (j, gj) in gens.iter().enumerate() {
        if j == i {
            continue;
        }
        let mut c = gj.clone();
        for _ in 0..p {
            if !s.contains(&c) {
                let t = s.join(std::slice::from_ref(&c));
                if !t.contains(gi) {
                    s = t;
                }
            }
            c = c.mul(gi);
        }
    }
    debug_assert_eq!(g.order() / s.order(), p);
    Ok(s)
}

/// G = C_0 > C_1 > ... > {1}, each normal in its predecessor with prime index.
pub fn composition_series_solvable(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let triv = PermGroup::trivial(g.degree());
    let mut chain = vec![g.clone()];
    let mut cur = g.clone();
    while cur.order() > 1 {
        cur = prime_step_below(&cur, &triv)?;
        chain.push(cur.clone());
    }
    Ok(chain)
}

/// Refine N normal in G (G/N solvable) into prime-index steps G > X_1 > ... > N.
pub fn prime_steps_between(g: &PermGroup, n: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut out = vec![];
    let mut cur = g.clone();
    while cur.order() > n.order() {
        cur = prime_step_below(&cur, n)?;
        out.push(cur.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_series(g: &PermGroup) -> Vec<u128> {
        let c = composition_series_solvable(g).unwrap();
        assert_eq!(c.last().unwrap().order(), 1);
        let mut q = vec![];
        for w in c.windows(2) {
            assert!(w[1].is_normal_in(&w[0]));
            let idx = w[0].order() / w[1].order();
            assert_eq!(smallest_prime_factor(idx), idx);
            q.push(idx);
        }
        q
    }

    #[test]
    fn cyclic_five() {
        assert_eq!(check_series(&PermGroup::cyclic(5)), vec![5]);
    }

    #[test]
    fn klein_four() {
        let v4 = PermGroup::parse(4, "(1,2)(3,4);(1,3)(2,4)").unwrap();
        assert_eq!(check_series(&v4), vec![2, 2]);
    }

    #[test]
    fn order_twelve_example() {
        let g = PermGroup::parse(6, "(2,3)(5,6);(1,2)(4,5);(1,4)(2,5)(3,6)").unwrap();
        let q = check_series(&g);
        assert_eq!(q.iter().product::<u128>(), 12);
        assert!(q.iter().all(|&x| x == 2 || x == 3));
    }

    #[test]
    fn s4_and_f20() {
        assert_eq!(check_series(&PermGroup::symmetric(4)).iter().product::<u128>(), 24);
        let f20 = PermGroup::parse(5, "(1,2,3,4,5);(2,3,5,4)").unwrap();
        assert_eq!(check_series(&f20), vec![2, 2, 5]);
    }

    #[test]
    fn unsolvable_rejected() {
        assert!(matches!(
            composition_series_solvable(&PermGroup::symmetric(5)),
            Err(Error::NotSolvable)
        ));
    }

    #[test]
    fn steps_between_normal_pair() {
        let s4 = PermGroup::symmetric(4);
        let v4 = PermGroup::parse(4, "(1,2)(3,4);(1,3)(2,4)").unwrap();
        let steps = prime_steps_between(&s4, &v4).unwrap();
        let orders: Vec<u128> = steps.iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![12, 4]);
    }
}
