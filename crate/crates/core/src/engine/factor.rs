//! Splitting a polynomial over Q by recombining its local roots.

use num_bigint::BigInt;

use crate::arith::{IntPoly, RatPoly};
use crate::error::{Error, Result};
use crate::invariants::root_bound;
use crate::local::{GaloisData, LocalElem, LocalField};

/// An irreducible factor over Q together with the indices of its roots in the data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub indices: Vec<usize>,
    pub poly: IntPoly,
}

/// Coefficients of prod (x - r) for the given local roots, lowest first.
fn local_product(local: &LocalField, roots: &[&LocalElem]) -> Vec<LocalElem> {
    let mut c = vec![local.one()];
    for r in roots {
        let mut next = vec![local.zero(); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] = local.add(&next[i + 1], a);
            next[i] = local.sub(&next[i], &local.mul(a, r));
        }
        c = next;
    }
    c
}

fn orbits_of(perm_images: &[usize], idx: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm_images.len()];
    let mut out = vec![];
    for &i in idx {
        if seen[i] {
            continue;
        }
        let mut o = vec![];
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            o.push(j);
            j = perm_images[j];
        }
        o.sort();
        out.push(o);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(n, k, 0, &mut vec![], &mut out);
    out
}

/// Irreducible factors of the monic f whose roots are data.roots[idx], found as
/// unions of Frobenius orbits whose local product has small integer coefficients
/// and divides f exactly. Returns the data, possibly at higher precision.
pub fn factor_by_roots(data: &GaloisData, idx: &[usize], f: &IntPoly) -> Result<(Vec<Block>, GaloisData)> {
    let r = root_bound(f);
    let bound: BigInt = num_traits::pow(r + 1, f.deg());
    let data = data.ensure_precision(data.local.precision_for(&bound))?;
    let frob = data.frobenius().images();
    let mut orbits = orbits_of(&frob, idx);
    let mut rest = f.to_rat();
    let mut blocks = vec![];
    while !orbits.is_empty() {
        let mut found: Option<(Vec<usize>, RatPoly)> = None;
        if orbits.len() > 1 {
            'outer: for extra in 0..orbits.len() - 1 {
                for combo in combinations(orbits.len() - 1, extra) {
                    let mut pick = vec![0usize];
                    pick.extend(combo.iter().map(|c| c + 1));
                    let ids: Vec<usize> = pick.iter().flat_map(|&o| orbits[o].clone()).collect();
                    let roots: Vec<&LocalElem> = ids.iter().map(|&i| &data.roots[i]).collect();
                    let coeffs = local_product(&data.local, &roots);
                    let ints: Result<Vec<BigInt>> = coeffs
                        .iter()
                        .map(|c| data.local.reconstruct_integer(c, &bound))
                        .collect();
                    let Ok(ints) = ints else { continue };
                    let g = IntPoly::new(ints).to_rat();
                    if let Some(q) = rest.div_exact(&g) {
                        rest = q;
                        found = Some((pick, g));
                        break 'outer;
                    }
                }
            }
        }
        let (pick, g) = match found {
            Some(x) => x,
            None => ((0..orbits.len()).collect(), rest.clone()),
        };
        let mut ids: Vec<usize> = pick.iter().flat_map(|&o| orbits[o].clone()).collect();
        ids.sort();
        let poly = g.to_int().ok_or(Error::NotMonicIntegral)?;
        blocks.push(Block { indices: ids, poly });
        let mut k = 0;
        orbits.retain(|_| {
            let keep = !pick.contains(&k);
            k += 1;
            keep
        });
    }
    blocks.sort_by_key(|b| b.indices[0]);
    Ok((blocks, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_products() {
        // (x^2 - 2)(x^3 - 2)(x - 5)
        let f = IntPoly::from_i64(&[-2, 0, 1])
            .mul(&IntPoly::from_i64(&[-2, 0, 0, 1]))
            .mul(&IntPoly::from_i64(&[-5, 1]));
        let data = GaloisData::single(&f, None).unwrap();
        let all: Vec<usize> = (0..6).collect();
        let (blocks, _) = factor_by_roots(&data, &all, &f).unwrap();
        let mut degs: Vec<usize> = blocks.iter().map(|b| b.poly.deg()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2, 3]);
        for b in &blocks {
            assert_eq!(b.indices.len(), b.poly.deg());
        }
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = IntPoly::from_i64(&[1, -1, 0, 0, 0, 1]);
        let data = GaloisData::single(&f, None).unwrap();
        let (blocks, _) = factor_by_roots(&data, &[0, 1, 2, 3, 4], &f).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].poly, f);
    }
}
