//! Maximal transitive subgroups of S_n and A_n for n <= 9.
//!
//! Imprimitive ones are wreath products S_a wr S_b built on the fly. Primitive
//! ones are stored as generator data below. Including a non-maximal group does
//! no harm to descent, but omitting a maximal one would.

use super::group::PermGroup;
use super::permutation::Perm;

/// A named candidate subgroup.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub name: String,
    pub group: PermGroup,
}

struct Primitive {
    degree: usize,
    name: &'static str,
    order: u128,
    gens: &'static str,
    /// Contained in A_n, so it is maximal there in two conjugacy classes.
    even: bool,
}

impl Primitive {
    fn group(&self) -> PermGroup {
        let g = PermGroup::parse(self.degree, self.gens).unwrap();
        debug_assert_eq!(g.order(), self.order, "{}", self.name);
        g
    }
}

const PRIMITIVE: &[Primitive] = &[
    Primitive { degree: 5, name: "AGL(1,5)", order: 20, gens: "(1,2,3,4,5);(2,3,5,4)", even: false },
    Primitive { degree: 6, name: "PGL(2,5)", order: 120, gens: "(1,2,3,4,5);(2,3,5,4);(1,6)(2,5)", even: false },
    Primitive { degree: 7, name: "AGL(1,7)", order: 42, gens: "(1,2,3,4,5,6,7);(2,4,3,7,5,6)", even: false },
    Primitive { degree: 7, name: "PSL(3,2)", order: 168, gens: "(3,5)(6,7);(1,2,3)(4,5,7)", even: true },
    Primitive {
        degree: 8,
        name: "PGL(2,7)",
        order: 336,
        gens: "(1,2,3,4,5,6,7);(2,4,3,7,5,6);(1,8)(2,7)(3,4)(5,6)",
        even: false,
    },
    Primitive {
        degree: 8,
        name: "AGL(3,2)",
        order: 1344,
        gens: "(1,2)(3,4)(5,6)(7,8);(2,3,5)(4,7,6);(3,4)(7,8)",
        even: true,
    },
    Primitive {
        degree: 9,
        name: "AGL(2,3)",
        order: 432,
        gens: "(1,2,3)(4,5,6)(7,8,9);(4,5,6)(7,9,8);(2,4)(3,7)(6,8);(2,3)(5,6)(8,9)",
        even: false,
    },
    Primitive {
        degree: 9,
        name: "PGammaL(2,8)",
        order: 1512,
        gens: "(1,2)(3,4)(5,6)(7,8);(2,3,5,4,7,8,6);(1,9)(3,6)(4,7)(5,8);(3,5,7)(4,6,8)",
        even: true,
    },
];

/// Largest degree covered by the table.
pub const TABLE_MAX_DEGREE: usize = 9;

/// S_a wr S_b on a*b points, blocks {1..a}, {a+1..2a}, ...
pub fn wreath(a: usize, b: usize) -> PermGroup {
    let n = a * b;
    let mut gens = vec![];
    if a > 1 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(Perm::from_images(swap).unwrap());
        let cyc: Vec<usize> = (0..n).map(|i| if i < a { (i + 1) % a } else { i }).collect();
        gens.push(Perm::from_images(cyc).unwrap());
    }
    if b > 1 {
        let swap: Vec<usize> = (0..n)
            .map(|i| match i / a {
                0 => i + a,
                1 => i - a,
                _ => i,
            })
            .collect();
        gens.push(Perm::from_images(swap).unwrap());
        let cyc: Vec<usize> = (0..n).map(|i| (i + a) % n).collect();
        gens.push(Perm::from_images(cyc).unwrap());
    }
    PermGroup::new(n, gens).unwrap()
}

fn transposition12(n: usize) -> Perm {
    let mut v: Vec<usize> = (0..n).collect();
    v.swap(0, 1);
    Perm::from_images(v).unwrap()
}

fn sort_by_index(mut v: Vec<Candidate>) -> Vec<Candidate> {
    v.sort_by_key(|c| std::cmp::Reverse(c.group.order()));
    v
}

/// Transitive maximal subgroups of S_n other than A_n, in increasing index.
/// None for n beyond the table.
pub fn symmetric_transitive_maximals(n: usize) -> Option<Vec<Candidate>> {
    if n > TABLE_MAX_DEGREE {
        return None;
    }
    let mut v = vec![];
    for a in 2..n {
        if n.is_multiple_of(a) {
            v.push(Candidate {
                name: format!("S{}wrS{}", a, n / a),
                group: wreath(a, n / a),
            });
        }
    }
    for p in PRIMITIVE.iter().filter(|p| p.degree == n && !p.even) {
        v.push(Candidate {
            name: p.name.to_string(),
            group: p.group(),
        });
    }
    Some(sort_by_index(v))
}

/// Transitive maximal subgroups of A_n, up to A_n-conjugacy, in increasing index.
pub fn alternating_transitive_maximals(n: usize) -> Option<Vec<Candidate>> {
    let sym = symmetric_transitive_maximals(n)?;
    let t = transposition12(n);
    let mut v = vec![];
    for c in sym {
        if c.group.is_even() {
            v.push(Candidate {
                name: format!("{}'", c.name),
                group: c.group.conjugate(&t),
            });
            v.push(c);
        } else {
            v.push(Candidate {
                name: format!("{}+", c.name),
                group: c.group.even_part(),
            });
        }
    }
    for p in PRIMITIVE.iter().filter(|p| p.degree == n && p.even) {
        let g = p.group();
        v.push(Candidate {
            name: format!("{}'", p.name),
            group: g.conjugate(&t),
        });
        v.push(Candidate {
            name: p.name.to_string(),
            group: g,
        });
    }
    Some(sort_by_index(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_data_is_sound() {
        for p in PRIMITIVE {
            let g = PermGroup::parse(p.degree, p.gens).unwrap();
            assert_eq!(g.order(), p.order, "{}", p.name);
            assert!(g.is_transitive(), "{}", p.name);
            assert!(g.is_primitive(), "{}", p.name);
            assert_eq!(g.is_even(), p.even, "{}", p.name);
        }
    }

    #[test]
    fn wreath_orders() {
        assert_eq!(wreath(2, 2).order(), 8);
        assert_eq!(wreath(2, 3).order(), 48);
        assert_eq!(wreath(3, 2).order(), 72);
        assert_eq!(wreath(2, 4).order(), 384);
        assert_eq!(wreath(4, 2).order(), 1152);
        assert_eq!(wreath(3, 3).order(), 1296);
        for (a, b) in [(2, 2), (2, 3), (3, 3), (4, 2)] {
            let w = wreath(a, b);
            assert!(w.is_transitive());
            assert!(!w.is_primitive());
        }
    }

    #[test]
    fn candidate_lists() {
        let s4 = symmetric_transitive_maximals(4).unwrap();
        assert_eq!(s4.len(), 1);
        assert_eq!(s4[0].group.order(), 8);
        let a4 = alternating_transitive_maximals(4).unwrap();
        assert_eq!(a4.iter().map(|c| c.group.order()).collect::<Vec<_>>(), vec![4]);
        let a7 = alternating_transitive_maximals(7).unwrap();
        let orders: Vec<u128> = a7.iter().map(|c| c.group.order()).collect();
        assert_eq!(orders, vec![168, 168, 21]);
        for n in 2..=9 {
            let an = PermGroup::alternating(n);
            for c in alternating_transitive_maximals(n).unwrap() {
                assert!(c.group.is_subgroup_of(&an), "{n} {}", c.name);
                assert!(c.group.is_transitive());
            }
        }
        assert!(symmetric_transitive_maximals(10).is_none());
    }

    #[test]
    fn two_classes_are_distinct() {
        let a7 = alternating_transitive_maximals(7).unwrap();
        assert!(a7[0].group != a7[1].group);
    }
}
