use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of {0..n-1}, stored as its image list. Points are printed
/// 1-based in cycle notation.
///
/// Products compose left to right: `a.mul(&b)` maps i to b(a(i)).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= 255, "degree above 255 is not supported");
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    /// Build from 1-based cycles, e.g. `&[&[1, 2], &[4, 5]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let b = c[(k + 1) % c.len()];
                if a == 0 || a > n || b == 0 || b > n || touched[a - 1] {
                    return Err(Error::Parse(format!("bad cycle {c:?} on {n} points")));
                }
                touched[a - 1] = true;
                img[a - 1] = b - 1;
            }
        }
        Perm::from_images(img)
    }

    /// Parse cycle notation such as `(1,4)(2,5)(3,6)`; `()` is the identity.
    pub fn parse(n: usize, s: &str) -> Result<Perm> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles: Vec<Vec<usize>> = vec![];
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s}")))?;
            let end = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s}")))?;
            let inner = &body[..end];
            if !inner.is_empty() {
                let pts = inner
                    .split(',')
                    .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {t}"))))
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(pts);
            }
            rest = &body[end + 1..];
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Left-to-right product: first self, then other.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm { images: out }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut r = Perm::identity(self.degree());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// a^-1 * self * a
    pub fn conj(&self, a: &Perm) -> Perm {
        a.inv().mul(self).mul(a)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = vec![];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![];
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                c.push(i);
                i = self.apply(i);
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths sorted ascending, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Embed into a larger degree, fixing the new points.
    pub fn extend(&self, n: usize) -> Perm {
        let mut img = self.images.clone();
        img.extend(self.degree() as u8..n as u8);
        Perm { images: img }
    }

    /// Transport along an injection of points: point i goes to `map[i]` in degree n.
    pub fn relabel(&self, map: &[usize], n: usize) -> Perm {
        let mut img: Vec<u8> = (0..n as u8).collect();
        for (i, &j) in self.images.iter().enumerate() {
            img[map[i]] = map[j as usize] as u8;
        }
        Perm { images: img }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let s: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse(6, "(1,4)(2,5)(3,6)").unwrap();
        assert_eq!(p.to_string(), "(1,4)(2,5)(3,6)");
        assert_eq!(p.apply(0), 3);
        assert!(Perm::parse(6, "()").unwrap().is_identity());
        assert!(Perm::parse(3, "(1,4)").is_err());
        assert!(Perm::parse(3, "(1,2)(2,3)").is_err());
    }

    #[test]
    fn left_to_right_product() {
        let a = Perm::parse(3, "(1,2)").unwrap();
        let b = Perm::parse(3, "(2,3)").unwrap();
        // 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
        assert_eq!(a.mul(&b).to_string(), "(1,3,2)");
        assert!(a.mul(&a.inv()).is_identity());
        assert_eq!(a.mul(&b).order(), 3);
        assert!(!a.is_even());
    }
}
