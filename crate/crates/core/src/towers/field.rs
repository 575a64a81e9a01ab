//! Towers Q = K_0 < K_1 < ... < K_h, each level a monic polynomial over the one below.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{Rat, RatPoly};
use crate::error::{Error, Result};
use crate::local::{LocalElem, LocalField};

/// Element of a tower at some height: a rational at height 0, otherwise the
/// coefficients (lowest first, exactly m entries) of a polynomial in the level generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "ElemRepr", into = "ElemRepr")]
pub enum TowerElement {
    Base(Rat),
    Ext(Vec<TowerElement>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ElemRepr {
    Base(String),
    Ext(Vec<TowerElement>),
}

impl From<TowerElement> for ElemRepr {
    fn from(e: TowerElement) -> Self {
        match e {
            TowerElement::Base(q) => ElemRepr::Base(q.to_string()),
            TowerElement::Ext(v) => ElemRepr::Ext(v),
        }
    }
}

impl From<ElemRepr> for TowerElement {
    fn from(r: ElemRepr) -> Self {
        match r {
            ElemRepr::Base(s) => TowerElement::Base(s.parse().unwrap_or_else(|_| Rat::zero())),
            ElemRepr::Ext(v) => TowerElement::Ext(v),
        }
    }
}

impl TowerElement {
    fn parts(&self) -> &[TowerElement] {
        match self {
            TowerElement::Ext(v) => v,
            TowerElement::Base(_) => panic!("rational has no coefficient vector"),
        }
    }

    fn rat(&self) -> &Rat {
        match self {
            TowerElement::Base(q) => q,
            TowerElement::Ext(_) => panic!("expected a rational"),
        }
    }

    /// Coordinates in the absolute product basis, lowest level varying fastest.
    pub fn flatten(&self) -> Vec<Rat> {
        match self {
            TowerElement::Base(q) => vec![q.clone()],
            TowerElement::Ext(v) => v.iter().flat_map(|c| c.flatten()).collect(),
        }
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        match self {
            TowerElement::Base(q) => Some(q.clone()),
            TowerElement::Ext(v) => {
                if v[1..].iter().all(is_zero_elem) {
                    v[0].as_rational()
                } else {
                    None
                }
            }
        }
    }
}

fn is_zero_elem(e: &TowerElement) -> bool {
    match e {
        TowerElement::Base(q) => q.is_zero(),
        TowerElement::Ext(v) => v.iter().all(is_zero_elem),
    }
}

/// Polynomial over a tower level, lowest coefficient first.
pub type TowerPoly = Vec<TowerElement>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub name: String,
    /// Monic defining polynomial over the level below, lowest first.
    pub poly: TowerPoly,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerField {
    pub levels: Vec<Level>,
}

impl TowerField {
    pub fn rational() -> TowerField {
        TowerField { levels: vec![] }
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.degree()).collect()
    }

    pub fn absolute_degree(&self) -> usize {
        self.degrees().iter().product()
    }

    /// Absolute degree of the field at height h.
    pub fn degree_at(&self, h: usize) -> usize {
        self.levels[..h].iter().map(|l| l.degree()).product()
    }

    /// The subfield made of the first h levels.
    pub fn truncated(&self, h: usize) -> TowerField {
        TowerField { levels: self.levels[..h].to_vec() }
    }

    pub fn zero_at(&self, h: usize) -> TowerElement {
        self.from_rat_at(h, &Rat::zero())
    }

    pub fn one_at(&self, h: usize) -> TowerElement {
        self.from_rat_at(h, &Rat::one())
    }

    pub fn from_rat_at(&self, h: usize, q: &Rat) -> TowerElement {
        self.embed(&TowerElement::Base(q.clone()), 0, h)
    }

    /// View an element of height `from` inside height `to`.
    pub fn embed(&self, e: &TowerElement, from: usize, to: usize) -> TowerElement {
        let mut e = e.clone();
        for h in from..to {
            let mut v = vec![e];
            v.extend((1..self.levels[h].degree()).map(|_| self.zero_at(h)));
            e = TowerElement::Ext(v);
        }
        e
    }

    /// Generator of level h (1-based) as an element of height h.
    pub fn generator_at(&self, h: usize) -> TowerElement {
        let m = self.levels[h - 1].degree();
        if m == 1 {
            // degree-one level: the generator is minus the constant term
            return TowerElement::Ext(vec![self.neg_at(h - 1, &self.levels[h - 1].poly[0])]);
        }
        let mut v: Vec<TowerElement> = (0..m).map(|_| self.zero_at(h - 1)).collect();
        v[1] = self.one_at(h - 1);
        TowerElement::Ext(v)
    }

    pub fn is_zero(&self, e: &TowerElement) -> bool {
        is_zero_elem(e)
    }

    pub fn add_at(&self, h: usize, a: &TowerElement, b: &TowerElement) -> TowerElement {
        if h == 0 {
            return TowerElement::Base(a.rat() + b.rat());
        }
        TowerElement::Ext(
            a.parts()
                .iter()
                .zip(b.parts())
                .map(|(x, y)| self.add_at(h - 1, x, y))
                .collect(),
        )
    }

    pub fn neg_at(&self, h: usize, a: &TowerElement) -> TowerElement {
        if h == 0 {
            return TowerElement::Base(-a.rat());
        }
        TowerElement::Ext(a.parts().iter().map(|x| self.neg_at(h - 1, x)).collect())
    }

    pub fn sub_at(&self, h: usize, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.add_at(h, a, &self.neg_at(h, b))
    }

    pub fn scale_at(&self, h: usize, a: &TowerElement, q: &Rat) -> TowerElement {
        if h == 0 {
            return TowerElement::Base(a.rat() * q);
        }
        TowerElement::Ext(a.parts().iter().map(|x| self.scale_at(h - 1, x, q)).collect())
    }

    pub fn mul_at(&self, h: usize, a: &TowerElement, b: &TowerElement) -> TowerElement {
        if h == 0 {
            return TowerElement::Base(a.rat() * b.rat());
        }
        let (a, b) = (a.parts(), b.parts());
        let mut prod: Vec<TowerElement> = (0..a.len() + b.len() - 1).map(|_| self.zero_at(h - 1)).collect();
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.is_zero(y) {
                    continue;
                }
                prod[i + j] = self.add_at(h - 1, &prod[i + j], &self.mul_at(h - 1, x, y));
            }
        }
        TowerElement::Ext(self.reduce_poly(h, prod))
    }

    /// Reduce a polynomial over height h-1 modulo the level-h polynomial.
    fn reduce_poly(&self, h: usize, mut p: TowerPoly) -> TowerPoly {
        let g = &self.levels[h - 1].poly;
        let m = g.len() - 1;
        while p.len() > m {
            let c = p.pop().unwrap();
            if self.is_zero(&c) {
                continue;
            }
            let top = p.len();
            for j in 0..m {
                let k = top - m + j;
                p[k] = self.sub_at(h - 1, &p[k], &self.mul_at(h - 1, &c, &g[j]));
            }
        }
        while p.len() < m {
            p.push(self.zero_at(h - 1));
        }
        p
    }

    pub fn pow_at(&self, h: usize, a: &TowerElement, mut e: u64) -> TowerElement {
        let mut base = a.clone();
        let mut acc = self.one_at(h);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_at(h, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_at(h, &base, &base);
            }
        }
        acc
    }

    pub fn inv_at(&self, h: usize, a: &TowerElement) -> Result<TowerElement> {
        if self.is_zero(a) {
            return Err(Error::Tower("inverse of zero".into()));
        }
        if h == 0 {
            return Ok(TowerElement::Base(a.rat().recip()));
        }
        let s = self.poly_inv_mod(h - 1, a.parts().to_vec(), self.levels[h - 1].poly.clone())?;
        Ok(TowerElement::Ext(self.reduce_poly(h, s)))
    }

    fn trim(&self, p: &mut TowerPoly) {
        while p.last().is_some_and(|c| self.is_zero(c)) {
            p.pop();
        }
    }

    /// Polynomial division over the field at height h.
    pub fn poly_divrem(&self, h: usize, a: &TowerPoly, b: &TowerPoly) -> Result<(TowerPoly, TowerPoly)> {
        let mut b = b.clone();
        self.trim(&mut b);
        let Some(lead) = b.last() else {
            return Err(Error::Tower("division by the zero polynomial".into()));
        };
        let li = self.inv_at(h, lead)?;
        let mut r = a.clone();
        self.trim(&mut r);
        let db = b.len() - 1;
        if r.len() <= db {
            return Ok((vec![], r));
        }
        let mut q: TowerPoly = (0..r.len() - db).map(|_| self.zero_at(h)).collect();
        while r.len() > db {
            let c = self.mul_at(h, r.last().unwrap(), &li);
            let s = r.len() - 1 - db;
            for (j, bj) in b.iter().enumerate() {
                r[s + j] = self.sub_at(h, &r[s + j], &self.mul_at(h, &c, bj));
            }
            q[s] = c;
            r.pop();
            self.trim(&mut r);
        }
        Ok((q, r))
    }

    fn poly_mul(&self, h: usize, a: &TowerPoly, b: &TowerPoly) -> TowerPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out: TowerPoly = (0..a.len() + b.len() - 1).map(|_| self.zero_at(h)).collect();
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add_at(h, &out[i + j], &self.mul_at(h, x, y));
            }
        }
        out
    }

    fn poly_sub(&self, h: usize, a: &TowerPoly, b: &TowerPoly) -> TowerPoly {
        let n = a.len().max(b.len());
        let z = self.zero_at(h);
        let mut out: TowerPoly = (0..n)
            .map(|i| self.sub_at(h, a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.trim(&mut out);
        out
    }

    /// s with s*a = 1 modulo g, over height h, by the extended Euclidean algorithm.
    fn poly_inv_mod(&self, h: usize, a: TowerPoly, g: TowerPoly) -> Result<TowerPoly> {
        let (mut r0, mut r1) = (g, a);
        self.trim(&mut r1);
        let (mut s0, mut s1): (TowerPoly, TowerPoly) = (vec![], vec![self.one_at(h)]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(h, &r0, &r1)?;
            let s = self.poly_sub(h, &s0, &self.poly_mul(h, &q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return Err(Error::Tower("element is a zero divisor; level polynomial is reducible".into()));
        }
        let c = self.inv_at(h, &r0[0])?;
        Ok(s0.iter().map(|x| self.mul_at(h, x, &c)).collect())
    }

    /// p(x) evaluated at an element, all at height h.
    pub fn eval_poly_at(&self, h: usize, p: &TowerPoly, x: &TowerElement) -> TowerElement {
        let mut acc = self.zero_at(h);
        for c in p.iter().rev() {
            acc = self.add_at(h, &self.mul_at(h, &acc, x), c);
        }
        acc
    }

    /// A rational polynomial evaluated at an element of height h.
    pub fn eval_rat_poly_at(&self, h: usize, f: &RatPoly, x: &TowerElement) -> TowerElement {
        let p: TowerPoly = f.coeffs().iter().map(|c| self.from_rat_at(h, c)).collect();
        self.eval_poly_at(h, &p, x)
    }

    /// Local image of an element of height h, given local images of the first h generators.
    pub fn to_local(&self, h: usize, e: &TowerElement, gens: &[LocalElem], local: &LocalField) -> Result<LocalElem> {
        if h == 0 {
            return local.from_rat(e.rat());
        }
        let mut acc = local.zero();
        for c in e.parts().iter().rev() {
            let v = self.to_local(h - 1, c, gens, local)?;
            acc = local.add(&local.mul(&acc, &gens[h - 1]), &v);
        }
        Ok(acc)
    }

    /// Element of height h from absolute coordinates (see `TowerElement::flatten`).
    pub fn from_flat(&self, h: usize, c: &[Rat]) -> TowerElement {
        if h == 0 {
            return TowerElement::Base(c[0].clone());
        }
        let step = self.degree_at(h - 1);
        TowerElement::Ext(c.chunks(step).map(|ch| self.from_flat(h - 1, ch)).collect())
    }

    /// Add a level defined by a monic polynomial over the current top.
    pub fn extend(&self, poly: TowerPoly, name: &str) -> Result<TowerField> {
        let h = self.height();
        if poly.len() < 2 {
            return Err(Error::Tower("defining polynomial must have degree at least 1".into()));
        }
        if *poly.last().unwrap() != self.one_at(h) {
            return Err(Error::Tower("defining polynomial must be monic".into()));
        }
        let mut levels = self.levels.clone();
        levels.push(Level { name: name.to_string(), poly });
        Ok(TowerField { levels })
    }

    // Top-level conveniences.

    pub fn zero(&self) -> TowerElement {
        self.zero_at(self.height())
    }

    pub fn one(&self) -> TowerElement {
        self.one_at(self.height())
    }

    pub fn from_rat(&self, q: &Rat) -> TowerElement {
        self.from_rat_at(self.height(), q)
    }

    pub fn from_int(&self, n: i64) -> TowerElement {
        self.from_rat(&Rat::from_integer(BigInt::from(n)))
    }

    /// Generator of level h viewed at the top.
    pub fn generator(&self, h: usize) -> TowerElement {
        self.embed(&self.generator_at(h), h, self.height())
    }

    pub fn add(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.add_at(self.height(), a, b)
    }

    pub fn sub(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.sub_at(self.height(), a, b)
    }

    pub fn neg(&self, a: &TowerElement) -> TowerElement {
        self.neg_at(self.height(), a)
    }

    pub fn mul(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.mul_at(self.height(), a, b)
    }

    pub fn pow(&self, a: &TowerElement, e: u64) -> TowerElement {
        self.pow_at(self.height(), a, e)
    }

    pub fn inv(&self, a: &TowerElement) -> Result<TowerElement> {
        self.inv_at(self.height(), a)
    }

    pub fn eval_rat_poly(&self, f: &RatPoly, x: &TowerElement) -> TowerElement {
        self.eval_rat_poly_at(self.height(), f, x)
    }

    /// Render an element of height h using the level names.
    pub fn render_at(&self, h: usize, e: &TowerElement) -> String {
        if h == 0 {
            return e.rat().to_string();
        }
        let name = &self.levels[h - 1].name;
        let mut terms: Vec<(bool, String)> = vec![];
        for (i, c) in e.parts().iter().enumerate().rev() {
            if self.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => name.clone(),
                _ => format!("{name}^{i}"),
            };
            let (neg, body) = match c.as_rational() {
                Some(q) => {
                    let neg = q.is_negative();
                    let a = q.abs();
                    let body = if mono.is_empty() {
                        a.to_string()
                    } else if a.is_one() {
                        mono
                    } else {
                        format!("{a}*{mono}")
                    };
                    (neg, body)
                }
                None => {
                    let inner = self.render_at(h - 1, c);
                    if mono.is_empty() {
                        (false, inner)
                    } else {
                        (false, format!("({inner})*{mono}"))
                    }
                }
            };
            terms.push((neg, body));
        }
        join_terms(terms)
    }

    pub fn render(&self, e: &TowerElement) -> String {
        self.render_at(self.height(), e)
    }

    /// Render a polynomial over height h in the variable `var`.
    pub fn render_poly_at(&self, h: usize, p: &TowerPoly, var: &str) -> String {
        let mut terms: Vec<(bool, String)> = vec![];
        for (i, c) in p.iter().enumerate().rev() {
            if self.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let (neg, body) = match c.as_rational() {
                Some(q) => {
                    let a = q.abs();
                    let body = if mono.is_empty() {
                        a.to_string()
                    } else if a.is_one() {
                        mono
                    } else {
                        format!("{a}*{mono}")
                    };
                    (q.is_negative(), body)
                }
                None => {
                    let inner = self.render_at(h, c);
                    if mono.is_empty() {
                        (false, format!("({inner})"))
                    } else {
                        (false, format!("({inner})*{mono}"))
                    }
                }
            };
            terms.push((neg, body));
        }
        join_terms(terms)
    }

    /// Indented display, top field first, one defining polynomial per level.
    pub fn render_tower(&self) -> String {
        let mut out = String::new();
        for h in (1..=self.height()).rev() {
            let l = &self.levels[h - 1];
            out.push_str(&format!("  K{h}<{}>\n", l.name));
            out.push_str("    |\n");
            out.push_str(&format!("    | {}\n", self.render_poly_at(h - 1, &l.poly, "x")));
            out.push_str("    |\n");
        }
        out.push_str("Rational Field\n");
        out
    }
}

fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    s
}

impl fmt::Display for TowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_tower())
    }
}

/// Rational polynomial as a polynomial over height h.
pub fn lift_rat_poly(k: &TowerField, h: usize, f: &RatPoly) -> TowerPoly {
    f.coeffs().iter().map(|c| k.from_rat_at(h, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    fn sqrt2() -> TowerField {
        let k = TowerField::rational();
        k.extend(lift_rat_poly(&k, 0, &RatPoly::from_i64(&[-2, 0, 1])), "a1").unwrap()
    }

    #[test]
    fn quadratic_arithmetic() {
        let k = sqrt2();
        let a = k.generator(1);
        let one = k.one();
        let p = k.mul(&k.add(&one, &a), &k.sub(&one, &a));
        assert_eq!(p, k.from_int(-1));
        assert_eq!(k.inv(&a).unwrap(), k.scale_at(1, &a, &rat_frac(1, 2)));
    }

    #[test]
    fn second_level() {
        let k = sqrt2();
        let a = k.generator(1);
        // y^2 - (1 + a)
        let g = vec![k.neg(&k.add(&k.one(), &a)), k.zero(), k.one()];
        let k2 = k.extend(g, "a2").unwrap();
        assert_eq!(k2.absolute_degree(), 4);
        let b = k2.generator(2);
        let b2 = k2.mul(&b, &b);
        assert_eq!(b2, k2.add(&k2.one(), &k2.generator(1)));
        let bi = k2.inv(&b).unwrap();
        assert_eq!(k2.mul(&b, &bi), k2.one());
        assert_eq!(k2.render(&b2), "a1 + 1");
    }

    #[test]
    fn non_monic_rejected() {
        let k = TowerField::rational();
        assert!(k.extend(lift_rat_poly(&k, 0, &RatPoly::from_i64(&[1, 2])), "a").is_err());
    }

    #[test]
    fn flat_round_trip() {
        let k = sqrt2();
        let k2 = k
            .extend(vec![k.from_int(-3), k.zero(), k.one()], "a2")
            .unwrap();
        let c: Vec<Rat> = (1..=4).map(rat).collect();
        let e = k2.from_flat(2, &c);
        assert_eq!(e.flatten(), c);
    }

    #[test]
    fn serde_round_trip() {
        let k = sqrt2();
        let s = serde_json::to_string(&k).unwrap();
        let back: TowerField = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
        let e = k.scale_at(1, &k.generator(1), &rat_frac(-3, 4));
        let back: TowerElement = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
    }
}
