//! Independent oracles for small Galois groups, built only on discriminants,
//! rational roots of resolvent cubics and factor patterns modulo primes.
#![allow(dead_code)]

use galois_core::arith::modp;
use galois_core::arith::{discriminant, is_rational_square, rat, Rat};
use galois_core::IntPoly;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn ip(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}

/// Polynomials exercised by the engine, tower and consistency checks, with labels.
pub fn suite() -> Vec<(&'static str, IntPoly)> {
    vec![
        ("x^2-2", ip(&[-2, 0, 1])),
        ("x^2+x+1", ip(&[1, 1, 1])),
        ("x^3-2", ip(&[-2, 0, 0, 1])),
        ("x^3-3x-1", ip(&[-1, -3, 0, 1])),
        ("x^3-x-1", ip(&[-1, -1, 0, 1])),
        ("x^3-7x-7", ip(&[-7, -7, 0, 1])),
        ("x^4+1", ip(&[1, 0, 0, 0, 1])),
        ("x^4+x+1", ip(&[1, 1, 0, 0, 1])),
        ("x^4-2", ip(&[-2, 0, 0, 0, 1])),
        ("x^4+x^3+x^2+x+1", ip(&[1, 1, 1, 1, 1])),
        ("x^4+8x+12", ip(&[12, 8, 0, 0, 1])),
        ("x^4-10x^2+1", ip(&[1, 0, -10, 0, 1])),
        ("x^5-2", ip(&[-2, 0, 0, 0, 0, 1])),
        ("x^5-x+1", ip(&[1, -1, 0, 0, 0, 1])),
        ("x^5-5x+12", ip(&[12, -5, 0, 0, 0, 1])),
        ("x^5+x^4-4x^3-3x^2+3x+1", ip(&[1, 3, -3, -4, 1, 1])),
        ("x^5+20x+16", ip(&[16, 20, 0, 0, 0, 1])),
    ]
}

fn disc_square(f: &IntPoly) -> bool {
    is_rational_square(&discriminant(&f.to_rat()))
}

/// Integer roots of a monic integer polynomial, by divisors of the constant term.
pub fn integer_roots(f: &IntPoly) -> Vec<BigInt> {
    let c0 = f.coeff(0);
    if c0.is_zero() {
        let shifted = IntPoly::new(f.coeffs()[1..].to_vec());
        let mut r = integer_roots(&shifted);
        r.push(BigInt::zero());
        r.sort();
        r.dedup();
        return r;
    }
    let a = c0.abs().to_u64().expect("small constant term");
    let mut out = vec![];
    let mut d = 1u64;
    while d * d <= a {
        if a.is_multiple_of(d) {
            for q in [d, a / d] {
                for s in [BigInt::from(q), -BigInt::from(q)] {
                    if f.eval(&s).is_zero() && !out.contains(&s) {
                        out.push(s);
                    }
                }
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Order of Gal(f) for an irreducible cubic.
pub fn cubic_order(f: &IntPoly) -> u128 {
    if disc_square(f) {
        3
    } else {
        6
    }
}

/// Order of Gal(f) for an irreducible monic quartic via its resolvent cubic.
pub fn quartic_order(f: &IntPoly) -> u128 {
    let (a, b, c, d) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    let r = IntPoly::new(vec![
        -(&a * &a * &d - BigInt::from(4) * &b * &d + &c * &c),
        &a * &c - BigInt::from(4) * &d,
        -b.clone(),
        BigInt::from(1),
    ]);
    let roots = integer_roots(&r);
    let sq = disc_square(f);
    match roots.len() {
        0 => {
            if sq {
                12
            } else {
                24
            }
        }
        1 => {
            let t = &roots[0];
            let disc = discriminant(&f.to_rat());
            let q1 = Rat::from_integer(t * t - BigInt::from(4) * &d) * &disc;
            let q2 = Rat::from_integer(&a * &a - BigInt::from(4) * (&b - t)) * &disc;
            if is_rational_square(&q1) && is_rational_square(&q2) {
                4
            } else {
                8
            }
        }
        _ => 4,
    }
}

/// Cycle types of Frobenius at the first `count` odd primes where f is squarefree.
pub fn cycle_types(f: &IntPoly, count: usize) -> Vec<(u64, Vec<usize>)> {
    let mut out = vec![];
    let mut p = 3u64;
    while out.len() < count {
        if modp::is_prime(p) {
            let fp = modp::reduce(f, p);
            if fp.len() == f.coeffs().len() && modp::is_squarefree(&fp, p) {
                out.push((p, modp::factor_degrees(&fp, p)));
            }
        }
        p += 2;
    }
    out
}

/// Order of Gal(f) for an irreducible quintic from cycle types and the discriminant.
pub fn quintic_order(f: &IntPoly) -> u128 {
    let types: Vec<Vec<usize>> = cycle_types(f, 300).into_iter().map(|(_, t)| t).collect();
    let has = |t: &[usize]| types.iter().any(|x| x == t);
    let sq = disc_square(f);
    if has(&[1, 1, 3]) || has(&[2, 3]) || has(&[1, 1, 1, 2]) {
        return if sq { 60 } else { 120 };
    }
    if has(&[1, 4]) {
        return 20;
    }
    if has(&[1, 2, 2]) {
        return 10;
    }
    5
}

/// Oracle order for the suite's irreducible polynomials of degree <= 5.
pub fn oracle_order(f: &IntPoly) -> u128 {
    match f.deg() {
        1 => 1,
        2 => 2,
        3 => cubic_order(f),
        4 => quartic_order(f),
        5 => quintic_order(f),
        _ => panic!("no oracle for degree {}", f.deg()),
    }
}

/// Squarefree part of an integer, up to sign, as a canonical class label.
pub fn square_class(q: &Rat) -> BigInt {
    // q = n/d has the class of n*d
    let mut m = q.numer() * q.denom();
    let sign = if m.is_negative() { -1 } else { 1 };
    m = m.abs();
    let mut out = BigInt::from(1);
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out *= m;
    out * sign
}

pub fn same_square_class(a: &Rat, b: &Rat) -> bool {
    !a.is_zero() && !b.is_zero() && square_class(a) == square_class(b)
}

pub fn r(n: i64) -> Rat {
    rat(n)
}
