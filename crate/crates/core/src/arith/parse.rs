use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Rat, RatPoly};
use crate::error::{Error, Result};

/// Parse a polynomial in `x`, e.g. `x^6 - 2*x + 1` or `3/4*x^2 - x`,
/// or a JSON array of coefficients `[c0, c1, ..., cn]` lowest first.
pub fn parse_poly(src: &str) -> Result<RatPoly> {
    let s = src.trim();
    if s.starts_with('[') {
        return parse_json_array(s);
    }
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<Rat> = vec![];
    let mut i = 0;
    let mut first = true;
    while i < chars.len() {
        let mut sign = Rat::one();
        match chars[i] {
            '+' => i += 1,
            '-' => {
                sign = -sign;
                i += 1;
            }
            _ if !first => return Err(Error::Parse(format!("expected + or - at {i}"))),
            _ => {}
        }
        first = false;
        let (c, deg, next) = parse_term(&chars, i)?;
        i = next;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, Rat::zero());
        }
        coeffs[deg] += sign * c;
    }
    Ok(RatPoly::new(coeffs))
}

fn parse_number(chars: &[char], mut i: usize) -> Option<(Rat, usize)> {
    let start = i;
    while i < chars.len() && chars[i].is_ascii_digit() {
        i += 1;
    }
    if i == start {
        return None;
    }
    let num: BigInt = chars[start..i].iter().collect::<String>().parse().ok()?;
    if i < chars.len() && chars[i] == '/' {
        let s2 = i + 1;
        let mut j = s2;
        while j < chars.len() && chars[j].is_ascii_digit() {
            j += 1;
        }
        if j == s2 {
            return None;
        }
        let den: BigInt = chars[s2..j].iter().collect::<String>().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some((Rat::new(num, den), j));
    }
    Some((Rat::from_integer(num), i))
}

fn parse_term(chars: &[char], mut i: usize) -> Result<(Rat, usize, usize)> {
    let mut coeff = Rat::one();
    let mut saw_num = false;
    if let Some((c, j)) = parse_number(chars, i) {
        coeff = c;
        saw_num = true;
        i = j;
        if i < chars.len() && chars[i] == '*' {
            i += 1;
            if i >= chars.len() || chars[i] != 'x' {
                return Err(Error::Parse(format!("expected x after * at {i}")));
            }
        }
    }
    if i < chars.len() && chars[i] == 'x' {
        i += 1;
        let mut deg = 1usize;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if s == i {
                return Err(Error::Parse(format!("missing exponent at {s}")));
            }
            deg = chars[s..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse("bad exponent".into()))?;
        }
        return Ok((coeff, deg, i));
    }
    if !saw_num {
        return Err(Error::Parse(format!("unexpected character at {i}")));
    }
    Ok((coeff, 0, i))
}

fn parse_json_array(s: &str) -> Result<RatPoly> {
    let v: serde_json::Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array".into()))?;
    let mut coeffs = vec![];
    for item in arr {
        let c = match item {
            serde_json::Value::Number(n) => {
                let t = n.to_string();
                let chars: Vec<char> = t.trim_start_matches('-').chars().collect();
                let (mut r, end) = parse_number(&chars, 0)
                    .filter(|(_, e)| *e == chars.len())
                    .ok_or_else(|| Error::Parse(format!("non-integer coefficient {t}")))?;
                if t.starts_with('-') {
                    r = -r;
                }
                let _ = end;
                r
            }
            serde_json::Value::String(t) => {
                let neg = t.trim().starts_with('-');
                let body: Vec<char> = t.trim().trim_start_matches('-').chars().collect();
                let (mut r, end) = parse_number(&body, 0)
                    .ok_or_else(|| Error::Parse(format!("bad coefficient {t}")))?;
                if end != body.len() {
                    return Err(Error::Parse(format!("bad coefficient {t}")));
                }
                if neg {
                    r = -r;
                }
                r
            }
            _ => return Err(Error::Parse("coefficients must be numbers or strings".into())),
        };
        coeffs.push(c);
    }
    Ok(RatPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::{rat, rat_frac};

    #[test]
    fn parses_text_form() {
        let f = parse_poly("x^6 - 2*x + 1").unwrap();
        assert_eq!(f, RatPoly::from_i64(&[1, -2, 0, 0, 0, 0, 1]));
        let g = parse_poly("-x^2 + 3/4").unwrap();
        assert_eq!(g, RatPoly::new(vec![rat_frac(3, 4), rat(0), rat(-1)]));
        let h = parse_poly("2x^3 - x - x").unwrap();
        assert_eq!(h, RatPoly::from_i64(&[0, -2, 0, 2]));
        assert_eq!(parse_poly("x").unwrap(), RatPoly::x());
    }

    #[test]
    fn parses_json_form() {
        assert_eq!(parse_poly("[-2, 0, 1]").unwrap(), RatPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(
            parse_poly("[\"3/4\", 0, 1]").unwrap(),
            RatPoly::new(vec![rat_frac(3, 4), rat(0), rat(1)])
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("y^2").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x 2").is_err());
        assert!(parse_poly("[1.5]").is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["x^6 - 2*x + 1", "x^2 + 3/4", "-x^3 + 5/7*x - 1"] {
            assert_eq!(parse_poly(s).unwrap().to_string(), s);
        }
    }
}
