//! Canonical text forms.
//!
//! * `XPoly`: descending powers, e.g. `1/2*x^2+3/2*x+1`, `-x+2`, `0`.
//! * `QLaurent`: the bare `XPoly` form when only `q^0` occurs, otherwise
//!   ascending terms `q^-1*(x^2+1/2) + q^0*(3)`.
//! * `CycloElem`: `zeta<l>:` followed by the `QLaurent` form of its reduced
//!   representative, e.g. `zeta6:q^0*(-1) + q^1*(2)`.
//!
//! `Display` output parses back to an identical value.

use std::fmt;
use std::str::FromStr;

use super::{CycloElem, QLaurent, Rational, Ring, XPoly};
use crate::error::AlgebraError;

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{a}*x^{k}")?,
            }
        }
        Ok(())
    }
}

fn parse_err(s: &str, why: &str) -> AlgebraError {
    AlgebraError::Parse(format!("{why} in '{s}'"))
}

impl FromStr for XPoly {
    type Err = AlgebraError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(parse_err(input, "empty polynomial"));
        }
        let b = s.as_bytes();
        let mut pos = 0;
        let mut acc = XPoly::zero();
        while pos < b.len() {
            let mut neg = false;
            if b[pos] == b'+' || b[pos] == b'-' {
                neg = b[pos] == b'-';
                pos += 1;
            } else if pos != 0 {
                return Err(parse_err(input, "expected '+' or '-'"));
            }
            let start = pos;
            while pos < b.len() && (b[pos].is_ascii_digit() || b[pos] == b'/') {
                pos += 1;
            }
            let coef = if pos > start {
                s[start..pos].parse::<Rational>().map_err(|_| parse_err(input, "bad coefficient"))?
            } else {
                Rational::one()
            };
            let had_coef = pos > start;
            if pos < b.len() && b[pos] == b'*' {
                if !had_coef {
                    return Err(parse_err(input, "'*' without coefficient"));
                }
                pos += 1;
                if pos >= b.len() || b[pos] != b'x' {
                    return Err(parse_err(input, "expected 'x' after '*'"));
                }
            }
            let mut deg = 0usize;
            if pos < b.len() && b[pos] == b'x' {
                pos += 1;
                deg = 1;
                if pos < b.len() && b[pos] == b'^' {
                    pos += 1;
                    let e0 = pos;
                    while pos < b.len() && b[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    deg = s[e0..pos].parse().map_err(|_| parse_err(input, "bad exponent"))?;
                }
            } else if !had_coef {
                return Err(parse_err(input, "empty term"));
            }
            let mut cs = vec![Rational::zero(); deg + 1];
            cs[deg] = if neg { coef.neg() } else { coef };
            acc = acc.add(&XPoly::from_coeffs(cs));
        }
        Ok(acc)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_xpoly() {
            return write!(f, "{p}");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "q^{e}*({c})")?;
        }
        Ok(())
    }
}

impl FromStr for QLaurent {
    type Err = AlgebraError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if !s.contains('q') {
            return Ok(QLaurent::from_xpoly(s.parse()?));
        }
        // Split at depth-0 '+' signs into q^e*(...) terms.
        let mut terms = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' if depth == 0 => {
                    terms.push(&s[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
            if depth < 0 {
                return Err(parse_err(input, "unbalanced parentheses"));
            }
        }
        terms.push(&s[start..]);
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let rest = t.strip_prefix("q^").ok_or_else(|| parse_err(input, "expected 'q^'"))?;
            let (e, body) = rest.split_once("*(").ok_or_else(|| parse_err(input, "expected '*('"))?;
            let body = body.strip_suffix(')').ok_or_else(|| parse_err(input, "expected ')'"))?;
            let e: i64 = e.parse().map_err(|_| parse_err(input, "bad q exponent"))?;
            parsed.push((e, body.parse::<XPoly>()?));
        }
        Ok(QLaurent::from_terms(parsed))
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta{}:{}", self.order(), self.to_laurent())
    }
}

impl FromStr for CycloElem {
    type Err = AlgebraError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s = input.trim();
        let rest = s.strip_prefix("zeta").ok_or_else(|| parse_err(input, "expected 'zeta'"))?;
        let (order, body) = rest.split_once(':').ok_or_else(|| parse_err(input, "expected ':'"))?;
        let order: u32 = order.parse().map_err(|_| parse_err(input, "bad order"))?;
        let v: QLaurent = body.parse()?;
        CycloElem::from_laurent(&v, order, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xpoly_text() {
        let p = XPoly::binomial(2, 2);
        assert_eq!(p.to_string(), "1/2*x^2+3/2*x+1");
        assert_eq!(XPoly::from_i64s(&[2, -1]).to_string(), "-x+2");
        assert_eq!(XPoly::zero().to_string(), "0");
        assert_eq!("x^2 + 1/2".parse::<XPoly>().unwrap().to_string(), "x^2+1/2");
        assert_eq!(
            "-3/4*x^3-x".parse::<XPoly>().unwrap(),
            XPoly::from_coeffs(vec![Rational::zero(), Rational::from(-1), Rational::zero(), Rational::new(-3, 4)])
        );
        assert!("x^".parse::<XPoly>().is_err());
        assert!("2x+".parse::<XPoly>().is_err());
        assert!("*x".parse::<XPoly>().is_err());
    }

    #[test]
    fn qlaurent_text() {
        let v: QLaurent = "q^-1*(x^2+1/2) + q^0*(3)".parse().unwrap();
        assert_eq!(v.to_string(), "q^-1*(x^2+1/2) + q^0*(3)");
        assert_eq!(QLaurent::from_xpoly(XPoly::linear(2)).to_string(), "x+2");
        assert_eq!("x+2".parse::<QLaurent>().unwrap(), QLaurent::from_xpoly(XPoly::linear(2)));
        assert_eq!(QLaurent::zero().to_string(), "0");
        assert!("q^1*(x".parse::<QLaurent>().is_err());
    }

    #[test]
    fn cyclo_text() {
        let c = CycloElem::root_pow(6, 2).unwrap();
        let s = c.to_string();
        assert_eq!(s, "zeta6:q^0*(-1) + q^1*(1)");
        assert_eq!(s.parse::<CycloElem>().unwrap(), c);
        assert_eq!(CycloElem::from_rational(3, Rational::from(7)).unwrap().to_string(), "zeta3:7");
    }
}
