use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, Ring, XPoly};
use crate::error::AlgebraError;

/// Laurent polynomial in `q` with coefficients in `Q[x]`.
///
/// `coeffs[i]` is the coefficient of `q^(lo + i)`. Both ends of `coeffs` are
/// nonzero; the zero value is `lo = 0` with no coefficients, so derived
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QLaurent {
    lo: i64,
    coeffs: Vec<XPoly>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QLaurent::from_xpoly(XPoly::one())
    }

    pub fn from_xpoly(p: XPoly) -> Self {
        QLaurent::from_parts(0, vec![p])
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        QLaurent::from_xpoly(XPoly::constant(c.into()))
    }

    /// `c * q^e`.
    pub fn monomial(e: i64, c: XPoly) -> Self {
        QLaurent::from_parts(e, vec![c])
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        QLaurent::monomial(e, XPoly::one())
    }

    pub fn from_parts(lo: i64, mut coeffs: Vec<XPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return QLaurent::zero();
        }
        coeffs.drain(..lead);
        QLaurent { lo: lo + lead as i64, coeffs }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, XPoly)>) -> Self {
        let mut map: BTreeMap<i64, XPoly> = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_default();
            *slot = slot.add(&c);
        }
        let Some((&lo, _)) = map.iter().next() else { return QLaurent::zero() };
        let hi = *map.keys().next_back().unwrap();
        let mut coeffs = vec![XPoly::zero(); (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        QLaurent::from_parts(lo, coeffs)
    }

    /// Lowest exponent of `q` (0 for the zero value).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent of `q`, or `None` for zero.
    pub fn hi(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[XPoly] {
        &self.coeffs
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> XPoly {
        let i = e - self.lo;
        if i < 0 {
            return XPoly::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &XPoly)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.lo + i as i64, c))
    }

    /// The value as a polynomial in `x` if no `q`-power other than `q^0` occurs.
    pub fn as_xpoly(&self) -> Option<XPoly> {
        if self.is_zero() {
            return Some(XPoly::zero());
        }
        (self.lo == 0 && self.coeffs.len() == 1).then(|| self.coeffs[0].clone())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_xpoly().and_then(|p| p.as_constant())
    }

    /// Multiplies by `q^e`.
    pub fn mul_q_pow(&self, e: i64) -> Self {
        if self.is_zero() {
            return QLaurent::zero();
        }
        QLaurent { lo: self.lo + e, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QLaurent::from_parts(self.lo, self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_xpoly(&self, p: &XPoly) -> Self {
        QLaurent::from_parts(self.lo, self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    /// Substitutes `x -> x + c` in every coefficient.
    pub fn shift_x(&self, c: &Rational) -> Self {
        QLaurent::from_parts(self.lo, self.coeffs.iter().map(|p| p.shift_x(c)).collect())
    }

    pub fn shift_x_int(&self, c: i64) -> Self {
        self.shift_x(&Rational::from(c))
    }

    /// Substitutes a rational value for `x`.
    pub fn eval_x(&self, r: &Rational) -> Self {
        QLaurent::from_parts(self.lo, self.coeffs.iter().map(|p| XPoly::constant(p.eval(r))).collect())
    }

    /// Substitutes a nonzero rational value for `q`.
    pub fn eval_q(&self, r: &Rational) -> Result<XPoly, AlgebraError> {
        if r.is_zero() && self.lo < 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut acc = XPoly::zero();
        for (e, c) in self.terms() {
            let w = if e >= 0 { r.pow(e as i32) } else { r.recip()?.pow((-e) as i32) };
            acc = acc.add(&c.scale(&w));
        }
        Ok(acc)
    }

    /// Substitutes `q -> q^-1`.
    pub fn invert_q(&self) -> Self {
        let Some(hi) = self.hi() else { return QLaurent::zero() };
        QLaurent::from_parts(-hi, self.coeffs.iter().rev().cloned().collect())
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.invert_q()
    }

    /// `Q = q + 2 + q^-1`.
    pub fn big_q() -> Self {
        QLaurent::from_parts(-1, vec![XPoly::one(), XPoly::constant(Rational::from(2)), XPoly::one()])
    }

    /// Rewrites a `q <-> q^-1` symmetric value as `sum_j c_j Q^j` with
    /// `Q = q + 2 + q^-1`, returning `[c_0, c_1, ...]`.
    pub fn to_big_q_poly(&self) -> Result<Vec<XPoly>, AlgebraError> {
        if !self.is_palindromic() {
            return Err(AlgebraError::NotSymmetric);
        }
        let Some(top) = self.hi() else { return Ok(Vec::new()) };
        let mut out = vec![XPoly::zero(); top as usize + 1];
        let mut rest = self.clone();
        let q = QLaurent::big_q();
        // Q^j is symmetric with top term q^j, so peel from the top.
        while let Some(hi) = rest.hi() {
            let c = rest.coeff(hi);
            rest = rest.sub(&q.pow(hi as u32).mul_xpoly(&c));
            out[hi as usize] = c;
        }
        Ok(out)
    }

    /// Inverse of [`QLaurent::to_big_q_poly`].
    pub fn from_big_q_poly(coeffs: &[XPoly]) -> Self {
        let q = QLaurent::big_q();
        let mut acc = QLaurent::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(&q).add(&QLaurent::from_xpoly(c.clone()));
        }
        acc
    }
}

impl From<XPoly> for QLaurent {
    fn from(p: XPoly) -> Self {
        QLaurent::from_xpoly(p)
    }
}

impl Ring for QLaurent {
    fn zero_like(&self) -> Self {
        QLaurent::zero()
    }
    fn one_like(&self) -> Self {
        QLaurent::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().unwrap().max(rhs.hi().unwrap());
        let mut coeffs = vec![XPoly::zero(); (hi - lo + 1) as usize];
        for (src, off) in [(self, self.lo - lo), (rhs, rhs.lo - lo)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let slot = &mut coeffs[off as usize + i];
                *slot = slot.add(c);
            }
        }
        QLaurent::from_parts(lo, coeffs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return QLaurent::zero();
        }
        let mut coeffs = vec![XPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        QLaurent::from_parts(self.lo + rhs.lo, coeffs)
    }
    fn neg(&self) -> Self {
        QLaurent { lo: self.lo, coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }
    /// Long division in `q`, dividing leading `x`-coefficients exactly in `Q[x]`.
    fn exact_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(QLaurent::zero());
        }
        let d = rhs.coeffs.len() - 1;
        let lead = &rhs.coeffs[d];
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Err(AlgebraError::Inexact { remainder: self.to_string() });
        }
        let mut quot = vec![XPoly::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            if rem[i + d].is_zero() {
                continue;
            }
            let c = rem[i + d].exact_div(lead).map_err(|_| AlgebraError::Inexact {
                remainder: QLaurent::from_parts(self.lo, rem.clone()).to_string(),
            })?;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[i + j] = rem[i + j].sub(&c.mul(b));
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(AlgebraError::Inexact { remainder: QLaurent::from_parts(self.lo, rem).to_string() });
        }
        Ok(QLaurent::from_parts(self.lo - rhs.lo, quot))
    }
}

super::impl_ring_ops!(QLaurent);

/// JSON form: `{"<exponent>": [coefficients of x^0, x^1, ...], ...}` with
/// rational strings `"p/q"`, exponents in increasing order.
impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.terms().count()))?;
        for (e, c) in self.terms() {
            m.serialize_entry(&e.to_string(), c)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, XPoly>::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let e: i64 = k.parse().map_err(serde::de::Error::custom)?;
            if v.is_zero() {
                return Err(serde::de::Error::custom("zero coefficient listed explicitly"));
            }
            terms.push((e, v));
        }
        Ok(QLaurent::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xp(c: &[i64]) -> XPoly {
        XPoly::from_i64s(c)
    }

    #[test]
    fn canonical_form_strips_zero_ends() {
        let v = QLaurent::from_parts(-2, vec![XPoly::zero(), xp(&[1]), XPoly::zero()]);
        assert_eq!(v.lo(), -1);
        assert_eq!(v.hi(), Some(-1));
        let z = QLaurent::from_parts(5, vec![XPoly::zero()]);
        assert_eq!(z, QLaurent::zero());
        assert_eq!(z.lo(), 0);
    }

    #[test]
    fn big_q_examples() {
        assert_eq!(QLaurent::big_q().to_big_q_poly().unwrap(), vec![xp(&[0]), xp(&[1])]);
        assert_eq!(QLaurent::constant(7).to_big_q_poly().unwrap(), vec![xp(&[7])]);
        let v = QLaurent::q_pow(2).add(&QLaurent::q_pow(-2));
        assert_eq!(v.to_big_q_poly().unwrap(), vec![xp(&[2]), xp(&[-4]), xp(&[1])]);
        assert_eq!(QLaurent::q_pow(1).to_big_q_poly(), Err(AlgebraError::NotSymmetric));
    }

    #[test]
    fn exact_division_in_q() {
        let a = QLaurent::from_terms([(0, xp(&[1])), (1, xp(&[1]))]); // 1 + q
        let b = QLaurent::from_terms([(-1, xp(&[0, 1])), (2, xp(&[2]))]);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        let err = QLaurent::from_terms([(0, xp(&[1])), (2, xp(&[1]))]).exact_div(&a);
        assert!(matches!(err, Err(AlgebraError::Inexact { .. })));
    }

    #[test]
    fn q_evaluation() {
        let v = QLaurent::from_terms([(-1, xp(&[1])), (0, xp(&[8])), (1, xp(&[1]))]);
        assert_eq!(v.eval_q(&Rational::from(1)).unwrap(), xp(&[10]));
        assert_eq!(v.eval_q(&Rational::from(2)).unwrap(), XPoly::constant(Rational::new(21, 2)));
        assert!(v.eval_q(&Rational::zero()).is_err());
    }
}
