use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, Ring};
use crate::error::AlgebraError;

/// Dense univariate polynomial in `x` over the rationals.
///
/// `coeffs[i]` is the coefficient of `x^i`; the last entry is never zero, so
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct XPoly {
    coeffs: Vec<Rational>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XPoly::constant(Rational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        XPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        XPoly::from_coeffs(vec![c])
    }

    /// `x + c`.
    pub fn linear(c: impl Into<Rational>) -> Self {
        XPoly::from_coeffs(vec![c.into(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        XPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.coeff(0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return XPoly::zero();
        }
        XPoly { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// `binom(x + c, m) = (x+c)(x+c-1)...(x+c-m+1) / m!`.
    pub fn binomial(c: i64, m: u32) -> Self {
        let mut acc = XPoly::one();
        for t in 0..m as i64 {
            acc = acc.mul(&XPoly::linear(c - t));
        }
        acc.scale(&Rational::factorial(m as u64).recip().expect("m! is nonzero"))
    }

    /// Rising factorial `base (base+1) ... (base+j-1)`; the constant 1 when `j <= 0`.
    pub fn pochhammer(base: &XPoly, j: i64) -> Self {
        let mut acc = XPoly::one();
        for t in 0..j.max(0) {
            acc = acc.mul(&base.add(&XPoly::constant(Rational::from(t))));
        }
        acc
    }

    /// Substitutes `x -> x + c`.
    pub fn shift_x(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_constant() {
            return self.clone();
        }
        // Horner in the shifted variable.
        let step = XPoly::from_coeffs(vec![c.clone(), Rational::one()]);
        let mut acc = XPoly::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&step).add(&XPoly::constant(a.clone()));
        }
        acc
    }

    pub fn shift_x_int(&self, c: i64) -> Self {
        self.shift_x(&Rational::from(c))
    }

    pub fn eval(&self, r: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(r).add(a);
        }
        acc
    }

    /// The unique polynomial of degree `< nodes.len()` through the given
    /// `(node, value)` pairs (Newton divided differences). Nodes must be distinct.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<XPoly, AlgebraError> {
        let n = points.len();
        let mut diffs: Vec<Rational> = points.iter().map(|(_, v)| v.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let span = points[i].0.sub(&points[i - level].0);
                diffs[i] = diffs[i].sub(&diffs[i - 1]).mul(&span.recip()?);
            }
        }
        let mut acc = XPoly::zero();
        for i in (0..n).rev() {
            let node = XPoly::from_coeffs(vec![points[i].0.neg(), Rational::one()]);
            acc = acc.mul(&node).add(&XPoly::constant(diffs[i].clone()));
        }
        Ok(acc)
    }

    /// Long division; returns `(quotient, remainder)`.
    pub fn div_rem(&self, rhs: &XPoly) -> Result<(XPoly, XPoly), AlgebraError> {
        let d = rhs.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead_inv = rhs.coeffs[d].recip()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((XPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = rem[i + d].mul(&lead_inv);
            if !c.is_zero() {
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].sub(&c.mul(b));
                }
            }
            quot[i] = c;
        }
        rem.truncate(d);
        Ok((XPoly::from_coeffs(quot), XPoly::from_coeffs(rem)))
    }
}

impl From<Rational> for XPoly {
    fn from(c: Rational) -> Self {
        XPoly::constant(c)
    }
}

impl Ring for XPoly {
    fn zero_like(&self) -> Self {
        XPoly::zero()
    }
    fn one_like(&self) -> Self {
        XPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = o.add(s);
        }
        XPoly::from_coeffs(out)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        // Accumulate in BigRational directly; the newtype round-trip per term is measurable.
        let mut out = vec![num_rational::BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a.inner() * b.inner();
            }
        }
        XPoly::from_coeffs(out.into_iter().map(Rational::from_big).collect())
    }
    fn neg(&self) -> Self {
        XPoly { coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(rhs)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::Inexact { remainder: r.to_string() })
        }
    }
}

super::impl_ring_ops!(XPoly);

impl Serialize for XPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for XPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<Rational>::deserialize(d)?;
        if coeffs.last().is_some_and(|c| c.is_zero()) {
            return Err(serde::de::Error::custom("x-polynomial has a zero leading coefficient"));
        }
        Ok(XPoly { coeffs })
    }
}
