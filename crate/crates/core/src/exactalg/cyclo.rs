use serde::{Deserialize, Serialize};

use super::{QLaurent, Rational, Ring, XPoly};
use crate::error::AlgebraError;

/// Cyclotomic orders this crate works with.
pub const SUPPORTED_ORDERS: [u32; 6] = [1, 2, 3, 4, 5, 6];

/// Coefficients of the cyclotomic polynomial `Phi_l`, lowest degree first.
fn cyclotomic_poly(order: u32) -> Result<&'static [i64], AlgebraError> {
    Ok(match order {
        1 => &[-1, 1],
        2 => &[1, 1],
        3 => &[1, 1, 1],
        4 => &[1, 0, 1],
        5 => &[1, 1, 1, 1, 1],
        6 => &[1, -1, 1],
        _ => return Err(AlgebraError::UnsupportedOrder(order)),
    })
}

/// `deg Phi_l`, i.e. Euler's phi of the order.
pub fn cyclotomic_degree(order: u32) -> Result<usize, AlgebraError> {
    Ok(cyclotomic_poly(order)?.len() - 1)
}

/// Element of `Q(zeta_l)[x]`, stored as a polynomial in `q = zeta_l` of
/// degree `< deg Phi_l` with [`XPoly`] coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawCyclo", into = "RawCyclo")]
pub struct CycloElem {
    order: u32,
    coeffs: Vec<XPoly>,
}

#[derive(Serialize, Deserialize)]
struct RawCyclo {
    order: u32,
    coeffs: Vec<XPoly>,
}

impl TryFrom<RawCyclo> for CycloElem {
    type Error = AlgebraError;
    fn try_from(raw: RawCyclo) -> Result<Self, AlgebraError> {
        if raw.coeffs.len() != cyclotomic_degree(raw.order)? {
            return Err(AlgebraError::Parse(format!(
                "order {} needs {} coefficients, got {}",
                raw.order,
                cyclotomic_degree(raw.order)?,
                raw.coeffs.len()
            )));
        }
        Ok(CycloElem { order: raw.order, coeffs: raw.coeffs })
    }
}

impl From<CycloElem> for RawCyclo {
    fn from(c: CycloElem) -> Self {
        RawCyclo { order: c.order, coeffs: c.coeffs }
    }
}

impl CycloElem {
    /// Reduces `sum_i coeffs[i] q^i` (any length) modulo `Phi_order`.
    pub fn reduce(order: u32, mut coeffs: Vec<XPoly>) -> Result<Self, AlgebraError> {
        let phi = cyclotomic_poly(order)?;
        let deg = phi.len() - 1;
        // Phi is monic: q^deg = -(phi[0] + ... + phi[deg-1] q^(deg-1)).
        while coeffs.len() > deg {
            let top = coeffs.pop().unwrap();
            let base = coeffs.len() - deg;
            if top.is_zero() {
                continue;
            }
            for (j, &p) in phi[..deg].iter().enumerate() {
                if p != 0 {
                    coeffs[base + j] = coeffs[base + j].sub(&top.scale(&Rational::from(p)));
                }
            }
        }
        coeffs.resize(deg, XPoly::zero());
        Ok(CycloElem { order, coeffs })
    }

    pub fn zero(order: u32) -> Result<Self, AlgebraError> {
        CycloElem::reduce(order, Vec::new())
    }

    pub fn one(order: u32) -> Result<Self, AlgebraError> {
        CycloElem::from_xpoly(order, XPoly::one())
    }

    pub fn from_xpoly(order: u32, p: XPoly) -> Result<Self, AlgebraError> {
        CycloElem::reduce(order, vec![p])
    }

    pub fn from_rational(order: u32, r: Rational) -> Result<Self, AlgebraError> {
        CycloElem::from_xpoly(order, XPoly::constant(r))
    }

    /// `zeta_order^e` for any integer `e`.
    pub fn root_pow(order: u32, e: i64) -> Result<Self, AlgebraError> {
        let idx = e.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![XPoly::zero(); idx + 1];
        coeffs[idx] = XPoly::one();
        CycloElem::reduce(order, coeffs)
    }

    /// Image of `v` under `q -> zeta_order^e`.
    pub fn from_laurent(v: &QLaurent, order: u32, e: i64) -> Result<Self, AlgebraError> {
        cyclotomic_poly(order)?;
        let mut buckets = vec![XPoly::zero(); order as usize];
        for (exp, c) in v.terms() {
            let idx = (exp * e).rem_euclid(order as i64) as usize;
            buckets[idx] = buckets[idx].add(c);
        }
        CycloElem::reduce(order, buckets)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[XPoly] {
        &self.coeffs
    }

    /// The value as an element of `Q[x]`, if it has no `zeta` component.
    pub fn as_xpoly(&self) -> Option<XPoly> {
        self.coeffs[1..].iter().all(XPoly::is_zero).then(|| self.coeffs[0].clone())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_xpoly().and_then(|p| p.as_constant())
    }

    /// As a `QLaurent` with exponents in `[0, deg Phi)`.
    pub fn to_laurent(&self) -> QLaurent {
        QLaurent::from_parts(0, self.coeffs.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycloElem { order: self.order, coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn shift_x(&self, c: &Rational) -> Self {
        CycloElem { order: self.order, coeffs: self.coeffs.iter().map(|p| p.shift_x(c)).collect() }
    }

    pub fn eval_x(&self, r: &Rational) -> Self {
        CycloElem { order: self.order, coeffs: self.coeffs.iter().map(|p| XPoly::constant(p.eval(r))).collect() }
    }

    /// Multiplies by `zeta^e`.
    pub fn mul_root_pow(&self, e: i64) -> Self {
        self.mul(&CycloElem::root_pow(self.order, e).expect("order already validated"))
    }

    fn check_order(&self, rhs: &Self) {
        assert_eq!(self.order, rhs.order, "mixing cyclotomic orders {} and {}", self.order, rhs.order);
    }

    fn degree_x(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(XPoly::degree).max()
    }

    /// Coefficient of `x^i` as a scalar of `Q(zeta)`.
    fn x_coeff(&self, i: usize) -> Scalar {
        Scalar { order: self.order, parts: self.coeffs.iter().map(|p| p.coeff(i)).collect() }
    }

    fn from_x_coeffs(order: u32, deg: usize, xs: Vec<Scalar>) -> Self {
        let coeffs = (0..deg).map(|j| XPoly::from_coeffs(xs.iter().map(|s| s.parts[j].clone()).collect())).collect();
        CycloElem { order, coeffs }
    }
}

/// Element of the number field `Q(zeta_l)` (no `x`), used for division.
#[derive(Clone, Debug)]
struct Scalar {
    order: u32,
    parts: Vec<Rational>,
}

impl Scalar {
    fn lift(&self) -> CycloElem {
        CycloElem { order: self.order, coeffs: self.parts.iter().map(|r| XPoly::constant(r.clone())).collect() }
    }

    fn is_zero(&self) -> bool {
        self.parts.iter().all(Rational::is_zero)
    }

    /// `1/self` via the norm: the product of the nontrivial Galois conjugates
    /// `zeta -> zeta^g` is `N(self) / self` with `N(self)` rational.
    fn inverse(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let me = self.lift();
        let as_laurent = me.to_laurent();
        let mut conj = CycloElem::one(self.order)?;
        for g in 2..self.order as i64 {
            if num_integer::gcd(g, self.order as i64) == 1 {
                conj = conj.mul(&CycloElem::from_laurent(&as_laurent, self.order, g)?);
            }
        }
        let norm = me.mul(&conj).as_rational().expect("norm lies in Q");
        let inv = conj.scale(&norm.recip()?);
        Ok(inv.x_coeff(0))
    }
}

impl Ring for CycloElem {
    fn zero_like(&self) -> Self {
        CycloElem { order: self.order, coeffs: vec![XPoly::zero(); self.coeffs.len()] }
    }
    fn one_like(&self) -> Self {
        CycloElem::one(self.order).expect("order already validated")
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(XPoly::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        CycloElem { order: self.order, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect() }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        CycloElem { order: self.order, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.check_order(rhs);
        let mut prod = vec![XPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        CycloElem::reduce(self.order, prod).expect("order already validated")
    }
    fn neg(&self) -> Self {
        CycloElem { order: self.order, coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }
    /// Long division in `x` over the field `Q(zeta)`.
    fn exact_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_order(rhs);
        let dd = rhs.degree_x().ok_or(AlgebraError::DivisionByZero)?;
        let lead = rhs.x_coeff(dd).inverse()?.lift();
        let Some(nd) = self.degree_x() else { return Ok(self.zero_like()) };
        if nd < dd {
            return Err(AlgebraError::Inexact { remainder: self.to_string() });
        }
        let deg = self.coeffs.len();
        let mut rem: Vec<CycloElem> = (0..=nd).map(|i| self.x_coeff(i).lift()).collect();
        let div: Vec<CycloElem> = (0..=dd).map(|i| rhs.x_coeff(i).lift()).collect();
        let mut quot = vec![self.zero_like(); nd - dd + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&lead);
            if c.is_zero() {
                continue;
            }
            for (j, b) in div.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(b));
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            let r = CycloElem::from_x_coeffs(self.order, deg, rem.iter().map(|c| c.x_coeff(0)).collect());
            return Err(AlgebraError::Inexact { remainder: r.to_string() });
        }
        Ok(CycloElem::from_x_coeffs(self.order, deg, quot.iter().map(|c| c.x_coeff(0)).collect()))
    }
}

super::impl_ring_ops!(CycloElem);

#[cfg(test)]
mod tests {
    use super::*;

    fn q_plus_qinv() -> QLaurent {
        QLaurent::q_pow(1).add(&QLaurent::q_pow(-1))
    }

    #[test]
    fn substitute_examples() {
        let v = CycloElem::from_laurent(&q_plus_qinv(), 3, 1).unwrap();
        assert_eq!(v, CycloElem::from_rational(3, Rational::from(-1)).unwrap());
        let v = CycloElem::from_laurent(&QLaurent::q_pow(2), 4, 1).unwrap();
        assert_eq!(v.as_rational(), Some(Rational::from(-1)));
        // 1 - (-q) = 1 + q vanishes at q = -1
        let v = CycloElem::from_laurent(&QLaurent::one().add(&QLaurent::q_pow(1)), 2, 1).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn unsupported_order_is_rejected() {
        assert_eq!(CycloElem::one(7), Err(AlgebraError::UnsupportedOrder(7)));
        assert_eq!(CycloElem::from_laurent(&QLaurent::one(), 8, 1), Err(AlgebraError::UnsupportedOrder(8)));
    }

    #[test]
    fn q_is_invertible() {
        for order in SUPPORTED_ORDERS {
            let z = CycloElem::root_pow(order, 1).unwrap();
            let zinv = CycloElem::root_pow(order, order as i64 - 1).unwrap();
            assert!(z.mul(&zinv).is_one(), "order {order}");
            assert_eq!(CycloElem::root_pow(order, -1).unwrap(), zinv);
        }
    }

    #[test]
    fn scalar_inverse_and_division() {
        let a = CycloElem::reduce(6, vec![XPoly::from_i64s(&[2, 1]), XPoly::from_i64s(&[-1])]).unwrap();
        let b = CycloElem::reduce(6, vec![XPoly::from_i64s(&[1]), XPoly::from_i64s(&[3, 0, 1])]).unwrap();
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&b).unwrap(), a);
        assert_eq!(p.exact_div(&a).unwrap(), b);
        let three = CycloElem::from_rational(6, Rational::from(3)).unwrap();
        assert_eq!(three.exact_div(&three).unwrap(), three.one_like());
        let c = CycloElem::reduce(
            5,
            vec![XPoly::from_i64s(&[1]), XPoly::from_i64s(&[0, 2]), XPoly::zero(), XPoly::from_i64s(&[-3])],
        )
        .unwrap();
        let d = CycloElem::reduce(5, vec![XPoly::from_i64s(&[4, 1]), XPoly::from_i64s(&[1])]).unwrap();
        assert_eq!(c.mul(&d).exact_div(&d).unwrap(), c);
    }

    #[test]
    fn sqrt_minus_three_in_order_six() {
        let s = CycloElem::reduce(6, vec![XPoly::from_i64s(&[-1]), XPoly::from_i64s(&[2])]).unwrap();
        assert_eq!(s.mul(&s).as_rational(), Some(Rational::from(-3)));
    }
}
