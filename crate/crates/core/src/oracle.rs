//! Independent ground truth: alternating sign matrices, monotone triangles and
//! their brute-force `Q`-enumeration, plus the Andrews-type determinant and
//! the list of special evaluations of `d_{n,k}`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::detkernel::{d, determinant};
use crate::error::{Error, Result};
use crate::exactalg::{CycloElem, QLaurent, Rational, Ring, RingMatrix, XPoly};
use crate::report::{compare, CheckItem};

/// Default size limit for anything that enumerates ASMs.
pub const ORACLE_GUARD: usize = 7;
/// Hard ceiling; beyond this the counts take too long to enumerate.
pub const ORACLE_CEILING: usize = 10;

fn check_guard(n: usize, guard: usize) -> Result<()> {
    if n > guard.min(ORACLE_CEILING) {
        return Err(Error::GuardExceeded { n, guard: guard.min(ORACLE_CEILING) });
    }
    Ok(())
}

/// An alternating sign matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i8>>", into = "Vec<Vec<i8>>")]
pub struct Asm {
    entries: Vec<Vec<i8>>,
}

impl TryFrom<Vec<Vec<i8>>> for Asm {
    type Error = Error;
    fn try_from(entries: Vec<Vec<i8>>) -> Result<Self> {
        Asm::new(entries)
    }
}

impl From<Asm> for Vec<Vec<i8>> {
    fn from(a: Asm) -> Self {
        a.entries
    }
}

fn alternates(line: impl Iterator<Item = i8>) -> bool {
    let mut expect = 1;
    let mut seen = false;
    for v in line.filter(|&v| v != 0) {
        if v != expect {
            return false;
        }
        expect = -expect;
        seen = true;
    }
    // a line ending on +1 has sum 1
    seen && expect == -1
}

impl Asm {
    pub fn new(entries: Vec<Vec<i8>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("an ASM must be a non-empty square matrix".into()));
        }
        if entries.iter().flatten().any(|v| !(-1..=1).contains(v)) {
            return Err(Error::Invalid("ASM entries must be -1, 0 or 1".into()));
        }
        let rows_ok = entries.iter().all(|r| alternates(r.iter().copied()));
        let cols_ok = (0..n).all(|j| alternates(entries.iter().map(|r| r[j])));
        if !rows_ok || !cols_ok {
            return Err(Error::Invalid("rows and columns must alternate +1, -1, ..., +1".into()));
        }
        Ok(Asm { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i8>] {
        &self.entries
    }

    pub fn minus_ones(&self) -> usize {
        self.entries.iter().flatten().filter(|&&v| v == -1).count()
    }
}

/// A monotone triangle, top row first; row `i` has `i` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct MonotoneTriangle {
    rows: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for MonotoneTriangle {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        MonotoneTriangle::new(rows)
    }
}

impl From<MonotoneTriangle> for Vec<Vec<i64>> {
    fn from(t: MonotoneTriangle) -> Self {
        t.rows
    }
}

impl MonotoneTriangle {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() || rows.iter().enumerate().any(|(i, r)| r.len() != i + 1) {
            return Err(Error::Invalid("row i of a monotone triangle must have i entries".into()));
        }
        if rows.iter().any(|r| r.windows(2).any(|w| w[0] >= w[1])) {
            return Err(Error::Invalid("rows must be strictly increasing".into()));
        }
        for pair in rows.windows(2) {
            let (upper, lower) = (&pair[0], &pair[1]);
            if upper.iter().enumerate().any(|(j, &v)| v < lower[j] || v > lower[j + 1]) {
                return Err(Error::Invalid("diagonals must be weakly increasing".into()));
            }
        }
        Ok(MonotoneTriangle { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }
}

/// Row `i` of the triangle lists the columns whose partial sum over the first
/// `i` rows of the ASM is positive.
pub fn asm_to_mt(a: &Asm) -> MonotoneTriangle {
    let n = a.n();
    let mut partial = vec![0i64; n];
    let mut rows = Vec::with_capacity(n);
    for row in &a.entries {
        for (p, &v) in partial.iter_mut().zip(row) {
            *p += v as i64;
        }
        rows.push((1..=n as i64).filter(|&j| partial[j as usize - 1] > 0).collect());
    }
    MonotoneTriangle { rows }
}

pub fn mt_to_asm(t: &MonotoneTriangle) -> Result<Asm> {
    let n = t.n();
    if t.rows[n - 1] != (1..=n as i64).collect::<Vec<_>>() {
        return Err(Error::Invalid("bottom row must be 1..n".into()));
    }
    let indicator = |i: usize| {
        let mut v = vec![0i8; n];
        if i > 0 {
            for &j in &t.rows[i - 1] {
                v[j as usize - 1] = 1;
            }
        }
        v
    };
    let entries = (1..=n).map(|i| indicator(i).iter().zip(indicator(i - 1)).map(|(a, b)| a - b).collect()).collect();
    Asm::new(entries)
}

/// Number of entries strictly between their two lower neighbours.
pub fn sigma_statistic(t: &MonotoneTriangle) -> usize {
    t.rows
        .windows(2)
        .map(|pair| pair[0].iter().enumerate().filter(|&(j, &v)| pair[1][j] < v && v < pair[1][j + 1]).count())
        .sum()
}

/// Every strictly increasing row that interlaces `lower`, each paired with
/// the number of its entries strictly inside their interval.
fn rows_above(lower: &[i64]) -> Vec<(Vec<i64>, usize)> {
    fn go(lower: &[i64], j: usize, cur: &mut Vec<i64>, inner: usize, out: &mut Vec<(Vec<i64>, usize)>) {
        if j + 1 == lower.len() {
            out.push((cur.clone(), inner));
            return;
        }
        let lo = cur.last().map_or(lower[j], |&p| lower[j].max(p + 1));
        for v in lo..=lower[j + 1] {
            cur.push(v);
            let strict = (lower[j] < v && v < lower[j + 1]) as usize;
            go(lower, j + 1, cur, inner + strict, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lower, 0, &mut Vec::new(), 0, &mut out);
    out
}

/// All monotone triangles with bottom row `1..n`.
pub fn all_triangles(n: usize, guard: usize) -> Result<Vec<MonotoneTriangle>> {
    check_guard(n, guard)?;
    if n == 0 {
        return Err(Error::Invalid("size must be at least 1".into()));
    }
    let mut partial: Vec<Vec<Vec<i64>>> = vec![vec![(1..=n as i64).collect()]];
    for _ in 1..n {
        partial = partial
            .into_iter()
            .flat_map(|rows| {
                rows_above(rows.last().expect("non-empty"))
                    .into_iter()
                    .map(move |(r, _)| {
                        let mut next = rows.clone();
                        next.push(r);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    Ok(partial
        .into_iter()
        .map(|mut rows| {
            rows.reverse();
            MonotoneTriangle { rows }
        })
        .collect())
}

/// All ASMs of size `n`, in the order of [`all_triangles`].
pub fn all_asms(n: usize, guard: usize) -> Result<Vec<Asm>> {
    all_triangles(n, guard)?.iter().map(mt_to_asm).collect()
}

/// `coeffs[m]` counts the ASMs with exactly `m` entries equal to `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QWeightPoly {
    coeffs: Vec<u64>,
}

impl QWeightPoly {
    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QWeightPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `A_n`, the plain number of ASMs.
    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// `A_n(Q)` at an integer weight.
    pub fn eval(&self, big_q: i64) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::from(0), |acc, &c| acc * big_q + c)
    }

    /// Substitutes `Q = q + 2 + q^-1`.
    pub fn to_laurent(&self) -> QLaurent {
        let coeffs: Vec<XPoly> = self.coeffs.iter().map(|&c| XPoly::constant(Rational::from(c as i64))).collect();
        QLaurent::from_big_q_poly(&coeffs)
    }

    fn add_shifted(&mut self, other: &QWeightPoly, shift: usize) {
        if self.coeffs.len() < other.coeffs.len() + shift {
            self.coeffs.resize(other.coeffs.len() + shift, 0);
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            self.coeffs[i + shift] += c;
        }
    }
}

fn weight_from_row(row: &[i64], memo: &mut HashMap<Vec<i64>, QWeightPoly>) -> QWeightPoly {
    if row.len() == 1 {
        return QWeightPoly { coeffs: vec![1] };
    }
    if let Some(w) = memo.get(row) {
        return w.clone();
    }
    let mut acc = QWeightPoly { coeffs: Vec::new() };
    for (above, inner) in rows_above(row) {
        let w = weight_from_row(&above, memo);
        acc.add_shifted(&w, inner);
    }
    memo.insert(row.to_vec(), acc.clone());
    acc
}

/// `A_n(Q)`, counted by building monotone triangles upwards from `1..n`,
/// memoized on the current row.
pub fn q_enum(n: usize, guard: usize) -> Result<QWeightPoly> {
    check_guard(n, guard)?;
    if n == 0 {
        return Err(Error::Invalid("size must be at least 1".into()));
    }
    static MEMO: OnceLock<Mutex<HashMap<Vec<i64>, QWeightPoly>>> = OnceLock::new();
    let mut memo = MEMO.get_or_init(Default::default).lock().expect("memo lock");
    let bottom: Vec<i64> = (1..=n as i64).collect();
    Ok(weight_from_row(&bottom, &mut memo))
}

/// `A_n(Q)` from the explicit list of triangles; the reference for [`q_enum`].
pub fn q_enum_exhaustive(n: usize, guard: usize) -> Result<QWeightPoly> {
    let mut coeffs = vec![0u64; n * n];
    for t in all_triangles(n, guard)? {
        coeffs[sigma_statistic(&t)] += 1;
    }
    Ok(QWeightPoly::from_coeffs(coeffs))
}

/// `A_n(q + 2 + q^-1) = d_{n,1}(0, q)`.
pub fn main_theorem_check(n: usize) -> Result<CheckItem> {
    let lhs = q_enum(n, ORACLE_CEILING)?.to_laurent();
    let rhs = d(n, 1)?.eval_x(&Rational::zero());
    Ok(compare("A_n(q+2+q^-1) = d_{n,1}(0,q)", Some(n as i64), Some(1), &lhs, &rhs))
}

/// `det( binom(x+i+j-2, j-1) + zeta_order^k delta_ij )` over `Q(zeta_order)[x]`.
pub fn andrews_det(n: usize, k: i64, order: u32) -> Result<CycloElem> {
    let one = CycloElem::one(order)?;
    let shift = CycloElem::root_pow(order, k)?;
    let m = RingMatrix::from_fn(n, one, |i, j| {
        let b = CycloElem::from_xpoly(order, XPoly::binomial((i + j) as i64 - 2, (j - 1) as u32))
            .expect("order validated above");
        if i == j {
            b.add(&shift)
        } else {
            b
        }
    });
    determinant(&m)
}

/// `d_{n,3-k}(x, zeta_6^2) = zeta_6^-n det( binom(x+i+j-2, j-1) + zeta_6^k delta_ij )`
/// for `k = 0..5`.
///
/// The identity is asserted for `k = 2, 4`; the other residues are
/// reported as observations.
pub fn connection_check(n_max: usize) -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();
    let mut holds: Vec<i64> = (0..6).collect();
    for n in 1..=n_max {
        for k in 0..6i64 {
            let lhs = CycloElem::from_laurent(&d(n, 3 - k)?, 6, 2)?;
            let rhs = andrews_det(n, k, 6)?.mul_root_pow(-(n as i64));
            let item = compare(
                "d_{n,3-k}(x,zeta6^2) = zeta6^-n det(binom + zeta6^k delta)",
                Some(n as i64),
                Some(k),
                &lhs,
                &rhs,
            );
            if !item.pass {
                holds.retain(|&h| h != k);
            }
            items.push(if k == 2 || k == 4 { item } else { item.observational() });
        }
    }
    let summary = format!("for k in {holds:?} (mod 6), n <= {n_max}");
    items.push(CheckItem::new("connection k-set", None, None, true).observational().detail(summary));
    Ok(items)
}

/// `d_{n,k}(x0, zeta_order^e)`.
fn special(n: usize, k: i64, x0: i64, order: u32, e: i64) -> Result<CycloElem> {
    Ok(CycloElem::from_laurent(&d(n, k)?.eval_x(&Rational::from(x0)), order, e)?)
}

fn integer(order: u32, v: impl Into<BigInt>) -> Result<CycloElem> {
    Ok(CycloElem::from_rational(order, Rational::from_integer(v))?)
}

/// A published value: the bare number when it is rational.
fn published(v: &CycloElem) -> String {
    v.as_rational().map_or_else(|| v.to_string(), |r| r.to_string())
}

fn pow_big(base: u32, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `sqrt(-3) = 2 zeta_6 - 1`, the value of `i sqrt(3)` under `zeta_6 = e^{i pi/3}`.
pub fn sqrt_minus_three() -> CycloElem {
    CycloElem::root_pow(6, 1).expect("order 6").scale(&Rational::from(2)).sub(&CycloElem::one(6).expect("order 6"))
}

/// `zeta_8^m / sqrt(2)` for odd `m`, realized in `Q(i)` as `i^((m-1)/2) (1+i) / 2`
/// with `zeta_8 = e^{i pi/4}`.
pub fn zeta8_odd_over_sqrt2(m: i64) -> Result<CycloElem> {
    if m.rem_euclid(2) != 1 {
        return Err(Error::Invalid(format!("zeta_8^{m}/sqrt(2) is not in Q(i) for even exponent")));
    }
    let one_plus_i = CycloElem::one(4)?.add(&CycloElem::root_pow(4, 1)?);
    Ok(one_plus_i.mul_root_pow((m - 1) / 2).scale(&Rational::new(1, 2)))
}

fn product_formula_count(n: usize) -> BigInt {
    // A_n = prod_{i=0}^{n-1} (3i+1)! / (n+i)!
    let mut acc = Rational::one();
    for i in 0..n as u64 {
        acc =
            acc.mul(&Rational::factorial(3 * i + 1)).mul(&Rational::factorial(n as u64 + i).recip().expect("nonzero"));
    }
    acc.to_integer().expect("A_n is an integer")
}

/// The special evaluations of `d_{n,k}` that are known enumeration numbers.
///
/// Lines whose other side is an external count with no formula are published
/// as observations; lines with two computable sides are asserted.
pub fn appendix_suite(n_max: usize) -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();
    let ni = |n: usize| Some(n as i64);
    let s3 = sqrt_minus_three();
    let inv_s3 = s3.scale(&Rational::new(-1, 3));
    for n in 1..=n_max {
        let nn = n as i64;
        // ASM count, two ways
        let count = integer(6, product_formula_count(n))?;
        let a = special(n, 1, 0, 6, 2)?;
        let b = special(n - 1, 3, 2, 6, 2)?.mul_root_pow(nn - 1);
        items.push(compare("d_{n,1}(0,zeta3) = A_n", ni(n), None, &a, &count));
        items.push(compare("zeta6^(n-1) d_{n-1,3}(2,zeta3) = A_n", ni(n), None, &b, &count));

        // cyclically symmetric plane partitions: published only
        let cspp = special(n - 1, 3, 0, 6, 2)?.mul_root_pow(nn - 1);
        items.push(
            CheckItem::new("zeta6^(n-1) d_{n-1,3}(0,zeta3) [published]", ni(n), None, true)
                .observational()
                .detail(published(&cspp)),
        );

        // two U-turn sides
        let lhs = special(2 * (n - 1), 2, 1, 6, 2)?.mul_root_pow(nn - 1);
        let core = special(2 * n - 1, 2, -1, 6, 2)?.mul_root_pow(nn + 1);
        let rhs = core.mul(&inv_s3);
        items.push(compare(
            "zeta6^(n-1) d_{2n-2,2}(1,zeta3) = zeta6^(n+1)/sqrt(-3) d_{2n-1,2}(-1,zeta3)",
            ni(n),
            None,
            &lhs,
            &rhs,
        ));
        let other_branch = core.mul(&inv_s3.neg()) == lhs;
        items.push(
            CheckItem::new("sqrt(-3) branch", ni(n), None, true)
                .observational()
                .detail(format!("sqrt(-3) = 2*zeta6-1 holds: {}; opposite sign holds: {other_branch}", lhs == rhs)),
        );

        // quarter-turn symmetric: published only
        let qt = special(2 * n - 1, 2, -2, 6, 2)?.mul_root_pow(nn + 1).mul(&inv_s3);
        items.push(
            CheckItem::new("zeta6^(n+1)/sqrt(-3) d_{2n-1,2}(-2,zeta3) [published]", ni(n), None, true)
                .observational()
                .detail(published(&qt)),
        );

        // 2-enumeration
        let two_enum = special(n, 1, 0, 4, 1)?;
        let expect = integer(4, pow_big(2, (nn * (nn - 1) / 2) as u64))?;
        items.push(compare("d_{n,1}(0,zeta4) = 2^C(n,2)", ni(n), None, &two_enum, &expect));

        // 4^{n^2}
        let target = integer(4, pow_big(4, (nn * nn) as u64))?;
        let left = special(2 * n, 2, 1, 4, 1)?.mul_root_pow(nn);
        let mid = special(2 * n + 1, 2, -1, 4, 1)?.mul(&zeta8_odd_over_sqrt2(2 * nn + 1)?);
        items.push(compare("zeta4^n d_{2n,2}(1,zeta4) = 4^(n^2)", ni(n), None, &left, &target));
        items.push(compare("zeta8^(2n+1)/sqrt(2) d_{2n+1,2}(-1,zeta4) = 4^(n^2)", ni(n), None, &mid, &target));

        // 4^{n(n+1)}, as displayed
        let v = special(2 * n - 1, 2, 1, 4, 1)?.mul(&zeta8_odd_over_sqrt2(2 * nn - 1)?);
        let shown = integer(4, pow_big(4, (nn * (nn + 1)) as u64))?;
        items.push(compare("zeta8^(2n-1)/sqrt(2) d_{2n-1,2}(1,zeta4) = 4^(n(n+1))", ni(n), None, &v, &shown));
        let observed = integer(4, pow_big(4, (nn * (nn - 1)) as u64))?;
        items.push(
            CheckItem::new(
                "zeta8^(2n-1)/sqrt(2) d_{2n-1,2}(1,zeta4) = 4^(n(n-1)) [reconciled]",
                ni(n),
                None,
                v == observed,
            )
            .observational()
            .witness(&v),
        );

        // 3-enumeration against the oracle
        let three = special(n, 1, 0, 6, 1)?;
        let oracle = integer(6, q_enum(n, ORACLE_CEILING)?.eval(3))?;
        items.push(compare("d_{n,1}(0,zeta6) = A_n(3) [oracle]", ni(n), None, &three, &oracle));
    }
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_asm() -> Asm {
        Asm::new(vec![
            vec![0, 0, 0, 1, 0],
            vec![0, 1, 0, 0, 0],
            vec![1, -1, 1, 0, 0],
            vec![0, 1, 0, -1, 1],
            vec![0, 0, 0, 1, 0],
        ])
        .unwrap()
    }

    #[test]
    fn figure_triangle() {
        let t = asm_to_mt(&figure_asm());
        assert_eq!(t.rows(), &[vec![4], vec![2, 4], vec![1, 3, 4], vec![1, 2, 3, 5], vec![1, 2, 3, 4, 5]]);
        assert_eq!(sigma_statistic(&t), 2);
        assert_eq!(mt_to_asm(&t).unwrap(), figure_asm());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(Asm::new(vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(Asm::new(vec![vec![0, 1, 0], vec![1, 1, -1], vec![0, -1, 1]]).is_err());
        assert!(MonotoneTriangle::new(vec![vec![2], vec![1, 1]]).is_err());
        assert!(MonotoneTriangle::new(vec![vec![3], vec![1, 2]]).is_err());
    }

    #[test]
    fn size_three() {
        assert_eq!(q_enum(3, 7).unwrap().coeffs(), &[6, 1]);
        let asms = all_asms(3, 7).unwrap();
        assert_eq!(asms.len(), 7);
        assert_eq!(asms.iter().filter(|a| a.minus_ones() == 1).count(), 1);
        let identity = Asm::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(asm_to_mt(&identity).rows(), &[vec![1], vec![1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn counts_and_guard() {
        let totals: Vec<u64> = (1..=6).map(|n| q_enum(n, 7).unwrap().total()).collect();
        assert_eq!(totals, [1, 2, 7, 42, 429, 7436]);
        assert!(matches!(q_enum(8, 7), Err(Error::GuardExceeded { .. })));
        assert_eq!(product_formula_count(5), BigInt::from(429));
    }

    #[test]
    fn andrews_small() {
        assert_eq!(andrews_det(1, 0, 6).unwrap(), CycloElem::from_rational(6, Rational::from(2)).unwrap());
        let two = andrews_det(2, 3, 6).unwrap();
        assert_eq!(two, CycloElem::from_xpoly(6, XPoly::from_i64s(&[-1, -1])).unwrap());
    }

    #[test]
    fn constants() {
        assert_eq!(
            sqrt_minus_three().mul(&sqrt_minus_three()),
            CycloElem::from_rational(6, Rational::from(-3)).unwrap()
        );
        let h = zeta8_odd_over_sqrt2(1).unwrap();
        // (zeta8/sqrt2)^2 = i/2
        assert_eq!(h.mul(&h), CycloElem::root_pow(4, 1).unwrap().scale(&Rational::new(1, 2)));
    }
}
