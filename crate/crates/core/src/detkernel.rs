//! The matrices `D_{n,k}(x,q)`, their determinants, and the row/column
//! deletion and condensation identities.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{QLaurent, Rational, Ring, RingMatrix, XPoly};
use crate::report::{compare, CheckItem};

/// Largest `n` for which symbolic determinants are computed.
pub const SYMBOLIC_GUARD: usize = 12;
/// Largest `n` accepted by the cofactor engine.
pub const COFACTOR_LIMIT: usize = 6;

/// Index pair `(n, k)` of `d_{n,k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DetInstance {
    pub n: usize,
    pub k: i64,
}

impl DetInstance {
    pub fn new(n: usize, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("matrix size n must be at least 1".into()));
        }
        Ok(DetInstance { n, k })
    }
}

/// `a_j = (1 - (-q)^j) / (1 + q)` as a Laurent polynomial.
pub fn a_coeff(j: i64) -> QLaurent {
    let sign = |i: i64| if i.rem_euclid(2) == 0 { 1 } else { -1 };
    match j {
        0 => QLaurent::zero(),
        j if j > 0 => QLaurent::from_terms((0..j).map(|i| (i, XPoly::constant(sign(i).into())))),
        j => QLaurent::from_terms((1..=-j).map(|i| (-i, XPoly::constant((-sign(i)).into())))),
    }
}

/// `D_{n,k}(x,q)` with entries `binom(x+i+j-2, j-1) * a_{j-i+k}`.
pub fn build_matrix(inst: DetInstance) -> RingMatrix<QLaurent> {
    let DetInstance { n, k } = inst;
    RingMatrix::from_fn(n, QLaurent::one(), |i, j| {
        let binom = XPoly::binomial((i + j) as i64 - 2, (j - 1) as u32);
        a_coeff(j as i64 - i as i64 + k).mul_xpoly(&binom)
    })
}

/// Laplace expansion along rows, memoized over the set of remaining columns.
///
/// Never divides, so it serves as an independent check on [`det_bareiss`].
pub fn det_cofactor<R: Ring>(m: &RingMatrix<R>) -> Result<R> {
    let n = m.n();
    if n > COFACTOR_LIMIT {
        return Err(Error::CofactorTooLarge { n, limit: COFACTOR_LIMIT });
    }
    // memo[mask] = determinant of rows (n - popcount(mask))..n over columns in mask
    let full = (1usize << n) - 1;
    let mut memo: Vec<Option<R>> = vec![None; full + 1];
    memo[0] = Some(m.one().clone());
    for mask in 1..=full {
        let size = mask.count_ones() as usize;
        let row = n - size + 1;
        let mut acc = m.one().zero_like();
        let mut pos = 0;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = m.get(row, col + 1);
            if !entry.is_zero() {
                let sub = memo[mask & !(1 << col)].as_ref().expect("filled in mask order");
                let term = entry.mul(sub);
                acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            pos += 1;
        }
        memo[mask] = Some(acc);
    }
    Ok(memo[full].take().expect("full mask computed"))
}

/// Fraction-free Gaussian elimination with exact division by the previous pivot.
pub fn det_bareiss<R: Ring>(m: &RingMatrix<R>) -> Result<R> {
    let n = m.n();
    if n == 0 {
        return Ok(m.one().clone());
    }
    let mut a = m.clone().into_rows();
    let mut negate = false;
    let mut prev = m.one().clone();
    for p in 0..n - 1 {
        if a[p][p].is_zero() {
            match (p + 1..n).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    negate = !negate;
                }
                None => return Ok(m.one().zero_like()),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let num = a[i][j].mul(&a[p][p]).sub(&a[i][p].mul(&a[p][j]));
                a[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = a[p][p].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

fn x_degree(v: &QLaurent) -> usize {
    v.coeffs().iter().filter_map(XPoly::degree).max().unwrap_or(0)
}

/// Bareiss over the integers; every division is exact.
fn det_integer(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for p in 0..n - 1 {
        if a[p][p].is_zero() {
            match (p + 1..n).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let num = &a[i][j] * &a[p][p] - &a[i][p] * &a[p][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[p][p].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant over `Q`: clears each row's denominators, then [`det_integer`].
pub fn det_rational(m: &RingMatrix<Rational>) -> Rational {
    let mut scale = BigInt::one();
    let rows = m
        .rows()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            scale *= &l;
            row.iter().map(|r| r.numer() * (&l / r.denom())).collect()
        })
        .collect();
    Rational::new(det_integer(rows), scale)
}

/// Determinant of a matrix over `Q[x][q, q^-1]` by evaluation and interpolation.
///
/// Each row is multiplied by the power of `q` that makes it polynomial in
/// `q`. By the Leibniz expansion the determinant of the result has
/// `x`-degree at most the sum of the row-wise maximal entry degrees, and
/// `q`-degree at most the sum of the row-wise maximal exponents. It is
/// evaluated on an integer grid of that size and interpolated exactly, first
/// in `q`, then in `x`.
pub fn det_interpolated(m: &RingMatrix<QLaurent>) -> Result<QLaurent> {
    let mut x_bound = 0usize;
    let mut q_bound = 0i64;
    let mut shift = 0i64;
    let mut rows = Vec::with_capacity(m.n());
    for row in m.rows() {
        let Some(lo) = row.iter().filter(|e| !e.is_zero()).map(QLaurent::lo).min() else {
            return Ok(QLaurent::zero());
        };
        shift += lo;
        x_bound += row.iter().map(x_degree).max().unwrap_or(0);
        q_bound += row.iter().filter_map(QLaurent::hi).max().unwrap_or(lo) - lo;
        rows.push(row.iter().map(|e| e.mul_q_pow(-lo)).collect::<Vec<_>>());
    }
    // small integer nodes 0, 1, -1, 2, -2, ...
    let qs: Vec<i64> = (0..=q_bound).map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) }).collect();
    let xs: Vec<Rational> = (0..=x_bound as i64).map(Rational::from).collect();
    let by_x: Vec<XPoly> = xs.par_iter().map(|t| q_slice(&rows, t, &qs)).collect();
    let coeffs = (0..=q_bound as usize)
        .map(|j| {
            let pts: Vec<(Rational, Rational)> = xs.iter().zip(&by_x).map(|(t, p)| (t.clone(), p.coeff(j))).collect();
            XPoly::interpolate(&pts)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QLaurent::from_parts(shift, coeffs))
}

/// Interpolates, in `q`, the determinant of the row-shifted matrix at `x = t`.
///
/// Rows are cleared of denominators so that every entry is an integer
/// polynomial in `q`; the determinant is then an integer polynomial too, its
/// divided differences on integer nodes are integers, and the whole
/// interpolation stays in `BigInt`.
fn q_slice(rows: &[Vec<QLaurent>], t: &Rational, qs: &[i64]) -> XPoly {
    let mut scale = BigInt::one();
    let int_rows: Vec<Vec<Vec<BigInt>>> = rows
        .iter()
        .map(|row| {
            let vals: Vec<Vec<Rational>> = row.iter().map(|e| padded_q_coeffs(e, t)).collect();
            let l = vals.iter().flatten().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            scale *= &l;
            vals.iter().map(|v| v.iter().map(|r| r.numer() * (&l / r.denom())).collect()).collect()
        })
        .collect();
    let values: Vec<BigInt> = qs
        .iter()
        .map(|&u| {
            let u = BigInt::from(u);
            let m = int_rows
                .iter()
                .map(|row| row.iter().map(|c| c.iter().rev().fold(BigInt::zero(), |acc, a| acc * &u + a)).collect())
                .collect();
            det_integer(m)
        })
        .collect();
    let coeffs = integer_interpolate(qs, values);
    XPoly::from_coeffs(coeffs.into_iter().map(|c| Rational::new(c, scale.clone())).collect())
}

/// Coefficients of `e(t, q)` in `q`, from `q^0`; `e` must be polynomial in `q`.
fn padded_q_coeffs(e: &QLaurent, t: &Rational) -> Vec<Rational> {
    if e.is_zero() {
        return Vec::new();
    }
    let lead = usize::try_from(e.lo()).expect("row shift makes entries polynomial in q");
    let mut out = vec![Rational::zero(); lead];
    out.extend(e.coeffs().iter().map(|p| p.eval(t)));
    out
}

/// Newton interpolation of an integer-coefficient polynomial on distinct
/// integer nodes; monomial coefficients, lowest first.
fn integer_interpolate(nodes: &[i64], mut diffs: Vec<BigInt>) -> Vec<BigInt> {
    let n = nodes.len();
    for level in 1..n {
        for i in (level..n).rev() {
            let span = BigInt::from(nodes[i] - nodes[i - level]);
            diffs[i] = (&diffs[i] - &diffs[i - 1]) / span;
        }
    }
    let mut acc: Vec<BigInt> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        // acc = acc * (q - nodes[i]) + diffs[i]
        let node = BigInt::from(nodes[i]);
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (j, a) in acc.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * &node;
        }
        next[0] += &diffs[i];
        acc = next;
    }
    acc
}

/// Bareiss determinant, cross-checked against cofactor expansion for `n <= COFACTOR_LIMIT`.
pub fn determinant<R: Ring>(m: &RingMatrix<R>) -> Result<R> {
    let det = det_bareiss(m)?;
    if m.n() <= COFACTOR_LIMIT && det != det_cofactor(m)? {
        return Err(Error::EngineDisagreement { n: m.n() });
    }
    Ok(det)
}

fn cache() -> &'static RwLock<HashMap<DetInstance, QLaurent>> {
    static CACHE: OnceLock<RwLock<HashMap<DetInstance, QLaurent>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The symbolic determinant `d_{n,k}(x,q)`, memoized by `(n, k)`.
///
/// Computed by [`det_interpolated`]; for `n <= COFACTOR_LIMIT` it must also
/// agree with symbolic Bareiss and cofactor expansion. `n = 0` is the empty
/// determinant 1, which the recursions need.
pub fn d(n: usize, k: i64) -> Result<QLaurent> {
    if n == 0 {
        return Ok(QLaurent::one());
    }
    if n > SYMBOLIC_GUARD {
        return Err(Error::GuardExceeded { n, guard: SYMBOLIC_GUARD });
    }
    let inst = DetInstance { n, k };
    if let Some(v) = cache().read().expect("cache lock").get(&inst) {
        return Ok(v.clone());
    }
    let m = build_matrix(inst);
    let v = det_interpolated(&m)?;
    if n <= COFACTOR_LIMIT && v != determinant(&m)? {
        return Err(Error::EngineDisagreement { n });
    }
    cache().write().expect("cache lock").entry(inst).or_insert_with(|| v.clone());
    Ok(v)
}

/// Seeds the memo table, e.g. from an on-disk cache. The value is trusted.
pub fn preload(inst: DetInstance, value: QLaurent) {
    cache().write().expect("cache lock").insert(inst, value);
}

/// Snapshot of the memo table, sorted by `(n, k)`.
pub fn cached() -> Vec<(DetInstance, QLaurent)> {
    let mut out: Vec<_> = cache().read().expect("cache lock").iter().map(|(k, v)| (*k, v.clone())).collect();
    out.sort_by_key(|(k, _)| *k);
    out
}

fn binom(c: i64, m: usize) -> QLaurent {
    QLaurent::from_xpoly(XPoly::binomial(c, m as u32))
}

/// One deletion identity: which rows/columns are removed and the expected
/// right-hand side.
struct Deletion {
    name: &'static str,
    rows: Vec<usize>,
    cols: Vec<usize>,
    rhs: QLaurent,
}

fn deletions(inst: DetInstance, swapped_corners: bool) -> Result<Vec<Deletion>> {
    let DetInstance { n, k } = inst;
    let ni = n as i64;
    let (k_top_right, k_bottom_left) = if swapped_corners { (k - 1, k + 1) } else { (k + 1, k - 1) };
    Ok(vec![
        Deletion {
            name: "det D^1_1 = d_{n-1,k}(x+2) binom(x+n, n-1)",
            rows: vec![1],
            cols: vec![1],
            rhs: d(n - 1, k)?.shift_x_int(2).mul(&binom(ni, n - 1)),
        },
        Deletion { name: "det D^n_n = d_{n-1,k}(x)", rows: vec![n], cols: vec![n], rhs: d(n - 1, k)? },
        Deletion {
            name: "det D^{1,n}_{1,n} = d_{n-2,k}(x+2) binom(x+n-1, n-2)",
            rows: vec![1, n],
            cols: vec![1, n],
            rhs: d(n - 2, k)?.shift_x_int(2).mul(&binom(ni - 1, n - 2)),
        },
        // superscript = deleted row, subscript = deleted column
        Deletion {
            name: if swapped_corners { "det D^1_n = d_{n-1,k-1}(x+1)" } else { "det D^1_n = d_{n-1,k+1}(x+1)" },
            rows: vec![1],
            cols: vec![n],
            rhs: d(n - 1, k_top_right)?.shift_x_int(1),
        },
        Deletion {
            name: if swapped_corners {
                "det D^n_1 = d_{n-1,k+1}(x+1) binom(x+n-1, n-1)"
            } else {
                "det D^n_1 = d_{n-1,k-1}(x+1) binom(x+n-1, n-1)"
            },
            rows: vec![n],
            cols: vec![1],
            rhs: d(n - 1, k_bottom_left)?.shift_x_int(1).mul(&binom(ni - 1, n - 1)),
        },
    ])
}

fn run_deletions(inst: DetInstance, swapped: bool) -> Result<Vec<CheckItem>> {
    if inst.n < 2 {
        return Err(Error::Invalid("deletion identities need n >= 2".into()));
    }
    let m = build_matrix(inst);
    deletions(inst, swapped)?
        .into_iter()
        .map(|del| {
            let lhs = determinant(&m.minor(&del.rows, &del.cols))?;
            Ok(compare(del.name, Some(inst.n as i64), Some(inst.k), &lhs, &del.rhs))
        })
        .collect()
}

/// The five row/column deletion identities exactly as displayed, where
/// `A^{i}_{j}` removes row `i` and column `j`.
///
/// As displayed, the two corner identities have `k+1` and `k-1` exchanged;
/// see [`deletion_identities_corrected`].
pub fn deletion_identities_check(inst: DetInstance) -> Result<Vec<CheckItem>> {
    run_deletions(inst, false)
}

/// The deletion identities with the corner shifts `k+1`/`k-1` exchanged,
/// which is the form that holds.
pub fn deletion_identities_corrected(inst: DetInstance) -> Result<Vec<CheckItem>> {
    run_deletions(inst, true)
}

/// `(n-1) d_{n,k}(x) d_{n-2,k}(x+2)
///   = (x+n) d_{n-1,k}(x) d_{n-1,k}(x+2) - (x+1) d_{n-1,k+1}(x+1) d_{n-1,k-1}(x+1)`.
pub fn condensation_check(inst: DetInstance) -> Result<CheckItem> {
    let DetInstance { n, k } = inst;
    if n < 3 {
        return Err(Error::Invalid("condensation identity needs n >= 3".into()));
    }
    let lhs = d(n, k)?.mul(&d(n - 2, k)?.shift_x_int(2)).scale(&Rational::from(n as i64 - 1));
    let rhs = d(n - 1, k)?
        .mul(&d(n - 1, k)?.shift_x_int(2))
        .mul_xpoly(&XPoly::linear(n as i64))
        .sub(&d(n - 1, k + 1)?.shift_x_int(1).mul(&d(n - 1, k - 1)?.shift_x_int(1)).mul_xpoly(&XPoly::linear(1)));
    Ok(compare("condensation", Some(n as i64), Some(k), &lhs, &rhs))
}

/// `det A det A^{1,n}_{1,n} = det A^1_1 det A^n_n - det A^n_1 det A^1_n`.
pub fn desnanot_jacobi_check<R: Ring>(m: &RingMatrix<R>) -> Result<bool> {
    let n = m.n();
    if n < 2 {
        return Err(Error::Invalid("Desnanot-Jacobi needs n >= 2".into()));
    }
    let det = |rows: &[usize], cols: &[usize]| det_bareiss(&m.minor(rows, cols));
    let lhs = det(&[], &[])?.mul(&det(&[1, n], &[1, n])?);
    let rhs = det(&[1], &[1])?.mul(&det(&[n], &[n])?).sub(&det(&[n], &[1])?.mul(&det(&[1], &[n])?));
    Ok(lhs == rhs)
}

/// `d_{n,-k} = (-1)^{n(k-1)} q^{-nk} d_{n,k}` for `k >= 0`.
pub fn transposition_check(n: usize, k: i64) -> Result<CheckItem> {
    let ni = n as i64;
    let sign = if (ni * (k - 1)).rem_euclid(2) == 0 { 1 } else { -1 };
    let rhs = d(n, k)?.mul_q_pow(-ni * k).scale(&Rational::from(sign));
    Ok(compare("transposition d_{n,-k}", Some(ni), Some(k), &d(n, -k)?, &rhs))
}

/// `prod_{l=0}^{floor((n-k-1)/2)} (x + k + 2l + 1)` divides `d_{n,k}` (positive `k`).
pub fn divisibility_check(n: usize, k: i64) -> Result<CheckItem> {
    let top = (n as i64 - k - 1).div_euclid(2);
    let divisor = (0..=top).fold(XPoly::one(), |acc, l| acc.mul(&XPoly::linear(k + 2 * l + 1)));
    let v = d(n, k)?;
    let res = v.exact_div(&QLaurent::from_xpoly(divisor.clone()));
    Ok(CheckItem::nk("divisibility by prod (x+k+2l+1)", n, k, res.is_ok())
        .witness(format!("divisor {divisor}: {}", res.err().map(|e| e.to_string()).unwrap_or_default())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xq(terms: &[(i64, &[i64])]) -> QLaurent {
        QLaurent::from_terms(terms.iter().map(|(e, c)| (*e, XPoly::from_i64s(c))))
    }

    #[test]
    fn a_coeff_cases() {
        assert_eq!(a_coeff(1), QLaurent::one());
        assert_eq!(a_coeff(0), QLaurent::zero());
        assert_eq!(a_coeff(-1), QLaurent::q_pow(-1));
        assert_eq!(a_coeff(2), xq(&[(0, &[1]), (1, &[-1])]));
        assert_eq!(a_coeff(-2), xq(&[(-2, &[-1]), (-1, &[1])]));
    }

    #[test]
    fn a_coeff_times_one_plus_q() {
        // (1 + q) a_j = 1 - (-q)^j
        let one_plus_q = xq(&[(0, &[1]), (1, &[1])]);
        for j in -6..=6i64 {
            let sign = if j.rem_euclid(2) == 0 { -1 } else { 1 };
            let expect = QLaurent::one().add(&QLaurent::monomial(j, XPoly::from_i64s(&[sign])));
            assert_eq!(a_coeff(j).mul(&one_plus_q), expect, "j={j}");
        }
    }

    #[test]
    fn small_matrices() {
        let m = build_matrix(DetInstance { n: 1, k: 1 });
        assert_eq!(m.get(1, 1), &QLaurent::one());
        let m = build_matrix(DetInstance { n: 2, k: 1 });
        assert_eq!(m.get(1, 2), &xq(&[(0, &[1, 1]), (1, &[-1, -1])]));
        assert_eq!(m.get(2, 1), &QLaurent::zero());
        assert_eq!(m.get(2, 2), &xq(&[(0, &[2, 1])]));
        let m = build_matrix(DetInstance { n: 2, k: 0 });
        assert_eq!(m.get(2, 1), &QLaurent::q_pow(-1));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(d(1, 1).unwrap(), QLaurent::one());
        assert_eq!(d(2, 1).unwrap(), xq(&[(0, &[2, 1])]));
        assert_eq!(d(3, 0).unwrap(), QLaurent::zero());
        assert_eq!(d(5, 0).unwrap(), QLaurent::zero());
        assert_eq!(d(0, 7).unwrap(), QLaurent::one());
    }

    #[test]
    fn engines_on_integer_matrix() {
        let m = RingMatrix::from_rows(vec![
            vec![Rational::from(1), Rational::from(2)],
            vec![Rational::from(3), Rational::from(4)],
        ]);
        assert_eq!(det_cofactor(&m).unwrap(), Rational::from(-2));
        assert_eq!(det_bareiss(&m).unwrap(), Rational::from(-2));
        assert!(desnanot_jacobi_check(&m).unwrap());
    }

    #[test]
    fn interpolation_matches_symbolic_bareiss() {
        for (n, k) in [(7, 1), (7, -2), (4, 0)] {
            let m = build_matrix(DetInstance { n, k });
            assert_eq!(det_interpolated(&m).unwrap(), det_bareiss(&m).unwrap(), "n={n} k={k}");
        }
    }

    #[test]
    fn bareiss_pivots_past_zero() {
        let m = RingMatrix::from_rows(vec![
            vec![Rational::from(0), Rational::from(1), Rational::from(2)],
            vec![Rational::from(1), Rational::from(0), Rational::from(3)],
            vec![Rational::from(4), Rational::from(-3), Rational::from(8)],
        ]);
        assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m).unwrap());
        assert_eq!(det_bareiss(&m).unwrap(), Rational::from(-2));
    }

    #[test]
    fn guards() {
        assert!(matches!(d(13, 1), Err(Error::GuardExceeded { .. })));
        assert!(DetInstance::new(0, 1).is_err());
        let big = RingMatrix::from_fn(7, Rational::one(), |i, j| Rational::from((i * j) as i64));
        assert!(matches!(det_cofactor(&big), Err(Error::CofactorTooLarge { .. })));
    }

    #[test]
    fn deletion_corners_as_displayed_vs_corrected() {
        let inst = DetInstance { n: 2, k: 1 };
        let shown = deletion_identities_check(inst).unwrap();
        assert!(shown[..3].iter().all(|c| c.pass));
        assert!(!shown[3].pass && !shown[4].pass);
        assert!(deletion_identities_corrected(inst).unwrap().iter().all(|c| c.pass));
    }

    #[test]
    fn condensation_small() {
        assert!(condensation_check(DetInstance { n: 3, k: 1 }).unwrap().pass);
        assert!(condensation_check(DetInstance { n: 4, k: 0 }).unwrap().pass);
        assert!(condensation_check(DetInstance { n: 3, k: -2 }).unwrap().pass);
    }
}
