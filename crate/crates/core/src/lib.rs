//! Exact evaluation of the binomial determinants
//! `d_{n,k}(x,q) = det( binom(x+i+j-2, j-1) * (1-(-q)^(j-i+k))/(1+q) )`
//! and verification of their identities, factorizations and root-of-unity
//! product formulas against a brute-force alternating sign matrix oracle.
//!
//! Layers, bottom-up:
//! * [`exactalg`] exact rings: rationals, `Q[x]`, `Q[x][q, q^-1]`, `Q(zeta_l)[x]`
//! * [`detkernel`] the matrices `D_{n,k}`, two determinant engines, the
//!   row/column deletion and condensation identities
//! * [`structure`] the factorization `d = q^c p(x) f(x,q)` and its recursions
//! * [`closedform`] product formulas at `q = 1, -1, zeta_3, zeta_4, zeta_6`
//! * [`oracle`] monotone triangles, weighted ASM enumeration, the Andrews
//!   determinant, and the specialization table
//! * [`report`] pass/fail items shared by every check

pub mod closedform;
pub mod detkernel;
pub mod error;
pub mod exactalg;
pub mod oracle;
pub mod report;
pub mod structure;

pub use detkernel::{d, DetInstance};
pub use error::{AlgebraError, Error, Result};
pub use exactalg::{CycloElem, QLaurent, Rational, Ring, RingMatrix, XPoly};
pub use report::{CheckItem, Report, SuiteReport};
