//! Multivariate Meixner polynomials over exact rationals.
//!
//! The crate builds parameter points `m = (c0, C, C~, U)`, the polynomials
//! `P_n(x; m, beta)` they index, and the two commuting families of partial
//! difference operators those polynomials diagonalize. Every identity
//! relating them (orthogonality, duality, the eigenvalue equations,
//! commutativity) can be checked exactly, producing a [`VerificationReport`].

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod meixner;
pub mod operators;
pub mod orthogonality;
pub mod params;
pub mod report;
pub mod sampling;
pub mod suite;

pub use algebra::{
    int, pochhammer, ratio, MultiIndex, Polynomial, Rational, Scalar, Series, SparsePolynomial,
    TruncatedSeries,
};
pub use error::MeixnerError;
pub use meixner::{DegreeMatrix, HypergeometricExpansion, MeixnerSpec};
pub use operators::{DifferenceOperator, Family};
pub use orthogonality::{InnerProductResult, NormValue, OrthogonalityOptions};
pub use params::{MeixnerPoint, RawPoint};
pub use report::VerificationReport;
pub use suite::{verify_all, SuiteConfig};

/// Polynomial with `f64` coefficients, for quick numerical experiments.
pub type PolynomialF64 = SparsePolynomial<f64>;
/// Truncated series with `f64` coefficients.
pub type SeriesF64 = TruncatedSeries<f64>;
