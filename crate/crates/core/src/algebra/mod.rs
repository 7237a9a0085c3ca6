//! Exact scalars, multi-indices, sparse polynomials and truncated series.

mod multi_index;
mod polynomial;
mod scalar;
mod series;
pub mod text;

pub use multi_index::MultiIndex;
pub use polynomial::{SparsePolynomial, TermRecord};
pub use scalar::{
    factorial, in_unit_interval, int, is_nonpositive_integer, pochhammer, ratio, Rational, Scalar,
};
pub use series::TruncatedSeries;

/// Polynomial over exact rationals.
pub type Polynomial = SparsePolynomial<Rational>;
/// Truncated series over exact rationals.
pub type Series = TruncatedSeries<Rational>;
