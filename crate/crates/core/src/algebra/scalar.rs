//! Scalar abstraction shared by the polynomial and series containers.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed};

/// Coefficient field for [`SparsePolynomial`](super::SparsePolynomial) and
/// [`TruncatedSeries`](super::TruncatedSeries).
///
/// Exact rationals are the intended instantiation; `f64` also satisfies the
/// bound and is handy for quick numerical experiments.
pub trait Scalar:
    Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    /// The integer `n` as a scalar.
    fn integer(n: i64) -> Self {
        Self::from_i64(n).expect("integer not representable in scalar type")
    }
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + Num + Neg<Output = T> + FromPrimitive + Send + Sync
{
}

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

/// Builds `num/den` as an exact rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer `n` as an exact rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rising factorial `a (a+1) ... (a+k-1)`; equals one for `k = 0`.
pub fn pochhammer<T: Scalar>(a: &T, k: u32) -> T {
    let mut acc = T::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc = acc * term.clone();
        term = term + T::one();
    }
    acc
}

/// `k!` as a scalar.
pub fn factorial<T: Scalar>(k: u32) -> T {
    (1..=i64::from(k)).fold(T::one(), |acc, i| acc * T::integer(i))
}

/// `true` when `r` is an integer `<= 0`.
pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// Checks `r` is strictly between zero and one.
pub fn in_unit_interval(r: &Rational) -> bool {
    r.is_positive() && r < &Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_small_cases() {
        assert_eq!(pochhammer(&int(5), 0), int(1));
        assert_eq!(pochhammer(&int(2), 3), int(24));
        assert_eq!(pochhammer(&ratio(1, 2), 2), ratio(3, 4));
        assert_eq!(pochhammer(&int(-3), 4), int(0));
        assert_eq!(pochhammer(&int(-3), 3), int(-6));
    }

    #[test]
    fn pochhammer_floats() {
        assert_eq!(pochhammer(&2.0_f64, 3), 24.0);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial::<Rational>(0), int(1));
        assert_eq!(factorial::<Rational>(5), int(120));
    }

    #[test]
    fn nonpositive_integers() {
        assert!(is_nonpositive_integer(&int(0)));
        assert!(is_nonpositive_integer(&int(-4)));
        assert!(!is_nonpositive_integer(&ratio(-1, 2)));
        assert!(!is_nonpositive_integer(&int(1)));
    }
}
