use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{pochhammer, MultiIndex, Scalar, SparsePolynomial};
use crate::error::MeixnerError;

/// Formal power series in `z_1, ..., z_d` truncated at total degree `order`.
///
/// Terms with `|k| > order` are never stored; products are exact up to the
/// truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T> {
    dim: usize,
    order: u32,
    coeffs: BTreeMap<MultiIndex, T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    pub fn zero(dim: usize, order: u32) -> Self {
        TruncatedSeries {
            dim,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize, order: u32) -> Self {
        let mut s = Self::zero(dim, order);
        s.add_term(MultiIndex::zero(dim), T::one());
        s
    }

    /// Truncation of a polynomial.
    pub fn from_polynomial(p: &SparsePolynomial<T>, order: u32) -> Self {
        let mut s = Self::zero(p.dim(), order);
        for (e, c) in p.terms() {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    /// `(1 - z_1 - ... - z_d)^(-gamma)`, whose coefficient at `z^k` is
    /// `(gamma)_{|k|} / k!`.
    pub fn negative_power(gamma: &T, dim: usize, order: u32) -> Self {
        let mut s = Self::zero(dim, order);
        for total in 0..=order {
            let rising = pochhammer(gamma, total);
            if rising.is_zero() {
                // every later rising factorial vanishes too
                break;
            }
            for k in MultiIndex::with_total(dim, total) {
                let c = rising.clone() / k.factorial::<T>();
                s.add_term(k, c);
            }
        }
        s
    }

    /// Adds `c z^exp`, dropping it if `|exp|` exceeds the order.
    pub fn add_term(&mut self, exp: MultiIndex, c: T) {
        assert_eq!(exp.dim(), self.dim, "exponent dimension mismatch");
        if c.is_zero() || exp.total() > self.order {
            return;
        }
        match self.coeffs.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, exp: &MultiIndex) -> T {
        self.coeffs.get(exp).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero coefficients in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &T)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &Self) -> Result<Self, MeixnerError> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim, self.order.min(other.order));
        for (e, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Cauchy product truncated at `min(order(a), order(b))`.
    pub fn mul(&self, other: &Self) -> Result<Self, MeixnerError> {
        self.check_dim(other)?;
        let order = self.order.min(other.order);
        let mut acc: BTreeMap<MultiIndex, T> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            let d1 = e1.total();
            if d1 > order {
                continue;
            }
            for (e2, c2) in &other.coeffs {
                if d1 + e2.total() > order {
                    continue;
                }
                let slot = acc.entry(e1.add(e2)).or_insert_with(T::zero);
                *slot = slot.clone() + c1.clone() * c2.clone();
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(TruncatedSeries {
            dim: self.dim,
            order,
            coeffs: acc,
        })
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut result = Self::one(self.dim, self.order);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same dimension");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        result
    }

    fn check_dim(&self, other: &Self) -> Result<(), MeixnerError> {
        if self.dim != other.dim {
            return Err(MeixnerError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}
