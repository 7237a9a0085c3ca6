use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::text::rational_str;
use super::{MultiIndex, Rational, Scalar};
use crate::error::MeixnerError;

/// Multivariate polynomial in `x_1, ..., x_d` stored as exponent -> coefficient.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePolynomial<T> {
    dim: usize,
    terms: BTreeMap<MultiIndex, T>,
}

impl<T: Scalar> SparsePolynomial<T> {
    pub fn zero(dim: usize) -> Self {
        SparsePolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, T::one())
    }

    pub fn constant(dim: usize, c: T) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(MultiIndex::zero(dim), c);
        p
    }

    /// The coordinate function `x_axis`.
    pub fn variable(dim: usize, axis: usize) -> Self {
        assert!(axis < dim, "variable index {axis} out of range for dimension {dim}");
        let mut p = Self::zero(dim);
        p.add_term(MultiIndex::unit(dim, axis), T::one());
        p
    }

    /// Single term `c * x^exp`.
    pub fn monomial(exp: MultiIndex, c: T) -> Self {
        let mut p = Self::zero(exp.dim());
        p.add_term(exp, c);
        p
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, T)>,
    {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.dim(), dim, "exponent dimension mismatch");
            p.add_term(e, c);
        }
        p
    }

    /// Adds `c * x^exp` in place.
    pub fn add_term(&mut self, exp: MultiIndex, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &T)> {
        self.terms.iter()
    }

    /// Coefficient of `x^exp` (zero when absent).
    pub fn coeff(&self, exp: &MultiIndex) -> T {
        self.terms.get(exp).cloned().unwrap_or_else(T::zero)
    }

    /// Maximum `|exp|` over stored terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::total).max()
    }

    /// Sum of the terms of top total degree.
    pub fn leading_form(&self) -> Self {
        let Some(deg) = self.total_degree() else {
            return Self::zero(self.dim);
        };
        Self::from_terms(
            self.dim,
            self.terms
                .iter()
                .filter(|(e, _)| e.total() == deg)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        SparsePolynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * s.clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Exact value at `point`.
    pub fn eval(&self, point: &[T]) -> Result<T, MeixnerError> {
        if point.len() != self.dim {
            return Err(MeixnerError::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        let powers = self.power_table(point);
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (axis, &k) in e.entries().iter().enumerate() {
                if k > 0 {
                    term = term * powers[axis][k as usize].clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    fn power_table(&self, point: &[T]) -> Vec<Vec<T>> {
        (0..self.dim)
            .map(|axis| {
                let top = self
                    .terms
                    .keys()
                    .map(|e| e.get(axis))
                    .max()
                    .unwrap_or(0);
                let mut row = Vec::with_capacity(top as usize + 1);
                row.push(T::one());
                for k in 1..=top as usize {
                    let next = row[k - 1].clone() * point[axis].clone();
                    row.push(next);
                }
                row
            })
            .collect()
    }

    /// The polynomial `q(x) = p(x + shift)`.
    pub fn shift(&self, shift: &[i32]) -> Result<Self, MeixnerError> {
        if shift.len() != self.dim {
            return Err(MeixnerError::DimensionMismatch {
                expected: self.dim,
                found: shift.len(),
            });
        }
        if shift.iter().all(|&s| s == 0) {
            return Ok(self.clone());
        }
        // expansions[axis][k] = coefficients of (x_axis + s_axis)^k
        let expansions: Vec<Vec<Vec<T>>> = (0..self.dim)
            .map(|axis| {
                let top = self.terms.keys().map(|e| e.get(axis)).max().unwrap_or(0);
                binomial_powers(&T::integer(i64::from(shift[axis])), top)
            })
            .collect();
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let mut partial: Vec<(Vec<u32>, T)> = vec![(Vec::with_capacity(self.dim), c.clone())];
            for (axis, &k) in e.entries().iter().enumerate() {
                let row = &expansions[axis][k as usize];
                let mut next = Vec::with_capacity(partial.len() * row.len());
                for (exp, coef) in &partial {
                    for (j, b) in row.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let mut exp2 = exp.clone();
                        exp2.push(j as u32);
                        next.push((exp2, coef.clone() * b.clone()));
                    }
                }
                partial = next;
            }
            for (exp, coef) in partial {
                out.add_term(MultiIndex::new(exp), coef);
            }
        }
        Ok(out)
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(
            self.dim, other.dim,
            "polynomial dimension mismatch ({} vs {})",
            self.dim, other.dim
        );
    }
}

/// Rows `k = 0..=top` holding the coefficients of `(x + s)^k` in `x`.
fn binomial_powers<T: Scalar>(s: &T, top: u32) -> Vec<Vec<T>> {
    let mut rows: Vec<Vec<T>> = vec![vec![T::one()]];
    for k in 1..=top as usize {
        let prev = &rows[k - 1];
        let mut row = vec![T::zero(); k + 1];
        for (j, c) in prev.iter().enumerate() {
            row[j + 1] = row[j + 1].clone() + c.clone();
            row[j] = row[j].clone() + c.clone() * s.clone();
        }
        rows.push(row);
    }
    rows
}

impl<T: Scalar> Add for &SparsePolynomial<T> {
    type Output = SparsePolynomial<T>;

    fn add(self, rhs: &SparsePolynomial<T>) -> SparsePolynomial<T> {
        self.check_dim(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &SparsePolynomial<T> {
    type Output = SparsePolynomial<T>;

    fn sub(self, rhs: &SparsePolynomial<T>) -> SparsePolynomial<T> {
        self.check_dim(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &SparsePolynomial<T> {
    type Output = SparsePolynomial<T>;

    fn mul(self, rhs: &SparsePolynomial<T>) -> SparsePolynomial<T> {
        self.check_dim(rhs);
        let mut out = SparsePolynomial::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &SparsePolynomial<T> {
    type Output = SparsePolynomial<T>;

    fn neg(self) -> SparsePolynomial<T> {
        SparsePolynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for SparsePolynomial<T> {
            type Output = SparsePolynomial<T>;
            fn $method(self, rhs: SparsePolynomial<T>) -> SparsePolynomial<T> {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar + fmt::Display> fmt::Display for SparsePolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first reads more naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.total().cmp(&a.0.total()).then(b.0.cmp(a.0)));
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (axis, &k) in e.entries().iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", axis + 1)?,
                    _ => write!(f, "*x{}^{k}", axis + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// One `{"exp": [..], "coef": "p/q"}` record of the polynomial JSON form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exp: MultiIndex,
    #[serde(with = "rational_str")]
    pub coef: Rational,
}

impl SparsePolynomial<Rational> {
    /// Term records sorted lexicographically by exponent.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(e, c)| TermRecord {
                exp: e.clone(),
                coef: c.clone(),
            })
            .collect()
    }

    /// Rebuilds a polynomial of dimension `dim` from its records.
    pub fn from_records(dim: usize, records: &[TermRecord]) -> Result<Self, MeixnerError> {
        let mut p = Self::zero(dim);
        for r in records {
            if r.exp.dim() != dim {
                return Err(MeixnerError::DimensionMismatch {
                    expected: dim,
                    found: r.exp.dim(),
                });
            }
            p.add_term(r.exp.clone(), r.coef.clone());
        }
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_records()).expect("term records serialize")
    }

    pub fn from_json(dim: usize, value: &serde_json::Value) -> Result<Self, MeixnerError> {
        let records: Vec<TermRecord> = serde_json::from_value(value.clone())
            .map_err(|e| MeixnerError::Parse(format!("polynomial: {e}")))?;
        Self::from_records(dim, &records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Polynomial};

    fn x(dim: usize, axis: usize) -> Polynomial {
        Polynomial::variable(dim, axis)
    }

    #[test]
    fn shift_examples() {
        let p = x(2, 0);
        let q = p.shift(&[1, 0]).unwrap();
        assert_eq!(q, &x(2, 0) + &Polynomial::one(2));

        let one = Polynomial::one(2);
        assert_eq!(one.shift(&[-3, 5]).unwrap(), one);

        let sq = &x(2, 0) * &x(2, 0);
        let want = Polynomial::from_terms(
            2,
            [
                (MultiIndex::from([2, 0]), int(1)),
                (MultiIndex::from([1, 0]), int(-2)),
                (MultiIndex::from([0, 0]), int(1)),
            ],
        );
        assert_eq!(sq.shift(&[-1, 0]).unwrap(), want);
    }

    #[test]
    fn eval_examples() {
        let p = &x(2, 0) * &x(2, 1);
        assert_eq!(p.eval(&[int(2), int(3)]).unwrap(), int(6));
        assert_eq!(Polynomial::zero(2).eval(&[int(7), int(1)]).unwrap(), int(0));
        let q = &Polynomial::one(1) - &x(1, 0).scale(&int(2));
        assert_eq!(q.eval(&[int(1)]).unwrap(), int(-1));
        assert!(q.eval(&[int(1), int(2)]).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &x(3, 1) - &x(3, 1);
        assert!(p.is_zero());
        assert_eq!(p.total_degree(), None);
    }

    #[test]
    fn degree_and_leading_form() {
        let p = &(&x(2, 0) * &x(2, 1)) + &x(2, 0);
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.leading_form(), &x(2, 0) * &x(2, 1));
    }

    #[test]
    fn json_records_sorted() {
        let p = Polynomial::from_terms(
            2,
            [
                (MultiIndex::from([1, 0]), int(-2)),
                (MultiIndex::from([0, 0]), int(1)),
                (MultiIndex::from([0, 1]), Rational::new(1.into(), 3.into())),
            ],
        );
        let s = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(
            s,
            r#"[{"coef":"1","exp":[0,0]},{"coef":"1/3","exp":[0,1]},{"coef":"-2","exp":[1,0]}]"#
        );
        assert_eq!(Polynomial::from_json(2, &p.to_json()).unwrap(), p);
    }

    #[test]
    fn works_over_floats() {
        let p = SparsePolynomial::<f64>::variable(1, 0);
        let q = (&p * &p).shift(&[2]).unwrap();
        assert_eq!(q.eval(&[1.0]).unwrap(), 9.0);
    }
}
