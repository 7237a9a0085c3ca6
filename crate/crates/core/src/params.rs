//! Points `m = (c0, C, C~, U)` of the Meixner parameter set.
//!
//! A point is determined by the weights `c_1..c_d` (with
//! `C = diag(1, -c_1, ..., -c_d)`), the dual weights `c~_1..c~_d`, the
//! constant `c0`, and a `(d+1) x (d+1)` matrix `U` whose row and column 0
//! are all ones. Membership means `U^t C U C~ = c0 I` exactly.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::text::{format_rational, rational_matrix, rational_str, rational_vec};
use crate::algebra::{int, Rational};
use crate::error::MeixnerError;

/// Unvalidated point in the JSON layout
/// `{"d", "c0", "c", "c_tilde", "U"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawPoint {
    pub d: usize,
    #[serde(with = "rational_str")]
    pub c0: Rational,
    #[serde(with = "rational_vec")]
    pub c: Vec<Rational>,
    #[serde(with = "rational_vec")]
    pub c_tilde: Vec<Rational>,
    #[serde(rename = "U", with = "rational_matrix")]
    pub u: Vec<Vec<Rational>>,
}

/// Which defining relation a [`ParameterCheck`] tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `u_{0,j} = u_{j,0} = 1`.
    BorderEntry,
    /// Entry `(i, j)` of `U^t C U C~ = c0 I`.
    MatrixEquation,
    /// `c0 = 1 - |c|`.
    WeightSum,
    /// `c0 = 1 - |c~|`.
    DualWeightSum,
    /// `c~_j = -c0 / (U^t C U)_{jj}`, re-derived from `c` and `U`.
    DerivedDualWeight,
    /// `sum_k c_k u_{k,i} = 1 - c0 delta_{i,0}`.
    LinearSum,
    /// `sum_k c_k u_{k,i} u_{k,j} = 1 + (c0 / c~_j) delta_{i,j}`, with `c~_0 = -1`.
    QuadraticSum,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::BorderEntry => "border-entry",
            Condition::MatrixEquation => "matrix-equation",
            Condition::WeightSum => "weight-sum",
            Condition::DualWeightSum => "dual-weight-sum",
            Condition::DerivedDualWeight => "derived-dual-weight",
            Condition::LinearSum => "linear-sum",
            Condition::QuadraticSum => "quadratic-sum",
        }
    }
}

/// One exact comparison made while validating a point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParameterCheck {
    pub condition: Condition,
    pub index: Vec<usize>,
    #[serde(with = "rational_str")]
    pub expected: Rational,
    #[serde(with = "rational_str")]
    pub actual: Rational,
    pub pass: bool,
}

impl ParameterCheck {
    fn new(condition: Condition, index: Vec<usize>, expected: Rational, actual: Rational) -> Self {
        let pass = expected == actual;
        ParameterCheck {
            condition,
            index,
            expected,
            actual,
            pass,
        }
    }
}

/// A failed [`ParameterCheck`].
pub type Violation = ParameterCheck;

impl fmt::Display for ParameterCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{:?}: expected {}, got {}",
            self.condition.label(),
            self.index,
            format_rational(&self.expected),
            format_rational(&self.actual)
        )
    }
}

/// A validated point of the parameter set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint", into = "RawPoint")]
pub struct MeixnerPoint {
    d: usize,
    c0: Rational,
    c: Vec<Rational>,
    c_tilde: Vec<Rational>,
    u: Vec<Vec<Rational>>,
}

impl MeixnerPoint {
    /// Checks every defining relation exactly and returns the point, or the
    /// full list of violated conditions.
    pub fn validate(raw: RawPoint) -> Result<Self, MeixnerError> {
        let checks = check_identities(&raw)?;
        let violations: Vec<Violation> = checks.into_iter().filter(|c| !c.pass).collect();
        if !violations.is_empty() {
            return Err(MeixnerError::NotInParameterSet(violations));
        }
        Ok(Self::from_parts(raw))
    }

    /// Builds a point without checking the matrix relations. Shapes and the
    /// nonzero conditions are still enforced. Used for mutation testing.
    pub fn from_raw_unchecked(raw: RawPoint) -> Result<Self, MeixnerError> {
        check_shape(&raw)?;
        check_nonzero(&raw)?;
        Ok(Self::from_parts(raw))
    }

    fn from_parts(raw: RawPoint) -> Self {
        MeixnerPoint {
            d: raw.d,
            c0: raw.c0,
            c: raw.c,
            c_tilde: raw.c_tilde,
            u: raw.u,
        }
    }

    pub fn to_raw(&self) -> RawPoint {
        RawPoint {
            d: self.d,
            c0: self.c0.clone(),
            c: self.c.clone(),
            c_tilde: self.c_tilde.clone(),
            u: self.u.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn c0(&self) -> &Rational {
        &self.c0
    }

    /// `c_1, ..., c_d` (0-based slice).
    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    /// `c~_1, ..., c~_d` (0-based slice).
    pub fn c_tilde(&self) -> &[Rational] {
        &self.c_tilde
    }

    /// `u_{i,j}` with `0 <= i, j <= d`, so `u(0, j) == 1`.
    pub fn u(&self, i: usize, j: usize) -> &Rational {
        &self.u[i][j]
    }

    pub fn u_matrix(&self) -> &[Vec<Rational>] {
        &self.u
    }

    /// The bispectral involution `(c0, C, C~, U) -> (c0, C~, C, U^t)`.
    pub fn involution(&self) -> MeixnerPoint {
        MeixnerPoint {
            d: self.d,
            c0: self.c0.clone(),
            c: self.c_tilde.clone(),
            c_tilde: self.c.clone(),
            u: transpose(&self.u),
        }
    }

    /// Copy with `u_{i,j}` replaced by `u_{i,j} + delta`, skipping validation.
    pub fn perturbed(&self, i: usize, j: usize, delta: &Rational) -> MeixnerPoint {
        let mut out = self.clone();
        out.u[i][j] = &out.u[i][j] + delta;
        out
    }

    /// Runs every identity check against this point.
    pub fn checks(&self) -> Vec<ParameterCheck> {
        check_identities(&self.to_raw()).expect("shape already validated")
    }

    /// Gram-Schmidt construction from weights `c` under
    /// `<w1, w2> = w1^t C w2`.
    ///
    /// Column `j` starts from `e_j` plus mixing parameters on coordinates
    /// `j+1..=d`; `mixing` lists those `d(d-1)/2` values column by column
    /// and defaults to all zero.
    pub fn from_weights(c: &[Rational], mixing: Option<&[Rational]>) -> Result<Self, MeixnerError> {
        let d = c.len();
        if d == 0 {
            return Err(MeixnerError::BadParameter("dimension must be at least 1".into()));
        }
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                return Err(MeixnerError::ZeroParameter {
                    name: format!("c_{}", k + 1),
                });
            }
        }
        let c0 = Rational::one() - c.iter().sum::<Rational>();
        if c0.is_zero() {
            return Err(MeixnerError::ZeroParameter { name: "c0".into() });
        }
        let expected_mixing = d * (d - 1) / 2;
        let zeros = vec![Rational::zero(); expected_mixing];
        let mixing = mixing.unwrap_or(&zeros);
        if mixing.len() != expected_mixing {
            return Err(MeixnerError::BadParameter(format!(
                "expected {expected_mixing} mixing parameters, got {}",
                mixing.len()
            )));
        }

        let form = |a: &[Rational], b: &[Rational]| -> Rational {
            let mut acc = &a[0] * &b[0];
            for k in 1..=d {
                acc -= &c[k - 1] * &a[k] * &b[k];
            }
            acc
        };

        let mut columns: Vec<Vec<Rational>> = vec![vec![Rational::one(); d + 1]];
        let mut norms: Vec<Rational> = vec![c0.clone()];
        let mut mix = mixing.iter();
        for j in 1..=d {
            let mut start = vec![Rational::zero(); d + 1];
            start[j] = Rational::one();
            for slot in start.iter_mut().skip(j + 1) {
                *slot = mix.next().expect("length checked").clone();
            }
            let mut v = start.clone();
            for (prev, norm) in columns.iter().zip(&norms) {
                let coef = form(&start, prev) / norm;
                for (vk, pk) in v.iter_mut().zip(prev) {
                    *vk -= &coef * pk;
                }
            }
            if v[0].is_zero() {
                return Err(MeixnerError::DegenerateStep {
                    column: j,
                    reason: "coordinate 0 vanishes before normalization".into(),
                });
            }
            let lead = v[0].clone();
            for vk in v.iter_mut() {
                *vk /= &lead;
            }
            let norm = form(&v, &v);
            if norm.is_zero() {
                return Err(MeixnerError::DegenerateStep {
                    column: j,
                    reason: "<v_j, v_j> = 0".into(),
                });
            }
            columns.push(v);
            norms.push(norm);
        }

        let c_tilde = norms[1..].iter().map(|n| -&c0 / n).collect();
        let u = transpose(&columns);
        Self::validate(RawPoint {
            d,
            c0,
            c: c.to_vec(),
            c_tilde,
            u,
        })
    }

    /// The triangular family: `c~_k = c_k c0 / ((1 - sum_{j>k} c_j)(1 - sum_{j>=k} c_j))`,
    /// `U` zero above the diagonal and one below it (outside row/column 0),
    /// with `u_{i,i} = (1 - sum_{k>i} c_k) / c_i`.
    pub fn family_triangular(c: &[Rational]) -> Result<Self, MeixnerError> {
        let d = c.len();
        if d == 0 {
            return Err(MeixnerError::BadParameter("dimension must be at least 1".into()));
        }
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                return Err(MeixnerError::ZeroParameter {
                    name: format!("c_{}", k + 1),
                });
            }
        }
        let c0 = Rational::one() - c.iter().sum::<Rational>();
        if c0.is_zero() {
            return Err(MeixnerError::ZeroParameter { name: "c0".into() });
        }
        // tail[k] = 1 - sum_{j >= k} c_j for k = 1..=d+1 (tail[d+1] = 1)
        let mut tail = vec![Rational::one(); d + 2];
        for k in (1..=d).rev() {
            tail[k] = &tail[k + 1] - &c[k - 1];
        }
        let mut c_tilde = Vec::with_capacity(d);
        for k in 1..=d {
            let den = &tail[k + 1] * &tail[k];
            if den.is_zero() {
                return Err(MeixnerError::ZeroDenominator { k });
            }
            c_tilde.push(&c[k - 1] * &c0 / den);
        }
        let mut u = vec![vec![Rational::zero(); d + 1]; d + 1];
        for (i, row) in u.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = if i == 0 || j == 0 {
                    Rational::one()
                } else if i < j {
                    Rational::zero()
                } else if i > j {
                    Rational::one()
                } else {
                    &tail[i + 1] / &c[i - 1]
                };
            }
        }
        Self::validate(RawPoint {
            d,
            c0,
            c: c.to_vec(),
            c_tilde,
            u,
        })
    }

    /// The one-parameter family `c_k = c~_k = (1-q) q^(k-1)`, with
    /// `u_{i,j}` equal to 1, `1/(1-q)` or 0 as `i + j` is `<= d`, `= d+1`
    /// or `> d+1`. Here `c0 = q^d`.
    pub fn family_geometric(q: &Rational, d: usize) -> Result<Self, MeixnerError> {
        if q.is_zero() || q.is_one() {
            return Err(MeixnerError::BadParameter(format!(
                "q must avoid 0 and 1, got {}",
                format_rational(q)
            )));
        }
        if d == 0 {
            return Err(MeixnerError::BadParameter("dimension must be at least 1".into()));
        }
        let one_minus_q = Rational::one() - q;
        let mut c = Vec::with_capacity(d);
        let mut qpow = Rational::one();
        for _ in 0..d {
            c.push(&one_minus_q * &qpow);
            qpow *= q;
        }
        let anti = one_minus_q.recip();
        let u = (0..=d)
            .map(|i| {
                (0..=d)
                    .map(|j| match (i + j).cmp(&(d + 1)) {
                        std::cmp::Ordering::Less => Rational::one(),
                        std::cmp::Ordering::Equal => anti.clone(),
                        std::cmp::Ordering::Greater => Rational::zero(),
                    })
                    .collect()
            })
            .collect();
        Self::validate(RawPoint {
            d,
            c0: qpow,
            c: c.clone(),
            c_tilde: c,
            u,
        })
    }
}

impl TryFrom<RawPoint> for MeixnerPoint {
    type Error = MeixnerError;

    fn try_from(raw: RawPoint) -> Result<Self, Self::Error> {
        MeixnerPoint::validate(raw)
    }
}

impl From<MeixnerPoint> for RawPoint {
    fn from(p: MeixnerPoint) -> Self {
        RawPoint {
            d: p.d,
            c0: p.c0,
            c: p.c,
            c_tilde: p.c_tilde,
            u: p.u,
        }
    }
}

fn transpose(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

fn check_shape(raw: &RawPoint) -> Result<(), MeixnerError> {
    let d = raw.d;
    if d == 0 {
        return Err(MeixnerError::BadParameter("dimension must be at least 1".into()));
    }
    let mismatch = |found: usize, expected: usize| MeixnerError::DimensionMismatch { expected, found };
    if raw.c.len() != d {
        return Err(mismatch(raw.c.len(), d));
    }
    if raw.c_tilde.len() != d {
        return Err(mismatch(raw.c_tilde.len(), d));
    }
    if raw.u.len() != d + 1 {
        return Err(mismatch(raw.u.len(), d + 1));
    }
    if let Some(row) = raw.u.iter().find(|r| r.len() != d + 1) {
        return Err(mismatch(row.len(), d + 1));
    }
    Ok(())
}

fn check_nonzero(raw: &RawPoint) -> Result<(), MeixnerError> {
    if raw.c0.is_zero() {
        return Err(MeixnerError::ZeroParameter { name: "c0".into() });
    }
    for (k, ck) in raw.c.iter().enumerate() {
        if ck.is_zero() {
            return Err(MeixnerError::ZeroParameter {
                name: format!("c_{}", k + 1),
            });
        }
    }
    for (k, ck) in raw.c_tilde.iter().enumerate() {
        if ck.is_zero() {
            return Err(MeixnerError::ZeroParameter {
                name: format!("c_tilde_{}", k + 1),
            });
        }
    }
    Ok(())
}

/// Every exact comparison behind membership, passing or not.
///
/// Shape problems and zero parameters are reported as errors since no
/// comparison is meaningful without them.
pub fn check_identities(raw: &RawPoint) -> Result<Vec<ParameterCheck>, MeixnerError> {
    check_shape(raw)?;
    check_nonzero(raw)?;
    let d = raw.d;
    let u = &raw.u;
    // diag(C), diag(C~) including the leading 1
    let cdiag: Vec<Rational> = std::iter::once(Rational::one())
        .chain(raw.c.iter().map(|x| -x))
        .collect();
    let ctdiag: Vec<Rational> = std::iter::once(Rational::one())
        .chain(raw.c_tilde.iter().map(|x| -x))
        .collect();

    let mut checks = Vec::new();

    for j in 0..=d {
        checks.push(ParameterCheck::new(
            Condition::BorderEntry,
            vec![0, j],
            Rational::one(),
            u[0][j].clone(),
        ));
        if j > 0 {
            checks.push(ParameterCheck::new(
                Condition::BorderEntry,
                vec![j, 0],
                Rational::one(),
                u[j][0].clone(),
            ));
        }
    }

    // gram[i][j] = (U^t C U)_{i,j}
    let gram: Vec<Vec<Rational>> = (0..=d)
        .map(|i| {
            (0..=d)
                .map(|j| {
                    (0..=d)
                        .map(|k| &u[k][i] * &cdiag[k] * &u[k][j])
                        .sum::<Rational>()
                })
                .collect()
        })
        .collect();
    for i in 0..=d {
        for j in 0..=d {
            let expected = if i == j { raw.c0.clone() } else { Rational::zero() };
            checks.push(ParameterCheck::new(
                Condition::MatrixEquation,
                vec![i, j],
                expected,
                &gram[i][j] * &ctdiag[j],
            ));
        }
    }

    let derived_c0 = Rational::one() - raw.c.iter().sum::<Rational>();
    checks.push(ParameterCheck::new(
        Condition::WeightSum,
        vec![],
        derived_c0.clone(),
        raw.c0.clone(),
    ));
    checks.push(ParameterCheck::new(
        Condition::DualWeightSum,
        vec![],
        Rational::one() - raw.c_tilde.iter().sum::<Rational>(),
        raw.c0.clone(),
    ));
    for j in 1..=d {
        if !gram[j][j].is_zero() {
            checks.push(ParameterCheck::new(
                Condition::DerivedDualWeight,
                vec![j],
                -&derived_c0 / &gram[j][j],
                raw.c_tilde[j - 1].clone(),
            ));
        }
    }

    for i in 0..=d {
        let lhs: Rational = (1..=d).map(|k| &raw.c[k - 1] * &u[k][i]).sum();
        let rhs = if i == 0 {
            Rational::one() - &raw.c0
        } else {
            Rational::one()
        };
        checks.push(ParameterCheck::new(Condition::LinearSum, vec![i], rhs, lhs));
    }
    let minus_one = int(-1);
    for i in 0..=d {
        for j in 0..=d {
            let lhs: Rational = (1..=d).map(|k| &raw.c[k - 1] * &u[k][i] * &u[k][j]).sum();
            let ct_j = if j == 0 { &minus_one } else { &raw.c_tilde[j - 1] };
            let rhs = if i == j {
                Rational::one() + &raw.c0 / ct_j
            } else {
                Rational::one()
            };
            checks.push(ParameterCheck::new(Condition::QuadraticSum, vec![i, j], rhs, lhs));
        }
    }
    Ok(checks)
}
