//! The polynomials `P_n(x; m, beta)`.
//!
//! Two independent routes produce them. The hypergeometric route sums over
//! degree matrices `A` (`d x d`, entries in `N_0`, column sums bounded by
//! `n`):
//!
//! ```text
//! P_n(x) = sum_A  prod_j (-n_j)_{colsum_j} * prod_i (-x_i)_{rowsum_i} / (beta)_{|A|}
//!                 * prod_{i,j} (1 - u_{i,j})^{a_{i,j}} / a_{i,j}!
//! ```
//!
//! The generating-function route expands
//! `(1 - |z|)^{-beta-|x|} prod_i (1 - sum_j u_{i,j} z_j)^{x_i}`
//! whose `z^n` coefficient is `(beta)_{|n|} / n! * P_n(x)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::text::{format_rational, rational_str};
use crate::algebra::{is_nonpositive_integer, pochhammer, MultiIndex, Polynomial, Rational, Series};
use crate::error::MeixnerError;
use crate::params::{MeixnerPoint, RawPoint};
use crate::report::VerificationReport;

/// A parameter point together with `beta`, which may not be a nonpositive
/// integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct MeixnerSpec {
    point: MeixnerPoint,
    beta: Rational,
}

/// JSON layout of a spec: the point's fields plus `"beta"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawSpec {
    #[serde(flatten)]
    pub point: RawPoint,
    #[serde(with = "rational_str")]
    pub beta: Rational,
}

impl MeixnerSpec {
    pub fn new(point: MeixnerPoint, beta: Rational) -> Result<Self, MeixnerError> {
        if is_nonpositive_integer(&beta) {
            return Err(MeixnerError::BadParameter(format!(
                "beta must not be a nonpositive integer, got {}",
                format_rational(&beta)
            )));
        }
        Ok(MeixnerSpec { point, beta })
    }

    pub fn point(&self) -> &MeixnerPoint {
        &self.point
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn dim(&self) -> usize {
        self.point.dim()
    }

    /// Same `beta`, point replaced by its involution.
    pub fn dual(&self) -> MeixnerSpec {
        MeixnerSpec {
            point: self.point.involution(),
            beta: self.beta.clone(),
        }
    }

    /// Same `beta` with a different point.
    pub fn with_point(&self, point: MeixnerPoint) -> MeixnerSpec {
        MeixnerSpec {
            point,
            beta: self.beta.clone(),
        }
    }
}

impl TryFrom<RawSpec> for MeixnerSpec {
    type Error = MeixnerError;

    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        MeixnerSpec::new(MeixnerPoint::validate(raw.point)?, raw.beta)
    }
}

impl From<MeixnerSpec> for RawSpec {
    fn from(s: MeixnerSpec) -> Self {
        RawSpec {
            point: s.point.into(),
            beta: s.beta,
        }
    }
}

/// Summation index of the hypergeometric sum: a `d x d` matrix over `N_0`
/// stored row-major as `a[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeMatrix {
    entries: Vec<Vec<u32>>,
}

impl DegreeMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Self {
        DegreeMatrix { entries }
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn column_sums(&self) -> Vec<u32> {
        let d = self.entries.len();
        (0..d).map(|j| self.entries.iter().map(|r| r[j]).sum()).collect()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().flatten().sum()
    }

    /// All matrices with `column_sums()[j] <= n_j`, column-major: the first
    /// column varies slowest, and each column runs through its candidates
    /// in lexicographic order.
    pub fn enumerate(n: &MultiIndex) -> Vec<DegreeMatrix> {
        let d = n.dim();
        let columns: Vec<Vec<Vec<u32>>> = n
            .entries()
            .iter()
            .map(|&nj| bounded_vectors(d, nj, None))
            .collect();
        let mut out = Vec::new();
        let mut pick = vec![0usize; d];
        if d == 0 {
            return out;
        }
        loop {
            let mut entries = vec![vec![0u32; d]; d];
            for (j, &p) in pick.iter().enumerate() {
                for (i, row) in entries.iter_mut().enumerate() {
                    row[j] = columns[j][p][i];
                }
            }
            out.push(DegreeMatrix { entries });
            let mut axis = d;
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                if pick[axis] + 1 < columns[axis].len() {
                    pick[axis] += 1;
                    break;
                }
                pick[axis] = 0;
            }
        }
    }

    /// This matrix's scalar weight in the sum for `P_n`, excluding the
    /// `prod_i (-x_i)_{rowsum_i}` factor.
    pub fn weight(&self, spec: &MeixnerSpec, n: &MultiIndex) -> Rational {
        let point = spec.point();
        let mut w = Rational::one();
        for (j, s) in self.column_sums().into_iter().enumerate() {
            w *= pochhammer(&-Rational::from_integer(n.get(j).into()), s);
        }
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                let base = Rational::one() - point.u(i + 1, j + 1);
                w *= pow(&base, a) / crate::algebra::factorial::<Rational>(a);
            }
        }
        w / pochhammer(spec.beta(), self.total())
    }
}

/// Vectors in `N_0^d` with entry sum `<= max_sum`, lexicographic, with an
/// optional per-coordinate cap.
fn bounded_vectors(d: usize, max_sum: u32, cap: Option<&[u32]>) -> Vec<Vec<u32>> {
    fn go(
        axis: usize,
        left: u32,
        cur: &mut Vec<u32>,
        cap: Option<&[u32]>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if axis == cur.len() {
            out.push(cur.clone());
            return;
        }
        let top = cap.map_or(left, |c| c[axis].min(left));
        for k in 0..=top {
            cur[axis] = k;
            go(axis + 1, left - k, cur, cap, out);
        }
        cur[axis] = 0;
    }
    let mut out = Vec::new();
    go(0, max_sum, &mut vec![0; d], cap, &mut out);
    out
}

fn pow(base: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * base)
}

/// `P_n` in the basis `prod_i (-x_i)_{r_i}`, indexed by row-sum vectors `r`.
///
/// Obtained from the degree-matrix sum by accumulating one column at a time,
/// so matrices sharing row sums are merged as they are generated.
#[derive(Clone, Debug)]
pub struct HypergeometricExpansion {
    dim: usize,
    cap: Option<MultiIndex>,
    coefficients: Vec<(MultiIndex, Rational)>,
    /// Integer numerators over `denominator`, for fast lattice evaluation.
    numerators: Vec<(MultiIndex, BigInt)>,
    denominator: BigInt,
}

impl HypergeometricExpansion {
    pub fn new(spec: &MeixnerSpec, n: &MultiIndex) -> Self {
        Self::build(spec, n, None)
    }

    /// Expansion valid only for lattice points `x <= cap` entrywise: row sums
    /// `r_i > cap_i` are dropped because `(-x_i)_{r_i}` vanishes there.
    pub fn capped(spec: &MeixnerSpec, n: &MultiIndex, cap: &MultiIndex) -> Self {
        Self::build(spec, n, Some(cap))
    }

    fn build(spec: &MeixnerSpec, n: &MultiIndex, cap: Option<&MultiIndex>) -> Self {
        let d = spec.dim();
        assert_eq!(n.dim(), d, "degree index dimension mismatch");
        let point = spec.point();
        let cap_slice = cap.map(MultiIndex::entries);

        // Column j contributes (-n_j)_s prod_i (1 - u_{i,j})^{a_i} / a_i!
        // = (-1)^s C(n_j, s) multinomial(s; a) prod_i (p_i / q_i)^{a_i} with
        // 1 - u_{i,j} = p_i / q_i; scaling by prod_i q_i^{n_j} keeps every
        // partial sum an integer.
        // dense over row sums r_i <= bound_i, first coordinate fastest
        let total_degree = n.total();
        let bounds: Vec<u32> = (0..d)
            .map(|i| cap_slice.map_or(total_degree, |c| c[i].min(total_degree)))
            .collect();
        let mut strides = Vec::with_capacity(d);
        let mut size = 1usize;
        for &b in &bounds {
            strides.push(size);
            size *= b as usize + 1;
        }
        let mut state = vec![BigInt::zero(); size];
        state[0] = BigInt::one();
        let mut scale = BigInt::one();
        for j in 0..d {
            let nj = n.get(j);
            let bases: Vec<(BigInt, BigInt)> = (0..d)
                .map(|i| {
                    let b = Rational::one() - point.u(i + 1, j + 1);
                    (b.numer().clone(), b.denom().clone())
                })
                .collect();
            let power_table = |x: &BigInt| -> Vec<BigInt> {
                let mut row = vec![BigInt::one()];
                for k in 0..nj as usize {
                    let next = &row[k] * x;
                    row.push(next);
                }
                row
            };
            let p_pow: Vec<Vec<BigInt>> = bases.iter().map(|(p, _)| power_table(p)).collect();
            let q_pow: Vec<Vec<BigInt>> = bases.iter().map(|(_, q)| power_table(q)).collect();
            let fact: Vec<BigInt> = (0..=nj)
                .scan(BigInt::one(), |acc, k| {
                    if k > 0 {
                        *acc *= BigInt::from(k);
                    }
                    Some(acc.clone())
                })
                .collect();
            for q in &q_pow {
                scale *= &q[nj as usize];
            }
            let column_terms: Vec<(Vec<u32>, BigInt)> = bounded_vectors(d, nj, cap_slice)
                .into_iter()
                .filter_map(|a| {
                    let s: u32 = a.iter().sum();
                    // C(n_j, s) * s! / prod a_i! = n_j! / ((n_j - s)! prod a_i!)
                    let mut w = &fact[nj as usize] / &fact[(nj - s) as usize];
                    for (i, &ai) in a.iter().enumerate() {
                        w = w / &fact[ai as usize] * &p_pow[i][ai as usize] * &q_pow[i][(nj - ai) as usize];
                    }
                    if s % 2 == 1 {
                        w = -w;
                    }
                    (!w.is_zero()).then_some((a, w))
                })
                .collect();

            let mut next = vec![BigInt::zero(); size];
            for (idx, c) in state.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let r: Vec<u32> = strides
                    .iter()
                    .zip(&bounds)
                    .map(|(&st, &b)| ((idx / st) % (b as usize + 1)) as u32)
                    .collect();
                'terms: for (a, w) in &column_terms {
                    let mut target = idx;
                    for i in 0..d {
                        if r[i] + a[i] > bounds[i] {
                            continue 'terms;
                        }
                        target += a[i] as usize * strides[i];
                    }
                    next[target] += c * w;
                }
            }
            state = next;
        }

        let scale = Rational::from_integer(scale);
        let mut coefficients: Vec<(MultiIndex, Rational)> = state
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| {
                let r: Vec<u32> = strides
                    .iter()
                    .zip(&bounds)
                    .map(|(&st, &b)| ((idx / st) % (b as usize + 1)) as u32)
                    .collect();
                let total: u32 = r.iter().sum();
                (
                    MultiIndex::new(r),
                    Rational::from_integer(c) / &scale / pochhammer(spec.beta(), total),
                )
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        coefficients.sort_by(|a, b| a.0.cmp(&b.0));

        let denominator = coefficients
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let numerators = coefficients
            .iter()
            .map(|(r, c)| (r.clone(), c.numer() * (&denominator / c.denom())))
            .collect();
        HypergeometricExpansion {
            dim: d,
            cap: cap.cloned(),
            coefficients,
            numerators,
            denominator,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(r, coefficient of prod_i (-x_i)_{r_i})` pairs in lexicographic `r` order.
    pub fn coefficients(&self) -> &[(MultiIndex, Rational)] {
        &self.coefficients
    }

    /// Expands into monomials. Panics on a capped expansion, which does not
    /// represent the full polynomial.
    pub fn polynomial(&self) -> Polynomial {
        assert!(self.cap.is_none(), "capped expansion is not a polynomial");
        let max_r = self
            .coefficients
            .iter()
            .flat_map(|(r, _)| r.entries().iter().copied())
            .max()
            .unwrap_or(0);
        let rising = negated_rising_coefficients(max_r);
        let mut out = Polynomial::zero(self.dim);
        for (r, c) in &self.coefficients {
            let mut partial: Vec<(Vec<u32>, Rational)> = vec![(Vec::with_capacity(self.dim), c.clone())];
            for &ri in r.entries() {
                let row = &rising[ri as usize];
                let mut next = Vec::with_capacity(partial.len() * row.len());
                for (exp, coef) in &partial {
                    for (k, b) in row.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let mut e = exp.clone();
                        e.push(k as u32);
                        next.push((e, coef * b));
                    }
                }
                partial = next;
            }
            for (e, coef) in partial {
                out.add_term(MultiIndex::new(e), coef);
            }
        }
        out
    }

    /// Value at an arbitrary rational point.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        assert!(self.cap.is_none(), "capped expansion only evaluates on the lattice");
        let tables: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| {
                let top = self.coefficients.iter().map(|(r, _)| r.get(i)).max().unwrap_or(0);
                let a = -&x[i];
                let mut row = vec![Rational::one()];
                for k in 0..top {
                    let next = &row[k as usize] * (&a + Rational::from_integer(k.into()));
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = Rational::zero();
        for (r, c) in &self.coefficients {
            let mut term = c.clone();
            for (i, &ri) in r.entries().iter().enumerate() {
                term *= &tables[i][ri as usize];
            }
            acc += term;
        }
        acc
    }

    /// Value at a lattice point, in integer arithmetic over a common
    /// denominator.
    pub fn eval_lattice(&self, x: &MultiIndex) -> Rational {
        Rational::new(self.lattice_numerator(x), self.denominator.clone())
    }

    /// Shared denominator of the coefficients.
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// `denominator() * P_n(x)` for every `x` in `{0..side-1}^d`, first
    /// coordinate fastest. Contracts one axis at a time against the table of
    /// `(-x)_r`, which is far cheaper than evaluating point by point.
    pub fn lattice_numerators_on_box(&self, side: u32) -> Vec<BigInt> {
        let d = self.dim;
        if let Some(cap) = &self.cap {
            assert!(
                cap.entries().iter().all(|&c| c + 1 >= side),
                "box of side {side} exceeds the cap {cap}"
            );
        }
        let s = side as usize;
        let falling: Vec<Vec<BigInt>> = (0..s)
            .map(|x| {
                let mut row = vec![BigInt::one()];
                for k in 0..x {
                    let next = &row[k] * BigInt::from(k as i64 - x as i64);
                    row.push(next);
                }
                row.resize(s, BigInt::zero());
                row
            })
            .collect();
        let mut tensor = vec![BigInt::zero(); s.pow(d as u32)];
        for (r, num) in &self.numerators {
            if r.entries().iter().any(|&ri| ri as usize >= s) {
                continue;
            }
            let idx = r.entries().iter().rev().fold(0, |acc, &ri| acc * s + ri as usize);
            tensor[idx] = num.clone();
        }
        let mut stride = 1;
        for _ in 0..d {
            let mut next = vec![BigInt::zero(); tensor.len()];
            for base in 0..tensor.len() {
                if (base / stride) % s != 0 {
                    continue;
                }
                for r in 0..s {
                    let a = &tensor[base + r * stride];
                    if a.is_zero() {
                        continue;
                    }
                    for (x, row) in falling.iter().enumerate().skip(r) {
                        next[base + x * stride] += a * &row[r];
                    }
                }
            }
            tensor = next;
            stride *= s;
        }
        tensor
    }

    /// `denominator() * P_n(x)` at a lattice point.
    pub fn lattice_numerator(&self, x: &MultiIndex) -> BigInt {
        assert_eq!(x.dim(), self.dim, "point dimension mismatch");
        if let Some(cap) = &self.cap {
            assert!(
                x.entries().iter().zip(cap.entries()).all(|(a, b)| a <= b),
                "lattice point {x} outside the cap {cap}"
            );
        }
        // (-x)_k = (-1)^k x (x-1) ... (x-k+1), zero once k > x
        let tables: Vec<Vec<BigInt>> = x
            .entries()
            .iter()
            .map(|&xi| {
                let mut row = vec![BigInt::one()];
                for k in 0..xi {
                    let next = &row[k as usize] * BigInt::from(i64::from(k) - i64::from(xi));
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = BigInt::zero();
        'terms: for (r, num) in &self.numerators {
            let mut term = num.clone();
            for (i, &ri) in r.entries().iter().enumerate() {
                match tables[i].get(ri as usize) {
                    Some(f) => term *= f,
                    None => continue 'terms,
                }
            }
            acc += term;
        }
        acc
    }
}

/// Row `k` holds the monomial coefficients of `(-x)_k = prod_{m<k} (m - x)`.
fn negated_rising_coefficients(top: u32) -> Vec<Vec<Rational>> {
    let mut rows = vec![vec![Rational::one()]];
    for k in 0..top as usize {
        let prev = &rows[k];
        let m = Rational::from_integer(BigInt::from(k));
        let mut row = vec![Rational::zero(); prev.len() + 1];
        for (e, c) in prev.iter().enumerate() {
            row[e] += &m * c;
            row[e + 1] -= c;
        }
        rows.push(row);
    }
    rows
}

/// `P_n` as an exact polynomial in `x_1..x_d` via the hypergeometric sum.
pub fn hypergeometric_polynomial(spec: &MeixnerSpec, n: &MultiIndex) -> Polynomial {
    HypergeometricExpansion::new(spec, n).polynomial()
}

/// `P_n(x)` at a rational point, straight from the hypergeometric sum.
pub fn evaluate(spec: &MeixnerSpec, n: &MultiIndex, x: &[Rational]) -> Rational {
    HypergeometricExpansion::new(spec, n).eval(x)
}

/// `P_n(x)` at a lattice point.
pub fn evaluate_lattice(spec: &MeixnerSpec, n: &MultiIndex, x: &MultiIndex) -> Rational {
    HypergeometricExpansion::capped(spec, n, x).eval_lattice(x)
}

/// `table[a][b] = P_{degrees[a]}(points[b])`, one capped expansion per degree.
pub fn tabulate(spec: &MeixnerSpec, degrees: &[MultiIndex], points: &[MultiIndex]) -> Vec<Vec<Rational>> {
    let d = spec.dim();
    let top = points
        .iter()
        .flat_map(|p| p.entries().iter().copied())
        .max()
        .unwrap_or(0);
    let cap = MultiIndex::new(vec![top; d]);
    let side = top as usize + 1;
    let index: Vec<usize> = points
        .iter()
        .map(|p| p.entries().iter().rev().fold(0, |acc, &v| acc * side + v as usize))
        .collect();
    degrees
        .par_iter()
        .map(|n| {
            let e = HypergeometricExpansion::capped(spec, n, &cap);
            let values = e.lattice_numerators_on_box(top + 1);
            index
                .iter()
                .map(|&k| Rational::new(values[k].clone(), e.denominator().clone()))
                .collect()
        })
        .collect()
}

/// Coefficients of `z^n`, `|n| <= order`, in the generating function at the
/// lattice point `x`. Every `n` with `|n| <= order` is present, zeros
/// included.
pub fn generating_coefficients(
    spec: &MeixnerSpec,
    x: &MultiIndex,
    order: u32,
) -> BTreeMap<MultiIndex, Rational> {
    let d = spec.dim();
    assert_eq!(x.dim(), d, "lattice point dimension mismatch");
    let point = spec.point();
    let gamma = spec.beta() + Rational::from_integer(x.total().into());
    let mut g = Series::negative_power(&gamma, d, order);
    for i in 0..d {
        let xi = x.get(i);
        if xi == 0 {
            continue;
        }
        let mut linear = Series::one(d, order);
        for j in 0..d {
            linear.add_term(MultiIndex::unit(d, j), -point.u(i + 1, j + 1).clone());
        }
        g = g.mul(&linear.pow(xi)).expect("same dimension");
    }
    MultiIndex::graded(d, order)
        .into_iter()
        .map(|n| {
            let c = g.coeff(&n);
            (n, c)
        })
        .collect()
}

/// `P_n(x)` for every `|n| <= order`, read off the generating function as
/// `coefficient * n! / (beta)_{|n|}`.
pub fn generating_values(
    spec: &MeixnerSpec,
    x: &MultiIndex,
    order: u32,
) -> BTreeMap<MultiIndex, Rational> {
    generating_coefficients(spec, x, order)
        .into_iter()
        .map(|(n, c)| {
            let v = c * n.factorial::<Rational>() / pochhammer(spec.beta(), n.total());
            (n, v)
        })
        .collect()
}

/// `P_n(x; m) == P_x(n; m~)`.
pub fn duality_check(spec: &MeixnerSpec, n: &MultiIndex, x: &MultiIndex) -> bool {
    evaluate_lattice(spec, n, x) == evaluate_lattice(&spec.dual(), x, n)
}

/// Gauss-hypergeometric sum `sum_k (-n)_k (-x)_k / ((beta)_k k!) z^k`,
/// accumulated through consecutive term ratios.
pub fn gauss_terminating(n: u32, x: &Rational, beta: &Rational, z: &Rational) -> Rational {
    let mut term = Rational::one();
    let mut acc = Rational::one();
    for k in 0..n {
        let kk = Rational::from_integer(k.into());
        let num = (&kk - Rational::from_integer(n.into())) * (&kk - x) * z;
        let den = (beta + &kk) * (&kk + Rational::one());
        term = term * num / den;
        if term.is_zero() {
            break;
        }
        acc += &term;
    }
    acc
}

fn rjson(r: &Rational) -> serde_json::Value {
    json!(format_rational(r))
}

/// Compares the generating-function values with the hypergeometric values
/// for every `|n| <= maxdeg` and `x` in `{0..=grid}^d`. One check per `x`.
pub fn verify_representations(spec: &MeixnerSpec, maxdeg: u32, grid: u32) -> VerificationReport {
    let d = spec.dim();
    let degrees = MultiIndex::graded(d, maxdeg);
    let points = MultiIndex::cube(d, grid);
    let table = tabulate(spec, &degrees, &points);
    let mut report = VerificationReport::new();
    for (b, x) in points.iter().enumerate() {
        let series = generating_values(spec, x, maxdeg);
        let mut witness = None;
        for (a, n) in degrees.iter().enumerate() {
            if series[n] != table[a][b] {
                witness = Some(json!({
                    "n": n, "x": x,
                    "generating": rjson(&series[n]),
                    "hypergeometric": rjson(&table[a][b]),
                }));
                break;
            }
        }
        report.record(
            "generating-vs-hypergeometric",
            json!({"x": x, "maxdeg": maxdeg}),
            witness,
        );
    }
    report
}

/// `P_n(x; m) == P_x(n; m~)` on `{0..=grid}^d x {0..=grid}^d`. One check per `n`.
pub fn verify_duality(spec: &MeixnerSpec, grid: u32) -> VerificationReport {
    let d = spec.dim();
    let cube = MultiIndex::cube(d, grid);
    let direct = tabulate(spec, &cube, &cube);
    let dual = tabulate(&spec.dual(), &cube, &cube);
    let mut report = VerificationReport::new();
    for (a, n) in cube.iter().enumerate() {
        let mut witness = None;
        for (b, x) in cube.iter().enumerate() {
            if direct[a][b] != dual[b][a] {
                witness = Some(json!({
                    "n": n, "x": x,
                    "lhs": rjson(&direct[a][b]),
                    "rhs": rjson(&dual[b][a]),
                }));
                break;
            }
        }
        report.record("duality", json!({"n": n, "grid": grid}), witness);
    }
    report
}

/// One-variable reduction: `P_n(x)` equals the terminating Gauss sum with
/// argument `1 - u_{1,1}`, for `n <= maxdeg`, `x <= grid`.
pub fn verify_classical_reduction(spec: &MeixnerSpec, maxdeg: u32, grid: u32) -> VerificationReport {
    let mut report = VerificationReport::new();
    if spec.dim() != 1 {
        return report;
    }
    let z = Rational::one() - spec.point().u(1, 1);
    for n in 0..=maxdeg {
        let nn = MultiIndex::from([n]);
        let expansion = HypergeometricExpansion::new(spec, &nn);
        let mut witness = None;
        for x in 0..=grid {
            let xr = Rational::from_integer(x.into());
            let lhs = expansion.eval(std::slice::from_ref(&xr));
            let rhs = gauss_terminating(n, &xr, spec.beta(), &z);
            if lhs != rhs {
                witness = Some(json!({"n": [n], "x": [x], "lhs": rjson(&lhs), "rhs": rjson(&rhs)}));
                break;
            }
        }
        report.record("classical-reduction", json!({"n": [n], "grid": grid}), witness);
    }
    report
}
