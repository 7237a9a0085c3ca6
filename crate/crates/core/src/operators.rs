//! The commuting partial difference operators diagonalized by `P_n`.
//!
//! For axis `i`, the operator on functions of `x` is
//!
//! ```text
//! L_{x,i} = (c~_i/c0) sum_{k != l} c_k u_{k,i} u_{l,i} x_l (E_k E_l^{-1} - Id)
//!         - (c~_i/c0) sum_l u_{l,i} x_l (E_l^{-1} - Id)
//!         - (c~_i/c0) sum_k c_k u_{k,i} (beta + |x|) (E_k - Id)
//! ```
//!
//! and `L_{n,i}` is the same expression with `c <-> c~` and `U -> U^t`,
//! acting on functions of `n`. They satisfy `L_{x,i} P_n = n_i P_n` and
//! `L_{n,i} P_n = x_i P_n`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::algebra::text::format_rational;
use crate::algebra::{MultiIndex, Polynomial, Rational};
use crate::error::MeixnerError;
use crate::meixner::{HypergeometricExpansion, MeixnerSpec};
use crate::report::VerificationReport;

/// Which summand of the operator a term comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum TermKind {
    /// `E_k E_l^{-1} - Id`, `k != l`.
    Cross { k: usize, l: usize },
    /// `E_l^{-1} - Id`.
    Backward { l: usize },
    /// `E_k - Id`.
    Forward { k: usize },
}

/// `coefficient(v) * (f(v + shift) - f(v))`.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceTerm {
    pub kind: TermKind,
    pub coefficient: Polynomial,
    pub shift: Vec<i32>,
}

/// Finite sum of bracketed shift terms with polynomial coefficients.
///
/// Terms are kept one per summand, unmerged, even when a coefficient is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceOperator {
    dim: usize,
    terms: Vec<DifferenceTerm>,
}

/// Which family an operator belongs to, i.e. which variables it acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Variable,
    Degree,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Variable => "variable",
            Family::Degree => "degree",
        }
    }

    fn var(self) -> &'static str {
        match self {
            Family::Variable => "x",
            Family::Degree => "n",
        }
    }
}

impl DifferenceOperator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[DifferenceTerm] {
        &self.terms
    }

    /// `sum coefficient * (p(v + shift) - p(v))` as an exact polynomial.
    pub fn apply_symbolic(&self, p: &Polynomial) -> Result<Polynomial, MeixnerError> {
        if p.dim() != self.dim {
            return Err(MeixnerError::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        let mut shifted: HashMap<&[i32], Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(self.dim);
        for term in &self.terms {
            if term.coefficient.is_zero() {
                continue;
            }
            if !shifted.contains_key(term.shift.as_slice()) {
                let diff = &p.shift(&term.shift)? - p;
                shifted.insert(&term.shift, diff);
            }
            out = &out + &(&term.coefficient * &shifted[term.shift.as_slice()]);
        }
        Ok(out)
    }

    /// Applies the operator to a function tabulated on `N_0^d`, at `at`.
    ///
    /// Terms whose coefficient vanishes at `at` are skipped, so boundary
    /// backward shifts are never dereferenced.
    pub fn apply_on_grid(
        &self,
        table: &HashMap<MultiIndex, Rational>,
        at: &MultiIndex,
    ) -> Result<Rational, MeixnerError> {
        if at.dim() != self.dim {
            return Err(MeixnerError::DimensionMismatch {
                expected: self.dim,
                found: at.dim(),
            });
        }
        let point: Vec<Rational> = at
            .entries()
            .iter()
            .map(|&k| Rational::from_integer(k.into()))
            .collect();
        let lookup = |shift: &[i32]| -> Result<&Rational, MeixnerError> {
            let missing = || MeixnerError::MissingGridPoint {
                point: at
                    .signed()
                    .iter()
                    .zip(shift)
                    .map(|(a, &s)| a + i64::from(s))
                    .collect(),
            };
            let target = at.offset(shift).ok_or_else(missing)?;
            table.get(&target).ok_or_else(missing)
        };
        let mut acc = Rational::zero();
        for term in &self.terms {
            let c = term.coefficient.eval(&point)?;
            if c.is_zero() {
                continue;
            }
            let here = lookup(&vec![0; self.dim])?;
            let there = lookup(&term.shift)?;
            acc += c * (there - here);
        }
        Ok(acc)
    }

    /// JSON listing of the terms, naming variables `x` or `n`.
    pub fn to_json(&self, family: Family) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|t| {
                json!({
                    "kind": t.kind,
                    "shift": t.shift,
                    "coefficient": t.coefficient.to_json(),
                })
            })
            .collect();
        json!({"family": family.label(), "variables": family.var(), "dim": self.dim, "terms": terms})
    }
}

/// Shared builder: `prefactor * [cross + backward + forward]` with
/// `weights[k]` the inner weights and `column[k]` the `k`-th entry of the
/// relevant column (or row) of `U`.
fn assemble(
    dim: usize,
    prefactor: &Rational,
    weights: &[Rational],
    column: &[Rational],
    beta: &Rational,
) -> DifferenceOperator {
    let var = |l: usize| Polynomial::variable(dim, l);
    let mut terms = Vec::with_capacity(dim * (dim + 1));
    for k in 0..dim {
        for l in 0..dim {
            if k == l {
                continue;
            }
            let scalar = prefactor * &weights[k] * &column[k] * &column[l];
            let mut shift = vec![0; dim];
            shift[k] = 1;
            shift[l] = -1;
            terms.push(DifferenceTerm {
                kind: TermKind::Cross { k, l },
                coefficient: var(l).scale(&scalar),
                shift,
            });
        }
    }
    for l in 0..dim {
        let scalar = -(prefactor * &column[l]);
        let mut shift = vec![0; dim];
        shift[l] = -1;
        terms.push(DifferenceTerm {
            kind: TermKind::Backward { l },
            coefficient: var(l).scale(&scalar),
            shift,
        });
    }
    let mut beta_plus_total = Polynomial::constant(dim, beta.clone());
    for l in 0..dim {
        beta_plus_total = &beta_plus_total + &var(l);
    }
    for k in 0..dim {
        let scalar = -(prefactor * &weights[k] * &column[k]);
        let mut shift = vec![0; dim];
        shift[k] = 1;
        terms.push(DifferenceTerm {
            kind: TermKind::Forward { k },
            coefficient: beta_plus_total.scale(&scalar),
            shift,
        });
    }
    DifferenceOperator { dim, terms }
}

/// `L_{x,i}`, with `axis = i - 1`.
pub fn build_variable_operator(spec: &MeixnerSpec, axis: usize) -> DifferenceOperator {
    let p = spec.point();
    let d = p.dim();
    assert!(axis < d, "axis {axis} out of range for dimension {d}");
    let prefactor = &p.c_tilde()[axis] / p.c0();
    let column: Vec<Rational> = (1..=d).map(|k| p.u(k, axis + 1).clone()).collect();
    assemble(d, &prefactor, p.c(), &column, spec.beta())
}

/// `L_{n,i}`, with `axis = i - 1`. Built from `c~` and row `i` of `U`.
pub fn build_degree_operator(spec: &MeixnerSpec, axis: usize) -> DifferenceOperator {
    let p = spec.point();
    let d = p.dim();
    assert!(axis < d, "axis {axis} out of range for dimension {d}");
    let prefactor = &p.c()[axis] / p.c0();
    let row: Vec<Rational> = (1..=d).map(|k| p.u(axis + 1, k).clone()).collect();
    assemble(d, &prefactor, p.c_tilde(), &row, spec.beta())
}

pub fn build_operator(spec: &MeixnerSpec, family: Family, axis: usize) -> DifferenceOperator {
    match family {
        Family::Variable => build_variable_operator(spec, axis),
        Family::Degree => build_degree_operator(spec, axis),
    }
}

fn rjson(r: &Rational) -> serde_json::Value {
    json!(format_rational(r))
}

/// Exact check of both eigenvalue equations.
///
/// * `L_{x,i} P_n - n_i P_n` is the zero polynomial for every `|n| <= maxdeg`.
/// * `L_{n,i} P_.(x) = x_i P_n(x)` at every `(n, x)` in `{0..=grid}^d` squared,
///   with the function of `n` tabulated directly.
/// * The same identity with the table computed through duality,
///   `P_n(x) = P_x(n; m~)`, agrees value-for-value with the direct route.
pub fn verify_bispectrality(spec: &MeixnerSpec, maxdeg: u32, grid: u32) -> VerificationReport {
    let mut report = verify_variable_eigen(spec, maxdeg);
    report.extend(verify_degree_eigen(spec, grid));
    report
}

/// `L_{x,i} P_n = n_i P_n` as exact polynomial identities, one check per `(n, i)`.
pub fn verify_variable_eigen(spec: &MeixnerSpec, maxdeg: u32) -> VerificationReport {
    let d = spec.dim();
    let ops: Vec<DifferenceOperator> = (0..d).map(|i| build_variable_operator(spec, i)).collect();
    MultiIndex::graded(d, maxdeg)
        .into_par_iter()
        .map(|n| {
            let p = HypergeometricExpansion::new(spec, &n).polynomial();
            let mut report = VerificationReport::new();
            for (i, op) in ops.iter().enumerate() {
                let lhs = op.apply_symbolic(&p).expect("dimensions agree");
                let rhs = p.scale(&Rational::from_integer(n.get(i).into()));
                let residual = &lhs - &rhs;
                let witness = (!residual.is_zero()).then(|| {
                    json!({"n": n, "i": i + 1, "residual": residual.to_json()})
                });
                report.record("variable-eigen", json!({"n": n, "i": i + 1}), witness);
            }
            report
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// `(exponent, coefficient)` pairs.
type IntegerPolynomial = Vec<(Vec<u32>, BigInt)>;

/// Operator with terms merged by shift and coefficients scaled to integer
/// polynomials over one denominator, for exact lattice work without
/// rational normalization.
struct IntegerOperator {
    den: BigInt,
    shifts: Vec<(Vec<i64>, IntegerPolynomial)>,
}

impl IntegerOperator {
    fn new(op: &DifferenceOperator) -> Self {
        let mut merged: BTreeMap<Vec<i32>, Polynomial> = BTreeMap::new();
        for term in &op.terms {
            let slot = merged
                .entry(term.shift.clone())
                .or_insert_with(|| Polynomial::zero(op.dim));
            *slot = &*slot + &term.coefficient;
        }
        let den = merged
            .values()
            .flat_map(|p| p.terms().map(|(_, c)| c.denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let shifts = merged
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(shift, p)| {
                let coefs = p
                    .terms()
                    .map(|(e, c)| (e.entries().to_vec(), c.numer() * (&den / c.denom())))
                    .collect();
                (shift.into_iter().map(i64::from).collect(), coefs)
            })
            .collect();
        IntegerOperator { den, shifts }
    }

    /// Integer coefficient of the `k`-th merged shift at `at`.
    fn coefficient(&self, k: usize, at: &[u32]) -> BigInt {
        let mut c = BigInt::zero();
        for (e, coef) in &self.shifts[k].1 {
            let mut mono = coef.clone();
            for (&v, &p) in at.iter().zip(e) {
                if p > 0 {
                    mono *= BigInt::from(v).pow(p);
                }
            }
            c += mono;
        }
        c
    }
}

/// Everything about one lattice point that does not depend on the tabulated
/// function: the box indices of the neighbours actually reached and each
/// operator's nonzero coefficients on them.
struct Stencil {
    centre: usize,
    neighbours: Vec<usize>,
    coefficients: Vec<Vec<(usize, BigInt)>>,
}

impl Stencil {
    fn new(ops: &[IntegerOperator], table: &BoxTable, at: &MultiIndex) -> Self {
        let here = at.signed();
        let centre = table.index(&here).expect("point inside the box");
        let mut neighbours: Vec<usize> = Vec::new();
        let coefficients = ops
            .iter()
            .map(|op| {
                let mut row = Vec::new();
                for (k, (shift, _)) in op.shifts.iter().enumerate() {
                    let c = op.coefficient(k, at.entries());
                    if c.is_zero() {
                        continue;
                    }
                    let target: Vec<i64> = here.iter().zip(shift).map(|(a, s)| a + s).collect();
                    let idx = table.index(&target).expect("box covers the operator support");
                    let slot = match neighbours.iter().position(|&j| j == idx) {
                        Some(slot) => slot,
                        None => {
                            neighbours.push(idx);
                            neighbours.len() - 1
                        }
                    };
                    row.push((slot, c));
                }
                row
            })
            .collect();
        Stencil {
            centre,
            neighbours,
            coefficients,
        }
    }

    /// `den_i * (L_i f)(at)` for every operator, `f` given by `values`.
    fn apply(&self, values: &[BigInt]) -> Vec<BigInt> {
        let centre = &values[self.centre];
        let diffs: Vec<BigInt> = self.neighbours.iter().map(|&j| &values[j] - centre).collect();
        self.coefficients
            .iter()
            .map(|row| row.iter().map(|(slot, c)| c * &diffs[*slot]).sum())
            .collect()
    }
}

/// Values on the box `{0..=side-1}^d` as integers over a shared denominator.
struct BoxTable {
    side: i64,
    values: Vec<BigInt>,
}

impl BoxTable {
    fn index(&self, p: &[i64]) -> Option<usize> {
        let mut idx = 0i64;
        for &v in p.iter().rev() {
            if v < 0 || v >= self.side {
                return None;
            }
            idx = idx * self.side + v;
        }
        Some(idx as usize)
    }

    /// Tabulates `f` in the order used by [`BoxTable::index`].
    fn build(d: usize, side: u32, f: impl Fn(&MultiIndex) -> BigInt) -> BoxTable {
        let mut values = Vec::with_capacity((side as usize).pow(d as u32));
        let mut p = vec![0u32; d];
        loop {
            values.push(f(&MultiIndex::new(p.clone())));
            let mut k = 0;
            while k < d {
                p[k] += 1;
                if p[k] < side {
                    break;
                }
                p[k] = 0;
                k += 1;
            }
            if k == d {
                break;
            }
        }
        BoxTable {
            side: i64::from(side),
            values,
        }
    }
}

/// `L_{n,i} P_n(x) = x_i P_n(x)` on the lattice box, by two routes.
///
/// The direct route tabulates `n -> P_n(x)` from one expansion per `n`; the
/// duality route from the single expansion of `P_x(.; m~)`. Checks are
/// aggregated per `(route, i)`; a failure names the first offending
/// `(n, x, i)` and both sides.
pub fn verify_degree_eigen(spec: &MeixnerSpec, grid: u32) -> VerificationReport {
    let d = spec.dim();
    let ops: Vec<IntegerOperator> = (0..d)
        .map(|i| IntegerOperator::new(&build_degree_operator(spec, i)))
        .collect();
    let xs = MultiIndex::cube(d, grid);
    let ns = MultiIndex::cube(d, grid);
    // the operator reaches one step past the box in each forward direction
    let side = grid + 2;
    let support = MultiIndex::cube(d, grid + 1);
    let x_cap = MultiIndex::new(vec![grid; d]);
    let n_cap = MultiIndex::new(vec![grid + 1; d]);
    let dual = spec.dual();

    // P_n(x) on the x-box for each n in the support, over a shared denominator
    let x_side = grid + 1;
    let direct_expansions: Vec<HypergeometricExpansion> = support
        .par_iter()
        .map(|n| HypergeometricExpansion::capped(spec, n, &x_cap))
        .collect();
    let direct_den = direct_expansions
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denominator()));
    let direct_values: HashMap<MultiIndex, Vec<BigInt>> = support
        .par_iter()
        .zip(&direct_expansions)
        .map(|(n, e)| {
            let lift = &direct_den / e.denominator();
            let values = e
                .lattice_numerators_on_box(x_side)
                .into_iter()
                .map(|v| v * &lift)
                .collect();
            (n.clone(), values)
        })
        .collect();
    drop(direct_expansions);
    let x_box = BoxTable {
        side: i64::from(x_side),
        values: Vec::new(),
    };
    let n_box = BoxTable {
        side: i64::from(side),
        values: Vec::new(),
    };
    let stencils: Vec<Stencil> = ns.iter().map(|n| Stencil::new(&ops, &n_box, n)).collect();

    struct Outcome {
        direct: Vec<Option<serde_json::Value>>,
        dual: Vec<Option<serde_json::Value>>,
        agree: Vec<Option<serde_json::Value>>,
    }

    let as_rational = |num: &BigInt, den: &BigInt| rjson(&Rational::new(num.clone(), den.clone()));
    let outcomes: Vec<Outcome> = xs
        .par_iter()
        .map(|x| {
            let x_index = x_box.index(&x.signed()).expect("x in box");
            let direct = BoxTable::build(d, side, |n| direct_values[n][x_index].clone());
            let by_duality = HypergeometricExpansion::capped(&dual, x, &n_cap);
            let dual_den = by_duality.denominator();
            let dual_table = BoxTable {
                side: i64::from(side),
                values: by_duality.lattice_numerators_on_box(side),
            };
            let mut out = Outcome {
                direct: vec![None; d],
                dual: vec![None; d],
                agree: vec![None; d],
            };
            for (n, stencil) in ns.iter().zip(&stencils) {
                let lhs_all = stencil.apply(&direct.values);
                let lhs_dual_all = stencil.apply(&dual_table.values);
                for (i, op) in ops.iter().enumerate() {
                    let (lhs, lhs_dual) = (&lhs_all[i], &lhs_dual_all[i]);
                    let xi = BigInt::from(x.get(i)) * &op.den;
                    let scale = &op.den * &direct_den;
                    let rhs = &xi * &direct.values[stencil.centre];
                    if out.direct[i].is_none() && *lhs != rhs {
                        out.direct[i] = Some(json!({
                            "n": n, "x": x, "i": i + 1,
                            "lhs": as_rational(lhs, &scale), "rhs": as_rational(&rhs, &scale)
                        }));
                    }
                    let dual_scale = &op.den * dual_den;
                    let rhs_dual = &xi * &dual_table.values[stencil.centre];
                    if out.dual[i].is_none() && *lhs_dual != rhs_dual {
                        out.dual[i] = Some(json!({
                            "n": n, "x": x, "i": i + 1,
                            "lhs": as_rational(lhs_dual, &dual_scale),
                            "rhs": as_rational(&rhs_dual, &dual_scale)
                        }));
                    }
                    if out.agree[i].is_none() && lhs * dual_den != lhs_dual * &direct_den {
                        out.agree[i] = Some(json!({
                            "n": n, "x": x, "i": i + 1,
                            "direct": as_rational(lhs, &scale),
                            "duality": as_rational(lhs_dual, &dual_scale)
                        }));
                    }
                }
            }
            out
        })
        .collect();

    let mut report = VerificationReport::new();
    let points = xs.len() * ns.len();
    for i in 0..d {
        let params = json!({"i": i + 1, "grid": grid, "points": points});
        let first = |pick: fn(&Outcome) -> &Vec<Option<serde_json::Value>>| {
            outcomes.iter().find_map(|o| pick(o)[i].clone())
        };
        report.record("degree-eigen", params.clone(), first(|o| &o.direct));
        report.record("degree-eigen-duality-route", params.clone(), first(|o| &o.dual));
        report.record("degree-eigen-routes-agree", params, first(|o| &o.agree));
    }
    report
}

/// `[L_i, L_j] p = 0` for all `i < j`, each sample, both families.
pub fn verify_commutativity(spec: &MeixnerSpec, samples: &[Polynomial]) -> VerificationReport {
    let d = spec.dim();
    let mut report = VerificationReport::new();
    for family in [Family::Variable, Family::Degree] {
        let ops: Vec<DifferenceOperator> = (0..d).map(|i| build_operator(spec, family, i)).collect();
        let results: Vec<VerificationReport> = samples
            .par_iter()
            .enumerate()
            .map(|(s, p)| {
                let mut r = VerificationReport::new();
                let once: Vec<Polynomial> = ops
                    .iter()
                    .map(|op| op.apply_symbolic(p).expect("dimensions agree"))
                    .collect();
                for i in 0..d {
                    for j in (i + 1)..d {
                        let ij = ops[i].apply_symbolic(&once[j]).expect("dimensions agree");
                        let ji = ops[j].apply_symbolic(&once[i]).expect("dimensions agree");
                        let comm = &ij - &ji;
                        let witness = (!comm.is_zero()).then(|| {
                            json!({"sample": s, "i": i + 1, "j": j + 1, "commutator": comm.to_json()})
                        });
                        r.record(
                            "commute",
                            json!({"family": family.label(), "sample": s, "i": i + 1, "j": j + 1}),
                            witness,
                        );
                    }
                }
                r
            })
            .collect();
        report.extend(results.into_iter().collect());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};
    use crate::meixner::hypergeometric_polynomial;
    use crate::params::MeixnerPoint;

    fn gram_third(beta: Rational) -> MeixnerSpec {
        MeixnerSpec::new(MeixnerPoint::from_weights(&[ratio(1, 3)], None).unwrap(), beta).unwrap()
    }

    #[test]
    fn one_dimensional_operator_shape() {
        let spec = gram_third(ratio(7, 4));
        let op = build_variable_operator(&spec, 0);
        assert_eq!(op.terms().len(), 2);
        let x = Polynomial::variable(1, 0);
        // backward: -(1/2) * 3 x, forward: -(1/2) * (beta + x)
        assert_eq!(op.terms()[0].shift, vec![-1]);
        assert_eq!(op.terms()[0].coefficient, x.scale(&ratio(-3, 2)));
        assert_eq!(op.terms()[1].shift, vec![1]);
        let fwd = &Polynomial::constant(1, ratio(7, 4)) + &x;
        assert_eq!(op.terms()[1].coefficient, fwd.scale(&ratio(-1, 2)));
    }

    #[test]
    fn eigenvalue_of_first_polynomial() {
        let spec = gram_third(int(1));
        let p = hypergeometric_polynomial(&spec, &MultiIndex::from([1]));
        let op = build_variable_operator(&spec, 0);
        assert_eq!(op.apply_symbolic(&p).unwrap(), p);
    }

    #[test]
    fn constants_are_annihilated() {
        let point = MeixnerPoint::family_geometric(&ratio(1, 2), 2).unwrap();
        let spec = MeixnerSpec::new(point, ratio(3, 2)).unwrap();
        for i in 0..2 {
            for family in [Family::Variable, Family::Degree] {
                let op = build_operator(&spec, family, i);
                assert!(op.apply_symbolic(&Polynomial::one(2)).unwrap().is_zero());
                let table: HashMap<MultiIndex, Rational> = MultiIndex::cube(2, 3)
                    .into_iter()
                    .map(|n| (n, ratio(5, 7)))
                    .collect();
                assert!(op
                    .apply_on_grid(&table, &MultiIndex::from([1, 2]))
                    .unwrap()
                    .is_zero());
            }
        }
    }

    #[test]
    fn two_dimensional_term_count() {
        let point = MeixnerPoint::family_geometric(&ratio(1, 2), 2).unwrap();
        let spec = MeixnerSpec::new(point, ratio(3, 2)).unwrap();
        let op = build_variable_operator(&spec, 0);
        let count = |f: fn(&TermKind) -> bool| op.terms().iter().filter(|t| f(&t.kind)).count();
        assert_eq!(op.terms().len(), 6);
        assert_eq!(count(|k| matches!(k, TermKind::Cross { .. })), 2);
        assert_eq!(count(|k| matches!(k, TermKind::Backward { .. })), 2);
        assert_eq!(count(|k| matches!(k, TermKind::Forward { .. })), 2);
    }

    #[test]
    fn boundary_backward_shift_is_not_dereferenced() {
        let spec = gram_third(int(2));
        let op = build_degree_operator(&spec, 0);
        // only n = 0 and n = 1 are tabulated; n = -1 would be needed if the
        // backward term were evaluated
        let table: HashMap<MultiIndex, Rational> =
            [(MultiIndex::from([0]), int(1)), (MultiIndex::from([1]), int(4))]
                .into_iter()
                .collect();
        assert!(op.apply_on_grid(&table, &MultiIndex::from([0])).is_ok());
        let err = op.apply_on_grid(&table, &MultiIndex::from([1])).unwrap_err();
        assert!(matches!(err, MeixnerError::MissingGridPoint { ref point } if point == &vec![2]));
    }

    #[test]
    fn degree_operator_reproduces_multiplication_by_x() {
        let spec = gram_third(int(1));
        let op = build_degree_operator(&spec, 0);
        for x in 0..4u32 {
            let table: HashMap<MultiIndex, Rational> = (0..6u32)
                .map(|n| {
                    let v = crate::meixner::evaluate_lattice(&spec, &MultiIndex::from([n]), &MultiIndex::from([x]));
                    (MultiIndex::from([n]), v)
                })
                .collect();
            for n in 0..5u32 {
                let at = MultiIndex::from([n]);
                let lhs = op.apply_on_grid(&table, &at).unwrap();
                assert_eq!(lhs, Rational::from_integer(x.into()) * &table[&at]);
            }
        }
    }

    #[test]
    fn symbolic_application_is_linear() {
        let point = MeixnerPoint::family_triangular(&[ratio(1, 3), ratio(1, 4)]).unwrap();
        let spec = MeixnerSpec::new(point, int(2)).unwrap();
        let op = build_variable_operator(&spec, 1);
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let p = &(&x * &x) + &y.scale(&ratio(2, 3));
        let q = &(&x * &y) - &Polynomial::one(2);
        let lhs = op.apply_symbolic(&(&p + &q)).unwrap();
        let rhs = &op.apply_symbolic(&p).unwrap() + &op.apply_symbolic(&q).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dimension_mismatch() {
        let spec = gram_third(int(1));
        let op = build_variable_operator(&spec, 0);
        assert!(op.apply_symbolic(&Polynomial::one(2)).is_err());
    }
}
