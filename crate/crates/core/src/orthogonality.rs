//! Weighted inner products of the polynomials over `N_0^d`.
//!
//! Sums are exact over the simplex `|x| <= X`; only the omitted tail is
//! estimated. With `K` the product of the coefficient l1-norms of the two
//! polynomials and `D` their degree sum, `|P(x) Q(x)| <= K (1 + |x|)^D`, and
//! summing the weight over `|x| = s` gives `(beta)_s sigma^s / s!` with
//! `sigma = |c|`. The terms `t_s = (1+s)^D (beta)_s sigma^s / s!` have ratio
//! at most
//!
//! ```text
//! rho = ((X+3)/(X+2))^D * max(1, (beta+X+1)/(X+2)) * sigma
//! ```
//!
//! for `s > X`, so once `rho < 1` the tail is at most `K t_{X+1} / (1 - rho)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::algebra::text::{format_rational, rational_str};
use crate::algebra::{pochhammer, MultiIndex, Polynomial, Rational};
use crate::error::MeixnerError;
use crate::meixner::{HypergeometricExpansion, MeixnerSpec};
use crate::report::VerificationReport;

/// Truncated inner product with its certified tail bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InnerProductResult {
    #[serde(with = "rational_str")]
    pub value: Rational,
    /// Summation covered `|x| <= truncation`.
    pub truncation: u32,
    #[serde(with = "rational_str")]
    pub tail_estimate: Rational,
    pub converged: bool,
}

/// `(beta)_{|x|} prod_j c_j^{x_j} / x_j!`.
pub fn weight(spec: &MeixnerSpec, x: &MultiIndex) -> Rational {
    let c = spec.point().c();
    let mut w = pochhammer(spec.beta(), x.total());
    for (cj, &xj) in c.iter().zip(x.entries()) {
        for k in 1..=xj {
            w = w * cj / Rational::from_integer(k.into());
        }
    }
    w
}

fn check_positive_region(spec: &MeixnerSpec) -> Result<(), MeixnerError> {
    let c = spec.point().c();
    if !spec.beta().is_positive() {
        return Err(MeixnerError::PreconditionViolated(format!(
            "beta must be positive, got {}",
            format_rational(spec.beta())
        )));
    }
    if let Some(bad) = c.iter().find(|ci| !ci.is_positive()) {
        return Err(MeixnerError::PreconditionViolated(format!(
            "weights must be positive, got {}",
            format_rational(bad)
        )));
    }
    if c.iter().sum::<Rational>() >= Rational::one() {
        return Err(MeixnerError::PreconditionViolated(
            "weights must satisfy |c| < 1".into(),
        ));
    }
    Ok(())
}

fn l1_norm(p: &Polynomial) -> Rational {
    p.terms().map(|(_, c)| c.abs()).sum()
}

/// Tail majorant state for a fixed `(beta, sigma)`.
struct TailBound {
    beta: Rational,
    sigma: Rational,
}

impl TailBound {
    /// Bound on `sum_{s > X} t_s` for degree sum `degree`, or `None` while
    /// the ratio bound is still `>= 1`. `next_weight` is
    /// `(beta)_{X+1} sigma^{X+1} / (X+1)!`.
    fn tail(&self, truncation: u32, degree: u32, next_weight: &Rational) -> Option<Rational> {
        let x = Rational::from_integer(truncation.into());
        let one = Rational::one();
        let two = &one + &one;
        let three = &two + &one;
        let grow = (&x + &three) / (&x + &two);
        let rising = (&self.beta + &x + &one) / (&x + &two);
        let rising = if rising > one { rising } else { one.clone() };
        let rho = grow.pow(degree as i32) * rising * &self.sigma;
        if rho >= one {
            return None;
        }
        let lead = (&x + &two).pow(degree as i32) * next_weight;
        Some(lead / (one - rho))
    }
}

/// Polynomial scaled to integer coefficients, `P = P_int / den`.
struct IntegerPoly {
    terms: Vec<(Vec<u32>, BigInt)>,
    den: BigInt,
    l1: Rational,
    degree: u32,
}

impl IntegerPoly {
    fn new(p: &Polynomial) -> Self {
        let den = p
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = p
            .terms()
            .map(|(e, c)| (e.entries().to_vec(), c.numer() * (&den / c.denom())))
            .collect();
        IntegerPoly {
            terms,
            den,
            l1: l1_norm(p),
            degree: p.total_degree().unwrap_or(0),
        }
    }

    fn at(&self, x: &[u32]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut mono = BigInt::one();
            for (&xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    mono *= BigInt::from(xi).pow(ei);
                }
            }
            acc += c * mono;
        }
        acc
    }
}

/// Simultaneous shell-by-shell summation of several inner products.
///
/// With `c_j = a_j / b_j`, the weight summed over `|x| = s` is
/// `(beta)_s / (s! prod b_j^s)` times the integer
/// `multinomial(s; x) prod a_j^{x_j} b_j^{s - x_j}`, so each shell is an
/// exact integer sum followed by one rational scaling.
struct ShellSum<'a> {
    spec: &'a MeixnerSpec,
    polys: Vec<IntegerPoly>,
    pairs: Vec<(usize, usize)>,
}

/// Outcome of one pair before it is exposed as an [`InnerProductResult`].
#[derive(Clone, Debug)]
struct Partial {
    value: Rational,
    truncation: u32,
    /// `None` while the ratio bound is still `>= 1`.
    tail: Option<Rational>,
    converged: bool,
}

impl Partial {
    fn into_result(self, cap: u32) -> Result<InnerProductResult, MeixnerError> {
        match (self.converged, self.tail) {
            (true, Some(tail)) => Ok(InnerProductResult {
                value: self.value,
                truncation: self.truncation,
                tail_estimate: tail,
                converged: true,
            }),
            (_, tail) => Err(MeixnerError::NoConvergence {
                cap,
                tail: tail.map_or_else(|| "unbounded".to_string(), |t| format_rational(&t)),
            }),
        }
    }
}

impl<'a> ShellSum<'a> {
    /// Sums every pair until its tail bound drops below its own tolerance.
    fn run(&self, tolerances: &[Rational], cap: u32) -> Vec<Partial> {
        let d = self.spec.dim();
        let c = self.spec.point().c();
        let a: Vec<BigInt> = c.iter().map(|ci| ci.numer().clone()).collect();
        let b: Vec<BigInt> = c.iter().map(|ci| ci.denom().clone()).collect();
        let sigma: Rational = c.iter().sum();
        let bound = TailBound {
            beta: self.spec.beta().clone(),
            sigma: sigma.clone(),
        };
        let npairs = self.pairs.len();
        let mut sums = vec![Rational::zero(); npairs];
        let mut done: Vec<Option<Partial>> = vec![None; npairs];
        let mut last_tail: Vec<Option<Rational>> = vec![None; npairs];
        let mut factorials = vec![BigInt::one()];
        let mut a_pow: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]; d];
        let mut b_pow: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]; d];
        // (beta)_s / (s! prod b_j^s)
        let mut shell_scale = Rational::one();
        // (beta)_{s+1} sigma^{s+1} / (s+1)!
        let mut next_weight = Rational::one();
        for s in 0..=cap {
            let live: Vec<usize> = (0..npairs).filter(|&k| done[k].is_none()).collect();
            if live.is_empty() {
                break;
            }
            if s > 0 {
                factorials.push(&factorials[s as usize - 1] * BigInt::from(s));
                for j in 0..d {
                    let na = &a_pow[j][s as usize - 1] * &a[j];
                    a_pow[j].push(na);
                    let nb = &b_pow[j][s as usize - 1] * &b[j];
                    b_pow[j].push(nb);
                }
            }
            let mut needed = vec![false; self.polys.len()];
            for &k in &live {
                needed[self.pairs[k].0] = true;
                needed[self.pairs[k].1] = true;
            }
            let shell = MultiIndex::with_total(d, s);
            let point_terms = |x: &MultiIndex| -> Vec<BigInt> {
                let xs = x.entries();
                let mut w = factorials[s as usize].clone();
                for j in 0..d {
                    let xj = xs[j] as usize;
                    w = w / &factorials[xj] * &a_pow[j][xj] * &b_pow[j][s as usize - xj];
                }
                let values: Vec<Option<BigInt>> = self
                    .polys
                    .iter()
                    .zip(&needed)
                    .map(|(p, &n)| n.then(|| p.at(xs)))
                    .collect();
                let weighted: Vec<Option<BigInt>> =
                    values.iter().map(|v| v.as_ref().map(|v| v * &w)).collect();
                live.iter()
                    .map(|&k| {
                        let (p, q) = self.pairs[k];
                        match (&weighted[p], &values[q]) {
                            (Some(wp), Some(vq)) => wp * vq,
                            _ => BigInt::zero(),
                        }
                    })
                    .collect()
            };
            let mut acc: Vec<BigInt> = shell
                .par_iter()
                .map(point_terms)
                .reduce(
                    || vec![BigInt::zero(); live.len()],
                    |mut l, r| {
                        for (a, b) in l.iter_mut().zip(r) {
                            *a += b;
                        }
                        l
                    },
                );
            if s > 0 {
                let bs: BigInt = b.iter().product();
                shell_scale = shell_scale
                    * (&bound.beta + Rational::from_integer((s - 1).into()))
                    / Rational::from_integer(BigInt::from(s) * bs);
            }
            next_weight = next_weight * (&bound.beta + Rational::from_integer(s.into())) * &sigma
                / Rational::from_integer((s + 1).into());
            for (slot, &k) in live.iter().enumerate() {
                let (p, q) = self.pairs[k];
                let (pp, qq) = (&self.polys[p], &self.polys[q]);
                if !acc[slot].is_zero() {
                    let scale = Rational::from_integer(&pp.den * &qq.den);
                    sums[k] += Rational::from_integer(std::mem::take(&mut acc[slot])) * &shell_scale / scale;
                }
                let tail = bound
                    .tail(s, pp.degree + qq.degree, &next_weight)
                    .map(|t| t * &pp.l1 * &qq.l1);
                if tail.as_ref().is_some_and(|t| t < &tolerances[k]) {
                    done[k] = Some(Partial {
                        value: sums[k].clone(),
                        truncation: s,
                        tail,
                        converged: true,
                    });
                } else {
                    last_tail[k] = tail;
                }
            }
        }
        (0..npairs)
            .map(|k| {
                done[k].take().unwrap_or_else(|| Partial {
                    value: std::mem::take(&mut sums[k]),
                    truncation: cap,
                    tail: last_tail[k].take(),
                    converged: false,
                })
            })
            .collect()
    }
}

/// Options for the truncated summation.
#[derive(Clone, Debug)]
pub struct SummationOptions {
    /// Required certified tail bound.
    pub tolerance: Rational,
    /// Largest `|x|` shell ever summed.
    pub truncation_cap: u32,
}

impl Default for SummationOptions {
    fn default() -> Self {
        SummationOptions {
            tolerance: Rational::new(1.into(), BigInt::from(10u32).pow(10)),
            truncation_cap: 2000,
        }
    }
}

/// `sum_x P_n(x) P_m(x) W(x)` truncated once the tail is certified below
/// `tolerance`.
pub fn inner_product(
    spec: &MeixnerSpec,
    n: &MultiIndex,
    m: &MultiIndex,
    tolerance: &Rational,
    truncation_cap: u32,
) -> Result<InnerProductResult, MeixnerError> {
    let p = HypergeometricExpansion::new(spec, n).polynomial();
    let q = HypergeometricExpansion::new(spec, m).polynomial();
    inner_product_of(spec, &p, &q, tolerance, truncation_cap)
}

/// Inner product of two explicit polynomials under the weight of `spec`.
pub fn inner_product_of(
    spec: &MeixnerSpec,
    p: &Polynomial,
    q: &Polynomial,
    tolerance: &Rational,
    truncation_cap: u32,
) -> Result<InnerProductResult, MeixnerError> {
    check_positive_region(spec)?;
    for poly in [p, q] {
        if poly.dim() != spec.dim() {
            return Err(MeixnerError::DimensionMismatch {
                expected: spec.dim(),
                found: poly.dim(),
            });
        }
    }
    let sum = ShellSum {
        spec,
        polys: vec![IntegerPoly::new(p), IntegerPoly::new(q)],
        pairs: vec![(0, 1)],
    };
    sum.run(std::slice::from_ref(tolerance), truncation_cap)
        .remove(0)
        .into_result(truncation_cap)
}

/// Tail bounds after each truncation level `0..=max_truncation`, `None`
/// where the ratio bound has not yet dropped below one.
pub fn tail_bounds(
    spec: &MeixnerSpec,
    p: &Polynomial,
    q: &Polynomial,
    max_truncation: u32,
) -> Result<Vec<Option<Rational>>, MeixnerError> {
    check_positive_region(spec)?;
    let sigma: Rational = spec.point().c().iter().sum();
    let bound = TailBound {
        beta: spec.beta().clone(),
        sigma: sigma.clone(),
    };
    let kconst = l1_norm(p) * l1_norm(q);
    let degree = p.total_degree().unwrap_or(0) + q.total_degree().unwrap_or(0);
    let mut shell_weight = Rational::one();
    let mut out = Vec::new();
    for s in 0..=max_truncation {
        shell_weight = shell_weight * (spec.beta() + Rational::from_integer(s.into())) * &sigma
            / Rational::from_integer((s + 1).into());
        out.push(bound.tail(s, degree, &shell_weight).map(|t| t * &kconst));
    }
    Ok(out)
}

/// Right-hand side of the orthogonality relation on the diagonal,
/// `c0^{-beta} n! / ((beta)_{|n|} c~^n)`.
#[derive(Clone, Debug, PartialEq)]
pub enum NormValue {
    /// Fully rational (integer `beta`, or `c0^{-beta}` happens to be rational).
    Exact(Rational),
    /// `c0^{-beta}` is irrational; `factor` is the rational remainder.
    Symbolic {
        c0: Rational,
        beta: Rational,
        factor: Rational,
    },
}

impl NormValue {
    /// Rational approximation; exact values are returned as-is, symbolic
    /// ones use `c0^{-beta}` to `digits` decimal digits.
    pub fn approximate(&self, digits: u32) -> Result<Rational, MeixnerError> {
        match self {
            NormValue::Exact(r) => Ok(r.clone()),
            NormValue::Symbolic { c0, beta, factor } => {
                Ok(rational_power_approx(c0, &-beta, digits)? * factor)
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            NormValue::Exact(r) => json!(format_rational(r)),
            NormValue::Symbolic { c0, beta, factor } => json!({
                "c0": format_rational(c0),
                "exponent": format_rational(&-beta),
                "factor": format_rational(factor),
            }),
        }
    }
}

/// `base^exponent` for rational exponent `p/q`: exact when the `q`-th root
/// is rational, otherwise `None`.
pub fn rational_power_exact(base: &Rational, exponent: &Rational) -> Option<Rational> {
    let p = exponent.numer().to_i32()?;
    let q = exponent.denom().to_u32()?;
    let raised = if p >= 0 {
        base.pow(p)
    } else {
        if base.is_zero() {
            return None;
        }
        base.recip().pow(-p)
    };
    if q == 1 {
        return Some(raised);
    }
    let negative = raised.is_negative();
    if negative && q % 2 == 0 {
        return None;
    }
    let num = raised.numer().abs().to_biguint()?;
    let den = raised.denom().to_biguint()?;
    let rn = num.nth_root(q);
    let rd = den.nth_root(q);
    if rn.pow(q) != num || rd.pow(q) != den {
        return None;
    }
    let root = Rational::new(BigInt::from(rn), BigInt::from(rd));
    Some(if negative { -root } else { root })
}

/// `base^exponent` rounded down to a multiple of `10^-digits / denom`, for a
/// positive base. Exact whenever [`rational_power_exact`] succeeds.
pub fn rational_power_approx(
    base: &Rational,
    exponent: &Rational,
    digits: u32,
) -> Result<Rational, MeixnerError> {
    if let Some(r) = rational_power_exact(base, exponent) {
        return Ok(r);
    }
    if !base.is_positive() {
        return Err(MeixnerError::PreconditionViolated(
            "irrational power needs a positive base".into(),
        ));
    }
    let p = exponent
        .numer()
        .to_i32()
        .ok_or_else(|| MeixnerError::BadParameter("exponent numerator too large".into()))?;
    let q = exponent
        .denom()
        .to_u32()
        .ok_or_else(|| MeixnerError::BadParameter("exponent denominator too large".into()))?;
    let raised = if p >= 0 { base.pow(p) } else { base.recip().pow(-p) };
    // raised^{1/q} = (num * den^{q-1})^{1/q} / den
    let num = raised.numer().to_biguint().expect("positive");
    let den = raised.denom().to_biguint().expect("positive");
    let scale = BigUint::from(10u32).pow(digits);
    let radicand = num * den.pow(q - 1) * scale.pow(q);
    let root = radicand.nth_root(q);
    Ok(Rational::new(
        BigInt::from(root),
        BigInt::from(den * scale),
    ))
}

/// `c0^{-beta} n! / ((beta)_{|n|} c~^n)`.
pub fn norm_closed_form(spec: &MeixnerSpec, n: &MultiIndex) -> Result<NormValue, MeixnerError> {
    let point = spec.point();
    let mut factor = n.factorial::<Rational>() / pochhammer(spec.beta(), n.total());
    for (j, (ct, &k)) in point.c_tilde().iter().zip(n.entries()).enumerate() {
        if k == 0 {
            continue;
        }
        if ct.is_zero() {
            return Err(MeixnerError::ZeroParameter {
                name: format!("c_tilde_{}", j + 1),
            });
        }
        factor /= ct.pow(k as i32);
    }
    let exponent = -spec.beta();
    Ok(match rational_power_exact(point.c0(), &exponent) {
        Some(power) => NormValue::Exact(power * factor),
        None => NormValue::Symbolic {
            c0: point.c0().clone(),
            beta: spec.beta().clone(),
            factor,
        },
    })
}

/// Options for [`verify_orthogonality`].
#[derive(Clone, Debug)]
pub struct OrthogonalityOptions {
    pub summation: SummationOptions,
    /// Relative agreement required on the diagonal.
    pub relative_tolerance: Rational,
    /// Digits used for an irrational `c0^{-beta}`.
    pub precision_digits: u32,
}

impl Default for OrthogonalityOptions {
    fn default() -> Self {
        OrthogonalityOptions {
            summation: SummationOptions::default(),
            relative_tolerance: Rational::new(1.into(), BigInt::from(10u32).pow(8)),
            precision_digits: 50,
        }
    }
}

/// Every pair `|n|, |m| <= maxdeg` (unordered): off-diagonal values must be
/// below the summation tolerance with a certified tail, diagonal values must
/// match [`norm_closed_form`] to the relative tolerance.
pub fn verify_orthogonality(
    spec: &MeixnerSpec,
    maxdeg: u32,
    options: &OrthogonalityOptions,
) -> Result<VerificationReport, MeixnerError> {
    let degrees = MultiIndex::graded(spec.dim(), maxdeg);
    let polys: Vec<Polynomial> = degrees
        .par_iter()
        .map(|n| HypergeometricExpansion::new(spec, n).polynomial())
        .collect();
    verify_orthogonality_of(spec, &degrees, &polys, options)
}

/// Orthogonality checks for explicitly supplied polynomials standing in for
/// `P_n`, `n` in `degrees`. Used with deliberately corrupted inputs.
pub fn verify_orthogonality_of(
    spec: &MeixnerSpec,
    degrees: &[MultiIndex],
    polys: &[Polynomial],
    options: &OrthogonalityOptions,
) -> Result<VerificationReport, MeixnerError> {
    check_positive_region(spec)?;
    assert_eq!(degrees.len(), polys.len(), "one polynomial per degree");
    let tol = &options.summation.tolerance;
    let mut norms = Vec::with_capacity(degrees.len());
    for n in degrees {
        let norm = norm_closed_form(spec, n)?;
        let approx = norm.approximate(options.precision_digits)?;
        norms.push((norm, approx));
    }
    let mut pairs = Vec::new();
    let mut tolerances = Vec::new();
    for a in 0..degrees.len() {
        for b in a..degrees.len() {
            pairs.push((a, b));
            // a diagonal tail must also sit well inside the relative band
            let band = &options.relative_tolerance * norms[a].1.abs() / Rational::from_integer(2.into());
            tolerances.push(if a == b && band < *tol { band } else { tol.clone() });
        }
    }
    let sum = ShellSum {
        spec,
        polys: polys.iter().map(IntegerPoly::new).collect(),
        pairs: pairs.clone(),
    };
    let results = sum.run(&tolerances, options.summation.truncation_cap);

    let mut report = VerificationReport::new();
    for ((a, b), res) in pairs.into_iter().zip(results) {
        let (n, m) = (&degrees[a], &degrees[b]);
        let identity = if a == b {
            "orthogonality-diagonal"
        } else {
            "orthogonality-off-diagonal"
        };
        let params = json!({
            "n": n,
            "m": m,
            "truncation": res.truncation,
            "tail_estimate": res.tail.as_ref().map(format_rational),
        });
        if !res.converged {
            report.fail(
                identity,
                params,
                json!({
                    "reason": "no certified tail within truncation cap",
                    "value": format_rational(&res.value),
                }),
            );
            continue;
        }
        let witness = if a != b {
            (res.value.abs() > *tol).then(|| json!({"n": n, "m": m, "value": format_rational(&res.value)}))
        } else {
            let (norm, target) = &norms[a];
            let gap = (&res.value - target).abs();
            (gap > &options.relative_tolerance * target.abs()).then(|| {
                json!({
                    "n": n,
                    "value": format_rational(&res.value),
                    "closed_form": norm.to_json(),
                })
            })
        };
        report.record(identity, params, witness);
    }
    Ok(report)
}
