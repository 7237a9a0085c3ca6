//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use meixner_core::meixner::{
    gauss_terminating, verify_classical_reduction, verify_duality, verify_representations,
};
use meixner_core::operators::{verify_bispectrality, verify_commutativity};
use meixner_core::orthogonality::{
    inner_product, norm_closed_form, verify_orthogonality, NormValue, OrthogonalityOptions,
    SummationOptions,
};
use meixner_core::params::check_identities;
use meixner_core::sampling::{random_polynomials, random_weights, rng};
use meixner_core::suite::verify_parameters;
use meixner_core::{
    int, ratio, HypergeometricExpansion, MeixnerPoint, MeixnerSpec, MultiIndex, Rational,
    VerificationReport,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

const SEED: u64 = 20240601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn points(d: usize) -> Vec<(String, MeixnerPoint)> {
    let mut r = rng(SEED + d as u64);
    let mut out = Vec::new();
    for k in 0..5 {
        let c = random_weights(&mut r, d);
        out.push((
            format!("gram#{k}"),
            MeixnerPoint::from_weights(&c, None).expect("random weights are admissible"),
        ));
    }
    let tri: Vec<Rational> = (0..d).map(|k| ratio(1, k as i64 + 3)).collect();
    out.push((
        "triangular".into(),
        MeixnerPoint::family_triangular(&tri).expect("triangular weights"),
    ));
    out.push((
        "geometric".into(),
        MeixnerPoint::family_geometric(&ratio(1, 2), d).expect("geometric q=1/2"),
    ));
    out
}

fn betas() -> Vec<Rational> {
    vec![int(1), ratio(3, 2), int(2)]
}

fn specs(dims: &[usize], betas: &[Rational]) -> Vec<(String, MeixnerSpec)> {
    let mut out = Vec::new();
    for &d in dims {
        for (label, p) in points(d) {
            for b in betas {
                let spec = MeixnerSpec::new(p.clone(), b.clone()).expect("positive beta");
                out.push((format!("d={d} {label} beta={b}"), spec));
            }
        }
    }
    out
}

fn summarize(reports: Vec<(String, VerificationReport)>) -> Outcome {
    let total: usize = reports.iter().map(|(_, r)| r.len()).sum();
    let failed: Vec<String> = reports
        .iter()
        .filter(|(_, r)| !r.all_passed())
        .map(|(label, r)| format!("{label}: {}", r.failures().count()))
        .collect();
    Outcome {
        pass: failed.is_empty() && total > 0,
        detail: if failed.is_empty() {
            format!("{total} checks")
        } else {
            format!("{} failing specs, first {}", failed.len(), failed[0])
        },
    }
}

fn criterion_1() -> Outcome {
    let mut checks = 0;
    let mut failures = Vec::new();
    for d in 1..=3 {
        for (label, p) in points(d) {
            let results = check_identities(&p.to_raw()).expect("well-shaped");
            checks += results.len();
            if results.iter().any(|c| !c.pass) {
                failures.push(format!("d={d} {label}"));
            }
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("{checks} identity checks, failing points {failures:?}"),
    }
}

fn criterion_2() -> Outcome {
    summarize(
        specs(&[1, 2, 3], &betas())
            .into_iter()
            .map(|(l, s)| (l, verify_representations(&s, 4, 4)))
            .collect(),
    )
}

fn criterion_3() -> Outcome {
    summarize(
        specs(&[1, 2, 3], &betas())
            .into_iter()
            .map(|(l, s)| (l, verify_duality(&s, 4)))
            .collect(),
    )
}

fn criterion_4() -> Outcome {
    let reports: Vec<(String, VerificationReport)> = specs(&[1, 2, 3], &betas())
        .into_iter()
        .map(|(l, s)| (l, verify_bispectrality(&s, 4, 5)))
        .collect();
    let routes = reports
        .iter()
        .flat_map(|(_, r)| r.checks())
        .filter(|c| c.identity == "degree-eigen-routes-agree")
        .count();
    let mut out = summarize(reports);
    out.pass &= routes > 0;
    out.detail = format!("{} ({routes} route comparisons)", out.detail);
    out
}

fn criterion_5() -> Outcome {
    summarize(
        specs(&[1, 2, 3], &betas())
            .into_iter()
            .enumerate()
            .map(|(k, (l, s))| {
                let samples = random_polynomials(SEED + k as u64, s.dim(), 5, 10);
                (l, verify_commutativity(&s, &samples))
            })
            .collect(),
    )
}

fn orthogonality_options() -> OrthogonalityOptions {
    OrthogonalityOptions {
        summation: SummationOptions {
            tolerance: Rational::new(1.into(), BigInt::from(10u32).pow(10)),
            truncation_cap: 4000,
        },
        relative_tolerance: Rational::new(1.into(), BigInt::from(10u32).pow(8)),
        precision_digits: 50,
    }
}

fn criterion_6() -> Outcome {
    let options = orthogonality_options();
    let mut reports = Vec::new();
    for (label, spec) in specs(&[1, 2], &[int(1), int(2)]) {
        match verify_orthogonality(&spec, 3, &options) {
            Ok(r) => reports.push((label, r)),
            Err(e) => {
                return Outcome {
                    pass: false,
                    detail: format!("{label}: {e}"),
                }
            }
        }
    }
    let mut out = summarize(reports);

    // hand-anchored: d=1, c=(1/3), beta=1, n=m=1 sums to 9/2
    let point = MeixnerPoint::from_weights(&[ratio(1, 3)], None).expect("c=(1/3)");
    let spec = MeixnerSpec::new(point, int(1)).expect("beta=1");
    let n = MultiIndex::from([1]);
    let closed = norm_closed_form(&spec, &n).expect("nonzero c~");
    let ip = inner_product(&spec, &n, &n, &options.summation.tolerance, 4000);
    let anchored = closed == NormValue::Exact(ratio(9, 2))
        && ip.is_ok_and(|r| (&r.value - ratio(9, 2)).abs() <= r.tail_estimate);
    out.pass &= anchored;
    out.detail = format!("{}, hand-anchored 9/2 {}", out.detail, if anchored { "ok" } else { "MISMATCH" });
    out
}

fn criterion_7() -> Outcome {
    let mut reports = Vec::new();
    let mut oracle_mismatch = 0;
    for (label, spec) in specs(&[1], &betas()) {
        reports.push((label, verify_classical_reduction(&spec, 4, 4)));
        // independent direct term sum: sum_k (-n)_k (-x)_k / ((beta)_k k!) (1 - 1/c)^k
        let c = spec.point().c()[0].clone();
        let z = Rational::one() - c.recip();
        for n in 0..=4u32 {
            for x in 0..=4u32 {
                let mut term = Rational::one();
                let mut sum = Rational::zero();
                for k in 0..=n.min(x) {
                    sum += &term;
                    let k = Rational::from_integer(k.into());
                    term = term
                        * (&k - Rational::from_integer(n.into()))
                        * (&k - Rational::from_integer(x.into()))
                        / ((spec.beta() + &k) * (&k + Rational::one()))
                        * &z;
                }
                let direct = HypergeometricExpansion::new(&spec, &MultiIndex::from([n]))
                    .eval_lattice(&MultiIndex::from([x]));
                let xr = Rational::from_integer(x.into());
                if direct != sum || gauss_terminating(n, &xr, spec.beta(), &z) != sum {
                    oracle_mismatch += 1;
                }
            }
        }
    }
    let mut out = summarize(reports);
    out.pass &= oracle_mismatch == 0;
    out.detail = format!("{}, {oracle_mismatch} term-sum mismatches", out.detail);
    out
}

/// Suites 2-6 at reduced size, stopping at the first failure.
fn detects(spec: &MeixnerSpec) -> Option<&'static str> {
    if !verify_representations(spec, 3, 3).all_passed() {
        return Some("representation");
    }
    if !verify_duality(spec, 3).all_passed() {
        return Some("duality");
    }
    if !verify_bispectrality(spec, 3, 3).all_passed() {
        return Some("bispectrality");
    }
    let samples = random_polynomials(SEED, spec.dim(), 3, 3);
    if !verify_commutativity(spec, &samples).all_passed() {
        return Some("commutativity");
    }
    if spec.dim() <= 2 {
        let c_ok = spec.point().c().iter().all(Signed::is_positive);
        if c_ok {
            match verify_orthogonality(spec, 2, &orthogonality_options()) {
                Ok(r) if r.all_passed() => {}
                _ => return Some("orthogonality"),
            }
        }
    }
    None
}

fn criterion_8() -> Outcome {
    let delta = ratio(1, 5);
    let mut interior = 0;
    let mut border = 0;
    let mut missed = Vec::new();
    for d in 1..=3 {
        for (label, p) in points(d).into_iter().filter(|(l, _)| l != "gram#1" && l != "gram#2") {
            let base = MeixnerSpec::new(p.clone(), int(2)).expect("beta=2");
            if detects(&base).is_some() {
                missed.push(format!("d={d} {label}: unperturbed point fails"));
                continue;
            }
            for i in 0..=d {
                for j in 0..=d {
                    let bad = p.perturbed(i, j, &delta);
                    if i == 0 || j == 0 {
                        // border entries never enter the polynomials or operators;
                        // the parameter-set check must reject them
                        border += 1;
                        let rejected = !verify_parameters(&bad).expect("shape").all_passed();
                        if !rejected {
                            missed.push(format!("d={d} {label} u[{i}][{j}] (border)"));
                        }
                    } else {
                        interior += 1;
                        let spec = base.with_point(bad);
                        if detects(&spec).is_none() {
                            missed.push(format!("d={d} {label} u[{i}][{j}]"));
                        }
                    }
                }
            }
        }
    }
    Outcome {
        pass: missed.is_empty(),
        detail: format!(
            "{interior} interior perturbations caught by identity suites, {border} border \
             perturbations rejected by validation, missed {missed:?}"
        ),
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let minute = Duration::from_secs(60);
    let criteria: [Criterion; 8] = [
        ("1 parameter-set validity", criterion_1, Duration::from_secs(1)),
        ("2 representation equivalence", criterion_2, minute),
        ("3 duality", criterion_3, minute),
        ("4 bispectrality", criterion_4, 2 * minute),
        ("5 commutativity", criterion_5, 2 * minute),
        ("6 orthogonality", criterion_6, 2 * minute),
        ("7 classical reduction", criterion_7, minute),
        ("8 negative controls", criterion_8, 5 * minute),
    ];
    let mut all = true;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = outcome.pass && in_time;
        all &= pass;
        println!(
            "[{}] criterion {name}: {} ({:.2}s{})",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            if in_time { String::new() } else { format!(", over {}s budget", budget.as_secs()) },
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
