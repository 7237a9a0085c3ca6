//! All identity checks for one spec, gathered into a single report.

use num_traits::{One, Signed};
use serde_json::json;

use crate::algebra::text::format_rational;
use crate::algebra::Rational;
use crate::error::MeixnerError;
use crate::meixner::{verify_classical_reduction, verify_duality, verify_representations, MeixnerSpec};
use crate::operators::{verify_bispectrality, verify_commutativity};
use crate::orthogonality::{verify_orthogonality, OrthogonalityOptions};
use crate::params::{check_identities, MeixnerPoint};
use crate::report::VerificationReport;
use crate::sampling::random_polynomials;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Degree bound for representation and eigenvalue checks.
    pub maxdeg: u32,
    /// Lattice side for grid checks, `{0..=grid}^d`.
    pub grid: u32,
    /// Degree-operator grid, usually one wider than `grid`.
    pub operator_grid: u32,
    pub commute_samples: usize,
    pub commute_degree: u32,
    pub seed: u64,
    /// Orthogonality degree bound; `None` skips it.
    pub orthogonality_maxdeg: Option<u32>,
    pub orthogonality: OrthogonalityOptions,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            maxdeg: 4,
            grid: 4,
            operator_grid: 5,
            commute_samples: 10,
            commute_degree: 5,
            seed: 0,
            orthogonality_maxdeg: Some(3),
            orthogonality: OrthogonalityOptions::default(),
        }
    }
}

/// Parameter-set checks as a report.
pub fn verify_parameters(point: &MeixnerPoint) -> Result<VerificationReport, MeixnerError> {
    let mut report = VerificationReport::new();
    for check in check_identities(&point.to_raw())? {
        let params = json!({"condition": check.condition.label(), "index": check.index});
        let witness = (!check.pass).then(|| {
            json!({
                "expected": format_rational(&check.expected),
                "actual": format_rational(&check.actual),
            })
        });
        report.record("parameter-set", params, witness);
    }
    Ok(report)
}

/// Whether orthogonality can be certified: `beta > 0`, `c_i > 0`, `|c| < 1`.
pub fn in_positive_region(spec: &MeixnerSpec) -> bool {
    let c = spec.point().c();
    spec.beta().is_positive()
        && c.iter().all(Signed::is_positive)
        && c.iter().sum::<Rational>() < Rational::one()
}

/// Runs every applicable check. Orthogonality is skipped outside the
/// positive region; classical reduction only runs for `d = 1`.
pub fn verify_all(spec: &MeixnerSpec, config: &SuiteConfig) -> Result<VerificationReport, MeixnerError> {
    let mut report = verify_parameters(spec.point())?;
    report.extend(verify_representations(spec, config.maxdeg, config.grid));
    report.extend(verify_duality(spec, config.grid));
    report.extend(verify_bispectrality(spec, config.maxdeg, config.operator_grid));
    let samples = random_polynomials(config.seed, spec.dim(), config.commute_degree, config.commute_samples);
    report.extend(verify_commutativity(spec, &samples));
    if let Some(maxdeg) = config.orthogonality_maxdeg {
        if in_positive_region(spec) {
            report.extend(verify_orthogonality(spec, maxdeg, &config.orthogonality)?);
        }
    }
    if spec.dim() == 1 {
        report.extend(verify_classical_reduction(spec, config.maxdeg, config.grid));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};

    fn quick() -> SuiteConfig {
        SuiteConfig {
            maxdeg: 2,
            grid: 2,
            operator_grid: 3,
            commute_samples: 2,
            commute_degree: 3,
            orthogonality_maxdeg: Some(1),
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn valid_point_passes_everything() {
        let point = MeixnerPoint::family_triangular(&[ratio(1, 3), ratio(1, 4)]).unwrap();
        let spec = MeixnerSpec::new(point, ratio(3, 2)).unwrap();
        let report = verify_all(&spec, &quick()).unwrap();
        assert!(report.all_passed(), "{:?}", report.failures().next());
        let ids: std::collections::BTreeSet<_> =
            report.checks().iter().map(|c| c.identity.as_str()).collect();
        assert!(ids.contains("orthogonality-diagonal"));
        assert!(ids.contains("commute"));
    }

    #[test]
    fn perturbed_point_fails() {
        let point = MeixnerPoint::family_geometric(&ratio(1, 2), 2).unwrap().perturbed(2, 2, &int(1));
        let spec = MeixnerSpec::new(point, int(2)).unwrap();
        let report = verify_all(&spec, &quick()).unwrap();
        assert!(!report.all_passed());
    }

    #[test]
    fn region_test() {
        let point = MeixnerPoint::family_geometric(&ratio(1, 2), 1).unwrap();
        assert!(in_positive_region(&MeixnerSpec::new(point.clone(), int(1)).unwrap()));
        assert!(!in_positive_region(&MeixnerSpec::new(point, ratio(-1, 2)).unwrap()));
    }
}
