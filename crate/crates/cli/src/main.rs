//! `meixner`: construct parameter points, list polynomials, and run the
//! exact identity checks, emitting JSON.

mod source;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand};
use meixner_core::algebra::text::{format_rational, parse_rational};
use meixner_core::operators::{build_operator, Family};
use meixner_core::orthogonality::{verify_orthogonality, OrthogonalityOptions, SummationOptions};
use meixner_core::suite::{verify_all, verify_parameters, SuiteConfig};
use meixner_core::{
    int, HypergeometricExpansion, MeixnerPoint, MeixnerSpec, MultiIndex, Rational,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "meixner", version, about = "Exact multivariate Meixner polynomial toolkit")]
#[command(group(ArgGroup::new("source").args(["spec", "family"]).multiple(false)))]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Point as inline JSON (`{"d":..,"c0":..,"c":..,"c_tilde":..,"U":..}`,
    /// optional "beta") or a path to such a file.
    #[arg(long, global = true)]
    spec: Option<String>,

    /// Family shorthand: `triangular:c1,..`, `geometric:q,d`, `gram:c1,..[;mixing]`.
    #[arg(long, global = true)]
    family: Option<String>,

    /// Parameter beta; overrides a "beta" in --spec. Defaults to 1.
    #[arg(long, global = true)]
    beta: Option<String>,

    /// Largest total degree |n|.
    #[arg(long, global = true, default_value_t = 3)]
    maxdeg: u32,

    /// Lattice points {0..=grid}^d used by grid checks.
    #[arg(long, global = true, default_value_t = 4)]
    grid: u32,

    /// Certified tail bound for inner products.
    #[arg(long, global = true, default_value = "1/10000000000")]
    tol: String,

    /// Largest shell |x| summed before giving up.
    #[arg(long = "truncation-cap", global = true, default_value_t = 2000)]
    truncation_cap: u32,

    /// Seed for the random polynomials of the commutativity check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Accept a --spec point without checking the matrix relations.
    #[arg(long, global = true)]
    unchecked: bool,

    /// Decimal digits for an irrational c0^{-beta}.
    #[arg(long, global = true, env = "MEIXNER_PRECISION_DIGITS", default_value_t = 50)]
    precision: u32,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Build a point and report every defining relation.
    Construct,
    /// List P_n for all |n| <= maxdeg.
    Polys,
    /// Representation, duality, eigenvalue and commutativity checks.
    Verify,
    /// Orthogonality relations for |n|, |m| <= maxdeg.
    Orthogonality,
    /// Print both operator families.
    DumpOperators,
}

/// Exit status `1` when a check failed, `2` on errors.
struct Output {
    json: Value,
    ok: bool,
}

impl Cli {
    fn beta(&self, embedded: Option<Rational>) -> Result<Rational> {
        match &self.beta {
            Some(b) => Ok(parse_rational(b)?),
            None => Ok(embedded.unwrap_or_else(|| int(1))),
        }
    }

    /// The point (possibly unvalidated) and beta.
    fn load(&self) -> Result<(MeixnerPoint, Rational)> {
        match (&self.spec, &self.family) {
            (Some(spec), None) => {
                let loaded = source::load_spec(spec)?;
                let beta = self.beta(loaded.beta)?;
                let point = if self.unchecked || self.command == Command::Construct {
                    MeixnerPoint::from_raw_unchecked(loaded.raw)?
                } else {
                    MeixnerPoint::validate(loaded.raw)?
                };
                Ok((point, beta))
            }
            (None, Some(family)) => Ok((source::family(family)?, self.beta(None)?)),
            _ => bail!("give exactly one of --spec or --family"),
        }
    }

    fn spec(&self) -> Result<MeixnerSpec> {
        let (point, beta) = self.load()?;
        Ok(MeixnerSpec::new(point, beta)?)
    }

    fn run(&self) -> Result<Output> {
        match self.command {
            Command::Construct => {
                let (point, _) = self.load()?;
                let report = verify_parameters(&point)?;
                Ok(Output {
                    ok: report.all_passed(),
                    json: json!({
                        "point": point.to_raw(),
                        "valid": report.all_passed(),
                        "report": report.to_json(),
                    }),
                })
            }
            Command::Polys => {
                let spec = self.spec()?;
                let polys: Vec<Value> = MultiIndex::graded(spec.dim(), self.maxdeg)
                    .into_iter()
                    .map(|n| {
                        let p = HypergeometricExpansion::new(&spec, &n).polynomial();
                        json!({"n": n, "poly": p.to_json()})
                    })
                    .collect();
                Ok(Output {
                    ok: true,
                    json: json!({
                        "dim": spec.dim(),
                        "beta": format_rational(spec.beta()),
                        "polynomials": polys,
                    }),
                })
            }
            Command::Verify => {
                let spec = self.spec()?;
                let config = SuiteConfig {
                    maxdeg: self.maxdeg,
                    grid: self.grid,
                    operator_grid: self.grid,
                    commute_samples: 10,
                    commute_degree: self.maxdeg + 2,
                    seed: self.seed,
                    orthogonality_maxdeg: None,
                    ..SuiteConfig::default()
                };
                let report = verify_all(&spec, &config)?;
                Ok(Output {
                    ok: report.all_passed(),
                    json: report.to_json(),
                })
            }
            Command::Orthogonality => {
                let spec = self.spec()?;
                let tolerance = parse_rational(&self.tol)?;
                if tolerance <= int(0) {
                    bail!("--tol must be positive");
                }
                let options = OrthogonalityOptions {
                    summation: SummationOptions {
                        tolerance,
                        truncation_cap: self.truncation_cap,
                    },
                    precision_digits: self.precision,
                    ..OrthogonalityOptions::default()
                };
                let report = verify_orthogonality(&spec, self.maxdeg, &options)?;
                Ok(Output {
                    ok: report.all_passed(),
                    json: report.to_json(),
                })
            }
            Command::DumpOperators => {
                let spec = self.spec()?;
                let dump = |family: Family| -> Vec<Value> {
                    (0..spec.dim())
                        .map(|i| build_operator(&spec, family, i).to_json(family))
                        .collect()
                };
                Ok(Output {
                    ok: true,
                    json: json!({
                        "variable": dump(Family::Variable),
                        "degree": dump(Family::Degree),
                    }),
                })
            }
        }
    }
}

fn emit(cli: &Cli, json: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(json)?;
    text.push('\n');
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = cli.run().and_then(|out| emit(&cli, &out.json).map(|()| out.ok));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
