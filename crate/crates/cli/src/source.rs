//! Where a parameter point comes from: inline JSON, a file, or a family
//! shorthand.

use std::fs;

use anyhow::{bail, Context, Result};
use meixner_core::algebra::text::parse_rational;
use meixner_core::{MeixnerPoint, RawPoint, Rational};
use serde_json::Value;

/// Parsed `--spec` input: the point and an optional embedded `beta`.
pub struct Loaded {
    pub raw: RawPoint,
    pub beta: Option<Rational>,
}

/// Reads `--spec`: a JSON object inline (leading `{`) or a path to one.
pub fn load_spec(arg: &str) -> Result<Loaded> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading spec file {arg}"))?
    };
    let mut value: Value = serde_json::from_str(&text).context("parsing spec JSON")?;
    let beta = match value.as_object_mut().and_then(|o| o.remove("beta")) {
        None => None,
        Some(Value::String(s)) => Some(parse_rational(&s)?),
        Some(Value::Number(n)) => Some(parse_rational(&n.to_string())?),
        Some(other) => bail!("beta must be a string or integer, got {other}"),
    };
    let raw: RawPoint = serde_json::from_value(value).context("spec does not describe a point")?;
    Ok(Loaded { raw, beta })
}

fn rationals(list: &str) -> Result<Vec<Rational>> {
    list.split(',')
        .map(|s| parse_rational(s.trim()).map_err(Into::into))
        .collect()
}

/// `triangular:c1,...`, `geometric:q,d` or `gram:c1,...[;mixing]`.
pub fn family(arg: &str) -> Result<MeixnerPoint> {
    let (name, rest) = arg
        .split_once(':')
        .with_context(|| format!("family shorthand {arg:?} lacks a ':'"))?;
    let point = match name {
        "triangular" => MeixnerPoint::family_triangular(&rationals(rest)?)?,
        "geometric" => {
            let (q, d) = rest
                .split_once(',')
                .context("geometric needs q,d")?;
            let d: usize = d.trim().parse().context("geometric dimension")?;
            MeixnerPoint::family_geometric(&parse_rational(q.trim())?, d)?
        }
        "gram" => match rest.split_once(';') {
            Some((c, mixing)) => {
                MeixnerPoint::from_weights(&rationals(c)?, Some(&rationals(mixing)?))?
            }
            None => MeixnerPoint::from_weights(&rationals(rest)?, None)?,
        },
        other => bail!("unknown family {other:?} (triangular, geometric, gram)"),
    };
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use meixner_core::{int, ratio};

    #[test]
    fn shorthands() {
        let p = family("geometric:1/2,2").unwrap();
        assert_eq!(p.c0(), &ratio(1, 4));
        let p = family("gram:1/3").unwrap();
        assert_eq!(p.u(1, 1), &int(3));
        assert!(family("triangular:1/2,1/2").is_err());
        assert!(family("spiral:1").is_err());
        assert!(family("gram:1/3,1/4;1/2").is_ok());
    }

    #[test]
    fn inline_spec_with_beta() {
        let p = family("geometric:1/2,1").unwrap();
        let mut v = serde_json::to_value(p.to_raw()).unwrap();
        v["beta"] = Value::String("3/2".into());
        let loaded = load_spec(&v.to_string()).unwrap();
        assert_eq!(loaded.beta, Some(ratio(3, 2)));
        assert_eq!(loaded.raw, p.to_raw());
    }
}
