//! `"p/q"` string form of rationals and the serde adapters built on it.

use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serializer};

use super::Rational;
use crate::error::MeixnerError;

/// Renders `r` as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p/q"` or `"p"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, MeixnerError> {
    let t = s.trim();
    Rational::from_str(t).map_err(|_| MeixnerError::Parse(format!("not a rational: {s:?}")))
}

/// `#[serde(with = "rational_str")]` for a single rational.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// `#[serde(with = "rational_vec")]` for a vector of rationals.
pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(de::Error::custom))
            .collect()
    }
}

/// `#[serde(with = "rational_matrix")]` for a row-major matrix of rationals.
pub mod rational_matrix {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            let row: Vec<String> = row.iter().map(format_rational).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rational(s).map_err(de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&ratio(-6, 3)), "-2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rational("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert_eq!(parse_rational("10/-4").unwrap(), ratio(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }
}
