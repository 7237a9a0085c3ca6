use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::Value;

/// One named identity check with its parameters and, on failure, a witness
/// carrying the offending indices and both side values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub identity: String,
    pub params: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

/// Ordered collection of checks. Serializes as
/// `{"pass": bool, "total": n, "failed": k, "checks": [...]}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, identity: &str, params: Value) {
        self.checks.push(Check {
            identity: identity.to_string(),
            params,
            pass: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, identity: &str, params: Value, witness: Value) {
        self.checks.push(Check {
            identity: identity.to_string(),
            params,
            pass: false,
            witness: Some(witness),
        });
    }

    /// Records a pass when `witness` is `None`, a failure otherwise.
    pub fn record(&mut self, identity: &str, params: Value, witness: Option<Value>) {
        match witness {
            None => self.pass(identity, params),
            Some(w) => self.fail(identity, params, w),
        }
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl FromIterator<VerificationReport> for VerificationReport {
    fn from_iter<I: IntoIterator<Item = VerificationReport>>(iter: I) -> Self {
        let mut out = VerificationReport::new();
        for r in iter {
            out.extend(r);
        }
        out
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VerificationReport", 4)?;
        st.serialize_field("pass", &self.all_passed())?;
        st.serialize_field("total", &self.checks.len())?;
        st.serialize_field("failed", &self.failures().count())?;
        st.serialize_field("checks", &self.checks)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_report_passes() {
        let r = VerificationReport::new();
        assert!(r.all_passed());
        assert_eq!(r.to_json()["total"], 0);
    }

    #[test]
    fn failures_carry_witness() {
        let mut r = VerificationReport::new();
        r.pass("duality", json!({"n": [0]}));
        r.fail("duality", json!({"n": [1]}), json!({"lhs": "1", "rhs": "2"}));
        assert!(!r.all_passed());
        let v = r.to_json();
        assert_eq!(v["failed"], 1);
        assert!(v["checks"][0].get("witness").is_none());
        assert_eq!(v["checks"][1]["witness"]["rhs"], "2");
    }
}
