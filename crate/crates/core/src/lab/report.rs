//! Verification reports and their JSON / CSV forms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The instance lies outside the regime the check needs (looped graph,
    /// unmet extraction hypothesis). An outcome, not a tool failure.
    Regime,
    /// The search budget ran out before the check was decided.
    Budget,
    Error,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Regime => "regime",
            Verdict::Budget => "budget",
            Verdict::Error => "error",
        }
    }
}

/// One row of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub operation: String,
    pub instance: String,
    pub values: BTreeMap<String, Value>,
    /// SHA-256 of the canonical JSON of the witness backing the values.
    pub certificate: Option<String>,
    /// Search nodes spent.
    pub nodes: u64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Report {
    pub fn new(operation: &str, instance: impl Into<String>) -> Self {
        Report {
            operation: operation.to_string(),
            instance: instance.into(),
            values: BTreeMap::new(),
            certificate: None,
            nodes: 0,
            verdict: Verdict::Pass,
            note: None,
        }
    }

    pub fn value(mut self, key: &str, v: impl Serialize) -> Self {
        self.values
            .insert(key.to_string(), serde_json::to_value(v).expect("report values serialize"));
        self
    }

    pub fn certify(mut self, witness: &impl Serialize) -> Self {
        self.certificate = Some(certificate_ref(witness));
        self
    }

    pub fn nodes(mut self, nodes: u64) -> Self {
        self.nodes += nodes;
        self
    }

    pub fn verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    /// Pass when `ok`, fail otherwise.
    pub fn check(self, ok: bool) -> Self {
        self.verdict(if ok { Verdict::Pass } else { Verdict::Fail })
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// A row describing an error, classified by kind. Budget errors keep
    /// their bounds.
    pub fn from_error(operation: &str, instance: impl Into<String>, err: &Error) -> Self {
        let mut r = Report::new(operation, instance).note(err.to_string());
        r.verdict = match err {
            e if e.is_regime() => Verdict::Regime,
            Error::BudgetExceeded { nodes, lower, upper } => {
                r.nodes = *nodes;
                r = r.value("lower", lower).value("upper", upper);
                Verdict::Budget
            }
            _ => Verdict::Error,
        };
        r
    }

    pub fn is_failure(&self) -> bool {
        matches!(self.verdict, Verdict::Fail | Verdict::Error)
    }
}

/// Hex SHA-256 of the compact JSON form of `witness`.
pub fn certificate_ref(witness: &impl Serialize) -> String {
    let bytes = serde_json::to_vec(witness).expect("witness serializes");
    hex::encode(Sha256::digest(bytes))
}

/// Orders rows by operation, then instance.
pub fn sort_reports(reports: &mut [Report]) {
    reports.sort_by(|a, b| (&a.operation, &a.instance).cmp(&(&b.operation, &b.instance)));
}

/// Counts of each verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub regime: usize,
    pub budget: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(reports: &[Report]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Regime => s.regime += 1,
                Verdict::Budget => s.budget += 1,
                Verdict::Error => s.error += 1,
            }
        }
        s
    }

    pub fn ok(&self) -> bool {
        self.fail == 0 && self.error == 0
    }
}

pub fn to_json(reports: &[Report]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Vec<Report>> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

/// CSV with columns `operation,instance,values,certificate,nodes,verdict,note`;
/// `values` holds the compact JSON object.
pub fn to_csv(reports: &[Report]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["operation", "instance", "values", "certificate", "nodes", "verdict", "note"])
        .expect("in-memory write");
    for r in reports {
        let values = serde_json::to_string(&r.values).expect("values serialize");
        w.write_record([
            r.operation.as_str(),
            r.instance.as_str(),
            values.as_str(),
            r.certificate.as_deref().unwrap_or(""),
            r.nodes.to_string().as_str(),
            r.verdict.as_str(),
            r.note.as_deref().unwrap_or(""),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = vec![
            Report::new("hedetniemi", "K(4) x K(4)").value("deficit", 0).certify(&vec![1, 2]),
            Report::from_error(
                "stahl",
                "m=7,n=3,k=5",
                &Error::BudgetExceeded {
                    nodes: 10,
                    lower: 11,
                    upper: None,
                },
            ),
        ];
        let text = to_json(&r);
        assert_eq!(from_json(&text).unwrap(), r);
        assert_eq!(r[1].verdict, Verdict::Budget);
        assert_eq!(r[1].values["upper"], Value::Null);
    }

    #[test]
    fn csv_quotes_json() {
        let r = vec![Report::new("lovasz", "Kneser(5,2)").value("chi", 3).value("expected", 3)];
        let text = to_csv(&r);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "operation,instance,values,certificate,nodes,verdict,note");
        assert_eq!(
            lines.next().unwrap(),
            r#"lovasz,"Kneser(5,2)","{""chi"":3,""expected"":3}",,0,pass,"#
        );
    }

    #[test]
    fn regime_classification() {
        let e = Error::Regime {
            subset: vec![1, 2],
            colors_used: 2,
            needed: 3,
        };
        assert_eq!(Report::from_error("x", "y", &e).verdict, Verdict::Regime);
        assert_eq!(Report::from_error("x", "y", &Error::ImproperColoring).verdict, Verdict::Error);
    }

    #[test]
    fn certificate_is_sha256_hex() {
        let c = certificate_ref(&[1u32, 2, 3]);
        assert_eq!(c.len(), 64);
        assert_eq!(c, certificate_ref(&vec![1u32, 2, 3]));
    }
}
