//! Verification reports: named cases with measured and expected values,
//! rendered as an aligned text table or as JSON.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A measured constant emitted for comparison only; never fails a run.
    Reported,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Reported => "reported",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub expected: f64,
    pub abs_error: f64,
    /// `None` when the expected value is zero.
    pub rel_error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

fn errors(measured: f64, expected: f64) -> (f64, Option<f64>) {
    let abs = (measured - expected).abs();
    (abs, (expected != 0.0).then(|| abs / expected.abs()))
}

impl Case {
    fn with(name: &str, pass: bool, measured: f64, expected: f64) -> Case {
        let (abs_error, rel_error) = errors(measured, expected);
        let status = if pass && measured.is_finite() { Status::Pass } else { Status::Fail };
        Case { name: name.to_string(), status, measured, expected, abs_error, rel_error, provenance: None }
    }

    /// Exact check counted by failures out of `total`: measured is the failure count.
    pub fn exact(name: &str, failures: usize) -> Case {
        Case::with(name, failures == 0, failures as f64, 0.0)
    }

    /// Exact equality of a measured value with an expected one.
    pub fn equal(name: &str, measured: f64, expected: f64) -> Case {
        Case::with(name, measured == expected, measured, expected)
    }

    pub fn flag(name: &str, holds: bool) -> Case {
        Case::with(name, holds, if holds { 1.0 } else { 0.0 }, 1.0)
    }

    /// |measured − expected| ≤ rel_tol·|expected|.
    pub fn rel(name: &str, measured: f64, expected: f64, rel_tol: f64) -> Case {
        let (abs, _) = errors(measured, expected);
        Case::with(name, abs <= rel_tol * expected.abs(), measured, expected)
    }

    /// measured ≤ bound, for residuals whose ideal value is zero.
    pub fn below(name: &str, measured: f64, bound: f64) -> Case {
        let mut c = Case::with(name, measured <= bound, measured, 0.0);
        c.rel_error = None;
        c
    }

    /// A constant reported against a reference value it is not required to match.
    pub fn reported(name: &str, measured: f64, reference: f64, provenance: &str) -> Case {
        let (abs_error, rel_error) = errors(measured, reference);
        Case {
            name: name.to_string(),
            status: Status::Reported,
            measured,
            expected: reference,
            abs_error,
            rel_error,
            provenance: Some(provenance.to_string()),
        }
    }

    /// Names an inner case, or turns an error into a failing case.
    pub fn from_result(name: &str, r: Result<Case>) -> Case {
        match r {
            Ok(mut c) => {
                c.name = name.to_string();
                c
            }
            Err(e) => {
                let mut c = Case::with(name, false, f64::NAN, 0.0);
                c.provenance = Some(format!("error: {e}"));
                c
            }
        }
    }

    pub fn with_provenance(mut self, p: &str) -> Case {
        self.provenance = Some(p.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub config: serde_json::Value,
    pub cases: Vec<Case>,
    pub elapsed_ms: u64,
}

impl Report {
    /// Rejects an empty case list; failing cases are moved to the front,
    /// keeping the original order within each group.
    pub fn new(
        suite: &str,
        seed: u64,
        config: serde_json::Value,
        mut cases: Vec<Case>,
        elapsed_ms: u64,
    ) -> Result<Report> {
        if cases.is_empty() {
            return Err(Error::Invalid(format!("report for suite '{suite}' has no cases")));
        }
        cases.sort_by_key(|c| c.passed());
        Ok(Report { suite: suite.to_string(), seed, config, cases, elapsed_ms })
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(Case::passed)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed()).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let fmt = |x: f64| if x.fract() == 0.0 && x.abs() < 1e15 { format!("{x}") } else { format!("{x:.6e}") };
        let rows: Vec<[String; 6]> = self
            .cases
            .iter()
            .map(|c| {
                [
                    c.status.as_str().to_uppercase(),
                    c.name.clone(),
                    fmt(c.measured),
                    fmt(c.expected),
                    format!("{:.3e}", c.abs_error),
                    c.rel_error.map_or("-".into(), |r| format!("{r:.3e}")),
                ]
            })
            .collect();
        let head = ["STATUS", "CASE", "MEASURED", "EXPECTED", "ABS_ERR", "REL_ERR"].map(String::from);
        let mut w = [0usize; 6];
        for r in std::iter::once(&head).chain(&rows) {
            for (i, s) in r.iter().enumerate() {
                w[i] = w[i].max(s.chars().count());
            }
        }
        let line = |r: &[String; 6]| {
            let mut s = String::new();
            for (i, cell) in r.iter().enumerate() {
                let pad = w[i] - cell.chars().count();
                if i >= 2 {
                    s.push_str(&" ".repeat(pad));
                    s.push_str(cell);
                } else {
                    s.push_str(cell);
                    s.push_str(&" ".repeat(pad));
                }
                s.push_str("  ");
            }
            s.trim_end().to_string()
        };
        let mut out = format!("suite {}  seed {}  {} ms\n", self.suite, self.seed, self.elapsed_ms);
        out.push_str(&line(&head));
        out.push('\n');
        for (r, c) in rows.iter().zip(&self.cases) {
            out.push_str(&line(r));
            out.push('\n');
            if let Some(p) = &c.provenance {
                out.push_str(&format!("    {p}\n"));
            }
        }
        let fails = self.failures();
        out.push_str(&format!(
            "{}: {} cases, {} failing\n",
            if fails == 0 { "PASS" } else { "FAIL" },
            self.cases.len(),
            fails
        ));
        out
    }
}
