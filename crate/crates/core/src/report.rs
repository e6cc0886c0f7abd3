//! Machine-readable verification reports (JSON and CSV) and run summaries.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::inverse::HVector;

/// Outcome of comparing a generic quotient against its lower bound.
///
/// JSON field names are fixed: `label, h, c, bound, empirical, satisfied,
/// tightDegrees, trials, seed`, followed by the diagnostic `field` and
/// `trialH` (per-trial h-vectors).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub label: String,
    pub h: HVector,
    pub c: usize,
    pub bound: Vec<u64>,
    pub empirical: HVector,
    pub satisfied: bool,
    pub tight_degrees: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub field: String,
    #[serde(rename = "trialH")]
    pub trial_h: Vec<HVector>,
}

/// CSV column order.
pub const CSV_HEADER: [&str; 11] = [
    "label",
    "h",
    "c",
    "bound",
    "empirical",
    "satisfied",
    "tightDegrees",
    "trials",
    "seed",
    "field",
    "trialH",
];

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl VerificationReport {
    /// True when the bound is attained in every degree.
    pub fn all_tight(&self) -> bool {
        self.tight_degrees.len() == self.h.len()
    }

    /// One CSV record; vectors are space-separated, per-trial vectors `;`-separated.
    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.label.clone(),
            self.h.to_string(),
            self.c.to_string(),
            join(&self.bound),
            self.empirical.to_string(),
            self.satisfied.to_string(),
            join(&self.tight_degrees),
            self.trials.to_string(),
            self.seed.to_string(),
            self.field.clone(),
            self.trial_h.iter().map(ToString::to_string).collect::<Vec<_>>().join(";"),
        ]
    }
}

pub fn write_csv<W: Write>(out: W, reports: &[VerificationReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record(r.csv_record())?;
    }
    w.flush()?;
    Ok(())
}

/// Outcome of one identity or inequality check, e.g. `Sigma_u = t H_u - h_u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub label: String,
    pub name: String,
    pub u: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunSummary {
    pub instances: usize,
    pub bounds_checked: usize,
    pub bounds_satisfied: usize,
    pub bounds_violated: usize,
    pub tight_instances: usize,
    pub identity_checks_passed: usize,
    pub identity_checks_failed: usize,
    pub wall_time_ms: u128,
    pub seed: u64,
}

impl RunSummary {
    pub fn from_results(instances: usize, reports: &[VerificationReport], checks: &[CheckOutcome], seed: u64) -> Self {
        let bounds_satisfied = reports.iter().filter(|r| r.satisfied).count();
        let identity_checks_passed = checks.iter().filter(|c| c.passed).count();
        RunSummary {
            instances,
            bounds_checked: reports.len(),
            bounds_satisfied,
            bounds_violated: reports.len() - bounds_satisfied,
            tight_instances: reports.iter().filter(|r| r.all_tight()).count(),
            identity_checks_passed,
            identity_checks_failed: checks.len() - identity_checks_passed,
            wall_time_ms: 0,
            seed,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.bounds_violated == 0 && self.identity_checks_failed == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        VerificationReport {
            label: "example211 t=3 p=1 e=3".into(),
            h: HVector::new(vec![1, 4, 4, 3]),
            c: 1,
            bound: vec![1, 2, 2, 1],
            empirical: HVector::new(vec![1, 2, 2, 1]),
            satisfied: true,
            tight_degrees: vec![0, 1, 2, 3],
            trials: 2,
            seed: 7,
            field: "2147483647".into(),
            trial_h: vec![HVector::new(vec![1, 2, 2, 1]); 2],
        }
    }

    #[test]
    fn json_field_names() {
        let v = serde_json::to_value(sample()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), CSV_HEADER.len());
        for k in CSV_HEADER {
            assert!(keys.contains(&k), "missing {k}");
        }
        assert_eq!(v["h"], serde_json::json!([1, 4, 4, 3]));
        assert_eq!(v["tightDegrees"], serde_json::json!([0, 1, 2, 3]));
    }

    #[test]
    fn csv_columns() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[sample()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "example211 t=3 p=1 e=3,1 4 4 3,1,1 2 2 1,1 2 2 1,true,0 1 2 3,2,7,2147483647,1 2 2 1;1 2 2 1"
        );
    }
}
