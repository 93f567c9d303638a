//! Estimate reports: one record per verified inequality, reproducible from
//! the instance descriptor and seed, emitted as JSON lines and a CSV summary.

use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::io::Write;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateReport {
    pub name: String,
    pub instance: String,
    pub lhs: f64,
    pub rhs: f64,
    /// slack = lhs - rhs; pass iff slack >= -tol
    pub slack: f64,
    pub tol: f64,
    pub pass: bool,
    /// (name, value) pairs in a fixed order
    pub constants: Vec<(String, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl EstimateReport {
    pub fn new(name: &str, instance: String, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = lhs - rhs;
        EstimateReport {
            name: name.to_string(),
            instance,
            lhs,
            rhs,
            slack,
            tol,
            pass: slack >= -tol,
            constants: Vec::new(),
            seed: None,
        }
    }

    pub fn with_constant(mut self, name: &str, value: f64) -> Self {
        self.constants.push((name.to_string(), value));
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Drive pass from a custom predicate (for residual-style checks where
    /// pass means |slack| <= tol).
    pub fn passing_if(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }
}

/// One JSON object per line, in input order.
pub fn write_jsonl<W: Write>(w: &mut W, reports: &[EstimateReport]) -> Result<()> {
    for r in reports {
        let line = serde_json::to_string(r).expect("report serializes");
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// CSV summary: name, instance, lhs, rhs, slack, pass.
pub fn write_csv<W: Write>(w: &mut W, reports: &[EstimateReport]) -> Result<()> {
    writeln!(w, "name,instance,lhs,rhs,slack,pass")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.name,
            r.instance.replace(',', ";"),
            r.lhs,
            r.rhs,
            r.slack,
            r.pass
        )?;
    }
    Ok(())
}
