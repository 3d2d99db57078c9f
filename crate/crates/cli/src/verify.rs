//! `verify`: oracle-versus-closed-form suites.

use anyhow::Result;
use contention::oracle::suite::{run_suite, Report, Suite};

pub fn verify(suite: Suite, seed: u64, perturb: f64) -> Result<Report> {
    Ok(run_suite(suite, seed, perturb)?)
}

/// One JSON object per comparison.
pub fn report_jsonl(report: &Report) -> Result<String> {
    let mut out = String::new();
    for c in &report.comparisons {
        out.push_str(&serde_json::to_string(c)?);
        out.push('\n');
    }
    Ok(out)
}
