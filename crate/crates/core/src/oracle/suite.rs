//! Verification suites pairing each closed form with its oracle.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    enumerate_discrete_success, mc_clw_round, mc_discrete_round, mc_gap_probability, OracleEstimate,
};
use crate::analytics::{
    clw_success_prob, gap_prob_exp_closed, gap_prob_quadrature, gap_prob_uniform,
    k_point_optimal_rates, k_point_success_exact, two_point_success,
};
use crate::distributions::BackoffLaw;
use crate::error::{Error, Result};
use crate::rng::derive_seed;

pub const MC_TRIALS: u64 = 1_000_000;
/// Monte Carlo comparisons pass below this many standard errors.
pub const Z_LIMIT: f64 = 3.0;
/// Exact comparisons pass when closed form and enumeration agree this closely.
/// They report `z = |diff| / (EXACT_TOL / Z_LIMIT)` so one threshold covers both.
pub const EXACT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gap,
    Clw,
    Kpoint,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gap" => Ok(Suite::Gap),
            "clw" => Ok(Suite::Clw),
            "kpoint" => Ok(Suite::Kpoint),
            "all" => Ok(Suite::All),
            other => Err(Error::invalid(
                "suite",
                format!("unknown suite `{other}` (gap|clw|kpoint|all)"),
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Gap => "gap",
            Suite::Clw => "clw",
            Suite::Kpoint => "kpoint",
            Suite::All => "all",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub quantity: String,
    pub closed_form: f64,
    pub oracle_mean: f64,
    pub std_error: f64,
    pub z_score: f64,
}

impl Comparison {
    fn monte_carlo(quantity: String, closed_form: f64, est: OracleEstimate) -> Self {
        Self {
            quantity,
            closed_form,
            oracle_mean: est.mean,
            std_error: est.std_error,
            z_score: est.z_score(closed_form),
        }
    }

    fn exact(quantity: String, closed_form: f64, oracle: f64) -> Self {
        Self {
            quantity,
            closed_form,
            oracle_mean: oracle,
            std_error: 0.0,
            z_score: (oracle - closed_form).abs() / (EXACT_TOL / Z_LIMIT),
        }
    }

    pub fn passed(&self) -> bool {
        self.z_score.abs() < Z_LIMIT
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub comparisons: Vec<Comparison>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(Comparison::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.passed())
    }
}

/// Runs `suite` with oracle seeds derived from `seed`.
///
/// `perturb` is added to every closed-form value before comparing; it exists
/// so negative controls can confirm that a wrong formula is caught.
pub fn run_suite(suite: Suite, seed: u64, perturb: f64) -> Result<Report> {
    let mut comparisons = Vec::new();
    let mut next_seed = {
        let mut i = 0;
        move || {
            i += 1;
            derive_seed(seed, i)
        }
    };
    if matches!(suite, Suite::Gap | Suite::All) {
        gap_suite(&mut comparisons, &mut next_seed, perturb)?;
    }
    if matches!(suite, Suite::Clw | Suite::All) {
        clw_suite(&mut comparisons, &mut next_seed, perturb)?;
    }
    if matches!(suite, Suite::Kpoint | Suite::All) {
        kpoint_suite(&mut comparisons, &mut next_seed, perturb)?;
    }
    Ok(Report {
        suite,
        seed,
        comparisons,
    })
}

fn gap_suite(
    out: &mut Vec<Comparison>,
    seed: &mut impl FnMut() -> u64,
    perturb: f64,
) -> Result<()> {
    let uniform = BackoffLaw::Uniform01;
    out.push(Comparison::monte_carlo(
        "gap uniform (1-δ)^n n=5 δ=0.1".into(),
        gap_prob_uniform(5, 0.1)? + perturb,
        mc_gap_probability(&uniform, 5, 0.1, MC_TRIALS, seed())?,
    ));
    out.push(Comparison::monte_carlo(
        "gap quadrature uniform n=10 δ=0.05".into(),
        gap_prob_quadrature(&uniform, 0.05, 10)? + perturb,
        mc_gap_probability(&uniform, 10, 0.05, MC_TRIALS, seed())?,
    ));
    let exp1 = BackoffLaw::exp_family(2.0, 1.0)?;
    out.push(Comparison::monte_carlo(
        "gap exp closed α=2 n=7 δ=0.1".into(),
        gap_prob_exp_closed(2.0, 0.1, 7)? + perturb,
        mc_gap_probability(&exp1, 7, 0.1, MC_TRIALS, seed())?,
    ));
    let exp2 = BackoffLaw::exp_family(1.0, 2.0)?;
    out.push(Comparison::monte_carlo(
        "gap quadrature exp α=1 β=2 n=10 δ=0.05".into(),
        gap_prob_quadrature(&exp2, 0.05, 10)? + perturb,
        mc_gap_probability(&exp2, 10, 0.05, MC_TRIALS, seed())?,
    ));
    let power = BackoffLaw::power(1.0)?;
    out.push(Comparison::monte_carlo(
        "gap quadrature power r=1 n=4 δ=0.1".into(),
        gap_prob_quadrature(&power, 0.1, 4)? + perturb,
        mc_gap_probability(&power, 4, 0.1, MC_TRIALS, seed())?,
    ));
    Ok(())
}

fn clw_suite(
    out: &mut Vec<Comparison>,
    seed: &mut impl FnMut() -> u64,
    perturb: f64,
) -> Result<()> {
    let cases: [(u32, f64, f64, f64, &str); 5] = [
        (2, 0.5, 1.0, 0.0, "T=0 Nakano-Olariu"),
        (2, 0.5, 1.0, 2.0, "T>=λ"),
        (5, 0.3, 1.0, 4.0, "T>=λ"),
        (10, 0.15, 1.0, 0.0, "T=0 Nakano-Olariu"),
        (4, 0.5, 1.0, 0.5, "T<λ"),
    ];
    for (n, p, lambda, t, branch) in cases {
        out.push(Comparison::monte_carlo(
            format!("clw {branch} N={n} p={p} λ={lambda} T={t}"),
            clw_success_prob(n, p, lambda, t)? + perturb,
            mc_clw_round(n, p, lambda, t, MC_TRIALS, seed())?,
        ));
    }
    Ok(())
}

/// Enumeration instances with `N <= 8` and `k <= 4`.
pub fn enumeration_instances() -> Vec<(u32, Vec<f64>)> {
    let mut cases = Vec::new();
    for n in 1..=8u32 {
        cases.push((n, vec![1.0 / 3.0, 1.0 / 3.0]));
        cases.push((n, vec![0.2, 0.3]));
        cases.push((n, vec![0.3, 0.2, 0.1]));
        cases.push((n, vec![0.1, 0.15, 0.2, 0.25]));
        for k in 1..=4 {
            if let Ok(p) = k_point_optimal_rates(k).and_then(|a| a.to_probs(n)) {
                cases.push((n, p.as_slice().to_vec()));
            }
        }
    }
    cases
}

fn kpoint_suite(
    out: &mut Vec<Comparison>,
    seed: &mut impl FnMut() -> u64,
    perturb: f64,
) -> Result<()> {
    for (n, probs) in enumeration_instances() {
        let oracle = enumerate_discrete_success(n, &probs)?;
        out.push(Comparison::exact(
            format!("k-point sum N={n} p={probs:.4?}"),
            k_point_success_exact(n, &probs)? + perturb,
            oracle,
        ));
        if probs.len() == 2 {
            out.push(Comparison::exact(
                format!("two-point N={n} p={:.4} q={:.4}", probs[0], probs[1]),
                two_point_success(n, probs[0], probs[1])? + perturb,
                oracle,
            ));
        }
    }
    for k in [1usize, 3, 8] {
        let probs = k_point_optimal_rates(k)?.to_probs(5)?;
        out.push(Comparison::monte_carlo(
            format!("k-point round Monte Carlo N=5 k={k}"),
            k_point_success_exact(5, probs.as_slice())? + perturb,
            mc_discrete_round(5, probs.as_slice(), MC_TRIALS, seed())?,
        ));
    }
    Ok(())
}
