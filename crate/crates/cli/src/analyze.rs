//! `analyze`: tables of closed-form values as CSV.

use std::ops::RangeInclusive;

use anyhow::{bail, Result};
use contention::analytics::{
    k_point_optimal_rates, m_sequence, optimize_exp_family, two_point_optimum, uniform_baseline,
};

#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    TwoPoint { n: RangeInclusive<u32> },
    MSequence { k: RangeInclusive<u32> },
    KRates { k: RangeInclusive<u32> },
    ExpOpt { lambda: f64, u: u32, beta: f64 },
}

pub fn analyze(quantity: &Quantity) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match quantity {
        Quantity::TwoPoint { n } => {
            if *n.start() < 2 {
                bail!("--two-point needs N >= 2");
            }
            w.write_record(["n", "p", "q", "success"])?;
            for n in n.clone() {
                let opt = two_point_optimum(n)?;
                w.write_record([
                    n.to_string(),
                    opt.p.to_string(),
                    opt.q.to_string(),
                    opt.success.to_string(),
                ])?;
            }
        }
        Quantity::MSequence { k } => {
            if *k.start() < 1 {
                bail!("--m-seq needs k >= 1");
            }
            let m = m_sequence(*k.end() as usize)?;
            w.write_record(["k", "m_k"])?;
            for j in k.clone() {
                w.write_record([j.to_string(), m.get(j as usize).unwrap().to_string()])?;
            }
        }
        Quantity::KRates { k } => {
            if *k.start() < 1 {
                bail!("--k-rates needs k >= 1");
            }
            w.write_record(["k", "i", "a_i"])?;
            for kk in k.clone() {
                let rates = k_point_optimal_rates(kk as usize)?;
                for (i, a) in rates.as_slice().iter().enumerate() {
                    w.write_record([kk.to_string(), (i + 1).to_string(), a.to_string()])?;
                }
            }
        }
        Quantity::ExpOpt { lambda, u, beta } => {
            let opt = optimize_exp_family(*lambda, *u, *beta)?;
            let (uniform_delta, uniform_objective) = uniform_baseline(*lambda, *u)?;
            w.write_record([
                "lambda",
                "u",
                "beta",
                "alpha_star",
                "delta_star",
                "objective",
                "uniform_delta",
                "uniform_objective",
            ])?;
            w.write_record([
                lambda.to_string(),
                u.to_string(),
                beta.to_string(),
                opt.alpha_star.to_string(),
                opt.delta_star.to_string(),
                opt.objective.to_string(),
                uniform_delta.to_string(),
                uniform_objective.to_string(),
            ])?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
