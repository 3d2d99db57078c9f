//! `sweep`: the k-point protocol with optimal rates over a range of k.

use std::ops::RangeInclusive;

use anyhow::{bail, Result};
use contention::analytics::{k_point_optimal_rates, k_point_success_exact, m_sequence};
use contention::rng::derive_seed;
use contention::{run_simulation, CollisionPolicy, ProtocolSpec, SimConfig, TrafficModel};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const MAX_K: u32 = 64;

/// One CSV row per `(k, repetition)`. The column set is fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: u32,
    pub rep: u32,
    pub seed: u64,
    pub n_stations: u32,
    pub delta: u32,
    pub traffic: String,
    pub collision_policy: String,
    pub duration: f64,
    pub n_tx: u64,
    pub n_rx: u64,
    pub collided: u64,
    pub success_ratio: f64,
    pub busy_time: f64,
    pub total_time: f64,
    pub occupancy: f64,
    /// NaN when nothing was delivered.
    pub mean_delay: f64,
    pub rounds_contended: u64,
    pub rounds_success: u64,
    pub p_k: f64,
    pub p_k_std_error: f64,
    /// Exact finite-N round success probability for the rates used.
    pub exact_p: f64,
    pub m_k: f64,
    pub dropped_arrivals: u64,
}

fn traffic_label(t: &TrafficModel) -> String {
    match t {
        TrafficModel::FullBuffer => "fb".into(),
        TrafficModel::Poisson { mean_interarrival } => format!("pos:{mean_interarrival}"),
    }
}

fn policy_label(p: CollisionPolicy) -> &'static str {
    match p {
        CollisionPolicy::Discard => "discard",
        CollisionPolicy::Retransmit => "retransmit",
    }
}

/// Configs for every `(k, rep)`, in output order. Repetition `r` uses seed
/// `derive_seed(seed, r)` for every k.
pub fn plan(
    base: &SimConfig,
    k: RangeInclusive<u32>,
    reps: u32,
    seed: u64,
) -> Result<Vec<(u32, u32, SimConfig)>> {
    if *k.start() < 1 || *k.end() > MAX_K {
        bail!("k range must lie within 1..{MAX_K}");
    }
    if reps == 0 {
        bail!("at least one repetition is required");
    }
    let n = base.network.n_stations;
    let mut jobs = Vec::new();
    for kk in k {
        let rates = k_point_optimal_rates(kk as usize)?;
        let probs = rates.to_probs(n).map_err(|_| {
            anyhow::anyhow!(
                "k = {kk}: optimal rates sum to {:.6}, exceeding N = {n}; probabilities would sum past 1",
                rates.sum()
            )
        })?;
        for rep in 0..reps {
            let mut cfg = base.clone();
            cfg.protocol = ProtocolSpec::KPointDiscrete {
                probs: probs.clone(),
            };
            cfg.seed = derive_seed(seed, rep as u64);
            jobs.push((kk, rep, cfg));
        }
    }
    Ok(jobs)
}

pub fn run(
    base: &SimConfig,
    k: RangeInclusive<u32>,
    reps: u32,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    let jobs = plan(base, k.clone(), reps, seed)?;
    let m = m_sequence(*k.end() as usize)?;
    jobs.par_iter()
        .map(|(kk, rep, cfg)| {
            let metrics = run_simulation(cfg)?;
            let ProtocolSpec::KPointDiscrete { probs } = &cfg.protocol else {
                unreachable!("planned as k-point");
            };
            Ok(SweepRow {
                k: *kk,
                rep: *rep,
                seed: cfg.seed,
                n_stations: cfg.network.n_stations,
                delta: cfg.network.delta,
                traffic: traffic_label(&cfg.traffic),
                collision_policy: policy_label(cfg.collision_policy).into(),
                duration: cfg.duration,
                n_tx: metrics.n_tx,
                n_rx: metrics.n_rx,
                collided: metrics.collided,
                success_ratio: metrics.success_ratio(),
                busy_time: metrics.busy_time,
                total_time: metrics.total_time,
                occupancy: metrics.occupancy(),
                mean_delay: metrics.mean_delay().unwrap_or(f64::NAN),
                rounds_contended: metrics.rounds_contended,
                rounds_success: metrics.rounds_success,
                p_k: metrics.empirical_p,
                p_k_std_error: metrics.empirical_p_std_error(),
                exact_p: k_point_success_exact(cfg.network.n_stations, probs.as_slice())?,
                m_k: m.get(*kk as usize).unwrap(),
                dropped_arrivals: metrics.dropped_arrivals,
            })
        })
        .collect()
}

pub fn rows_to_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(true)
        .from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        bail!("sweep produced no rows");
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
