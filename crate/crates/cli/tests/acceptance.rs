//! Acceptance criteria, one test per criterion. Each writes a PASS/FAIL line
//! straight to stdout (bypassing libtest capture) before asserting.
//!
//! Run with `cargo test -p contention-cli --test acceptance`.

use std::io::Write;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use contention::analytics::{
    f_k_objective, gap_prob_exp_closed, gap_prob_quadrature, k_point_optimal_rates,
    k_point_success_exact, m_sequence, two_point_success,
};
use contention::oracle::enumerate_discrete_success;
use contention::oracle::suite::{enumeration_instances, run_suite, Suite};
use contention::{BackoffLaw, SimConfig, TrafficModel};
use contention_cli::sweep::{self, SweepRow};

const BIN: &str = env!("CARGO_BIN_EXE_contention");
const SEED: u64 = 42;
const SEEDS: u32 = 10;
const K_MAX: u32 = 15;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(BIN)
        .args(args)
        .output()
        .expect("run contention binary")
}

fn within_budget(out: Outcome, elapsed: Duration, budget: Duration) -> Outcome {
    if elapsed > budget {
        outcome(
            false,
            format!("{} (took {elapsed:.2?}, budget {budget:?})", out.detail),
        )
    } else {
        outcome(out.pass, format!("{} [{elapsed:.2?}]", out.detail))
    }
}

fn two_point_table() -> Outcome {
    let expected = [
        0.666667, 0.612476, 0.589383, 0.576551, 0.568379, 0.562717, 0.558561, 0.555382, 0.55287,
    ];
    let out = cli(&["analyze", "--two-point", "--n", "2..10"]);
    if !out.status.success() {
        return outcome(false, String::from_utf8_lossy(&out.stderr));
    }
    let text = String::from_utf8(out.stdout).unwrap();
    let got: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    if got.len() != expected.len() {
        return outcome(false, format!("{} rows, expected 9", got.len()));
    }
    let worst = got
        .iter()
        .zip(expected)
        .map(|(g, e)| (g - e).abs())
        .fold(0.0, f64::max);
    outcome(worst <= 1e-5, format!("max |diff| = {worst:.2e}"))
}

fn m_sequence_check() -> Outcome {
    let m = m_sequence(20).unwrap();
    let m1_err = (m.as_slice()[0] - (-1f64).exp()).abs();
    let increasing = m.as_slice().windows(2).all(|w| w[1] > w[0]);
    let worst = (1..=20)
        .map(|k| {
            let a = k_point_optimal_rates(k).unwrap();
            (f_k_objective(a.as_slice()).unwrap() - m.as_slice()[k - 1]).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        m1_err <= f64::EPSILON && increasing && worst < 1e-12,
        format!(
            "|M_1 - 1/e| = {m1_err:.1e}, increasing = {increasing}, max |f_k - M_k| = {worst:.1e}"
        ),
    )
}

fn gap_cross_check() -> Outcome {
    let mut worst_exp = 0.0f64;
    for alpha in [0.5, 1.0, 2.0, 4.0] {
        for delta in [0.01, 0.05, 0.1] {
            for n in [2, 5, 10, 50] {
                let law = BackoffLaw::exp_family(alpha, 1.0).unwrap();
                let q = gap_prob_quadrature(&law, delta, n).unwrap();
                let c = gap_prob_exp_closed(alpha, delta, n).unwrap();
                worst_exp = worst_exp.max((q - c).abs());
            }
        }
    }
    let mut worst_uni = 0.0f64;
    for delta in [0.0, 0.01, 0.05, 0.1, 0.3, 0.7] {
        for n in [1, 2, 5, 10, 50] {
            let q = gap_prob_quadrature(&BackoffLaw::Uniform01, delta, n).unwrap();
            let exact = if n == 1 {
                1.0 - delta
            } else {
                (1.0f64 - delta).powi(n as i32)
            };
            worst_uni = worst_uni.max((q - exact).abs());
        }
    }
    outcome(
        worst_exp < 1e-8 && worst_uni < 1e-10,
        format!("exp closed vs quadrature {worst_exp:.1e}, uniform {worst_uni:.1e}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    let instances = enumeration_instances();
    for (n, probs) in &instances {
        let e = enumerate_discrete_success(*n, probs).unwrap();
        worst = worst.max((k_point_success_exact(*n, probs).unwrap() - e).abs());
        if probs.len() == 2 {
            worst = worst.max((two_point_success(*n, probs[0], probs[1]).unwrap() - e).abs());
        }
    }
    let report = run_suite(Suite::All, SEED, 0.0).unwrap();
    let mc: Vec<_> = report
        .comparisons
        .iter()
        .filter(|c| c.std_error > 0.0)
        .collect();
    let max_z = mc.iter().map(|c| c.z_score.abs()).fold(0.0, f64::max);
    let failures: Vec<_> = report.failures().map(|c| c.quantity.clone()).collect();
    outcome(
        worst < 1e-12 && failures.is_empty(),
        format!(
            "{} enumeration instances max |diff| = {worst:.1e}; {} Monte Carlo rows max |z| = {max_z:.2}{}",
            instances.len(),
            mc.len(),
            if failures.is_empty() { String::new() } else { format!("; failed: {failures:?}") }
        ),
    )
}

fn sweep_rows(traffic: TrafficModel) -> Vec<SweepRow> {
    let base = SimConfig::reference(1, traffic, SEED).unwrap();
    sweep::run(&base, 1..=K_MAX, SEEDS, SEED).unwrap()
}

fn first_rep(rows: &[SweepRow], k: u32) -> &SweepRow {
    rows.iter().find(|r| r.k == k && r.rep == 0).unwrap()
}

fn mean_over_seeds(rows: &[SweepRow], k: u32, f: impl Fn(&SweepRow) -> f64) -> f64 {
    let v: Vec<f64> = rows.iter().filter(|r| r.k == k).map(f).collect();
    v.iter().sum::<f64>() / v.len() as f64
}

fn simulation_vs_theory(fb: &[SweepRow], pos: &[SweepRow]) -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let max_fb_z = (1..=K_MAX)
        .map(|k| {
            let r = first_rep(fb, k);
            (r.p_k - r.exact_p).abs() / r.p_k_std_error
        })
        .fold(0.0, f64::max);
    if max_fb_z >= 3.0 {
        pass = false;
    }
    notes.push(format!("FB max |z| vs exact = {max_fb_z:.2}"));
    let below: Vec<u32> = (1..=K_MAX)
        .filter(|&k| {
            let r = first_rep(pos, k);
            r.p_k < r.m_k - 3.0 * r.p_k_std_error
        })
        .collect();
    if !below.is_empty() {
        pass = false;
    }
    notes.push(format!("POS k below M_k - 3σ: {below:?}"));
    let gap = |k| {
        let r = first_rep(pos, k);
        (r.p_k - r.m_k).abs()
    };
    let (g1, g15) = (gap(1), gap(K_MAX));
    if g15 >= g1 {
        pass = false;
    }
    notes.push(format!("POS |P_k - M_k| k=1: {g1:.4}, k=15: {g15:.4}"));
    outcome(pass, notes.join("; "))
}

fn throughput_claim(fb: &[SweepRow]) -> Outcome {
    let r1 = mean_over_seeds(fb, 1, |r| r.success_ratio);
    let r15 = mean_over_seeds(fb, K_MAX, |r| r.success_ratio);
    outcome(
        r15 >= 1.3 * r1,
        format!(
            "success ratio k=1: {r1:.4}, k=15: {r15:.4}, ratio {:.3}",
            r15 / r1
        ),
    )
}

fn trend_claims(fb: &[SweepRow], pos: &[SweepRow]) -> Outcome {
    let delta = 100.0;
    let delay: Vec<f64> = (1..=K_MAX)
        .map(|k| mean_over_seeds(fb, k, |r| r.mean_delay))
        .collect();
    let occ: Vec<f64> = (1..=K_MAX)
        .map(|k| mean_over_seeds(fb, k, |r| r.occupancy))
        .collect();
    let pos_delay: Vec<f64> = (1..=K_MAX)
        .map(|k| mean_over_seeds(pos, k, |r| r.mean_delay))
        .collect();
    let delay_drops: Vec<usize> = (1..delay.len())
        .filter(|&i| delay[i] < delay[i - 1])
        .map(|i| i + 1)
        .collect();
    let occ_rises: Vec<usize> = (1..occ.len())
        .filter(|&i| occ[i] > occ[i - 1])
        .map(|i| i + 1)
        .collect();
    let growth = delay[delay.len() - 1] - delay[0];
    let growth_ok = (0.5 * delta..=2.0 * delta).contains(&growth);
    let pos_not_below: Vec<usize> = (0..delay.len())
        .filter(|&i| pos_delay[i] >= delay[i])
        .map(|i| i + 1)
        .collect();
    outcome(
        delay_drops.is_empty() && growth_ok && occ_rises.is_empty() && pos_not_below.is_empty(),
        format!(
            "FB delay {:.1} -> {:.1} (growth {growth:.1}), delay decreases at k={delay_drops:?}; \
             occupancy {:.4} -> {:.4}, increases at k={occ_rises:?}; POS delay not below FB at k={pos_not_below:?}",
            delay[0],
            delay[delay.len() - 1],
            occ[0],
            occ[occ.len() - 1],
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"network":{"n_stations":5,"delta":100},
            "protocol":{"kind":"k_point_discrete","probs":[0.1,0.12,0.2]},
            "traffic":{"kind":"poisson","mean_interarrival":100},
            "duration":200000}"#,
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let run = |args: &[&str]| {
        let out = cli(args);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let log = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let (log_a, log_b) = (log("a.csv"), log("b.csv"));
    let sim_a = run(&[
        "simulate",
        "--config",
        cfg,
        "--seed",
        "9",
        "--event-log",
        &log_a,
    ]);
    let sim_b = run(&[
        "simulate",
        "--config",
        cfg,
        "--seed",
        "9",
        "--event-log",
        &log_b,
    ]);
    let logs_equal = std::fs::read(&log_a).unwrap() == std::fs::read(&log_b).unwrap();
    let sweep_args = [
        "sweep", "--config", cfg, "--k", "1..6", "--reps", "3", "--seed", "9",
    ];
    let sweep_a = run(&sweep_args);
    let sweep_b = run(&sweep_args);
    let other_seed = run(&["simulate", "--config", cfg, "--seed", "10"]);
    outcome(
        sim_a == sim_b && logs_equal && sweep_a == sweep_b && other_seed != sim_a,
        format!(
            "simulate equal: {}, event log equal: {logs_equal}, sweep equal: {}, other seed differs: {}",
            sim_a == sim_b,
            sweep_a == sweep_b,
            other_seed != sim_a
        ),
    )
}

fn degenerate_configs() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let record = |name: &str, json: &str| -> serde_json::Value {
        let path = dir.path().join(name);
        std::fs::write(&path, json).unwrap();
        let out = cli(&[
            "simulate",
            "--config",
            path.to_str().unwrap(),
            "--seed",
            "1",
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        serde_json::from_slice(&out.stdout).unwrap()
    };
    let single = record(
        "one.json",
        r#"{"network":{"n_stations":1,"delta":20},"protocol":{"kind":"k_point_discrete","probs":[1.0]},
            "traffic":{"kind":"full_buffer"},"duration":21000}"#,
    );
    let m = &single["metrics"];
    let occupancy = m["busy_time"].as_f64().unwrap() / m["total_time"].as_f64().unwrap();
    let pair = record(
        "two.json",
        r#"{"network":{"n_stations":2,"delta":20},"protocol":{"kind":"k_point_discrete","probs":[1.0]},
            "traffic":{"kind":"full_buffer"},"duration":21000}"#,
    );
    let n_rx = pair["metrics"]["n_rx"].as_u64().unwrap();
    let n_tx = pair["metrics"]["n_tx"].as_u64().unwrap();
    outcome(
        occupancy == 20.0 / 21.0 && n_rx == 0 && n_tx > 0,
        format!(
            "N=1 occupancy = {occupancy} (20/21 = {}), N=2 n_rx = {n_rx} of n_tx = {n_tx}",
            20.0 / 21.0
        ),
    )
}

struct Sweeps {
    fb: Vec<SweepRow>,
    pos: Vec<SweepRow>,
    elapsed: Duration,
}

/// Both reference sweeps, shared by criteria 5 to 7.
fn sweeps() -> &'static Sweeps {
    static SWEEPS: OnceLock<Sweeps> = OnceLock::new();
    SWEEPS.get_or_init(|| {
        let start = Instant::now();
        let fb = sweep_rows(TrafficModel::FullBuffer);
        let pos = sweep_rows(TrafficModel::Poisson {
            mean_interarrival: 100.0,
        });
        Sweeps {
            fb,
            pos,
            elapsed: start.elapsed(),
        }
    })
}

fn report(id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let out = within_budget(f(), start.elapsed(), budget);
    let tag = if out.pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {id} {tag}: {name}: {}\n", out.detail);
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(line.as_bytes()).unwrap();
    stdout.flush().unwrap();
    assert!(out.pass, "criterion {id} failed: {}", out.detail);
}

#[test]
fn criterion_1_two_point_table() {
    report(
        1,
        "two-point optimum table",
        Duration::from_secs(1),
        two_point_table,
    );
}

#[test]
fn criterion_2_m_sequence() {
    report(
        2,
        "M-sequence and k-point objective",
        Duration::from_secs(1),
        m_sequence_check,
    );
}

#[test]
fn criterion_3_gap_cross_check() {
    report(
        3,
        "exp-family closed form vs quadrature",
        Duration::from_secs(10),
        gap_cross_check,
    );
}

#[test]
fn criterion_4_oracle_equivalence() {
    report(
        4,
        "oracle equivalence",
        Duration::from_secs(120),
        oracle_equivalence,
    );
}

#[test]
fn criterion_5_simulation_vs_theory() {
    let s = sweeps();
    report(
        5,
        "simulation vs theory",
        Duration::from_secs(300).saturating_sub(s.elapsed),
        || {
            let out = simulation_vs_theory(&s.fb, &s.pos);
            outcome(
                out.pass,
                format!("{}; sweeps took {:.2?}", out.detail, s.elapsed),
            )
        },
    );
}

#[test]
fn criterion_6_throughput_claim() {
    report(
        6,
        "throughput improvement k=15 vs k=1",
        Duration::MAX,
        || throughput_claim(&sweeps().fb),
    );
}

#[test]
fn criterion_7_trend_claims() {
    let s = sweeps();
    report(7, "delay, occupancy and POS trends", Duration::MAX, || {
        trend_claims(&s.fb, &s.pos)
    });
}

#[test]
fn criterion_8_determinism() {
    report(8, "determinism", Duration::MAX, determinism);
}

#[test]
fn criterion_9_degenerate_exactness() {
    report(9, "degenerate exactness", Duration::MAX, degenerate_configs);
}
