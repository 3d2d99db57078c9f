//! Independent checks for the closed forms: exact enumeration over joint
//! choices and seeded Monte Carlo estimators.
//!
//! Nothing here calls into [`crate::analytics`]; the estimators only share
//! the sampling primitives of [`crate::distributions`].

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::distributions::{BackoffLaw, PointProbs};
use crate::error::{check_closed, check_positive, Error, Result};
use crate::rng::stream;

pub mod suite;

pub const MAX_ENUM_STATIONS: u32 = 12;
pub const MAX_ENUM_POINTS: usize = 6;
pub const MAX_ENUM_OUTCOMES: f64 = 1e8;
pub const MIN_TRIALS: u64 = 10_000;

/// Bernoulli frequency with its normal-approximation standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
}

impl OracleEstimate {
    pub fn from_counts(successes: u64, trials: u64) -> Self {
        let mean = successes as f64 / trials as f64;
        Self {
            mean,
            std_error: (mean * (1.0 - mean) / trials as f64).sqrt(),
            trials,
        }
    }

    /// Standardized distance to `reference`.
    ///
    /// When every trial agreed (zero standard error) the error of the reference
    /// itself is used instead, so a degenerate estimate is not a free pass.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.mean - reference;
        let se = if self.std_error > 0.0 {
            self.std_error
        } else {
            (reference * (1.0 - reference) / self.trials as f64).sqrt()
        };
        if diff == 0.0 {
            0.0
        } else if se == 0.0 {
            f64::INFINITY
        } else {
            diff / se
        }
    }

    pub fn within_sigmas(&self, reference: f64, sigmas: f64) -> bool {
        self.z_score(reference).abs() < sigmas
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials < MIN_TRIALS {
        Err(Error::invalid(
            "trials",
            format!("{trials} is below the minimum of {MIN_TRIALS}"),
        ))
    } else {
        Ok(())
    }
}

/// Exact probability that exactly one station holds the earliest chosen point,
/// summed over all `(k+1)^N` joint choice vectors.
pub fn enumerate_discrete_success(n: u32, probs: &[f64]) -> Result<f64> {
    let probs = PointProbs::new(probs.to_vec())?;
    let k = probs.len();
    if n == 0 || n > MAX_ENUM_STATIONS {
        return Err(Error::invalid(
            "n",
            format!("enumeration supports 1..={MAX_ENUM_STATIONS} stations"),
        ));
    }
    if k > MAX_ENUM_POINTS {
        return Err(Error::invalid(
            "probs",
            format!("enumeration supports at most {MAX_ENUM_POINTS} points"),
        ));
    }
    let outcomes = ((k + 1) as f64).powi(n as i32);
    if outcomes > MAX_ENUM_OUTCOMES {
        return Err(Error::EnumerationTooLarge {
            outcomes,
            cap: MAX_ENUM_OUTCOMES,
        });
    }
    let silent = (1.0 - probs.total()).max(0.0);
    let weights: Vec<f64> = probs.as_slice().iter().copied().chain([silent]).collect();

    let mut choice = vec![0usize; n as usize];
    let mut total = 0.0;
    loop {
        let earliest = choice.iter().copied().filter(|&c| c < k).min();
        if let Some(first) = earliest {
            if choice.iter().filter(|&&c| c == first).count() == 1 {
                total += choice.iter().map(|&c| weights[c]).product::<f64>();
            }
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(total);
            }
            choice[pos] += 1;
            if choice[pos] <= k {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Frequency with which the two smallest of `n` draws from `law` are more
/// than `delta` apart. A single draw always counts as separated.
pub fn mc_gap_probability(
    law: &BackoffLaw,
    n: u32,
    delta: f64,
    trials: u64,
    seed: u64,
) -> Result<OracleEstimate> {
    if !law.is_continuous() {
        return Err(Error::NotContinuous);
    }
    if n == 0 {
        return Err(Error::invalid("n", "at least one draw is required"));
    }
    check_closed("delta", delta, 0.0, 1.0)?;
    check_trials(trials)?;
    let mut rng = stream(seed, 0);
    let mut hits = 0u64;
    for _ in 0..trials {
        let (mut first, mut second) = (f64::INFINITY, f64::INFINITY);
        for _ in 0..n {
            let x = law.sample(&mut rng)?;
            if x < first {
                second = first;
                first = x;
            } else if x < second {
                second = x;
            }
        }
        if second - first > delta {
            hits += 1;
        }
    }
    Ok(OracleEstimate::from_counts(hits, trials))
}

/// One simulated slot per trial: each station joins with probability `p` and
/// waits a uniform time in `[0, T]`; the slot succeeds when exactly one
/// station joins or the earliest two are more than `λ` apart.
pub fn mc_clw_round(
    n: u32,
    p: f64,
    lambda: f64,
    t: f64,
    trials: u64,
    seed: u64,
) -> Result<OracleEstimate> {
    check_closed("p", p, 0.0, 1.0)?;
    check_positive("lambda", lambda)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", format!("{t} must be finite and >= 0")));
    }
    check_trials(trials)?;
    let mut rng = stream(seed, 1);
    let mut hits = 0u64;
    for _ in 0..trials {
        let (mut first, mut second, mut joined) = (f64::INFINITY, f64::INFINITY, 0u32);
        for _ in 0..n {
            let xi: f64 = rng.random();
            let eta = t * rng.random::<f64>();
            if xi < p {
                joined += 1;
                if eta < first {
                    second = first;
                    first = eta;
                } else if eta < second {
                    second = eta;
                }
            }
        }
        if joined == 1 || (joined > 1 && second - first > lambda) {
            hits += 1;
        }
    }
    Ok(OracleEstimate::from_counts(hits, trials))
}

/// Monte Carlo over single k-point contention rounds with `n` contenders.
pub fn mc_discrete_round(n: u32, probs: &[f64], trials: u64, seed: u64) -> Result<OracleEstimate> {
    let probs = PointProbs::new(probs.to_vec())?;
    check_trials(trials)?;
    let mut rng = stream(seed, 2);
    let mut hits = 0u64;
    for _ in 0..trials {
        let (mut earliest, mut count) = (usize::MAX, 0u32);
        for _ in 0..n {
            if let Some(point) = probs.sample_point(&mut rng) {
                if point < earliest {
                    earliest = point;
                    count = 1;
                } else if point == earliest {
                    count += 1;
                }
            }
        }
        if count == 1 {
            hits += 1;
        }
    }
    Ok(OracleEstimate::from_counts(hits, trials))
}
