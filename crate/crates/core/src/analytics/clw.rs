//! Single-slot success probability of the Cai–Lu–Wang style protocol: each of
//! `N` stations joins with probability `p` and picks a uniform delay in `[0, T]`.

use super::{check_stations, ln_choose};
use crate::error::{check_closed, check_positive, Error, Result};

/// Probability that a slot elects exactly one station.
///
/// With `k` joining stations the earliest one wins iff the gap to the second
/// exceeds `λ`, which for uniform delays happens with probability
/// `(1 - λ/T)^k`. For `T < λ` only a lone transmitter succeeds.
pub fn clw_success_prob(n: u32, p: f64, lambda: f64, t: f64) -> Result<f64> {
    check_stations(n)?;
    check_closed("p", p, 0.0, 1.0)?;
    check_positive("lambda", lambda)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", format!("{t} must be finite and >= 0")));
    }
    let lone = lone_transmitter(n, p);
    if t < lambda || n == 1 || p == 0.0 {
        return Ok(lone);
    }
    let separated = 1.0 - lambda / t;
    let multi: f64 = if p == 1.0 {
        separated.powi(n as i32)
    } else {
        (2..=n)
            .map(|k| {
                let ln_weight = ln_choose(n, k) + k as f64 * p.ln() + (n - k) as f64 * (-p).ln_1p();
                separated.powi(k as i32) * ln_weight.exp()
            })
            .sum()
    };
    Ok((lone + multi).clamp(0.0, 1.0))
}

/// `N p (1-p)^(N-1)`.
fn lone_transmitter(n: u32, p: f64) -> f64 {
    n as f64 * p * (1.0 - p).powi(n as i32 - 1)
}

/// Expected leader-election time under a geometric-slot model.
///
/// Slots of length `T + 2(δ + λ)` repeat independently until one succeeds.
/// This is a modelling choice: the slot length follows the protocol timing,
/// the independence of slots is assumed.
pub fn clw_expected_election_time(n: u32, p: f64, lambda: f64, delta: f64, t: f64) -> Result<f64> {
    check_positive("delta", delta)?;
    let success = clw_success_prob(n, p, lambda, t)?;
    if success <= 0.0 {
        return Err(Error::ZeroProbability("no slot can ever elect a leader"));
    }
    Ok((t + 2.0 * (delta + lambda)) / success)
}
