//! Choosing `(α, δ)` for the exponential-family backoff law.
//!
//! Minimizes `(1 + λ/δ) / P_{f_{α,β}}(δ, U)` over a fixed box: a coarse
//! log-spaced grid locates the basin, Nelder–Mead in `(ln α, ln δ)` refines it.
//! Gap probabilities use the closed form when `β = 1` and quadrature otherwise.

use serde::{Deserialize, Serialize};

use super::gap::{election_objective, gap_prob_exp_closed, gap_prob_quadrature};
use crate::distributions::BackoffLaw;
use crate::error::{check_positive, Error, Result};
use crate::optimize::{nelder_mead, NelderMeadSettings};

pub const ALPHA_MIN: f64 = 1e-2;
pub const ALPHA_MAX: f64 = 50.0;
/// Lower bound on δ when λ is smaller than this.
pub const DELTA_MIN_FLOOR: f64 = 1e-4;
pub const DELTA_MAX: f64 = 0.5;
/// Points per axis of the coarse grid.
pub const GRID_POINTS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpFamilyOptimum {
    pub alpha_star: f64,
    pub delta_star: f64,
    pub objective: f64,
}

struct SearchBox {
    ln_alpha: (f64, f64),
    ln_delta: (f64, f64),
}

impl SearchBox {
    fn new(lambda: f64) -> Result<Self> {
        let delta_lo = lambda.max(DELTA_MIN_FLOOR);
        if delta_lo >= DELTA_MAX {
            return Err(Error::invalid(
                "lambda",
                format!("{lambda} leaves no room for a gap below {DELTA_MAX}"),
            ));
        }
        Ok(Self {
            ln_alpha: (ALPHA_MIN.ln(), ALPHA_MAX.ln()),
            ln_delta: (delta_lo.ln(), DELTA_MAX.ln()),
        })
    }

    fn clamp(&self, x: &[f64]) -> (f64, f64) {
        (
            x[0].clamp(self.ln_alpha.0, self.ln_alpha.1).exp(),
            x[1].clamp(self.ln_delta.0, self.ln_delta.1).exp(),
        )
    }

    fn grid_axis(range: (f64, f64), i: usize) -> f64 {
        range.0 + (range.1 - range.0) * i as f64 / (GRID_POINTS - 1) as f64
    }
}

fn objective(lambda: f64, u: u32, beta: f64, alpha: f64, delta: f64) -> Result<f64> {
    let p = if beta == 1.0 {
        gap_prob_exp_closed(alpha, delta, u)?
    } else {
        gap_prob_quadrature(&BackoffLaw::exp_family(alpha, beta)?, delta, u)?
    };
    if p == 0.0 {
        return Ok(f64::INFINITY);
    }
    election_objective(lambda, delta, p)
}

/// Deterministic search for `(α*, δ*)`; see the module docs for the box.
pub fn optimize_exp_family(lambda: f64, u: u32, beta: f64) -> Result<ExpFamilyOptimum> {
    check_positive("lambda", lambda)?;
    check_positive("beta", beta)?;
    if u < 2 {
        return Err(Error::invalid("u", "the station bound must be at least 2"));
    }
    let bounds = SearchBox::new(lambda)?;

    let mut best = (f64::INFINITY, [0.0, 0.0]);
    for i in 0..GRID_POINTS {
        let la = SearchBox::grid_axis(bounds.ln_alpha, i);
        for j in 0..GRID_POINTS {
            let ld = SearchBox::grid_axis(bounds.ln_delta, j);
            let v = objective(lambda, u, beta, la.exp(), ld.exp())?;
            if v < best.0 {
                best = (v, [la, ld]);
            }
        }
    }
    let (grid_value, start) = best;
    if !grid_value.is_finite() {
        return Err(Error::ZeroProbability(
            "every grid point has zero gap probability",
        ));
    }

    let mut failure = None;
    let step = [
        (bounds.ln_alpha.1 - bounds.ln_alpha.0) / (GRID_POINTS - 1) as f64,
        (bounds.ln_delta.1 - bounds.ln_delta.0) / (GRID_POINTS - 1) as f64,
    ];
    let refined = nelder_mead(
        |x| {
            let (a, d) = bounds.clamp(x);
            objective(lambda, u, beta, a, d).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                f64::INFINITY
            })
        },
        &start,
        &step,
        NelderMeadSettings::default(),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let (alpha_star, delta_star) = bounds.clamp(&refined.x);
    let value = objective(lambda, u, beta, alpha_star, delta_star)?;
    if value > grid_value {
        return Err(Error::RefinementDiverged {
            refined: value,
            grid: grid_value,
        });
    }
    Ok(ExpFamilyOptimum {
        alpha_star,
        delta_star,
        objective: value,
    })
}

/// Best uniform-law objective `min_δ (1 + λ/δ) / (1 - δ)^U` over the same δ
/// range, returned as `(δ, objective)`.
pub fn uniform_baseline(lambda: f64, u: u32) -> Result<(f64, f64)> {
    check_positive("lambda", lambda)?;
    let bounds = SearchBox::new(lambda)?;
    let f = |ld: f64| {
        let d = ld.exp();
        (1.0 + lambda / d) / (1.0 - d).powi(u as i32)
    };
    // Unimodal in δ on the box: golden-section search in ln δ.
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = bounds.ln_delta;
    while hi - lo > 1e-12 {
        let (x1, x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(x1) < f(x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    let ld = 0.5 * (lo + hi);
    Ok((ld.exp(), f(ld)))
}
