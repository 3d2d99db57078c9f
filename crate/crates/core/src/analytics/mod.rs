//! Closed-form success probabilities and the numeric procedures around them.
//!
//! All functions are pure. Probability-valued results are clamped to `[0, 1]`
//! only where rounding could push them a few ulps outside.

mod clw;
mod exp_opt;
mod gap;
mod kpoint;

pub use clw::{clw_expected_election_time, clw_success_prob};
pub use exp_opt::{
    optimize_exp_family, uniform_baseline, ExpFamilyOptimum, ALPHA_MAX, ALPHA_MIN, DELTA_MAX,
    DELTA_MIN_FLOOR, GRID_POINTS,
};
pub use gap::{election_objective, gap_prob_exp_closed, gap_prob_quadrature, gap_prob_uniform};
pub use kpoint::{
    f_k_objective, k_point_optimal_rates, k_point_success_exact, m_sequence, two_point_optimum,
    two_point_success, MSequence, RateVector, TwoPointOptimum,
};

/// `ln C(n, k)` by summing logs; exact enough for the binomial weights used here.
pub(crate) fn ln_choose(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k)
        .map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}

pub(crate) fn check_stations(n: u32) -> crate::Result<()> {
    if n == 0 {
        Err(crate::Error::invalid(
            "n",
            "at least one station is required",
        ))
    } else {
        Ok(())
    }
}
