//! Order-statistic gap probabilities `P_f(δ, n) = Pr[X_(2) - X_(1) > δ]`.

use crate::distributions::BackoffLaw;
use crate::error::{check_closed, check_positive, Error, Result};
use crate::quadrature::{integrate, DEFAULT_ABS_TOL, DEFAULT_MAX_INTERVALS};

fn check_count(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::invalid(
            "n",
            "at least one backoff value is required",
        ))
    } else {
        Ok(())
    }
}

/// Gap probability for `n` uniform values: `(1 - gap)^n`, and 1 for a single
/// value (nobody to collide with).
pub fn gap_prob_uniform(n: u32, gap: f64) -> Result<f64> {
    check_count(n)?;
    check_closed("gap", gap, 0.0, 1.0)?;
    if n == 1 {
        return Ok(1.0);
    }
    Ok((1.0 - gap).powi(n as i32))
}

/// `n ∫_0^{1-δ} f(x) (1 - F(x+δ))^(n-1) dx` by adaptive quadrature to an
/// absolute error of 1e-10.
///
/// For `n = 1` this is `F(1 - δ)`. Laws whose density blows up at 0
/// (`ExpFamily` with `β < 1`) are integrated in the probability variable
/// `u = F(x)` instead, which removes the singularity.
pub fn gap_prob_quadrature(law: &BackoffLaw, delta: f64, n: u32) -> Result<f64> {
    if !law.is_continuous() {
        return Err(Error::NotContinuous);
    }
    check_count(n)?;
    check_closed("delta", delta, 0.0, 1.0)?;
    if delta >= 1.0 {
        return Ok(0.0);
    }
    let exponent = n as i32 - 1;
    let tail = |x: f64| (1.0 - law.cdf_unchecked((x + delta).min(1.0))).powi(exponent);
    let nf = n as f64;
    let tol = DEFAULT_ABS_TOL / nf;
    let integral = if law.has_bounded_density() {
        integrate(
            |x| law.pdf_unchecked(x) * tail(x),
            0.0,
            1.0 - delta,
            tol,
            DEFAULT_MAX_INTERVALS,
        )?
    } else {
        let upper = law.cdf_unchecked(1.0 - delta);
        integrate(
            |u| tail(law.quantile_unchecked(u)),
            0.0,
            upper,
            tol,
            DEFAULT_MAX_INTERVALS,
        )?
    };
    Ok((nf * integral.value).clamp(0.0, 1.0))
}

/// Closed form for `ExpFamily { alpha, beta: 1 }`:
/// `e^(-αδ) ((e^α - e^(αδ)) / (e^α - 1))^n`, evaluated in log space.
pub fn gap_prob_exp_closed(alpha: f64, delta: f64, n: u32) -> Result<f64> {
    check_positive("alpha", alpha)?;
    check_closed("delta", delta, 0.0, 1.0)?;
    check_count(n)?;
    if delta >= 1.0 {
        return Ok(0.0);
    }
    // (e^α - e^(αδ)) / (e^α - 1) = (1 - e^(-α(1-δ))) / (1 - e^(-α))
    let ratio = (-alpha * (1.0 - delta)).exp_m1() / (-alpha).exp_m1();
    let ln_p = -alpha * delta + n as f64 * ratio.ln();
    Ok(ln_p.exp().clamp(0.0, 1.0))
}

/// Leading coefficient `(1 + λ/δ) / P` of the expected election time.
pub fn election_objective(lambda: f64, delta: f64, p: f64) -> Result<f64> {
    check_positive("lambda", lambda)?;
    check_positive("delta", delta)?;
    check_closed("delta", delta, 0.0, 1.0)?;
    check_closed("p", p, 0.0, 1.0)?;
    if p == 0.0 {
        return Err(Error::ZeroProbability(
            "the gap probability must be positive",
        ));
    }
    Ok((1.0 + lambda / delta) / p)
}
