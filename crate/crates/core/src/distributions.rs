//! Backoff-value distributions on `[0, 1]`.
//!
//! Continuous laws are sampled by inversion only, so one uniform draw yields
//! exactly one backoff value and simulations replay bit-for-bit per seed.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_closed, Error, Result};

/// Slack allowed on `Σ p_i <= 1` to absorb rounding in computed vectors.
pub const PROB_SUM_SLACK: f64 = 1e-12;

/// Transmission probabilities `p_1..p_k` of the k-point discrete protocol.
///
/// A station transmits at point `i` with probability `p_i` and stays silent
/// with probability `1 - Σ p_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PointProbs {
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

impl PointProbs {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::invalid(
                "probs",
                "at least one transmission point is required",
            ));
        }
        if let Some(bad) = probs.iter().find(|p| !(**p >= 0.0 && p.is_finite())) {
            return Err(Error::invalid(
                "probs",
                format!("entry {bad} is not a probability"),
            ));
        }
        let cumulative: Vec<f64> = probs
            .iter()
            .scan(0.0, |acc, p| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        let sum = *cumulative.last().unwrap();
        if sum > 1.0 + PROB_SUM_SLACK {
            return Err(Error::ProbabilitySum { sum });
        }
        Ok(Self { probs, cumulative })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    /// Number of transmission points `k`.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Partial sums `p_1 + ... + p_i`.
    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    /// Maps a uniform `u ∈ [0,1)` to a 1-based point index, `None` for silence.
    pub fn point_for(&self, u: f64) -> Option<usize> {
        let idx = self.cumulative.partition_point(|&c| c <= u);
        (idx < self.probs.len()).then_some(idx + 1)
    }

    /// Draws a transmission point (1-based) or `None` for silence.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<usize> {
        self.point_for(rng.random::<f64>())
    }
}

impl TryFrom<Vec<f64>> for PointProbs {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        PointProbs::new(v)
    }
}

impl From<PointProbs> for Vec<f64> {
    fn from(p: PointProbs) -> Self {
        p.probs
    }
}

/// A backoff-value distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LawRepr", into = "LawRepr")]
pub enum BackoffLaw {
    /// Uniform on `[0, 1]`.
    Uniform01,
    /// `F(t) = t^(r+1)`, `r >= 0`.
    Power {
        r: f64,
    },
    /// `F(x) = (e^(αx^β) - 1) / (e^α - 1)`, `α, β > 0`.
    ExpFamily {
        alpha: f64,
        beta: f64,
    },
    DiscretePoints {
        probs: PointProbs,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum LawRepr {
    Uniform01,
    Power { r: f64 },
    ExpFamily { alpha: f64, beta: f64 },
    DiscretePoints { probs: Vec<f64> },
}

impl TryFrom<LawRepr> for BackoffLaw {
    type Error = Error;

    fn try_from(repr: LawRepr) -> Result<Self> {
        match repr {
            LawRepr::Uniform01 => Ok(BackoffLaw::Uniform01),
            LawRepr::Power { r } => BackoffLaw::power(r),
            LawRepr::ExpFamily { alpha, beta } => BackoffLaw::exp_family(alpha, beta),
            LawRepr::DiscretePoints { probs } => BackoffLaw::discrete(probs),
        }
    }
}

impl From<BackoffLaw> for LawRepr {
    fn from(law: BackoffLaw) -> Self {
        match law {
            BackoffLaw::Uniform01 => LawRepr::Uniform01,
            BackoffLaw::Power { r } => LawRepr::Power { r },
            BackoffLaw::ExpFamily { alpha, beta } => LawRepr::ExpFamily { alpha, beta },
            BackoffLaw::DiscretePoints { probs } => LawRepr::DiscretePoints {
                probs: probs.into(),
            },
        }
    }
}

impl BackoffLaw {
    pub fn power(r: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::invalid("r", format!("{r} must be finite and >= 0")));
        }
        Ok(BackoffLaw::Power { r })
    }

    pub fn exp_family(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::invalid(
                "alpha",
                format!("{alpha} must be finite and > 0"),
            ));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::invalid(
                "beta",
                format!("{beta} must be finite and > 0"),
            ));
        }
        Ok(BackoffLaw::ExpFamily { alpha, beta })
    }

    pub fn discrete(probs: Vec<f64>) -> Result<Self> {
        Ok(BackoffLaw::DiscretePoints {
            probs: PointProbs::new(probs)?,
        })
    }

    pub fn is_continuous(&self) -> bool {
        !matches!(self, BackoffLaw::DiscretePoints { .. })
    }

    /// Whether the density is bounded on `[0, 1]`.
    pub(crate) fn has_bounded_density(&self) -> bool {
        match self {
            BackoffLaw::ExpFamily { beta, .. } => *beta >= 1.0,
            _ => true,
        }
    }

    fn check_point(&self, x: f64) -> Result<()> {
        if !self.is_continuous() {
            return Err(Error::NotContinuous);
        }
        check_closed("x", x, 0.0, 1.0)
    }

    /// Cumulative distribution function `F(x)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        self.check_point(x)?;
        Ok(self.cdf_unchecked(x))
    }

    /// Density `f(x) = F'(x)`. For `ExpFamily` with `β < 1` the density is
    /// unbounded at 0 and `+inf` is returned there.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.check_point(x)?;
        Ok(self.pdf_unchecked(x))
    }

    /// Inverse CDF at `u ∈ [0, 1]`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !self.is_continuous() {
            return Err(Error::NotContinuous);
        }
        check_closed("u", u, 0.0, 1.0)?;
        Ok(self.quantile_unchecked(u))
    }

    /// Draws one backoff value by inversion, consuming exactly one uniform.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        if !self.is_continuous() {
            return Err(Error::NotContinuous);
        }
        Ok(self.quantile_unchecked(rng.random::<f64>()))
    }

    /// Draws a transmission point for `DiscretePoints`; `None` means silent.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Option<usize>> {
        match self {
            BackoffLaw::DiscretePoints { probs } => Ok(probs.sample_point(rng)),
            _ => Err(Error::invalid(
                "law",
                "sample_point requires discrete points",
            )),
        }
    }

    pub(crate) fn cdf_unchecked(&self, x: f64) -> f64 {
        match *self {
            BackoffLaw::Uniform01 => x,
            BackoffLaw::Power { r } => x.powf(r + 1.0),
            BackoffLaw::ExpFamily { alpha, beta } => {
                let y = alpha * x.powf(beta);
                // (e^y - 1)/(e^α - 1) rescaled by e^-α; stable for small and large α.
                ((y - alpha).exp() * -(-y).exp_m1() / -(-alpha).exp_m1()).clamp(0.0, 1.0)
            }
            BackoffLaw::DiscretePoints { .. } => unreachable!("checked by caller"),
        }
    }

    pub(crate) fn pdf_unchecked(&self, x: f64) -> f64 {
        match *self {
            BackoffLaw::Uniform01 => 1.0,
            BackoffLaw::Power { r } => {
                if r == 0.0 {
                    1.0
                } else {
                    (r + 1.0) * x.powf(r)
                }
            }
            BackoffLaw::ExpFamily { alpha, beta } => {
                if x == 0.0 {
                    return if beta < 1.0 {
                        f64::INFINITY
                    } else if beta == 1.0 {
                        alpha * (-alpha).exp() / -(-alpha).exp_m1()
                    } else {
                        0.0
                    };
                }
                let xb = x.powf(beta);
                alpha * beta * xb / x * (alpha * (xb - 1.0)).exp() / -(-alpha).exp_m1()
            }
            BackoffLaw::DiscretePoints { .. } => unreachable!("checked by caller"),
        }
    }

    pub(crate) fn quantile_unchecked(&self, u: f64) -> f64 {
        match *self {
            BackoffLaw::Uniform01 => u,
            BackoffLaw::Power { r } => u.powf(1.0 / (r + 1.0)),
            BackoffLaw::ExpFamily { alpha, beta } => {
                // x^β = ln(1 + u(e^α - 1)) / α
                let xb = if alpha < 30.0 {
                    (u * alpha.exp_m1()).ln_1p() / alpha
                } else {
                    1.0 + (u + (1.0 - u) * (-alpha).exp()).ln() / alpha
                };
                xb.clamp(0.0, 1.0).powf(1.0 / beta)
            }
            BackoffLaw::DiscretePoints { .. } => unreachable!("checked by caller"),
        }
    }
}
