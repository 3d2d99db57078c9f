use contention::analytics::{clw_success_prob, gap_prob_quadrature, k_point_success_exact};
use contention::{ProtocolSpec, SimConfig, SimMetrics};
use serde::{Deserialize, Serialize};

/// One simulation run with its inputs and the matching closed-form value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub config: SimConfig,
    pub metrics: SimMetrics,
    /// Single-round success probability when every station contends.
    pub analytic_reference: Option<f64>,
    /// Seconds of wall-clock time; only recorded on request so that repeated
    /// runs stay byte-identical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

/// Probability that a round with all `N` stations contending ends in a
/// single clean transmission.
pub fn analytic_reference(config: &SimConfig) -> Option<f64> {
    let n = config.network.n_stations;
    let lambda = config.network.lambda;
    match &config.protocol {
        ProtocolSpec::KPointDiscrete { probs } => k_point_success_exact(n, probs.as_slice()).ok(),
        ProtocolSpec::ClassicPPersistent { p } => clw_success_prob(n, *p, lambda, 0.0).ok(),
        ProtocolSpec::ImprovedPPersistent { p, t } => clw_success_prob(n, *p, lambda, *t).ok(),
        ProtocolSpec::ContinuousBackoff { law, t } => {
            if n == 1 {
                Some(1.0)
            } else if *t <= lambda {
                Some(0.0)
            } else {
                gap_prob_quadrature(law, lambda / t, n).ok()
            }
        }
    }
}
