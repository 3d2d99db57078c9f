use serde::{Deserialize, Serialize};

use crate::analytics::k_point_optimal_rates;
use crate::distributions::{BackoffLaw, PointProbs};
use crate::error::{check_closed, Error, Result};

fn unit_quantum() -> f64 {
    1.0
}

/// Channel geometry. Times are in units of the sensing quantum `λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkParams {
    pub n_stations: u32,
    /// Carrier-sense quantum; 1 in the usual normalization.
    #[serde(default = "unit_quantum")]
    pub lambda: f64,
    /// Packet duration as a multiple of `λ`.
    pub delta: u32,
}

impl NetworkParams {
    pub fn packet_time(&self) -> f64 {
        self.delta as f64 * self.lambda
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProtocolSpec {
    /// Slotted p-persistence: every `λ` each holder transmits with probability `p`.
    ClassicPPersistent { p: f64 },
    /// Join with probability `p`, then sense at a uniform delay in `[0, T]`.
    ImprovedPPersistent { p: f64, t: f64 },
    /// Transmit at point `i·λ` with probability `p_i`, otherwise stay silent.
    KPointDiscrete { probs: PointProbs },
    /// Sense at `T·X` with `X` drawn from a continuous law.
    ContinuousBackoff { law: BackoffLaw, t: f64 },
}

impl ProtocolSpec {
    /// The k-point protocol with rates maximizing the asymptotic success
    /// probability, scaled to `n` stations.
    pub fn optimal_k_point(k: usize, n: u32) -> Result<Self> {
        Ok(ProtocolSpec::KPointDiscrete {
            probs: k_point_optimal_rates(k)?.to_probs(n)?,
        })
    }

    fn validate(&self) -> Result<()> {
        let check_t = |t: f64| {
            if t >= 0.0 && t.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(
                    "protocol.t",
                    format!("{t} must be finite and >= 0"),
                ))
            }
        };
        match self {
            ProtocolSpec::ClassicPPersistent { p } => check_closed("protocol.p", *p, 0.0, 1.0),
            ProtocolSpec::ImprovedPPersistent { p, t } => {
                check_closed("protocol.p", *p, 0.0, 1.0)?;
                check_t(*t)
            }
            ProtocolSpec::KPointDiscrete { .. } => Ok(()),
            ProtocolSpec::ContinuousBackoff { law, t } => {
                if !law.is_continuous() {
                    return Err(Error::invalid(
                        "protocol.law",
                        "continuous backoff needs a continuous law",
                    ));
                }
                check_t(*t)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TrafficModel {
    /// Every station always has a packet; a fresh one appears as soon as the
    /// previous one leaves the buffer.
    FullBuffer,
    /// Per-station Poisson arrivals. Stations buffer one packet; arrivals while
    /// it is held are dropped.
    Poisson { mean_interarrival: f64 },
}

/// What a sender does with a packet whose transmission collided.
///
/// Senders cannot detect collisions. `Discard` treats the packet as sent and
/// lost; `Retransmit` assumes free, instantaneous feedback and keeps it for
/// the next round.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollisionPolicy {
    #[default]
    Discard,
    Retransmit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub network: NetworkParams,
    pub protocol: ProtocolSpec,
    pub traffic: TrafficModel,
    /// Simulated horizon in `λ` units.
    pub duration: f64,
    pub seed: u64,
    #[serde(default)]
    pub collision_policy: CollisionPolicy,
}

impl SimConfig {
    /// N = 5 stations, δ = 100λ, 10^6 λ horizon, optimal k-point rates.
    pub fn reference(k: usize, traffic: TrafficModel, seed: u64) -> Result<Self> {
        let network = NetworkParams {
            n_stations: 5,
            lambda: 1.0,
            delta: 100,
        };
        Ok(SimConfig {
            protocol: ProtocolSpec::optimal_k_point(k, network.n_stations)?,
            network,
            traffic,
            duration: 1e6,
            seed,
            collision_policy: CollisionPolicy::default(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        let net = &self.network;
        if net.n_stations == 0 {
            return Err(Error::invalid(
                "network.n_stations",
                "at least one station is required",
            ));
        }
        if !(net.lambda > 0.0 && net.lambda.is_finite()) {
            return Err(Error::invalid(
                "network.lambda",
                format!("{} must be positive", net.lambda),
            ));
        }
        if net.delta == 0 {
            return Err(Error::invalid(
                "network.delta",
                "packet duration must be at least 1λ",
            ));
        }
        if !(self.duration.is_finite() && self.duration > net.packet_time()) {
            return Err(Error::invalid(
                "duration",
                format!(
                    "{} must exceed the packet duration {}",
                    self.duration,
                    net.packet_time()
                ),
            ));
        }
        if let TrafficModel::Poisson { mean_interarrival } = self.traffic {
            if !(mean_interarrival > 0.0 && mean_interarrival.is_finite()) {
                return Err(Error::invalid(
                    "traffic.mean_interarrival",
                    format!("{mean_interarrival} must be positive"),
                ));
            }
        }
        self.protocol.validate()
    }
}
