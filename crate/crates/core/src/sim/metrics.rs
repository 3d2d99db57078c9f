use serde::{Deserialize, Serialize};

/// Outcome counters of one simulation run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SimMetrics {
    /// Packet transmissions started (every station in a collision counts).
    pub n_tx: u64,
    /// Collision-free receptions.
    pub n_rx: u64,
    /// Transmissions lost to collisions; `n_tx = n_rx + collided`.
    pub collided: u64,
    /// Measure of the union of all transmission intervals.
    pub busy_time: f64,
    pub total_time: f64,
    /// Creation-to-delivery time of every delivered packet.
    pub delays: Vec<f64>,
    /// Rounds in which at least one station held a packet.
    pub rounds_contended: u64,
    /// Those of them that ended in a single clean transmission.
    pub rounds_success: u64,
    pub empirical_p: f64,
    /// Poisson arrivals lost because the station buffer was occupied.
    pub dropped_arrivals: u64,
}

impl SimMetrics {
    pub fn occupancy(&self) -> f64 {
        if self.total_time > 0.0 {
            self.busy_time / self.total_time
        } else {
            0.0
        }
    }

    /// Mean delivery delay, `None` when nothing was delivered.
    pub fn mean_delay(&self) -> Option<f64> {
        (!self.delays.is_empty())
            .then(|| self.delays.iter().sum::<f64>() / self.delays.len() as f64)
    }

    /// `N_RX / N_TX`.
    pub fn success_ratio(&self) -> f64 {
        if self.n_tx == 0 {
            0.0
        } else {
            self.n_rx as f64 / self.n_tx as f64
        }
    }

    /// Standard error of `empirical_p` as a Bernoulli frequency.
    pub fn empirical_p_std_error(&self) -> f64 {
        if self.rounds_contended == 0 {
            return 0.0;
        }
        (self.empirical_p * (1.0 - self.empirical_p) / self.rounds_contended as f64).sqrt()
    }
}
