//! Shared fixtures for the criterion benchmarks.

use contention::{SimConfig, TrafficModel};

/// Reference k-point configuration with a shortened horizon.
pub fn reference_config(k: usize, traffic: TrafficModel, duration: f64) -> SimConfig {
    let mut config = SimConfig::reference(k, traffic, 7).expect("reference rates are valid");
    config.duration = duration;
    config
}
