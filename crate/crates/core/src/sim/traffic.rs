use rand::Rng;

use super::config::TrafficModel;

/// Packet supply of one station.
#[derive(Debug, Clone, PartialEq)]
pub enum StationArrivals {
    /// A packet is always waiting.
    Backlogged,
    /// Sorted arrival instants within the horizon.
    Times(Vec<f64>),
}

/// Arrival instants in `[0, duration)` for one station.
///
/// Poisson interarrivals are drawn by inversion, `-m ln(1 - u)`, one uniform
/// per arrival plus one for the first arrival past the horizon.
pub fn generate_arrivals<R: Rng + ?Sized>(
    traffic: &TrafficModel,
    duration: f64,
    rng: &mut R,
) -> StationArrivals {
    match *traffic {
        TrafficModel::FullBuffer => StationArrivals::Backlogged,
        TrafficModel::Poisson { mean_interarrival } => {
            let mut times = Vec::with_capacity((duration / mean_interarrival * 1.1) as usize + 8);
            let mut t = 0.0;
            loop {
                t += -mean_interarrival * (-rng.random::<f64>()).ln_1p();
                if t >= duration {
                    break;
                }
                times.push(t);
            }
            StationArrivals::Times(times)
        }
    }
}
