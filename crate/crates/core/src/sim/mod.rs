//! Deterministic simulator of a single-hop shared channel.
//!
//! Time advances in contention rounds. A round starts at `T_0`, the moment the
//! channel goes free (or the first packet arrives into an idle channel). Every
//! station holding a packet at `T_0` randomizes a start time according to its
//! protocol; the earliest starter transmits, and anyone who started less than
//! `λ` after it could not hear it in time and collides. Later starters sense
//! the carrier and wait for the next round.

mod config;
mod engine;
mod metrics;
mod round;
mod traffic;

pub use config::{CollisionPolicy, NetworkParams, ProtocolSpec, SimConfig, TrafficModel};
pub use engine::{run_simulation, run_simulation_logged, Event, EventKind};
pub use metrics::SimMetrics;
pub use round::{contention_round, RoundKind, RoundOutcome};
pub use traffic::{generate_arrivals, StationArrivals};
