//! Contention resolution on a single-hop shared radio channel.
//!
//! The crate bundles three views of the same family of protocols:
//!
//! * [`analytics`]: closed-form success probabilities, the `M_k` recurrence,
//!   optimal k-point transmission rates, order-statistic gap probabilities and
//!   the exponential-family backoff optimizer.
//! * [`oracle`]: exact enumeration and Monte Carlo estimators that check every
//!   closed form independently.
//! * [`sim`]: a deterministic discrete-event simulator of the channel running
//!   classic/improved p-persistent CSMA, the k-point discrete protocol and
//!   continuous non-uniform backoff under full-buffer or Poisson traffic.
//!
//! Backoff laws shared by all three live in [`distributions`].
//!
//! Time is measured in units of the carrier-sense quantum λ unless a function
//! takes λ explicitly.

pub mod analytics;
pub mod distributions;
mod error;
pub mod optimize;
pub mod oracle;
pub mod quadrature;
pub mod rng;
pub mod sim;

pub use analytics::{ExpFamilyOptimum, MSequence, RateVector, TwoPointOptimum};
pub use distributions::{BackoffLaw, PointProbs};
pub use error::{Error, Result};
pub use oracle::OracleEstimate;
pub use sim::{
    run_simulation, CollisionPolicy, NetworkParams, ProtocolSpec, SimConfig, SimMetrics,
    TrafficModel,
};
