//! A single contention round, independent of traffic and bookkeeping.

use rand::Rng;

use super::config::{NetworkParams, ProtocolSpec};

#[derive(Debug, Clone, PartialEq)]
pub enum RoundKind {
    /// Nobody transmitted.
    Idle,
    /// `start` is the offset from the round start `T_0`.
    Success { station: usize, start: f64 },
    /// Overlapping transmitters with their start offsets, earliest first.
    Collision { transmitters: Vec<(usize, f64)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundOutcome {
    pub kind: RoundKind,
    /// Time from `T_0` until the channel is free again.
    pub elapsed: f64,
}

/// Plays one round among `holders` (station ids, ascending).
///
/// `rngs[id]` is the protocol stream of station `id`. Each holder consumes a
/// fixed number of draws regardless of the outcome: one for the k-point,
/// classic and continuous protocols, two (`ξ` then `η`) for improved
/// p-persistence.
pub fn contention_round<R: Rng>(
    protocol: &ProtocolSpec,
    net: &NetworkParams,
    holders: &[usize],
    rngs: &mut [R],
) -> RoundOutcome {
    let lambda = net.lambda;
    let packet = net.packet_time();
    match protocol {
        ProtocolSpec::KPointDiscrete { probs } => {
            let mut earliest: Option<usize> = None;
            let mut at_earliest = Vec::new();
            for &id in holders {
                let Some(point) = probs.sample_point(&mut rngs[id]) else {
                    continue;
                };
                match earliest {
                    Some(e) if point > e => {}
                    Some(e) if point == e => at_earliest.push(id),
                    _ => {
                        earliest = Some(point);
                        at_earliest.clear();
                        at_earliest.push(id);
                    }
                }
            }
            match earliest {
                None => RoundOutcome {
                    kind: RoundKind::Idle,
                    elapsed: probs.len() as f64 * lambda,
                },
                Some(point) => {
                    let start = point as f64 * lambda;
                    let transmitters = at_earliest.into_iter().map(|id| (id, start)).collect();
                    resolved(transmitters, packet)
                }
            }
        }
        ProtocolSpec::ClassicPPersistent { p } => {
            let transmitters: Vec<(usize, f64)> = holders
                .iter()
                .filter(|&&id| rngs[id].random::<f64>() < *p)
                .map(|&id| (id, 0.0))
                .collect();
            if transmitters.is_empty() {
                RoundOutcome {
                    kind: RoundKind::Idle,
                    elapsed: lambda,
                }
            } else {
                resolved(transmitters, packet)
            }
        }
        ProtocolSpec::ImprovedPPersistent { p, t } => {
            let starts = holders
                .iter()
                .filter_map(|&id| {
                    let rng = &mut rngs[id];
                    let xi: f64 = rng.random();
                    let eta = t * rng.random::<f64>();
                    (xi < *p).then_some((id, eta))
                })
                .collect();
            continuous(starts, lambda, packet, *t)
        }
        ProtocolSpec::ContinuousBackoff { law, t } => {
            let starts = holders
                .iter()
                .map(|&id| {
                    let x = law.sample(&mut rngs[id]).expect("validated continuous law");
                    (id, t * x)
                })
                .collect();
            continuous(starts, lambda, packet, *t)
        }
    }
}

/// Earliest starter wins unless someone else started within `λ` of it.
fn continuous(mut starts: Vec<(usize, f64)>, lambda: f64, packet: f64, t: f64) -> RoundOutcome {
    if starts.is_empty() {
        return RoundOutcome {
            kind: RoundKind::Idle,
            elapsed: t.max(lambda),
        };
    }
    starts.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    let first = starts[0].1;
    starts.retain(|&(_, s)| s < first + lambda);
    resolved(starts, packet)
}

fn resolved(transmitters: Vec<(usize, f64)>, packet: f64) -> RoundOutcome {
    let last = transmitters
        .iter()
        .map(|t| t.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let elapsed = last + packet;
    let kind = if let [(station, start)] = transmitters[..] {
        RoundKind::Success { station, start }
    } else {
        RoundKind::Collision { transmitters }
    };
    RoundOutcome { kind, elapsed }
}
