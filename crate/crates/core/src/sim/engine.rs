use std::fmt;

use serde::{Deserialize, Serialize};

use super::config::{CollisionPolicy, SimConfig};
use super::metrics::SimMetrics;
use super::round::{contention_round, RoundKind};
use super::traffic::{generate_arrivals, StationArrivals};
use crate::error::Result;
use crate::rng::{arrival_stream, protocol_stream, SimRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    TxStart,
    TxSuccess,
    TxCollision,
    ArrivalDropped,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EventKind::TxStart => "tx_start",
            EventKind::TxSuccess => "tx_success",
            EventKind::TxCollision => "tx_collision",
            EventKind::ArrivalDropped => "arrival_dropped",
        })
    }
}

/// Log entry; `TxSuccess`/`TxCollision` mark the end of a transmission.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub time: f64,
    pub station: usize,
    pub kind: EventKind,
}

struct Station {
    arrivals: StationArrivals,
    cursor: usize,
    /// Creation time of the buffered packet; it joins rounds starting at or
    /// after this instant. `None` once the arrival list is exhausted.
    packet: Option<f64>,
}

impl Station {
    fn new(arrivals: StationArrivals) -> Self {
        let mut s = Station {
            arrivals,
            cursor: 0,
            packet: None,
        };
        s.packet = s.next_packet();
        s
    }

    fn next_packet(&mut self) -> Option<f64> {
        match &self.arrivals {
            StationArrivals::Backlogged => Some(0.0),
            StationArrivals::Times(times) => {
                let t = times.get(self.cursor).copied();
                self.cursor += 1;
                t
            }
        }
    }

    /// Empties the buffer at `at`. Returns arrivals that hit the full buffer.
    fn release(&mut self, at: f64, dropped: &mut Vec<f64>) {
        match &self.arrivals {
            StationArrivals::Backlogged => self.packet = Some(at),
            StationArrivals::Times(times) => {
                while let Some(&t) = times.get(self.cursor) {
                    if t >= at {
                        break;
                    }
                    dropped.push(t);
                    self.cursor += 1;
                }
                self.packet = self.next_packet();
            }
        }
    }
}

/// Runs `config` to completion.
///
/// A round whose channel activity would extend past `duration` is not played;
/// the run ends there and `total_time` is the full horizon.
pub fn run_simulation(config: &SimConfig) -> Result<SimMetrics> {
    simulate(config, None)
}

/// Like [`run_simulation`], also returning the event log ordered by
/// `(time, station, kind)`.
pub fn run_simulation_logged(config: &SimConfig) -> Result<(SimMetrics, Vec<Event>)> {
    let mut log = Vec::new();
    let metrics = simulate(config, Some(&mut log))?;
    log.sort_by(|a, b| {
        a.time
            .total_cmp(&b.time)
            .then(a.station.cmp(&b.station))
            .then(a.kind.cmp(&b.kind))
    });
    Ok((metrics, log))
}

fn simulate(config: &SimConfig, mut log: Option<&mut Vec<Event>>) -> Result<SimMetrics> {
    config.validate()?;
    let n = config.network.n_stations as usize;
    let packet = config.network.packet_time();
    let mut rngs: Vec<SimRng> = (0..n).map(|i| protocol_stream(config.seed, i)).collect();
    let mut stations: Vec<Station> = (0..n)
        .map(|i| {
            let mut rng = arrival_stream(config.seed, i);
            Station::new(generate_arrivals(
                &config.traffic,
                config.duration,
                &mut rng,
            ))
        })
        .collect();

    let mut m = SimMetrics {
        total_time: config.duration,
        ..SimMetrics::default()
    };
    let mut dropped = Vec::new();
    let emit = |log: &mut Option<&mut Vec<Event>>, time: f64, station: usize, kind: EventKind| {
        if let Some(log) = log.as_deref_mut() {
            log.push(Event {
                time,
                station,
                kind,
            });
        }
    };

    let mut now = 0.0;
    let mut holders = Vec::with_capacity(n);
    loop {
        holders.clear();
        holders.extend((0..n).filter(|&i| stations[i].packet.is_some_and(|t| t <= now)));
        if holders.is_empty() {
            // Idle channel: the next arrival opens a round.
            let next = stations
                .iter()
                .filter_map(|s| s.packet)
                .min_by(f64::total_cmp);
            match next {
                Some(t) if t < config.duration => {
                    now = t;
                    continue;
                }
                _ => break,
            }
        }

        let round = contention_round(&config.protocol, &config.network, &holders, &mut rngs);
        if now + round.elapsed > config.duration {
            break;
        }
        m.rounds_contended += 1;
        match round.kind {
            RoundKind::Idle => {}
            RoundKind::Success { station, start } => {
                let begin = now + start;
                let end = begin + packet;
                m.n_tx += 1;
                m.n_rx += 1;
                m.rounds_success += 1;
                m.busy_time += packet;
                let created = stations[station].packet.expect("holder has a packet");
                m.delays.push(end - created);
                emit(&mut log, begin, station, EventKind::TxStart);
                emit(&mut log, end, station, EventKind::TxSuccess);
                stations[station].release(end, &mut dropped);
                for t in dropped.drain(..) {
                    emit(&mut log, t, station, EventKind::ArrivalDropped);
                    m.dropped_arrivals += 1;
                }
            }
            RoundKind::Collision { transmitters } => {
                let first = transmitters[0].1;
                let last = transmitters[transmitters.len() - 1].1;
                m.n_tx += transmitters.len() as u64;
                m.collided += transmitters.len() as u64;
                m.busy_time += last - first + packet;
                for (station, start) in transmitters {
                    let begin = now + start;
                    let end = begin + packet;
                    emit(&mut log, begin, station, EventKind::TxStart);
                    emit(&mut log, end, station, EventKind::TxCollision);
                    if config.collision_policy == CollisionPolicy::Discard {
                        stations[station].release(end, &mut dropped);
                        for t in dropped.drain(..) {
                            emit(&mut log, t, station, EventKind::ArrivalDropped);
                            m.dropped_arrivals += 1;
                        }
                    }
                }
            }
        }
        now += round.elapsed;
    }

    m.empirical_p = if m.rounds_contended == 0 {
        0.0
    } else {
        m.rounds_success as f64 / m.rounds_contended as f64
    };
    Ok(m)
}
