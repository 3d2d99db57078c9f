//! `simulate`: one run, one JSON record.

use std::time::Instant;

use anyhow::Result;
use contention::sim::{run_simulation, run_simulation_logged, Event};
use contention::SimConfig;

use crate::record::{analytic_reference, ExperimentRecord};

pub fn simulate(
    config: &SimConfig,
    with_log: bool,
    timing: bool,
) -> Result<(ExperimentRecord, Option<Vec<Event>>)> {
    let started = Instant::now();
    let (metrics, log) = if with_log {
        let (m, log) = run_simulation_logged(config)?;
        (m, Some(log))
    } else {
        (run_simulation(config)?, None)
    };
    let record = ExperimentRecord {
        config: config.clone(),
        metrics,
        analytic_reference: analytic_reference(config),
        wall_time: timing.then(|| started.elapsed().as_secs_f64()),
    };
    Ok((record, log))
}

pub fn record_json(record: &ExperimentRecord) -> Result<String> {
    let mut s = serde_json::to_string_pretty(record)?;
    s.push('\n');
    Ok(s)
}

pub fn event_log_csv(events: &[Event]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["time", "station", "event"])?;
    for e in events {
        w.write_record([
            e.time.to_string(),
            e.station.to_string(),
            e.kind.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
