//! Paths, ranges and config loading shared by the subcommands.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use contention::SimConfig;
use serde_json::Value;

/// Relative output paths are resolved against this directory when set.
pub const OUTPUT_DIR_ENV: &str = "CONTENTION_OUTPUT_DIR";

pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Writes to `path` (after env resolution) or stdout when `None`.
pub fn write_output(path: Option<&Path>, contents: &[u8]) -> Result<()> {
    match path {
        Some(p) => {
            let p = resolve_output(p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)
                    .with_context(|| format!("creating {}", parent.display()))?;
            }
            fs::write(&p, contents).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents)?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Parses `a..b` (inclusive), `a..=b` or a single `a`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>> {
    let s = s.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: u32 = lo
        .trim()
        .parse()
        .with_context(|| format!("malformed range `{s}`"))?;
    let hi: u32 = hi
        .trim()
        .parse()
        .with_context(|| format!("malformed range `{s}`"))?;
    if lo > hi {
        bail!("malformed range `{s}`: start exceeds end");
    }
    Ok(lo..=hi)
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

/// Deserializes and validates a config, reporting the offending field path.
pub fn config_from_value(value: Value) -> Result<SimConfig> {
    let config: SimConfig = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        anyhow::anyhow!("invalid config field `{path}`: {}", e.into_inner())
    })?;
    config.validate().context("invalid config")?;
    Ok(config)
}

/// Loads a config file; `seed` replaces any seed in the file.
pub fn load_config(path: &Path, seed: u64) -> Result<SimConfig> {
    let mut value = read_json(path)?;
    let Some(obj) = value.as_object_mut() else {
        bail!("{}: config must be a JSON object", path.display());
    };
    obj.insert("seed".into(), Value::from(seed));
    config_from_value(value).with_context(|| format!("in {}", path.display()))
}
