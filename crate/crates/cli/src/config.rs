//! Flat key=value experiment-config files.
//!
//! One assignment per line; `#` starts a comment; list values may be
//! wrapped in brackets. Keys mirror the experiment-config fields:
//!
//! ```text
//! # desk-scale comparison campaign
//! algorithms = [rmabc, meabc]
//! problems   = [f3, f6]
//! runs       = 30
//! base_seed  = 0
//! budget     = 200000
//! np         = 50
//! limit      = 1500
//! q          = 0.01
//! ```

use std::path::Path;

use beecolony::error::{Error, Result};
use beecolony::harness::ExperimentConfig;

fn parse_list(value: &str) -> Vec<String> {
    value
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(str::trim)
        .filter(|item| !item.is_empty())
        .map(str::to_string)
        .collect()
}

fn parse_scalar<T: std::str::FromStr>(
    path: &Path,
    line: usize,
    key: &str,
    value: &str,
) -> Result<T> {
    value.parse().map_err(|_| {
        Error::InvalidParameter(format!(
            "{}:{line}: invalid value {value:?} for key \"{key}\"",
            path.display()
        ))
    })
}

/// Applies every assignment in the file on top of `config`. Later lines
/// override earlier ones; errors carry the file name and line number.
pub fn apply_config_file(config: &mut ExperimentConfig, path: &Path) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::InvalidParameter(format!(
                "{}:{line_no}: expected `key = value`, got {line:?}",
                path.display()
            )));
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "algorithms" => config.algorithms = parse_list(value),
            "problems" => config.problems = parse_list(value),
            "runs" => config.runs = parse_scalar(path, line_no, key, value)?,
            "base_seed" => config.base_seed = parse_scalar(path, line_no, key, value)?,
            "budget" => config.budget = parse_scalar(path, line_no, key, value)?,
            "np" => config.np = parse_scalar(path, line_no, key, value)?,
            "limit" => config.limit = parse_scalar(path, line_no, key, value)?,
            "q" => config.q = parse_scalar(path, line_no, key, value)?,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "{}:{line_no}: unknown key {key:?} (valid: algorithms, problems, runs, \
                     base_seed, budget, np, limit, q)",
                    path.display()
                )))
            }
        }
    }
    Ok(())
}
