//! Named solver configurations and the flat `key=value` config file format.
//!
//! ```text
//! # comments and blank lines are ignored
//! name = asdh-tight
//! eps = 1e-6
//! kmax = 2000
//! eta = constant:0.5
//! ```
//!
//! Recognized keys: `name`, `gamma`, `theta`, `rho`, `l`, `u`, `eta_min`,
//! `eta_max`, `eps`, `kmax`, `max_halvings`, `eta`. The `eta` value is
//! `default`, `constant:<v>`, `gaussian:<amplitude>:<width>:<offset>` or a
//! bare number (constant). Unset keys keep their defaults.

use std::path::Path;

use crate::error::{BenchError, ConfigError};
use crate::linesearch::EtaSchedule;
use crate::solver::SolverConfig;

/// A solver configuration under a display name.
#[derive(Debug, Clone)]
pub struct NamedConfig {
    pub name: String,
    pub config: SolverConfig,
}

impl NamedConfig {
    pub fn new(name: impl Into<String>, config: SolverConfig) -> Self {
        Self {
            name: name.into(),
            config,
        }
    }

    /// Default settings (`"asdh"`).
    pub fn asdh() -> Self {
        Self::new("asdh", SolverConfig::default())
    }

    /// Default settings with `eta = 0` (`"asdh-monotone"`).
    pub fn asdh_monotone() -> Self {
        Self::new("asdh-monotone", SolverConfig::monotone())
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "asdh" => Some(Self::asdh()),
            "asdh-monotone" => Some(Self::asdh_monotone()),
            _ => None,
        }
    }
}

/// Resolves a built-in name or reads a config file.
pub fn resolve_config(spec: &str) -> Result<NamedConfig, BenchError> {
    if let Some(c) = NamedConfig::builtin(spec) {
        return Ok(c);
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let default_name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    parse_config(&text, &default_name).map_err(|(line, msg)| BenchError::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    })
}

/// Parses config text; errors carry a 1-based line number.
pub fn parse_config(text: &str, default_name: &str) -> Result<NamedConfig, (usize, String)> {
    let mut cfg = SolverConfig::default();
    let mut name = default_name.to_string();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| (line_no, format!("expected key=value, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let num = || {
            value
                .parse::<f64>()
                .map_err(|_| (line_no, format!("`{key}` expects a number, got `{value}`")))
        };
        let int = || {
            value.parse::<u64>().map_err(|_| {
                (
                    line_no,
                    format!("`{key}` expects an integer, got `{value}`"),
                )
            })
        };
        match key {
            "name" => name = value.to_string(),
            "gamma" => cfg.gamma = num()?,
            "theta" => cfg.theta = num()?,
            "rho" => cfg.rho = num()?,
            "l" => cfg.l = num()?,
            "u" => cfg.u = num()?,
            "eta_min" => cfg.eta_min = num()?,
            "eta_max" => cfg.eta_max = num()?,
            "eps" => cfg.eps = num()?,
            "kmax" | "k_max" => cfg.k_max = int()? as usize,
            "max_halvings" => cfg.max_halvings = int()? as u32,
            "eta" => cfg.eta_schedule = parse_eta(value).map_err(|m| (line_no, m))?,
            other => return Err((line_no, format!("unknown key `{other}`"))),
        }
    }
    cfg.validate()
        .map_err(|ConfigError(m)| (last_line.max(1), m))?;
    Ok(NamedConfig::new(name, cfg))
}

/// Parses an `eta` schedule value.
pub fn parse_eta(value: &str) -> Result<EtaSchedule, String> {
    let bad = || format!("cannot parse eta schedule `{value}`");
    let parts: Vec<&str> = value.split(':').map(str::trim).collect();
    let nums = |xs: &[&str]| -> Result<Vec<f64>, String> {
        xs.iter()
            .map(|s| s.parse::<f64>().map_err(|_| bad()))
            .collect()
    };
    match parts.as_slice() {
        ["default"] => Ok(EtaSchedule::default()),
        ["constant", v] => Ok(EtaSchedule::Constant(nums(&[v])?[0])),
        ["gaussian", rest @ ..] if rest.len() == 3 => {
            let v = nums(rest)?;
            Ok(EtaSchedule::Gaussian {
                amplitude: v[0],
                width: v[1],
                offset: v[2],
            })
        }
        [v] => v.parse().map(EtaSchedule::Constant).map_err(|_| bad()),
        _ => Err(bad()),
    }
}
