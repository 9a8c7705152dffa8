//! `key = value` run configuration files.
//!
//! Blank lines and everything after `#` are ignored. Values from the file are
//! applied first, then command-line overrides, so the command line wins.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::bc::BoundaryKind;
use crate::driver::{Case, RunConfig};
use crate::error::ConfigError;
use crate::mesh::SplitPattern;

/// Recognised keys. `boundary.<tag>` assigns a kind to a physical tag.
pub const CONFIG_KEYS: &[&str] = &[
    "case",
    "scheme",
    "cfl",
    "alpha",
    "g",
    "f_c",
    "t_end",
    "mesh",
    "nx",
    "ny",
    "split",
    "boundary",
    "boundary.<tag>",
    "interpolation",
    "entropy_fix",
    "output_dir",
    "output_interval",
    "output_times",
    "max_steps",
    "dam_x0",
    "h_left",
    "h_right",
    "hump_a",
    "hump_b",
    "hump_c",
    "basin_length",
    "basin_width",
    "dam_x_min",
    "dam_x_max",
    "breach_y_min",
    "breach_y_max",
];

fn canonical(key: &str) -> Option<String> {
    let key = key.trim();
    let alias = match key {
        "fc" => "f_c",
        "tend" => "t_end",
        "out" => "output_dir",
        k => k,
    };
    if let Some(tag) = alias.strip_prefix("boundary.") {
        return tag.parse::<i32>().ok().map(|t| format!("boundary.{t}"));
    }
    CONFIG_KEYS.contains(&alias).then(|| alias.to_string())
}

struct Entry {
    line: usize,
    key: String,
    value: String,
}

fn parse_value<T: FromStr>(e: &Entry) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    e.value.parse().map_err(|err: T::Err| ConfigError::BadValue {
        line: e.line,
        key: e.key.clone(),
        value: e.value.clone(),
        msg: err.to_string(),
    })
}

fn bad(e: &Entry, msg: &str) -> ConfigError {
    ConfigError::BadValue {
        line: e.line,
        key: e.key.clone(),
        value: e.value.clone(),
        msg: msg.into(),
    }
}

fn apply(cfg: &mut RunConfig, e: &Entry) -> Result<(), ConfigError> {
    let f = || parse_value::<f64>(e);
    match e.key.as_str() {
        "case" => cfg.case = parse_value(e)?,
        "scheme" => cfg.scheme = parse_value(e)?,
        "cfl" => cfg.cfl = f()?,
        "alpha" => cfg.alpha = f()?,
        "g" => cfg.g = f()?,
        "f_c" => cfg.f_c = f()?,
        "t_end" => cfg.t_end = Some(f()?),
        "mesh" => cfg.mesh = Some(PathBuf::from(&e.value)),
        "nx" | "ny" => {
            let n: usize = parse_value(e)?;
            let (nx, ny) = cfg.resolution.unwrap_or((n, n));
            cfg.resolution = Some(if e.key == "nx" { (n, ny) } else { (nx, n) });
        }
        "split" => {
            cfg.split = Some(match e.value.to_ascii_lowercase().as_str() {
                "fixed" => SplitPattern::Fixed,
                "alternating" => SplitPattern::Alternating,
                _ => return Err(bad(e, "expected `fixed` or `alternating`")),
            })
        }
        "boundary" => cfg.boundary = Some(parse_value(e)?),
        "interpolation" => cfg.interpolation = parse_value(e)?,
        "entropy_fix" => cfg.entropy_fix = Some(f()?),
        "output_dir" => cfg.output_dir = Some(PathBuf::from(&e.value)),
        "output_interval" => cfg.output_interval = Some(f()?),
        "output_times" => {
            cfg.output_times = e
                .value
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|err| bad(e, &err.to_string()))?
        }
        "max_steps" => cfg.max_steps = Some(parse_value(e)?),
        "dam_x0" => cfg.geometry.planar.x0 = f()?,
        "h_left" => {
            let h = f()?;
            cfg.geometry.planar.h_left = h;
            cfg.geometry.partial.h_left = h;
        }
        "h_right" => {
            let h = f()?;
            cfg.geometry.planar.h_right = h;
            cfg.geometry.partial.h_right = h;
        }
        "hump_a" => cfg.geometry.hump.a = f()?,
        "hump_b" => cfg.geometry.hump.b = f()?,
        "hump_c" => cfg.geometry.hump.c = f()?,
        "basin_length" => cfg.geometry.partial.length = f()?,
        "basin_width" => cfg.geometry.partial.width = f()?,
        "dam_x_min" => cfg.geometry.partial.dam_x.0 = f()?,
        "dam_x_max" => cfg.geometry.partial.dam_x.1 = f()?,
        "breach_y_min" => cfg.geometry.partial.breach_y.0 = f()?,
        "breach_y_max" => cfg.geometry.partial.breach_y.1 = f()?,
        k => {
            let tag: i32 = k
                .strip_prefix("boundary.")
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| ConfigError::UnknownKey {
                    line: e.line,
                    key: k.to_string(),
                })?;
            cfg.boundary_tags.insert(tag, parse_value::<BoundaryKind>(e)?);
        }
    }
    Ok(())
}

fn read_entries(text: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let key = canonical(key).ok_or_else(|| ConfigError::UnknownKey {
            line,
            key: key.trim().to_string(),
        })?;
        entries.push(Entry {
            line,
            key,
            value: value.trim().to_string(),
        });
    }
    Ok(entries)
}

/// Builds a configuration from file text plus `(key, value)` overrides.
pub fn parse_config_str(text: &str, overrides: &[(String, String)]) -> Result<RunConfig, ConfigError> {
    let mut entries = read_entries(text)?;
    for (key, value) in overrides {
        let key = canonical(key).ok_or_else(|| ConfigError::UnknownOverride(key.clone()))?;
        entries.push(Entry {
            line: 0,
            key,
            value: value.trim().to_string(),
        });
    }
    let case_entry = entries
        .iter()
        .rev()
        .find(|e| e.key == "case")
        .ok_or(ConfigError::Missing("case"))?;
    let mut cfg = RunConfig::new(parse_value::<Case>(case_entry)?);
    for e in &entries {
        apply(&mut cfg, e)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Reads `path` (when given) and applies the overrides on top.
pub fn parse_config(path: Option<&Path>, overrides: &[(String, String)]) -> Result<RunConfig, ConfigError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|source| ConfigError::Io {
            path: p.to_path_buf(),
            source,
        })?,
        None => String::new(),
    };
    parse_config_str(&text, overrides)
}
