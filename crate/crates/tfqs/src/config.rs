//! Plain-text run configuration.
//!
//! A document is a list of `key=value` lines; `#` starts a comment and
//! blank lines are ignored.  Parsing is strict: unknown or repeated keys
//! are errors, so a stale document fails loudly instead of silently
//! running with defaults.
//!
//! Two shapes are accepted.  A preset document names a canned study:
//!
//! ```text
//! preset = fig9
//! out = results/
//! ```
//!
//! An explicit document spells out the sweep; `variant`, `l` and `beta`
//! are required and everything else has a default:
//!
//! ```text
//! variant = naber1, new    # comma lists sweep the axis
//! l = 2
//! beta = 0.2, 0.6, 1
//! lambda = 0.5             # default 0.5
//! n = 50                   # default 50
//! c0 = 0.5                 # default 0.5
//! tmax = 20                # default 20
//! steps = 400              # default 400
//! observables = total, excited   # add rho_diag for density-matrix columns
//! plot = excited           # y axis of the SVG, default excited
//! csv = run.csv
//! svg = run.svg
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use thiserror::Error;

use crate::model::QubitCount;
use crate::propagate::TfseVariant;
use crate::sweep::{
    CurveAxis, FigurePreset, Observable, PresetRun, SweepConfig, YField, DEFAULT_T_MAX,
    DEFAULT_T_STEPS,
};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("config: {0}")]
    Validation(String),
}

/// A parsed document: the sweeps to execute plus where their artifacts go.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub runs: Vec<PresetRun>,
    /// CSV file for a single-run document.
    pub csv: Option<PathBuf>,
    /// SVG file for a single-run document.
    pub svg: Option<PathBuf>,
    /// Directory receiving `<label>.csv` and `<label>.svg` per run.
    pub out: Option<PathBuf>,
}

const AXIS_KEYS: [&str; 9] =
    ["variant", "l", "beta", "lambda", "n", "c0", "tmax", "steps", "observables"];
const KNOWN_KEYS: [&str; 14] = [
    "preset", "variant", "l", "qubits", "beta", "lambda", "n", "c0", "tmax", "steps",
    "observables", "plot", "csv", "svg",
];

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let entries = scan_entries(text)?;
    let keyed = |key: &str| entries.get(key).map(|(_, v)| v.as_str());

    let csv = keyed("csv").map(PathBuf::from);
    let svg = keyed("svg").map(PathBuf::from);
    let out = keyed("out").map(PathBuf::from);

    let runs = if let Some((line, name)) = entries.get("preset") {
        for key in AXIS_KEYS.iter().chain(["qubits", "plot"].iter()) {
            if let Some((other, _)) = entries.get(*key) {
                return Err(ConfigError::Parse {
                    line: *other,
                    message: format!("`{key}` cannot be combined with `preset`"),
                });
            }
        }
        let preset = FigurePreset::from_name(name).ok_or_else(|| ConfigError::Parse {
            line: *line,
            message: format!("unknown preset `{name}`; expected fig1 through fig13"),
        })?;
        preset.runs()
    } else {
        vec![explicit_run(&entries)?]
    };

    if runs.len() > 1 && (csv.is_some() || svg.is_some()) {
        return Err(ConfigError::Validation(format!(
            "this document expands to {} runs; use `out` for per-run files instead of `csv`/`svg`",
            runs.len()
        )));
    }
    Ok(RunConfig { runs, csv, svg, out })
}

type Entries = BTreeMap<&'static str, (usize, String)>;

fn scan_entries(text: &str) -> Result<Entries, ConfigError> {
    let mut entries = Entries::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| ConfigError::Parse {
            line,
            message: format!("expected `key = value`, got `{body}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let canonical = match key {
            "qubits" => "l",
            "out" => "out",
            other => KNOWN_KEYS
                .iter()
                .copied()
                .find(|k| *k == other)
                .ok_or_else(|| ConfigError::Parse {
                    line,
                    message: format!("unknown key `{key}`"),
                })?,
        };
        if value.is_empty() {
            return Err(ConfigError::Parse { line, message: format!("`{key}` has no value") });
        }
        if let Some((first, _)) = entries.get(canonical) {
            return Err(ConfigError::Parse {
                line,
                message: format!("`{key}` already set on line {first}"),
            });
        }
        entries.insert(canonical, (line, value.to_string()));
    }
    Ok(entries)
}

fn explicit_run(entries: &Entries) -> Result<PresetRun, ConfigError> {
    let require = |key: &str| {
        entries.get(key).ok_or_else(|| ConfigError::Validation(format!("missing required key `{key}`")))
    };

    let (line, value) = require("variant")?;
    let variants = split_list(value)
        .map(|name| {
            TfseVariant::from_cli_name(name).ok_or_else(|| ConfigError::Parse {
                line: *line,
                message: format!("unknown variant `{name}`; expected naber1, naber2, xgf or new"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let (line, value) = require("l")?;
    let qubits = value
        .parse::<u8>()
        .ok()
        .and_then(|v| QubitCount::from_u8(v).ok())
        .ok_or_else(|| ConfigError::Parse {
            line: *line,
            message: format!("`l` must be 1 or 2, got `{value}`"),
        })?;

    let beta_values = float_list(entries, "beta").transpose()?.ok_or_else(|| {
        ConfigError::Validation("missing required key `beta`".into())
    })?;
    let lambda_values = float_list(entries, "lambda").transpose()?.unwrap_or(vec![0.5]);
    let c0_values = float_list(entries, "c0").transpose()?.unwrap_or(vec![0.5]);
    let n_values = match entries.get("n") {
        Some((line, value)) => split_list(value)
            .map(|item| parse_scalar::<u32>(*line, "n", item))
            .collect::<Result<Vec<_>, _>>()?,
        None => vec![50],
    };
    let t_max = match entries.get("tmax") {
        Some((line, value)) => parse_scalar::<f64>(*line, "tmax", value)?,
        None => DEFAULT_T_MAX,
    };
    let t_steps = match entries.get("steps") {
        Some((line, value)) => parse_scalar::<usize>(*line, "steps", value)?,
        None => DEFAULT_T_STEPS,
    };
    let observables = match entries.get("observables") {
        Some((line, value)) => split_list(value)
            .map(|name| {
                Observable::from_name(name).ok_or_else(|| ConfigError::Parse {
                    line: *line,
                    message: format!(
                        "unknown observable `{name}`; expected total, excited or rho_diag"
                    ),
                })
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => vec![Observable::Total, Observable::Excited],
    };
    let y = match entries.get("plot") {
        Some((line, value)) => match value.as_str() {
            "total" => YField::Total,
            "excited" => YField::Excited,
            other => {
                return Err(ConfigError::Parse {
                    line: *line,
                    message: format!("`plot` must be total or excited, got `{other}`"),
                })
            }
        },
        None => YField::Excited,
    };

    let config = SweepConfig {
        variants,
        qubits,
        beta_values,
        lambda_values,
        n_values,
        c0_values,
        t_max,
        t_steps,
        observables,
    }
    .canonical()
    .map_err(|e| ConfigError::Validation(e.to_string()))?;

    // one curve per value of the first axis that actually sweeps
    let curves = if config.beta_values.len() > 1 {
        CurveAxis::Beta
    } else if config.lambda_values.len() > 1 {
        CurveAxis::Lambda
    } else if config.n_values.len() > 1 {
        CurveAxis::PhotonNumber
    } else if config.c0_values.len() > 1 {
        CurveAxis::Concurrence
    } else {
        CurveAxis::Beta
    };

    Ok(PresetRun { label: "run".into(), config, curves, y })
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|item| !item.is_empty())
}

fn float_list(entries: &Entries, key: &'static str) -> Option<Result<Vec<f64>, ConfigError>> {
    entries.get(key).map(|(line, value)| {
        split_list(value)
            .map(|item| parse_scalar::<f64>(*line, key, item))
            .collect()
    })
}

fn parse_scalar<T: std::str::FromStr>(
    line: usize,
    key: &str,
    value: &str,
) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::Parse {
        line,
        message: format!("`{key}`: cannot parse `{value}`"),
    })
}
