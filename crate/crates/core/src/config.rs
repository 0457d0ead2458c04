//! Run configuration: the rate ledger plus execution options, loaded from a
//! TOML key-value file with explicit units in the key names.
//!
//! The rate ledger is the scientific contract of a run, so every rate key
//! is optional-with-default and every fill is reported, keeping configs
//! diffable. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::model::ModelRates;

/// The twelve rate-ledger keys, in ledger order.
pub const RATE_KEYS: [&str; 12] = [
    "gamma_rad_mhz",
    "gamma_isc0_mhz",
    "gamma_isc1_mhz",
    "gamma_s_mhz",
    "beta_s0",
    "gamma_n_mhz",
    "sigma_abs_minus_mhz_per_mw",
    "sigma_abs_zero_mhz_per_mw",
    "sigma_ion_mhz_per_mw",
    "sigma_rec_mhz_per_mw",
    "sigma_stim_mhz_per_mw",
    "sigma_s_mhz_per_mw",
];

/// A fully validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub rates: ModelRates,
    /// Default threshold hypothesis (nm) for commands that take a single
    /// scenario.
    pub lambda_s_nm: f64,
    pub out_dir: PathBuf,
    /// Trajectory sampling stride (µs).
    pub stride_us: f64,
    pub workers: usize,
    pub plot: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            rates: ModelRates::default(),
            lambda_s_nm: 637.0,
            out_dir: PathBuf::from("nvsim-out"),
            stride_us: 0.001,
            workers: 1,
            plot: false,
        }
    }
}

/// A loaded configuration plus the list of rate keys that were filled from
/// defaults (one warning line each).
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedConfig {
    pub config: RunConfig,
    pub filled: Vec<String>,
}

/// Load and validate a configuration file.
pub fn load_config(path: &Path) -> Result<LoadedConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
        origin: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_config(&text, &path.display().to_string())
}

/// Parse configuration text; `origin` names the source in errors.
pub fn parse_config(text: &str, origin: &str) -> Result<LoadedConfig> {
    let err = |msg: String| Error::Config {
        origin: origin.to_string(),
        msg,
    };

    let mut table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| err(e.to_string()))?;

    let mut filled = Vec::new();
    let defaults = ModelRates::default();
    let mut take_rate = |table: &mut toml::Table, key: &str, default: f64| -> Result<f64> {
        match take_f64(table, key, origin)? {
            Some(v) => Ok(v),
            None => {
                filled.push(key.to_string());
                Ok(default)
            }
        }
    };

    let rates = ModelRates {
        gamma_rad: take_rate(&mut table, "gamma_rad_mhz", defaults.gamma_rad)?,
        gamma_isc0: take_rate(&mut table, "gamma_isc0_mhz", defaults.gamma_isc0)?,
        gamma_isc1: take_rate(&mut table, "gamma_isc1_mhz", defaults.gamma_isc1)?,
        gamma_s: take_rate(&mut table, "gamma_s_mhz", defaults.gamma_s)?,
        beta_s0: take_rate(&mut table, "beta_s0", defaults.beta_s0)?,
        gamma_n: take_rate(&mut table, "gamma_n_mhz", defaults.gamma_n)?,
        sigma_abs_minus: take_rate(
            &mut table,
            "sigma_abs_minus_mhz_per_mw",
            defaults.sigma_abs_minus,
        )?,
        sigma_abs_zero: take_rate(
            &mut table,
            "sigma_abs_zero_mhz_per_mw",
            defaults.sigma_abs_zero,
        )?,
        sigma_ion: take_rate(&mut table, "sigma_ion_mhz_per_mw", defaults.sigma_ion)?,
        sigma_rec: take_rate(&mut table, "sigma_rec_mhz_per_mw", defaults.sigma_rec)?,
        sigma_stim: take_rate(&mut table, "sigma_stim_mhz_per_mw", defaults.sigma_stim)?,
        sigma_s: take_rate(&mut table, "sigma_s_mhz_per_mw", defaults.sigma_s)?,
    };
    rates.validate().map_err(|e| err(e.to_string()))?;

    let run_defaults = RunConfig::default();
    let lambda_s_nm = take_f64(&mut table, "lambda_s_nm", origin)?.unwrap_or(run_defaults.lambda_s_nm);
    if !lambda_s_nm.is_finite() || lambda_s_nm <= 0.0 {
        return Err(err(format!("lambda_s_nm must be positive, got {lambda_s_nm}")));
    }
    let stride_us = take_f64(&mut table, "stride_us", origin)?.unwrap_or(run_defaults.stride_us);
    if !stride_us.is_finite() || stride_us <= 0.0 {
        return Err(err(format!("stride_us must be positive, got {stride_us}")));
    }
    let workers = match table.remove("workers") {
        None => run_defaults.workers,
        Some(toml::Value::Integer(i)) if i >= 1 => i as usize,
        Some(other) => {
            return Err(err(format!(
                "workers must be an integer >= 1, got {other}"
            )))
        }
    };
    let out_dir = match table.remove("out_dir") {
        None => run_defaults.out_dir,
        Some(toml::Value::String(s)) => PathBuf::from(s),
        Some(other) => return Err(err(format!("out_dir must be a string, got {other}"))),
    };
    let plot = match table.remove("plot") {
        None => run_defaults.plot,
        Some(toml::Value::Boolean(b)) => b,
        Some(other) => return Err(err(format!("plot must be a boolean, got {other}"))),
    };

    if let Some(unknown) = table.keys().next() {
        return Err(err(format!("unknown key `{unknown}`")));
    }

    Ok(LoadedConfig {
        config: RunConfig {
            rates,
            lambda_s_nm,
            out_dir,
            stride_us,
            workers,
            plot,
        },
        filled,
    })
}

fn take_f64(table: &mut toml::Table, key: &str, origin: &str) -> Result<Option<f64>> {
    match table.remove(key) {
        None => Ok(None),
        Some(toml::Value::Float(f)) => Ok(Some(f)),
        Some(toml::Value::Integer(i)) => Ok(Some(i as f64)),
        Some(other) => Err(Error::Config {
            origin: origin.to_string(),
            msg: format!("{key} must be a number, got {other}"),
        }),
    }
}
