use std::path::PathBuf;

use clap::Args;
use escape_core::{Error, Result};
use serde::{Deserialize, Serialize};

/// Parameters shared by every subcommand.
#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    /// Integer spectrum, comma separated (`--m=-10,0,10`).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub m: Vec<i64>,
    /// Mantissa bits for the construction.
    #[arg(long, default_value_t = 256)]
    pub bits: u32,
    #[arg(long, default_value_t = 0.5)]
    pub kappa: f64,
    /// Tightness constant.
    #[arg(long = "M", default_value_t = 2.0)]
    pub m_const: f64,
    /// Threshold for visits and components.
    #[arg(long, default_value_t = 0.05)]
    pub delta1: f64,
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
    #[arg(long, default_value_t = 0.3)]
    pub epsilon: f64,
    #[arg(long = "C", default_value_t = 1.0)]
    pub c_const: f64,
    #[arg(long = "C-prime", default_value_t = 12.0)]
    pub c_prime: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output directory; defaults to the artifact directory of `m`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cache root; falls back to `$ESCAPE_CACHE_DIR`, then `./escape-cache`.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m.len() < 2 {
            return Err(Error::Dimension(self.m.len()));
        }
        if !(self.kappa > 0.0 && self.kappa < 1.0) {
            return Err(Error::ParameterConstraint(format!("kappa = {} must lie in (0, 1)", self.kappa)));
        }
        if self.grid == 0 {
            return Err(Error::Invalid("grid must be positive".into()));
        }
        Ok(())
    }

    /// The accprop check needs `kappa < n epsilon`.
    pub fn validate_accprop(&self, d: usize) -> Result<()> {
        let n = d.saturating_sub(1) as f64;
        if !(self.kappa > 0.0 && self.kappa < 1.0) || self.kappa >= n * self.epsilon {
            return Err(Error::ParameterConstraint(format!("kappa = {} must be below n epsilon = {}", self.kappa, n * self.epsilon)));
        }
        Ok(())
    }

    pub fn cache_root(&self) -> PathBuf {
        self.cache
            .clone()
            .or_else(|| std::env::var_os("ESCAPE_CACHE_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("escape-cache"))
    }
}
