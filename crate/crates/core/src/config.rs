//! Experiment configuration: a single JSON document. Every key is optional
//! and falls back to the default two-operator 28 GHz setup; unknown keys are
//! rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::allocation::{Objective, RateParams, SearchLimits};
use crate::channel::{AntennaModel, ChannelParams};
use crate::error::{Error, Result};
use crate::geometry::Region;
use crate::scenario::Scenario;

/// Revision of the output schemas, written into every artifact header.
pub const SPEC_REVISION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Densities {
    /// Base stations per km², per operator.
    pub bs_per_km2: f64,
    /// Users per km², per operator.
    pub ue_per_km2: f64,
}

impl Default for Densities {
    fn default() -> Self {
        Self {
            bs_per_km2: 30.0,
            ue_per_km2: 200.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Allocator {
    Blind,
    Ub,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AllocationConfig {
    pub allocator: Allocator,
    pub objective: Objective,
    /// Give each user the whole pool rather than an equal share of it.
    pub full_pool_bandwidth: bool,
    pub limits: SearchLimits,
}

impl Default for AllocationConfig {
    fn default() -> Self {
        Self {
            allocator: Allocator::Blind,
            objective: Objective::SumRate,
            full_pool_bandwidth: false,
            limits: SearchLimits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    /// Base-station densities per km², per operator.
    pub densities: Vec<f64>,
    pub bootstrap_resamples: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            densities: vec![5.0, 10.0, 20.0, 30.0, 50.0, 80.0],
            bootstrap_resamples: 500,
        }
    }
}

/// Small instances for the blind-versus-coordinated comparison. Each
/// instance places a uniform number of towers per operator and of users in
/// a square with wraparound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GapConfig {
    pub instances: usize,
    pub max_ues: usize,
    pub max_bs_per_operator: usize,
    pub side_km: f64,
}

impl Default for GapConfig {
    fn default() -> Self {
        Self {
            instances: 200,
            max_ues: 6,
            max_bs_per_operator: 3,
            side_km: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub region: Region,
    pub densities: Densities,
    pub channel: ChannelParams,
    pub antenna: AntennaModel,
    pub scenario: Scenario,
    pub rate: RateParams,
    pub allocation: AllocationConfig,
    pub tx_power_dbm: f64,
    pub noise_figure_db: f64,
    /// Include co-channel interference in the SINR.
    pub interference: bool,
    pub drops: usize,
    pub master_seed: u64,
    pub sweep: SweepConfig,
    pub gap: GapConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            region: Region::default(),
            densities: Densities::default(),
            channel: ChannelParams::default(),
            antenna: AntennaModel::default(),
            scenario: Scenario::default(),
            rate: RateParams::default(),
            allocation: AllocationConfig::default(),
            tx_power_dbm: 30.0,
            noise_figure_db: 7.0,
            interference: true,
            drops: 100,
            master_seed: 1,
            sweep: SweepConfig::default(),
            gap: GapConfig::default(),
        }
    }
}

fn at(location: &'static str) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parameter(m) | Error::Domain(m) => Error::config(location, m),
        other => other,
    }
}

impl ExperimentConfig {
    /// Parses and validates a JSON document.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| {
            Error::config(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json_str(&text).map_err(|e| match e {
            Error::Config { location, message } => Error::Config {
                location: format!("{}: {location}", path.display()),
                message,
            },
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.region.validate().map_err(at("region"))?;
        let d = &self.densities;
        if !(d.bs_per_km2 >= 0.0 && d.bs_per_km2.is_finite()) {
            return Err(Error::config("densities.bs_per_km2", "must be a finite value >= 0"));
        }
        if !(d.ue_per_km2 >= 0.0 && d.ue_per_km2.is_finite()) {
            return Err(Error::config("densities.ue_per_km2", "must be a finite value >= 0"));
        }
        self.channel.validate().map_err(at("channel"))?;
        self.antenna.validate().map_err(at("antenna"))?;
        self.scenario.validate().map_err(at("scenario"))?;
        self.rate.validate().map_err(at("rate"))?;
        let limits = self.allocation.limits;
        if limits.max_ues == 0 || limits.max_bs_per_ue == 0 {
            return Err(Error::config("allocation.limits", "limits must be >= 1"));
        }
        if !self.tx_power_dbm.is_finite() {
            return Err(Error::config("tx_power_dbm", "must be finite"));
        }
        if !self.noise_figure_db.is_finite() {
            return Err(Error::config("noise_figure_db", "must be finite"));
        }
        if self.drops == 0 {
            return Err(Error::config("drops", "must be >= 1"));
        }
        if self.sweep.densities.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
            return Err(Error::config("sweep.densities", "densities must be finite and > 0"));
        }
        if self.sweep.bootstrap_resamples == 0 {
            return Err(Error::config("sweep.bootstrap_resamples", "must be >= 1"));
        }
        let g = &self.gap;
        if g.max_ues == 0 || g.max_bs_per_operator == 0 {
            return Err(Error::config("gap", "max_ues and max_bs_per_operator must be >= 1"));
        }
        if !(g.side_km > 0.0 && g.side_km.is_finite()) {
            return Err(Error::config("gap.side_km", "must be > 0"));
        }
        Ok(())
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Hex SHA-256 of the compact JSON serialization.
    pub fn config_hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(canonical.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
