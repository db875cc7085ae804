//! Declarative sweep configuration: a single TOML tree with dB-style
//! units spelled out per field. Everything is optional; omitted fields
//! take the reference-scenario defaults. Internal math is all linear.

use crate::sweep::{Axis, Engine, Metric, SweepSpec, Variant};
use duoris_core::analytic::{PowerOverheads, QuadConfig};
use duoris_core::system::{db_to_linear, dbm_to_mw, NoiseNormModel, SystemConfig};
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config schema error: {0}")]
    Schema(String),
    #[error("invalid config: {0}")]
    Invariant(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub base: BaseSection,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub quadrature: QuadSection,
    #[serde(default, rename = "power-budget")]
    pub power_budget: BudgetSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSection {
    /// Active-surface elements (M).
    pub aris_elems: Option<usize>,
    /// Passive-surface elements (N).
    pub pris_elems: Option<usize>,
    pub beta: Option<f64>,
    pub a_n: Option<f64>,
    pub a_m: Option<f64>,
    pub kappa_db: Option<f64>,
    pub m_na: Option<f64>,
    pub omega_na: Option<f64>,
    pub sigma2_dbm: Option<f64>,
    pub sigma_a2_dbm: Option<f64>,
    pub omega_ri_db: Option<f64>,
    pub alpha: Option<f64>,
    pub eta_db: Option<f64>,
    pub d_h1: Option<f64>,
    pub d_h2: Option<f64>,
    pub d_g1: Option<f64>,
    pub d_gn: Option<f64>,
    pub d_gm: Option<f64>,
    pub r_n: Option<f64>,
    pub r_m: Option<f64>,
    /// "constant-norm" (constant M·Ω_na) or "exact" (per-trial norm).
    pub noise_norm: Option<String>,
    pub conditioned_dn_rate: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// "transmit-power-dbm" or "total-power-dbm".
    pub axis: Option<String>,
    pub points_dbm: Option<Vec<f64>>,
    pub metrics: Option<Vec<String>>,
    pub variants: Option<Vec<String>>,
    pub engines: Option<Vec<String>>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadSection {
    pub u: Option<usize>,
    pub i: Option<usize>,
    pub p: Option<usize>,
    pub k: Option<usize>,
    pub mu_b: Option<f64>,
    pub eps_2f1: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSection {
    pub p_aris_dbm: Option<f64>,
    pub p_sw_dbm: Option<f64>,
    pub p_dc_dbm: Option<f64>,
}

/// The calibrated default of the per-hop path-loss constant, in dB.
pub const DEFAULT_ETA_DB: f64 = 3.5;

/// Parse and validate a config file into a fully resolved sweep spec.
pub fn load_config(path: &Path) -> Result<SweepSpec, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_config_str(&text)
}

/// Same as [`load_config`], from an in-memory string.
pub fn load_config_str(text: &str) -> Result<SweepSpec, ConfigError> {
    let file: ConfigFile =
        toml::from_str(text).map_err(|e| ConfigError::Schema(e.to_string()))?;
    resolve(file)
}

pub fn resolve(file: ConfigFile) -> Result<SweepSpec, ConfigError> {
    let b = &file.base;
    let mut cfg = SystemConfig::default();
    if let Some(v) = b.aris_elems {
        cfg.aris_elems = v;
    }
    if let Some(v) = b.pris_elems {
        cfg.pris_elems = v;
    }
    if let Some(v) = b.beta {
        cfg.beta = v;
    }
    if let Some(v) = b.a_n {
        cfg.a_n = v;
    }
    if let Some(v) = b.a_m {
        cfg.a_m = v;
    }
    if let Some(v) = b.kappa_db {
        cfg.fading.kappa = db_to_linear(v);
    }
    if let Some(v) = b.m_na {
        cfg.fading.m_na = v;
    }
    if let Some(v) = b.omega_na {
        cfg.fading.omega_na = v;
    }
    if let Some(v) = b.sigma2_dbm {
        cfg.sigma2_mw = dbm_to_mw(v);
    }
    if let Some(v) = b.sigma_a2_dbm {
        cfg.sigma_a2_mw = dbm_to_mw(v);
    }
    if let Some(v) = b.omega_ri_db {
        cfg.omega_ri = db_to_linear(v);
    }
    if let Some(v) = b.alpha {
        cfg.alpha = v;
    }
    if let Some(v) = b.eta_db {
        cfg.eta = db_to_linear(v);
    }
    if let Some(v) = b.d_h1 {
        cfg.d_h1 = v;
    }
    if let Some(v) = b.d_h2 {
        cfg.d_h2 = v;
    }
    if let Some(v) = b.d_g1 {
        cfg.d_g1 = v;
    }
    if let Some(v) = b.d_gn {
        cfg.d_gn = v;
    }
    if let Some(v) = b.d_gm {
        cfg.d_gm = v;
    }
    if let Some(v) = b.r_n {
        cfg.r_n = v;
    }
    if let Some(v) = b.r_m {
        cfg.r_m = v;
    }
    if let Some(v) = &b.noise_norm {
        cfg.noise_norm = match v.as_str() {
            "constant-norm" => NoiseNormModel::ConstantNorm,
            "exact" => NoiseNormModel::Exact,
            other => {
                return Err(ConfigError::Invariant(format!(
                    "base.noise_norm: unknown value {other:?} (expected \"constant-norm\" or \"exact\")"
                )))
            }
        };
    }
    if let Some(v) = b.conditioned_dn_rate {
        cfg.conditioned_dn_rate = v;
    }
    cfg.validate()
        .map_err(|e| ConfigError::Invariant(e.to_string()))?;

    let s = &file.sweep;
    let axis = match s.axis.as_deref() {
        None | Some("transmit-power-dbm") => Axis::TransmitPowerDbm,
        Some("total-power-dbm") => Axis::TotalPowerDbm,
        Some(other) => {
            return Err(ConfigError::Invariant(format!(
                "sweep.axis: unknown value {other:?}"
            )))
        }
    };
    let points = s
        .points_dbm
        .clone()
        .unwrap_or_else(|| (0..=6).map(|i| 5.0 * i as f64).collect());
    if points.is_empty() {
        return Err(ConfigError::Invariant(
            "sweep.points_dbm must be nonempty".to_string(),
        ));
    }
    if !points.windows(2).all(|w| w[0] < w[1]) {
        return Err(ConfigError::Invariant(
            "sweep.points_dbm must be strictly increasing".to_string(),
        ));
    }
    let metrics = match &s.metrics {
        None => vec![Metric::Outage],
        Some(names) => names
            .iter()
            .map(|n| Metric::parse(n))
            .collect::<Result<Vec<_>, _>>()
            .map_err(ConfigError::Invariant)?,
    };
    let variants = match &s.variants {
        None => vec![Variant::NomaPsic, Variant::NomaIpsic, Variant::Oma],
        Some(names) => names
            .iter()
            .map(|n| Variant::parse(n))
            .collect::<Result<Vec<_>, _>>()
            .map_err(ConfigError::Invariant)?,
    };
    let engines = match &s.engines {
        None => vec![Engine::MonteCarlo, Engine::Analytic],
        Some(names) => names
            .iter()
            .map(|n| Engine::parse(n))
            .collect::<Result<Vec<_>, _>>()
            .map_err(ConfigError::Invariant)?,
    };
    if metrics.is_empty() || variants.is_empty() || engines.is_empty() {
        return Err(ConfigError::Invariant(
            "sweep needs at least one metric, variant, and engine".to_string(),
        ));
    }

    let q = &file.quadrature;
    let qc = QuadConfig {
        u_order: q.u.unwrap_or(500),
        i_order: q.i.unwrap_or(500),
        p_order: q.p.unwrap_or(500),
        k_order: q.k.unwrap_or(100),
        mu_b: q.mu_b,
        eps_2f1: q.eps_2f1.unwrap_or(1e-6),
    };

    let pb = &file.power_budget;
    let overheads = PowerOverheads {
        p_aris_mw: dbm_to_mw(pb.p_aris_dbm.unwrap_or(10.0)),
        p_sw_mw: dbm_to_mw(pb.p_sw_dbm.unwrap_or(5.0)),
        p_dc_mw: dbm_to_mw(pb.p_dc_dbm.unwrap_or(5.0)),
    };

    Ok(SweepSpec {
        label: None,
        base: cfg,
        axis,
        points,
        metrics,
        variants,
        engines,
        trials: s.trials.unwrap_or(1_000_000),
        seed: s.seed.unwrap_or(1),
        qc,
        overheads,
    })
}
