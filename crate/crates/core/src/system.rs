//! Scenario parameterization, link budget, and instantaneous SINR/SNR
//! expressions for the NOMA (pSIC/ipSIC) and OMA schemes.

use crate::channel::{FadingParams, TrialDraw};
use thiserror::Error;

/// AF relay gain; fixed at 1 and excluded from configuration.
pub const RELAY_GAIN: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("invalid config field {field}: {msg}")]
    Invalid { field: &'static str, msg: String },
}

/// Non-fatal conditions worth surfacing to the operator.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigWarning {
    /// a_m ≤ γ_th_m · a_n: the distant user's decode constraint can never
    /// be met and both users sit in permanent outage. The regime is
    /// analyzable, so it warns instead of failing.
    AllocationForcesOutage { a_m: f64, threshold: f64 },
}

/// Successive interference cancellation quality at the nearby user.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sic {
    /// Perfect cancellation (ϖ = 0).
    Perfect,
    /// Imperfect cancellation: residual term ϖ = 1 with power Ω_RI.
    Imperfect,
}

/// How the active-surface thermal-noise norm ‖g_φ^H Φ_a‖² enters the
/// SINR denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseNormModel {
    /// The constant M·Ω_na the closed forms use.
    ConstantNorm,
    /// The per-trial norm with its one-hop path loss, η d_gφ^{-α} Σ|g|².
    Exact,
}

/// Which NOMA user a metric refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum User {
    /// Nearby user (smaller power share, runs SIC).
    Near,
    /// Distant user (larger power share).
    Far,
}

/// Full scenario parameterization. Distances in meters, powers in mW,
/// fading and path-loss factors dimensionless linear.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Active-surface element count M (user side).
    pub aris_elems: usize,
    /// Passive-surface element count N (BS side).
    pub pris_elems: usize,
    /// Active-surface amplification β (≥ 1; > 1 for a truly active
    /// surface, exactly 1 for the double-passive baseline).
    pub beta: f64,
    /// Power allocation of the nearby user.
    pub a_n: f64,
    /// Power allocation of the distant user.
    pub a_m: f64,
    /// BS transmit power (mW).
    pub p_s_mw: f64,
    /// Receiver AWGN power (mW).
    pub sigma2_mw: f64,
    /// Active-surface thermal noise power (mW).
    pub sigma_a2_mw: f64,
    /// Residual-interference variance Ω_RI (dimensionless linear).
    pub omega_ri: f64,
    pub fading: FadingParams,
    pub d_h1: f64,
    pub d_h2: f64,
    pub d_g1: f64,
    pub d_gn: f64,
    pub d_gm: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Path-loss constant (dimensionless linear, per hop).
    pub eta: f64,
    /// Target rate of the nearby user (BPCU).
    pub r_n: f64,
    /// Target rate of the distant user (BPCU).
    pub r_m: f64,
    pub sic: Sic,
    pub noise_norm: NoiseNormModel,
    /// Gate the nearby user's Monte Carlo rate on successful detection
    /// of the distant user's signal (off by default; the closed forms
    /// use the unconditional expectation).
    pub conditioned_dn_rate: bool,
}

impl Default for SystemConfig {
    /// Reference scenario: 3+3 elements, β = 2.5, a_n/a_m = 0.2/0.8,
    /// κ = -5 dB, m = 1, rates 2 BPCU, σ_a² = -80 dBm, σ² = -70 dBm,
    /// Ω_RI = -80 dB, α = 2, distances 10/10/20/20/80 m, and the
    /// calibrated path-loss constant [`DEFAULT_ETA`].
    fn default() -> Self {
        SystemConfig {
            aris_elems: 3,
            pris_elems: 3,
            beta: 2.5,
            a_n: 0.2,
            a_m: 0.8,
            p_s_mw: 100.0,
            sigma2_mw: 1e-7,
            sigma_a2_mw: 1e-8,
            omega_ri: 1e-8,
            fading: FadingParams {
                kappa: 0.316_227_766_016_837_94,
                m_na: 1.0,
                omega_na: 1.0,
            },
            d_h1: 10.0,
            d_h2: 10.0,
            d_g1: 20.0,
            d_gn: 20.0,
            d_gm: 80.0,
            alpha: 2.0,
            eta: DEFAULT_ETA,
            r_n: 2.0,
            r_m: 2.0,
            sic: Sic::Perfect,
            noise_norm: NoiseNormModel::ConstantNorm,
            conditioned_dn_rate: false,
        }
    }
}

/// Calibrated per-hop path-loss constant (linear) for the reference
/// scenario, 10^{0.35} ≈ +3.5 dB. With the four-hop budget
/// λ̄ = η^{-4} (d_h1 d_h2 d_g1 d_gφ)^α this puts the nearby user's
/// outage knee at ~5 dBm and the error-floor/slope regime at 30–60 dBm,
/// matching the reference curves (see README, "link budget
/// calibration"). The value is a scenario default, not part of the
/// formula: `link_budget` uses whatever `eta` the config carries.
pub const DEFAULT_ETA: f64 = 2.238_721_138_568_339_4;

impl SystemConfig {
    /// Validate invariants. Returns the non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<ConfigWarning>, ConfigError> {
        fn positive(field: &'static str, v: f64) -> Result<(), ConfigError> {
            if v > 0.0 {
                Ok(())
            } else {
                Err(ConfigError::Invalid {
                    field,
                    msg: format!("must be > 0, got {v}"),
                })
            }
        }
        if self.aris_elems == 0 || self.pris_elems == 0 {
            return Err(ConfigError::Invalid {
                field: "elements",
                msg: "element counts must be >= 1".to_string(),
            });
        }
        if self.beta.is_nan() || self.beta < 1.0 {
            // β = 1 is the double-passive baseline; anything below is
            // attenuation, not reflection gain.
            return Err(ConfigError::Invalid {
                field: "beta",
                msg: format!("must be >= 1, got {}", self.beta),
            });
        }
        if (self.a_n + self.a_m - 1.0).abs() > 1e-12 {
            return Err(ConfigError::Invalid {
                field: "a_n/a_m",
                msg: format!("must sum to 1, got {} + {}", self.a_n, self.a_m),
            });
        }
        if !(self.a_n > 0.0 && self.a_n < self.a_m && self.a_m < 1.0) || self.a_n.is_nan() {
            return Err(ConfigError::Invalid {
                field: "a_n/a_m",
                msg: format!(
                    "need 0 < a_n < a_m < 1 (weaker channel gets more power), got {} / {}",
                    self.a_n, self.a_m
                ),
            });
        }
        positive("p_s_mw", self.p_s_mw)?;
        positive("sigma2_mw", self.sigma2_mw)?;
        positive("sigma_a2_mw", self.sigma_a2_mw)?;
        if self.omega_ri < 0.0 {
            return Err(ConfigError::Invalid {
                field: "omega_ri",
                msg: "must be >= 0".to_string(),
            });
        }
        for (field, v) in [
            ("d_h1", self.d_h1),
            ("d_h2", self.d_h2),
            ("d_g1", self.d_g1),
            ("d_gn", self.d_gn),
            ("d_gm", self.d_gm),
            ("alpha", self.alpha),
            ("eta", self.eta),
            ("r_n", self.r_n),
            ("r_m", self.r_m),
        ] {
            positive(field, v)?;
        }
        FadingParams::new(self.fading.kappa, self.fading.m_na, self.fading.omega_na).map_err(
            |e| ConfigError::Invalid {
                field: "fading",
                msg: e.to_string(),
            },
        )?;

        let mut warnings = Vec::new();
        let gamma_th_m = (2.0f64).powf(self.r_m) - 1.0;
        if self.a_m <= gamma_th_m * self.a_n {
            warnings.push(ConfigWarning::AllocationForcesOutage {
                a_m: self.a_m,
                threshold: gamma_th_m * self.a_n,
            });
        }
        Ok(warnings)
    }

    pub fn power_alloc(&self, user: User) -> f64 {
        match user {
            User::Near => self.a_n,
            User::Far => self.a_m,
        }
    }

    pub fn user_distance(&self, user: User) -> f64 {
        match user {
            User::Near => self.d_gn,
            User::Far => self.d_gm,
        }
    }
}

/// dBm → mW (or any dB-decade quantity → linear).
pub fn dbm_to_mw(dbm: f64) -> f64 {
    10.0f64.powf(dbm / 10.0)
}

/// dB → linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10.0f64.powf(db / 10.0)
}

/// mW → dBm.
pub fn mw_to_dbm(mw: f64) -> f64 {
    10.0 * mw.log10()
}

/// Composite inverse path gains and SINR thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// λ̄_n = η^{-4} (d_h1 d_h2 d_g1 d_gn)^α.
    pub lambda_bar_n: f64,
    /// λ̄_m, same with d_gm.
    pub lambda_bar_m: f64,
    /// 2^{R_n} - 1.
    pub gamma_th_n: f64,
    /// 2^{R_m} - 1.
    pub gamma_th_m: f64,
    /// OMA threshold 2^{2 R_n} - 1 (half the spectrum each).
    pub gamma_th_n_oma: f64,
    /// OMA threshold 2^{2 R_m} - 1.
    pub gamma_th_m_oma: f64,
}

impl LinkBudget {
    pub fn lambda_bar(&self, user: User) -> f64 {
        match user {
            User::Near => self.lambda_bar_n,
            User::Far => self.lambda_bar_m,
        }
    }

    pub fn gamma_th(&self, user: User) -> f64 {
        match user {
            User::Near => self.gamma_th_n,
            User::Far => self.gamma_th_m,
        }
    }

    pub fn gamma_th_oma(&self, user: User) -> f64 {
        match user {
            User::Near => self.gamma_th_n_oma,
            User::Far => self.gamma_th_m_oma,
        }
    }
}

/// Deterministic link budget for a configuration.
pub fn link_budget(cfg: &SystemConfig) -> LinkBudget {
    let common = cfg.eta.powi(-4) * (cfg.d_h1 * cfg.d_h2 * cfg.d_g1).powf(cfg.alpha);
    LinkBudget {
        lambda_bar_n: common * cfg.d_gn.powf(cfg.alpha),
        lambda_bar_m: common * cfg.d_gm.powf(cfg.alpha),
        gamma_th_n: (2.0f64).powf(cfg.r_n) - 1.0,
        gamma_th_m: (2.0f64).powf(cfg.r_m) - 1.0,
        gamma_th_n_oma: (2.0f64).powf(2.0 * cfg.r_n) - 1.0,
        gamma_th_m_oma: (2.0f64).powf(2.0 * cfg.r_m) - 1.0,
    }
}

/// Denominator noise power (mW) seen by `user`, per the configured
/// noise-norm model.
pub fn noise_power(draw: &TrialDraw, cfg: &SystemConfig, user: User) -> f64 {
    let norm = match cfg.noise_norm {
        NoiseNormModel::ConstantNorm => cfg.aris_elems as f64 * cfg.fading.omega_na,
        NoiseNormModel::Exact => {
            let g_norm = match user {
                User::Near => draw.g_norm_sq_n,
                User::Far => draw.g_norm_sq_m,
            };
            cfg.eta * cfg.user_distance(user).powf(-cfg.alpha) * g_norm
        }
    };
    cfg.beta * cfg.sigma_a2_mw * norm + cfg.sigma2_mw
}

/// End-to-end channel power gain Z = ζ_h ζ_gφ / λ̄_φ for `user`.
fn end_to_end_gain(draw: &TrialDraw, lb: &LinkBudget, user: User) -> f64 {
    let zeta_g = match user {
        User::Near => draw.zeta_g_n,
        User::Far => draw.zeta_g_m,
    };
    draw.zeta_h * zeta_g / lb.lambda_bar(user)
}

/// SINR at the nearby user while detecting the distant user's signal.
pub fn sinr_dn_dm(draw: &TrialDraw, cfg: &SystemConfig, lb: &LinkBudget) -> f64 {
    let z = end_to_end_gain(draw, lb, User::Near);
    let signal = cfg.beta * cfg.p_s_mw * z;
    signal * cfg.a_m / (signal * cfg.a_n + noise_power(draw, cfg, User::Near))
}

/// SINR at the nearby user for its own signal after SIC.
pub fn sinr_dn(draw: &TrialDraw, cfg: &SystemConfig, lb: &LinkBudget) -> f64 {
    let z = end_to_end_gain(draw, lb, User::Near);
    let residual = match cfg.sic {
        Sic::Perfect => 0.0,
        Sic::Imperfect => cfg.p_s_mw * draw.h_ri_sq,
    };
    cfg.beta * cfg.p_s_mw * z * cfg.a_n / (residual + noise_power(draw, cfg, User::Near))
}

/// SINR at the distant user (nearby user's signal is interference).
pub fn sinr_dm(draw: &TrialDraw, cfg: &SystemConfig, lb: &LinkBudget) -> f64 {
    let z = end_to_end_gain(draw, lb, User::Far);
    let signal = cfg.beta * cfg.p_s_mw * z;
    signal * cfg.a_m / (signal * cfg.a_n + noise_power(draw, cfg, User::Far))
}

/// Interference-free SNR of either user under the OMA baseline.
pub fn snr_oma(draw: &TrialDraw, cfg: &SystemConfig, lb: &LinkBudget, user: User) -> f64 {
    let z = end_to_end_gain(draw, lb, user);
    cfg.beta * cfg.p_s_mw * cfg.power_alloc(user) * z / noise_power(draw, cfg, user)
}
