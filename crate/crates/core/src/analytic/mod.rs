//! Closed-form, asymptotic, slope/diversity, and throughput evaluators.
//!
//! Every expression is built from the moment-matched series statistics
//! of the cascade gains (see [`crate::channel`]) plus Gauss–Laguerre and
//! Gauss–Chebyshev quadrature. Evaluators are pure; quadrature rules are
//! constructed once per order and shared behind an immutable cache.

mod ergodic;
mod outage;
mod power;
mod slopes;

pub use ergodic::{
    asym_ergodic_dm, asym_ergodic_dn_ipsic, ergodic_dm, ergodic_dn_ipsic, ergodic_dn_psic,
    ergodic_oma, ergodic_upper_dn_psic,
};
pub use outage::{
    asym_outage_dm, asym_outage_dn_ipsic, asym_outage_dn_psic, outage_dm, outage_dn_ipsic,
    outage_dn_psic, outage_oma, AsymOutage,
};
pub use power::{power_budget_split, BudgetScheme, PowerOverheads};
pub use slopes::{diversity_order, rate_slope};

use crate::channel::{fit_cascade, CascadeApprox, ChannelError};
use crate::mcsim::ThroughputMode;
use crate::specfun::{gauss_laguerre_rule, ln_gamma, QuadRule, SpecFunError};
use crate::system::{LinkBudget, Sic, SystemConfig};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error("need at least {need} usable points, got {got}")]
    NotEnoughPoints { need: usize, got: usize },
    #[error("power budget infeasible: overheads {overheads_mw} mW >= total {total_mw} mW")]
    InfeasibleBudget { overheads_mw: f64, total_mw: f64 },
}

/// Quadrature orders and regularization knobs.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadConfig {
    /// Gauss–Laguerre order for the cascade-CDF sum.
    pub u_order: usize,
    /// Gauss–Laguerre order for the residual-interference average.
    pub i_order: usize,
    /// Gauss–Laguerre order for the rate integral.
    pub p_order: usize,
    /// Gauss–Chebyshev order.
    pub k_order: usize,
    /// Truncation limit for the asymptotic CDF; `None` auto-selects
    /// (start at 10 (N e)(M e), double until the value settles).
    pub mu_b: Option<f64>,
    /// Regularization offset for the hypergeometric function at unit
    /// argument.
    pub eps_2f1: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            u_order: 500,
            i_order: 500,
            p_order: 500,
            k_order: 100,
            mu_b: None,
            eps_2f1: 1e-6,
        }
    }
}

impl QuadConfig {
    /// A cheaper preset for smoke tests and convergence studies.
    pub fn with_orders(u: usize, i: usize, p: usize, k: usize) -> Self {
        QuadConfig {
            u_order: u,
            i_order: i,
            p_order: p,
            k_order: k,
            ..QuadConfig::default()
        }
    }
}

/// Immutable process-wide cache of Laguerre rules by order.
fn laguerre_cached(order: usize) -> Result<Arc<QuadRule>, AnalyticError> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("laguerre cache poisoned");
    if let Some(rule) = map.get(&order) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(gauss_laguerre_rule(order)?);
    map.insert(order, rule.clone());
    Ok(rule)
}

/// Compensated (Kahan) accumulator for the long quadrature sums.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    #[inline]
    pub fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Everything the closed forms share: fitted cascade statistics, the
/// weighted Laguerre nodes, and the constant part of the noise term.
pub(crate) struct EvalCtx {
    pub bs_side: CascadeApprox,
    pub user_side: CascadeApprox,
    /// b_X · b_Y.
    pub b_prod: f64,
    /// β σ_a² M Ω_na + σ² (the closed forms' constant noise).
    pub noise_const: f64,
    /// Laguerre nodes with weight H_u x_u^{a_X} / Γ(a_X+1), sorted by
    /// descending weight, zero-weight tail dropped.
    pub outer_nodes: Vec<(f64, f64)>,
    /// Residual-interference rule (order I), weight-sorted.
    pub residual_nodes: Vec<(f64, f64)>,
    /// Rate-integral nodes with weight H_p x_p^{a_Y} / Γ(a_Y+1),
    /// weight-sorted.
    pub rate_nodes: Vec<(f64, f64)>,
}

impl EvalCtx {
    pub fn new(cfg: &SystemConfig, qc: &QuadConfig) -> Result<Self, AnalyticError> {
        let bs_side = fit_cascade(&cfg.fading, cfg.pris_elems)?;
        let user_side = fit_cascade(&cfg.fading, cfg.aris_elems)?;
        let noise_const =
            cfg.beta * cfg.sigma_a2_mw * cfg.aris_elems as f64 * cfg.fading.omega_na
                + cfg.sigma2_mw;
        let rule_u = laguerre_cached(qc.u_order)?;
        let rule_i = laguerre_cached(qc.i_order)?;
        let rule_p = laguerre_cached(qc.p_order)?;
        Ok(EvalCtx {
            b_prod: bs_side.b * user_side.b,
            outer_nodes: powered_nodes(&rule_u, bs_side.a),
            residual_nodes: plain_nodes(&rule_i),
            rate_nodes: powered_nodes(&rule_p, user_side.a),
            bs_side,
            user_side,
            noise_const,
        })
    }

    /// Series CDF of the product Z = ζ_h ζ_g at threshold z, expressed
    /// through sqrt(z): Σ_u W_u P(a_Y + 1, sqrt(z)/(b_X b_Y x_u)).
    pub fn product_cdf_sqrt(&self, sqrt_z: f64) -> Result<f64, AnalyticError> {
        if sqrt_z <= 0.0 {
            return Ok(0.0);
        }
        let shape = self.user_side.a + 1.0;
        let scale = sqrt_z / self.b_prod;
        let mut acc = KahanSum::default();
        for &(x, w) in &self.outer_nodes {
            acc.add(w * crate::specfun::reg_lower_gamma(shape, scale / x)?);
        }
        Ok(acc.value().clamp(0.0, 1.0))
    }
}

/// Nodes paired with H x^a / Γ(a+1) weights, descending by weight.
fn powered_nodes(rule: &QuadRule, a: f64) -> Vec<(f64, f64)> {
    let ln_norm = ln_gamma(a + 1.0);
    let mut nw: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&x, &w)| (x, (w.ln() + a * x.ln() - ln_norm).exp()))
        .filter(|(_, w)| *w > 0.0)
        .collect();
    nw.sort_by(|l, r| r.1.total_cmp(&l.1));
    nw
}

/// Plain (node, weight) pairs, descending by weight, zero tail dropped.
fn plain_nodes(rule: &QuadRule) -> Vec<(f64, f64)> {
    let mut nw: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&x, &w)| (x, w))
        .collect();
    nw.sort_by(|l, r| r.1.total_cmp(&l.1));
    nw
}

/// System throughput from the closed forms.
pub fn throughput(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
    mode: ThroughputMode,
) -> Result<f64, AnalyticError> {
    match mode {
        ThroughputMode::DelayLimited => {
            let p_n = match cfg.sic {
                Sic::Perfect => outage_dn_psic(cfg, lb, qc)?,
                Sic::Imperfect => outage_dn_ipsic(cfg, lb, qc)?,
            };
            let p_m = outage_dm(cfg, lb, qc)?;
            Ok((1.0 - p_n) * cfg.r_n + (1.0 - p_m) * cfg.r_m)
        }
        ThroughputMode::DelayTolerant => {
            let r_n = match cfg.sic {
                Sic::Perfect => ergodic_dn_psic(cfg, lb, qc)?,
                Sic::Imperfect => ergodic_dn_ipsic(cfg, lb, qc)?,
            };
            let r_m = ergodic_dm(cfg, lb, qc)?;
            Ok(r_n + r_m)
        }
    }
}
