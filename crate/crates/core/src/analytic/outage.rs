//! Closed-form and high-power asymptotic outage probabilities.

use super::{AnalyticError, EvalCtx, KahanSum, QuadConfig};
use crate::specfun::{gauss_2f1_unit, gauss_chebyshev_nodes, ln_gamma};
use crate::system::{LinkBudget, SystemConfig, User};

/// An asymptotic outage value with the caveats that can accompany it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymOutage {
    pub value: f64,
    /// The hypergeometric factor diverges at unit argument for this
    /// fading shape (m ≤ 1) and was regularized at 1 - eps.
    pub regularized_2f1: bool,
    /// The expression is stated for equal element counts; it was
    /// evaluated with N ≠ M anyway.
    pub n_ne_m: bool,
}

/// sqrt of the outage threshold on Z = ζ_h ζ_g for the nearby user:
/// sqrt(λ̄_n γ_th_n (extra + noise_const) / (β P a_n)).
fn sqrt_threshold_n(cfg: &SystemConfig, lb: &LinkBudget, ctx: &EvalCtx, extra: f64) -> f64 {
    (lb.lambda_bar_n * lb.gamma_th_n * (extra + ctx.noise_const)
        / (cfg.beta * cfg.p_s_mw * cfg.a_n))
        .sqrt()
}

/// Validity gate shared by the NOMA outage expressions: with
/// a_m ≤ γ_th_m a_n the decode constraint can never be met.
fn allocation_feasible(cfg: &SystemConfig, lb: &LinkBudget) -> bool {
    cfg.a_m > lb.gamma_th_m * cfg.a_n
}

/// Outage probability of the nearby user under imperfect SIC: double
/// Gauss–Laguerre sum averaging the cascade CDF over the exponential
/// residual-interference power.
pub fn outage_dn_ipsic(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
) -> Result<f64, AnalyticError> {
    if !allocation_feasible(cfg, lb) {
        return Ok(1.0);
    }
    let ctx = EvalCtx::new(cfg, qc)?;
    let mut acc = KahanSum::default();
    for &(x_i, h_i) in &ctx.residual_nodes {
        let extra = cfg.p_s_mw * cfg.omega_ri * x_i;
        let cdf = ctx.product_cdf_sqrt(sqrt_threshold_n(cfg, lb, &ctx, extra))?;
        acc.add(h_i * cdf);
    }
    Ok(acc.value().clamp(0.0, 1.0))
}

/// Outage probability of the nearby user under perfect SIC (ϖ = 0
/// special case: single Gauss–Laguerre sum).
pub fn outage_dn_psic(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
) -> Result<f64, AnalyticError> {
    if !allocation_feasible(cfg, lb) {
        return Ok(1.0);
    }
    let ctx = EvalCtx::new(cfg, qc)?;
    ctx.product_cdf_sqrt(sqrt_threshold_n(cfg, lb, &ctx, 0.0))
}

/// Outage probability of the distant user: effective transmit share is
/// a_m - γ_th_m a_n once the nearby user's interference is folded in.
pub fn outage_dm(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
) -> Result<f64, AnalyticError> {
    if !allocation_feasible(cfg, lb) {
        return Ok(1.0);
    }
    let ctx = EvalCtx::new(cfg, qc)?;
    let eff = cfg.a_m - lb.gamma_th_m * cfg.a_n;
    let sqrt_z = (lb.lambda_bar_m * lb.gamma_th_m * ctx.noise_const
        / (cfg.beta * cfg.p_s_mw * eff))
        .sqrt();
    ctx.product_cdf_sqrt(sqrt_z)
}

/// Outage probability of either user under the OMA baseline (full power
/// share of the user, doubled-rate threshold).
pub fn outage_oma(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
    user: User,
) -> Result<f64, AnalyticError> {
    let ctx = EvalCtx::new(cfg, qc)?;
    let sqrt_z = (lb.lambda_bar(user) * lb.gamma_th_oma(user) * ctx.noise_const
        / (cfg.beta * cfg.p_s_mw * cfg.power_alloc(user)))
    .sqrt();
    ctx.product_cdf_sqrt(sqrt_z)
}

/// High-power limit of the ipSIC outage: the transmit power cancels
/// against the residual term, leaving a power-independent error floor.
pub fn asym_outage_dn_ipsic(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
) -> Result<f64, AnalyticError> {
    if !allocation_feasible(cfg, lb) {
        return Ok(1.0);
    }
    let ctx = EvalCtx::new(cfg, qc)?;
    let mut acc = KahanSum::default();
    for &(x_i, h_i) in &ctx.residual_nodes {
        let sqrt_z =
            (lb.lambda_bar_n * lb.gamma_th_n * cfg.omega_ri * x_i / (cfg.beta * cfg.a_n)).sqrt();
        acc.add(h_i * ctx.product_cdf_sqrt(sqrt_z)?);
    }
    Ok(acc.value().clamp(0.0, 1.0))
}

/// Shared body of the power-law asymptotes: the exact small-argument
/// CDF of the product of the two magnitude sums, truncated at mu_b and
/// reduced by first-kind Chebyshev quadrature.
fn asym_power_law(
    cfg: &SystemConfig,
    qc: &QuadConfig,
    lambda_bar: f64,
    gamma_th: f64,
    eff_alloc: f64,
) -> Result<AsymOutage, AnalyticError> {
    let m = cfg.aris_elems;
    let n = cfg.pris_elems;
    let fp = &cfg.fading;
    let kappa = fp.kappa;
    let shape = fp.m_na;

    let hyp = gauss_2f1_unit(2.0, 1.5 - shape, shape + 1.5, qc.eps_2f1)?;
    // Δ(0): the m = 0 coefficient of the high-power series of the
    // single-cascade Laplace transform.
    let delta0 = (4.0 * ((kappa + 1.0) * shape).sqrt()).powf(1.0 - shape)
        * ((kappa + 1.0) * shape).powf(0.5 * (1.0 + shape))
        / ln_gamma(shape + 1.5).exp()
        * hyp.value;
    // [4 sqrt(π) Γ(2m) Δ(0) / (e^κ Γ(m))]^{M+N}
    let bracket = 4.0 * std::f64::consts::PI.sqrt() * ln_gamma(2.0 * shape).exp() * delta0
        / (kappa.exp() * ln_gamma(shape).exp());

    let ctx = EvalCtx::new(cfg, qc)?;
    let mu_b_start = qc
        .mu_b
        .unwrap_or(10.0 * (n as f64 * ctx.bs_side.mean) * (m as f64 * ctx.user_side.mean));
    let noise = ctx.noise_const;
    let cheb = gauss_chebyshev_nodes(qc.k_order)?;

    let eval = |mu_b: f64| -> f64 {
        let mut cheb_sum = KahanSum::default();
        let exponent = 2.0 * n as f64 - 2.0 * m as f64 - 1.0;
        for &x_k in &cheb.nodes {
            cheb_sum.add(((x_k + 1.0) * mu_b / 2.0).powf(exponent) * (1.0 - x_k * x_k).sqrt());
        }
        // ln of π μ_b (λ̄ γ)^M noise^M / (2K (2M)! (2N-1)! (β P eff)^M)
        let ln_pref = std::f64::consts::PI.ln() + mu_b.ln()
            - (2.0 * qc.k_order as f64).ln()
            + m as f64 * ((lambda_bar * gamma_th).ln() + noise.ln())
            - ln_gamma(2.0 * m as f64 + 1.0)
            - ln_gamma(2.0 * n as f64)
            - m as f64 * (cfg.beta * cfg.p_s_mw * eff_alloc).ln();
        ln_pref.exp() * bracket.powi((m + n) as i32) * cheb_sum.value()
    };

    // mu_b → ∞ in principle; in practice double until the value settles
    // (for N = M it cancels exactly and the first pass converges).
    let mut mu_b = mu_b_start;
    let mut value = eval(mu_b);
    for _ in 0..60 {
        let next = eval(2.0 * mu_b);
        let settled = if next == 0.0 {
            value == 0.0
        } else {
            (value / next - 1.0).abs() < 5e-3
        };
        value = next;
        mu_b *= 2.0;
        if settled {
            break;
        }
    }

    Ok(AsymOutage {
        value,
        regularized_2f1: hyp.divergent,
        n_ne_m: m != n,
    })
}

/// High-power asymptote of the perfect-SIC outage of the nearby user;
/// decays as P^{-M}.
pub fn asym_outage_dn_psic(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
) -> Result<AsymOutage, AnalyticError> {
    asym_power_law(cfg, qc, lb.lambda_bar_n, lb.gamma_th_n, cfg.a_n)
}

/// High-power asymptote of the distant user's outage; same power law
/// with the interference-reduced allocation.
pub fn asym_outage_dm(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
) -> Result<AsymOutage, AnalyticError> {
    let eff = cfg.a_m - lb.gamma_th_m * cfg.a_n;
    asym_power_law(cfg, qc, lb.lambda_bar_m, lb.gamma_th_m, eff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::link_budget;

    fn small_qc() -> QuadConfig {
        QuadConfig::with_orders(120, 120, 120, 100)
    }

    #[test]
    fn infeasible_allocation_returns_one() {
        let mut cfg = SystemConfig::default();
        cfg.a_n = 0.3;
        cfg.a_m = 0.7;
        let lb = link_budget(&cfg);
        assert_eq!(outage_dn_ipsic(&cfg, &lb, &small_qc()).unwrap(), 1.0);
        assert_eq!(outage_dm(&cfg, &lb, &small_qc()).unwrap(), 1.0);
    }

    #[test]
    fn ipsic_converges_to_psic_as_residual_vanishes() {
        let mut cfg = SystemConfig::default();
        cfg.p_s_mw = 1e4;
        cfg.omega_ri = 0.0;
        let lb = link_budget(&cfg);
        let qc = small_qc();
        let with = outage_dn_ipsic(&cfg, &lb, &qc).unwrap();
        let without = outage_dn_psic(&cfg, &lb, &qc).unwrap();
        assert!(
            (with - without).abs() < 1e-9,
            "{with} vs {without}"
        );
    }

    #[test]
    fn psic_outage_monotone_in_power() {
        let qc = small_qc();
        let mut prev = 1.1;
        for &dbm in &[0.0, 10.0, 20.0, 30.0] {
            let mut cfg = SystemConfig::default();
            cfg.p_s_mw = crate::system::dbm_to_mw(dbm);
            let lb = link_budget(&cfg);
            let p = outage_dn_psic(&cfg, &lb, &qc).unwrap();
            assert!(p <= prev, "outage must fall with power");
            assert!((0.0..=1.0).contains(&p));
            prev = p;
        }
    }

    #[test]
    fn dm_threshold_limits() {
        let qc = small_qc();
        // γ_th_m → 0 (R_m → 0): outage → 0.
        let mut cfg = SystemConfig::default();
        cfg.r_m = 1e-9;
        let lb = link_budget(&cfg);
        assert!(outage_dm(&cfg, &lb, &qc).unwrap() < 1e-6);
        // effective power → 0⁺: outage → 1.
        let mut cfg2 = SystemConfig::default();
        cfg2.r_m = 2.0;
        cfg2.a_n = 0.25 - 1e-9;
        cfg2.a_m = 0.75 + 1e-9;
        let lb2 = link_budget(&cfg2);
        let p = outage_dm(&cfg2, &lb2, &qc).unwrap();
        assert!(p > 1.0 - 1e-6, "{p}");
    }

    #[test]
    fn oma_zero_rate_never_fails() {
        let mut cfg = SystemConfig::default();
        cfg.r_n = 1e-12;
        let lb = link_budget(&cfg);
        let p = outage_oma(&cfg, &lb, &small_qc(), User::Near).unwrap();
        assert!(p < 1e-9);
    }

    #[test]
    fn asym_ipsic_floor_power_independent() {
        let qc = small_qc();
        let mut cfg = SystemConfig::default();
        cfg.p_s_mw = crate::system::dbm_to_mw(30.0);
        let lb = link_budget(&cfg);
        let a = asym_outage_dn_ipsic(&cfg, &lb, &qc).unwrap();
        cfg.p_s_mw = crate::system::dbm_to_mw(60.0);
        let b = asym_outage_dn_ipsic(&cfg, &lb, &qc).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn asym_ipsic_floor_tracks_residual_power() {
        let qc = small_qc();
        let mut cfg = SystemConfig::default();
        let lb = link_budget(&cfg);
        cfg.omega_ri = 1e-8;
        let hi = asym_outage_dn_ipsic(&cfg, &lb, &qc).unwrap();
        cfg.omega_ri = 1e-9;
        let lo = asym_outage_dn_ipsic(&cfg, &lb, &qc).unwrap();
        assert!(lo < hi, "floor must drop with residual power: {lo} vs {hi}");
    }

    #[test]
    fn asym_psic_exact_power_scaling() {
        // Doubling the transmit power divides the value by exactly 2^M.
        let qc = small_qc();
        let mut cfg = SystemConfig::default();
        cfg.p_s_mw = 1e5;
        let lb = link_budget(&cfg);
        let v1 = asym_outage_dn_psic(&cfg, &lb, &qc).unwrap();
        cfg.p_s_mw = 2e5;
        let v2 = asym_outage_dn_psic(&cfg, &lb, &qc).unwrap();
        let ratio = v1.value / v2.value;
        let expect = 2.0f64.powi(cfg.aris_elems as i32);
        assert!(
            (ratio / expect - 1.0).abs() < 1e-9,
            "ratio {ratio} vs {expect}"
        );
        // m_na = 1 ⇒ the hypergeometric factor is the regularized one.
        assert!(v1.regularized_2f1);
        assert!(!v1.n_ne_m);
    }

    #[test]
    fn asym_mu_b_insensitive_for_equal_elements() {
        let mut qc = small_qc();
        let cfg = SystemConfig::default();
        let lb = link_budget(&cfg);
        qc.mu_b = Some(50.0);
        let a = asym_outage_dn_psic(&cfg, &lb, &qc).unwrap();
        qc.mu_b = Some(100.0);
        let b = asym_outage_dn_psic(&cfg, &lb, &qc).unwrap();
        assert!(
            (a.value / b.value - 1.0).abs() < 1e-10,
            "mu_b must cancel at N = M"
        );
    }

    #[test]
    fn asym_ratio_closed_form_at_equal_elements() {
        // At N = M the bracket and Chebyshev factors cancel in the
        // ratio, leaving [λ̄_m γ_m a_n / (λ̄_n γ_n (a_m - γ_m a_n))]^M.
        let qc = small_qc();
        let mut cfg = SystemConfig::default();
        cfg.p_s_mw = 1e5;
        let lb = link_budget(&cfg);
        let dm = asym_outage_dm(&cfg, &lb, &qc).unwrap().value;
        let dn = asym_outage_dn_psic(&cfg, &lb, &qc).unwrap().value;
        let eff = cfg.a_m - lb.gamma_th_m * cfg.a_n;
        let expect = (lb.lambda_bar_m * lb.gamma_th_m * cfg.a_n
            / (lb.lambda_bar_n * lb.gamma_th_n * eff))
            .powi(cfg.aris_elems as i32);
        assert!(
            (dm / dn / expect - 1.0).abs() < 1e-10,
            "{} vs {expect}",
            dm / dn
        );
    }

    #[test]
    fn asym_flags_unequal_elements() {
        let mut cfg = SystemConfig::default();
        cfg.pris_elems = 5;
        let lb = link_budget(&cfg);
        let v = asym_outage_dm(&cfg, &lb, &small_qc()).unwrap();
        assert!(v.n_ne_m);
    }

    #[test]
    fn asym_convergent_shape_not_flagged() {
        // m_na = 2 has a convergent hypergeometric sum.
        let mut cfg = SystemConfig::default();
        cfg.fading.m_na = 2.0;
        let lb = link_budget(&cfg);
        let v = asym_outage_dn_psic(&cfg, &lb, &small_qc()).unwrap();
        assert!(!v.regularized_2f1);
        assert!(v.value > 0.0);
    }
}
