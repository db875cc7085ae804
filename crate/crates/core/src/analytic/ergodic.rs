//! Closed-form and asymptotic ergodic data rates.

use super::{AnalyticError, EvalCtx, KahanSum, QuadConfig};
use crate::specfun::{gauss_chebyshev_nodes, ln_gamma};
use crate::system::{LinkBudget, SystemConfig, User};

const LN2: f64 = std::f64::consts::LN_2;

/// Ergodic rate of the nearby user with imperfect SIC: triple
/// Gauss–Laguerre sum (cascade CDF × rate integral × residual average).
pub fn ergodic_dn_ipsic(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
) -> Result<f64, AnalyticError> {
    let ctx = EvalCtx::new(cfg, qc)?;
    let b2 = ctx.b_prod * ctx.b_prod;
    let gain = cfg.beta * cfg.p_s_mw * cfg.a_n * b2;
    let mut acc = KahanSum::default();
    for &(x_i, h_i) in &ctx.residual_nodes {
        let den = lb.lambda_bar_n * (cfg.p_s_mw * cfg.omega_ri * x_i + ctx.noise_const);
        let mut inner = KahanSum::default();
        for &(x_u, w_u) in &ctx.outer_nodes {
            let xu2 = x_u * x_u;
            for &(x_p, w_p) in &ctx.rate_nodes {
                let arg = 1.0 + gain * xu2 * x_p * x_p / den;
                inner.add(w_u * w_p * arg.max(1.0).ln());
            }
        }
        acc.add(h_i * inner.value());
    }
    Ok(acc.value() / LN2)
}

/// Ergodic rate of the nearby user with perfect SIC (the residual
/// average collapses).
pub fn ergodic_dn_psic(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
) -> Result<f64, AnalyticError> {
    let ctx = EvalCtx::new(cfg, qc)?;
    let b2 = ctx.b_prod * ctx.b_prod;
    let den = lb.lambda_bar_n * ctx.noise_const;
    let gain = cfg.beta * cfg.p_s_mw * cfg.a_n * b2;
    Ok(double_log_sum(&ctx, gain, den) / LN2)
}

/// Ergodic rate of either user under OMA; identical structure with the
/// user's own allocation and path gain, halved for the spectrum split.
pub fn ergodic_oma(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
    user: User,
) -> Result<f64, AnalyticError> {
    let ctx = EvalCtx::new(cfg, qc)?;
    let b2 = ctx.b_prod * ctx.b_prod;
    let den = lb.lambda_bar(user) * ctx.noise_const;
    let gain = cfg.beta * cfg.p_s_mw * cfg.power_alloc(user) * b2;
    Ok(double_log_sum(&ctx, gain, den) / (2.0 * LN2))
}

fn double_log_sum(ctx: &EvalCtx, gain: f64, den: f64) -> f64 {
    let mut acc = KahanSum::default();
    for &(x_u, w_u) in &ctx.outer_nodes {
        let xu2 = x_u * x_u;
        for &(x_p, w_p) in &ctx.rate_nodes {
            let arg = 1.0 + gain * xu2 * x_p * x_p / den;
            acc.add(w_u * w_p * arg.max(1.0).ln());
        }
    }
    acc.value()
}

/// Ergodic rate of the distant user: Chebyshev sum over the SINR
/// support (0, a_m/a_n) of the CDF complement.
pub fn ergodic_dm(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
) -> Result<f64, AnalyticError> {
    let ctx = EvalCtx::new(cfg, qc)?;
    let cheb = gauss_chebyshev_nodes(qc.k_order)?;
    let kf = qc.k_order as f64;
    let mut acc = KahanSum::default();
    for &x_k in &cheb.nodes {
        let delta = std::f64::consts::PI * cfg.a_m * (1.0 - x_k * x_k).sqrt()
            / (kf * LN2 * (2.0 * cfg.a_n + cfg.a_m * (x_k + 1.0)));
        // SINR integration variable stays strictly below a_m/a_n, so the
        // effective allocation a_m (1 - x_k)/2 stays positive.
        let sqrt_z = (lb.lambda_bar_m * ctx.noise_const * (x_k + 1.0) * cfg.a_m
            / (cfg.a_m * cfg.a_n * cfg.beta * cfg.p_s_mw * (1.0 - x_k)))
            .sqrt();
        let cdf = ctx.product_cdf_sqrt(sqrt_z)?;
        acc.add(delta * (1.0 - cdf));
    }
    Ok(acc.value().max(0.0))
}

/// High-power limit of the ipSIC rate: power cancels between signal and
/// residual, leaving a ceiling.
pub fn asym_ergodic_dn_ipsic(
    cfg: &SystemConfig,
    lb: &LinkBudget,
    qc: &QuadConfig,
) -> Result<f64, AnalyticError> {
    let ctx = EvalCtx::new(cfg, qc)?;
    let b2 = ctx.b_prod * ctx.b_prod;
    let gain = cfg.beta * cfg.a_n * b2;
    let mut acc = KahanSum::default();
    for &(x_i, h_i) in &ctx.residual_nodes {
        let den = lb.lambda_bar_n * cfg.omega_ri * x_i;
        let mut inner = KahanSum::default();
        for &(x_u, w_u) in &ctx.outer_nodes {
            let xu2 = x_u * x_u;
            for &(x_p, w_p) in &ctx.rate_nodes {
                let arg = 1.0 + gain * xu2 * x_p * x_p / den;
                inner.add(w_u * w_p * arg.max(1.0).ln());
            }
        }
        acc.add(h_i * inner.value());
    }
    Ok(acc.value() / LN2)
}

/// Jensen upper bound on the perfect-SIC rate of the nearby user:
/// log2(1 + ϑ_n β P a_n / (λ̄_n (β σ_a² M Ω_na + σ²))) with
/// ϑ_n = [(N e)² + N d][(M e)² + M d].
pub fn ergodic_upper_dn_psic(cfg: &SystemConfig, lb: &LinkBudget) -> Result<f64, AnalyticError> {
    let ctx = EvalCtx::new(cfg, &QuadConfig::with_orders(2, 2, 2, 2))?;
    let n = cfg.pris_elems as f64;
    let m = cfg.aris_elems as f64;
    let e = ctx.bs_side.mean;
    let d = ctx.bs_side.variance;
    let theta = ((n * e) * (n * e) + n * d) * ((m * e) * (m * e) + m * d);
    let arg = 1.0 + theta * cfg.beta * cfg.p_s_mw * cfg.a_n / (lb.lambda_bar_n * ctx.noise_const);
    Ok(arg.log2())
}

/// High-power limit of the distant user's rate, evaluated exactly as
/// printed: the inner bracket keeps only the node-weight mass
/// Σ H_u x_u^{a_X} / (Γ(a_X+1) Γ(a_Y+1)), i.e. 1 - 1/Γ(a_Y+1) in the
/// quadrature limit. (Likely a typographical truncation of the full
/// expression; kept verbatim and documented.)
pub fn asym_ergodic_dm(
    cfg: &SystemConfig,
    _lb: &LinkBudget,
    qc: &QuadConfig,
) -> Result<f64, AnalyticError> {
    let ctx = EvalCtx::new(cfg, qc)?;
    let cheb = gauss_chebyshev_nodes(qc.k_order)?;
    let kf = qc.k_order as f64;
    let node_mass: f64 = ctx.outer_nodes.iter().map(|(_, w)| w).sum();
    let bracket = 1.0 - node_mass / ln_gamma(ctx.user_side.a + 2.0).exp();
    let mut acc = KahanSum::default();
    for &x_k in &cheb.nodes {
        let delta = std::f64::consts::PI * cfg.a_m * (1.0 - x_k * x_k).sqrt()
            / (kf * LN2 * (2.0 * cfg.a_n + cfg.a_m * (x_k + 1.0)));
        acc.add(delta * bracket);
    }
    Ok(acc.value().max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{dbm_to_mw, link_budget};

    fn small_qc() -> QuadConfig {
        QuadConfig::with_orders(100, 60, 100, 100)
    }

    #[test]
    fn rates_vanish_without_power() {
        let mut cfg = SystemConfig::default();
        cfg.p_s_mw = dbm_to_mw(-150.0);
        let lb = link_budget(&cfg);
        let qc = small_qc();
        assert!(ergodic_dn_psic(&cfg, &lb, &qc).unwrap() < 1e-6);
        assert!(ergodic_dn_ipsic(&cfg, &lb, &qc).unwrap() < 1e-6);
        assert!(ergodic_dm(&cfg, &lb, &qc).unwrap() < 1e-6);
        assert!(ergodic_oma(&cfg, &lb, &qc, User::Far).unwrap() < 1e-6);
    }

    #[test]
    fn psic_rate_exceeds_ipsic() {
        let mut cfg = SystemConfig::default();
        let qc = small_qc();
        for &dbm in &[0.0, 20.0, 40.0] {
            cfg.p_s_mw = dbm_to_mw(dbm);
            let lb = link_budget(&cfg);
            let p = ergodic_dn_psic(&cfg, &lb, &qc).unwrap();
            let i = ergodic_dn_ipsic(&cfg, &lb, &qc).unwrap();
            assert!(p >= i, "{dbm} dBm: psic {p} < ipsic {i}");
        }
    }

    #[test]
    fn dm_rate_bounded_by_allocation_ceiling() {
        // The Chebyshev discretization of ∫ dx/(1+x) overshoots the true
        // ceiling by ~1e-4 at K = 100, so the bound carries that slack.
        let mut cfg = SystemConfig::default();
        let qc = small_qc();
        let ceiling = (1.0 + cfg.a_m / cfg.a_n).log2();
        for &dbm in &[0.0, 20.0, 40.0, 60.0] {
            cfg.p_s_mw = dbm_to_mw(dbm);
            let lb = link_budget(&cfg);
            let r = ergodic_dm(&cfg, &lb, &qc).unwrap();
            assert!(r >= 0.0 && r <= ceiling + 1e-3, "{dbm} dBm: {r}");
        }
    }

    #[test]
    fn oma_is_half_of_psic_for_matched_user() {
        // Same allocation and path gain ⇒ the OMA expression is exactly
        // half the pSIC expression.
        let cfg = SystemConfig::default();
        let lb = link_budget(&cfg);
        let qc = small_qc();
        let psic = ergodic_dn_psic(&cfg, &lb, &qc).unwrap();
        let oma = ergodic_oma(&cfg, &lb, &qc, User::Near).unwrap();
        assert!((oma - 0.5 * psic).abs() < 1e-12 * psic, "{oma} vs {psic}");
    }

    #[test]
    fn jensen_upper_bounds_psic_rate() {
        let mut cfg = SystemConfig::default();
        let qc = small_qc();
        for &dbm in &[0.0, 15.0, 30.0, 45.0] {
            cfg.p_s_mw = dbm_to_mw(dbm);
            let lb = link_budget(&cfg);
            let rate = ergodic_dn_psic(&cfg, &lb, &qc).unwrap();
            let upper = ergodic_upper_dn_psic(&cfg, &lb).unwrap();
            assert!(upper >= rate, "{dbm} dBm: bound {upper} < rate {rate}");
        }
    }

    #[test]
    fn asym_ipsic_rate_power_independent_and_monotone_in_residual() {
        let mut cfg = SystemConfig::default();
        let qc = small_qc();
        cfg.p_s_mw = dbm_to_mw(30.0);
        let lb = link_budget(&cfg);
        let a = asym_ergodic_dn_ipsic(&cfg, &lb, &qc).unwrap();
        cfg.p_s_mw = dbm_to_mw(60.0);
        let b = asym_ergodic_dn_ipsic(&cfg, &lb, &qc).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        // Ceiling falls when the residual grows 10×.
        cfg.omega_ri = 1e-7;
        let worse = asym_ergodic_dn_ipsic(&cfg, &lb, &qc).unwrap();
        assert!(worse < a);
    }

    #[test]
    fn asym_dm_rate_power_independent_and_bounded() {
        let mut cfg = SystemConfig::default();
        let qc = small_qc();
        cfg.p_s_mw = dbm_to_mw(20.0);
        let lb = link_budget(&cfg);
        let a = asym_ergodic_dm(&cfg, &lb, &qc).unwrap();
        cfg.p_s_mw = dbm_to_mw(50.0);
        let b = asym_ergodic_dm(&cfg, &lb, &qc).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert!(a <= (1.0 + cfg.a_m / cfg.a_n).log2());
        assert!(a > 0.0);
    }
}
