//! Fading variate generation and moment-matched statistics of the
//! cascaded Rician × Nakagami-m coherent-sum channel gains.
//!
//! Per-element magnitudes are generated with unit mean-square power; the
//! deterministic link budget carries all path-loss scaling (see
//! [`crate::system`]). Under that normalization the single-cascade mean
//! `e` and variance `d` satisfy `d + e² = 1` exactly.

use crate::rng::CounterRng;
use crate::specfun::{bessel_k, gamma_fn, laguerre_half_neg, ln_gamma, reg_lower_gamma};
use crate::system::SystemConfig;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("invalid fading parameters: {0}")]
    InvalidParams(String),
    #[error("inconsistent cascade statistics: {0}")]
    Inconsistent(String),
    #[error("special function failure: {0}")]
    SpecFun(#[from] crate::specfun::SpecFunError),
}

/// Small-scale fading parameterization shared by every hop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingParams {
    /// Linear Rician factor of the inter-surface hops (≥ 0).
    pub kappa: f64,
    /// Nakagami shape of the outer hops (≥ 0.5).
    pub m_na: f64,
    /// Nakagami spread. Folded out of the unit-power cascades; enters
    /// only the thermal-noise norm terms.
    pub omega_na: f64,
}

impl FadingParams {
    pub fn new(kappa: f64, m_na: f64, omega_na: f64) -> Result<Self, ChannelError> {
        if kappa.is_nan() || kappa < 0.0 {
            return Err(ChannelError::InvalidParams(format!(
                "kappa must be >= 0, got {kappa}"
            )));
        }
        if m_na.is_nan() || m_na < 0.5 {
            return Err(ChannelError::InvalidParams(format!(
                "m_na must be >= 0.5, got {m_na}"
            )));
        }
        if omega_na.is_nan() || omega_na <= 0.0 {
            return Err(ChannelError::InvalidParams(format!(
                "omega_na must be > 0, got {omega_na}"
            )));
        }
        Ok(FadingParams {
            kappa,
            m_na,
            omega_na,
        })
    }
}

/// Moment-matched series parameters for a coherent sum of `n_elems`
/// cascade magnitudes: sqrt(ζ) ~ Gamma(a + 1, b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeApprox {
    /// Mean of a single cascade magnitude |h¹ h²|.
    pub mean: f64,
    /// Variance of the same.
    pub variance: f64,
    /// Element count of the coherent sum.
    pub n_elems: usize,
    /// Series shape exponent a = n e²/d - 1 (> -1).
    pub a: f64,
    /// Series scale b = d / e (> 0).
    pub b: f64,
}

impl CascadeApprox {
    /// CDF of the squared sum ζ under the fitted series PDF:
    /// P(ζ < x) = P(a+1, sqrt(x)/b) (regularized lower gamma).
    pub fn cdf_zeta(&self, x: f64) -> Result<f64, ChannelError> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        Ok(reg_lower_gamma(self.a + 1.0, x.sqrt() / self.b)?)
    }

    /// Fitted PDF of ζ: x^{(a-1)/2} e^{-sqrt(x)/b} / (2 b^{a+1} Γ(a+1)).
    pub fn pdf_zeta(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let ln = 0.5 * (self.a - 1.0) * x.ln()
            - x.sqrt() / self.b
            - (self.a + 1.0) * self.b.ln()
            - ln_gamma(self.a + 1.0)
            - std::f64::consts::LN_2;
        ln.exp()
    }
}

/// One Monte Carlo realization of every random quantity a trial needs.
/// Unit-normalized gains; distances/path loss are not applied here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialDraw {
    /// BS-side cascade gain (Σ_n |h_n¹ h_n²|)².
    pub zeta_h: f64,
    /// User-side cascade gain toward the nearby user.
    pub zeta_g_n: f64,
    /// User-side cascade gain toward the distant user.
    pub zeta_g_m: f64,
    /// Residual interference power |h_RI|² (exponential, mean Ω_RI).
    pub h_ri_sq: f64,
    /// Exact thermal-noise norm Σ_m |g_m^n|² (carries Ω_na).
    pub g_norm_sq_n: f64,
    /// Same for the distant user.
    pub g_norm_sq_m: f64,
}

/// Magnitudes below this are clamped to zero to avoid denormals.
const MAG_FLOOR: f64 = 1e-300;

fn clamp_mag(x: f64) -> f64 {
    if x < MAG_FLOOR {
        0.0
    } else {
        x
    }
}

/// Nakagami-m magnitude with E[X²] = omega, via the square root of a
/// Gamma(m, omega/m) variate.
pub fn draw_nakagami(params: &FadingParams, rng: &mut CounterRng) -> f64 {
    clamp_mag(
        rng.gamma(params.m_na, params.omega_na / params.m_na)
            .sqrt(),
    )
}

fn draw_nakagami_unit(m_na: f64, rng: &mut CounterRng) -> f64 {
    clamp_mag(rng.gamma(m_na, 1.0 / m_na).sqrt())
}

/// Rician magnitude |sqrt(κ/(κ+1)) + sqrt(1/(κ+1)) CN(0,1)| with
/// E[X²] = 1.
pub fn draw_rician(kappa: f64, rng: &mut CounterRng) -> f64 {
    let los = (kappa / (kappa + 1.0)).sqrt();
    let comp_std = (0.5 / (kappa + 1.0)).sqrt();
    let re = los + comp_std * rng.normal();
    let im = comp_std * rng.normal();
    clamp_mag((re * re + im * im).sqrt())
}

/// Mean of a single cascade magnitude |h¹ h²| under unit powers:
/// e = sqrt(π / (4(κ+1))) · Γ(m+1/2)/Γ(m) · m^{-1/2} · L_{1/2}(-κ).
pub fn cascade_mean(fp: &FadingParams) -> f64 {
    let l = laguerre_half_neg(fp.kappa);
    let gamma_ratio = (ln_gamma(fp.m_na + 0.5) - ln_gamma(fp.m_na)).exp();
    (std::f64::consts::PI / (4.0 * (fp.kappa + 1.0))).sqrt()
        * gamma_ratio
        * fp.m_na.powf(-0.5)
        * l
}

/// Variance of a single cascade magnitude. Equals 1 - e² under the
/// unit-power normalization; signals if round-off drives it
/// non-positive (degenerate fading).
pub fn cascade_variance(fp: &FadingParams) -> Result<f64, ChannelError> {
    let e = cascade_mean(fp);
    let d = 1.0 - e * e;
    if d <= 0.0 {
        return Err(ChannelError::Inconsistent(format!(
            "computed variance {d} <= 0 (kappa={}, m_na={})",
            fp.kappa, fp.m_na
        )));
    }
    Ok(d)
}

/// Moment-matched series parameters for a coherent sum of `n_elems`
/// cascades: a = n e²/d - 1, b = d/e.
pub fn fit_cascade(fp: &FadingParams, n_elems: usize) -> Result<CascadeApprox, ChannelError> {
    if n_elems == 0 {
        return Err(ChannelError::InvalidParams(
            "n_elems must be >= 1".to_string(),
        ));
    }
    let e = cascade_mean(fp);
    let d = cascade_variance(fp)?;
    Ok(CascadeApprox {
        mean: e,
        variance: d,
        n_elems,
        a: n_elems as f64 * e * e / d - 1.0,
        b: d / e,
    })
}

/// One independent realization of all trial quantities.
///
/// The BS-side cascade and the relay→surface hop are common to both
/// users, exactly as in the physical model; only the surface→user hops
/// differ. Residual interference is drawn for every trial regardless of
/// the SIC mode so that pSIC/ipSIC comparisons share random numbers.
pub fn draw_trial(cfg: &SystemConfig, rng: &mut CounterRng) -> TrialDraw {
    let fp = &cfg.fading;
    let mut sum_h = 0.0;
    for _ in 0..cfg.pris_elems {
        sum_h += draw_nakagami_unit(fp.m_na, rng) * draw_rician(fp.kappa, rng);
    }
    let mut sum_g_n = 0.0;
    let mut sum_g_m = 0.0;
    let mut norm_n = 0.0;
    let mut norm_m = 0.0;
    for _ in 0..cfg.aris_elems {
        let g1 = draw_rician(fp.kappa, rng);
        let g_n = draw_nakagami_unit(fp.m_na, rng);
        let g_m = draw_nakagami_unit(fp.m_na, rng);
        sum_g_n += g1 * g_n;
        sum_g_m += g1 * g_m;
        norm_n += fp.omega_na * g_n * g_n;
        norm_m += fp.omega_na * g_m * g_m;
    }
    let h_ri_sq = rng.exponential(cfg.omega_ri);
    TrialDraw {
        zeta_h: sum_h * sum_h,
        zeta_g_n: sum_g_n * sum_g_n,
        zeta_g_m: sum_g_m * sum_g_m,
        h_ri_sq,
        g_norm_sq_n: norm_n,
        g_norm_sq_m: norm_m,
    }
}

/// Truncated series value of the exact single-cascade PDF, plus a
/// convergence flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPdf {
    pub value: f64,
    /// False when the last retained term still exceeded 1e-10 of the
    /// running sum.
    pub converged: bool,
}

/// Exact PDF of a single cascade magnitude X = |h¹ h²| as a Bessel-K
/// series, truncated at `max_terms` (or earlier once terms fall below
/// 1e-12 of the sum). Oracle-only: histograms of draws and the fitted
/// series PDF are validated against it.
pub fn exact_cascade_pdf(
    y: f64,
    fp: &FadingParams,
    max_terms: usize,
) -> Result<SeriesPdf, ChannelError> {
    if y.is_nan() || y <= 0.0 {
        return Err(ChannelError::InvalidParams(format!(
            "y must be > 0, got {y}"
        )));
    }
    if max_terms == 0 {
        return Err(ChannelError::InvalidParams(
            "max_terms must be >= 1".to_string(),
        ));
    }
    // Unit-power normalization: the envelope scale factor reduces to
    // (κ+1) m_na.
    let scale = (fp.kappa + 1.0) * fp.m_na;
    let bessel_arg = 2.0 * y * scale.sqrt();
    let mut sum = 0.0f64;
    let mut last_ratio = 0.0f64;
    for m in 0..max_terms {
        let mf = m as f64;
        if fp.kappa == 0.0 && m > 0 {
            break; // κ^m kills every higher term
        }
        let order = mf - fp.m_na + 1.0;
        let ln_coeff = (2.0f64).ln() * 2.0
            + (mf + fp.m_na) * y.ln()
            + if m == 0 { 0.0 } else { mf * fp.kappa.ln() }
            + 0.5 * (1.0 + mf + fp.m_na) * scale.ln()
            - fp.kappa
            - 2.0 * ln_gamma(mf + 1.0)
            - ln_gamma(fp.m_na);
        let term = ln_coeff.exp() * bessel_k(order, bessel_arg)?;
        sum += term;
        last_ratio = if sum > 0.0 { term / sum } else { 1.0 };
        if m >= 3 && last_ratio < 1e-12 {
            return Ok(SeriesPdf {
                value: sum,
                converged: true,
            });
        }
    }
    Ok(SeriesPdf {
        value: sum,
        converged: last_ratio <= 1e-10,
    })
}

/// E[ζ] for a coherent sum of n iid cascades: (n e)² + n d.
pub fn zeta_mean(fp: &FadingParams, n_elems: usize) -> Result<f64, ChannelError> {
    let e = cascade_mean(fp);
    let d = cascade_variance(fp)?;
    let n = n_elems as f64;
    Ok((n * e) * (n * e) + n * d)
}

/// Γ(a+1) kept available to series-PDF callers without re-deriving.
pub fn series_norm(a: f64) -> Result<f64, ChannelError> {
    Ok(gamma_fn(a + 1.0)?)
}
