//! Gauss hypergeometric function 2F1(a, b; c; ·) at unit argument.

use super::gamma::{gamma_signed, ln_gamma};
use super::SpecFunError;

/// Value of 2F1(a, b; c; 1), possibly regularized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2f1Unit {
    pub value: f64,
    /// Set when c - a - b ≤ 0: the series diverges at unit argument and
    /// `value` is the truncated series evaluated at 1 - eps instead.
    pub divergent: bool,
}

const SERIES_MAX_TERMS: usize = 50_000_000;

/// 2F1(a, b; c; 1).
///
/// When c - a - b > 0 this is the Gauss summation
/// Γ(c) Γ(c-a-b) / (Γ(c-a) Γ(c-b)). Otherwise the series diverges at
/// unit argument; the regularized value at argument 1 - `eps` is
/// returned with the `divergent` flag set.
pub fn gauss_2f1_unit(a: f64, b: f64, c: f64, eps: f64) -> Result<Hyp2f1Unit, SpecFunError> {
    if c.is_nan() || c <= 0.0 {
        return Err(SpecFunError::domain(
            "gauss_2f1_unit",
            format!("c must be > 0, got {c}"),
        ));
    }
    if eps.is_nan() || eps <= 0.0 || eps > 1e-3 {
        return Err(SpecFunError::domain(
            "gauss_2f1_unit",
            format!("eps must be in (0, 1e-3], got {eps}"),
        ));
    }
    if a == 0.0 || b == 0.0 {
        // The series collapses to its first term.
        return Ok(Hyp2f1Unit {
            value: 1.0,
            divergent: false,
        });
    }
    let s = c - a - b;
    if s > 0.0 {
        let value = gamma_ratio(c, s, c - a, c - b);
        Ok(Hyp2f1Unit {
            value,
            divergent: false,
        })
    } else {
        let value = series_at(a, b, c, 1.0 - eps)?;
        Ok(Hyp2f1Unit {
            value,
            divergent: true,
        })
    }
}

/// Γ(c) Γ(s) / (Γ(ca) Γ(cb)) with reflection handling for any
/// non-positive non-integer arguments.
fn gamma_ratio(c: f64, s: f64, ca: f64, cb: f64) -> f64 {
    if c > 0.0 && s > 0.0 && ca > 0.0 && cb > 0.0 {
        (ln_gamma(c) + ln_gamma(s) - ln_gamma(ca) - ln_gamma(cb)).exp()
    } else {
        gamma_signed(c) * gamma_signed(s) / (gamma_signed(ca) * gamma_signed(cb))
    }
}

/// Direct series Σ (a)_k (b)_k / (c)_k z^k / k! for |z| < 1.
pub(crate) fn series_at(a: f64, b: f64, c: f64, z: f64) -> Result<f64, SpecFunError> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.abs() <= sum.abs() * 1e-16 && k > 4 {
            return Ok(sum);
        }
    }
    Err(SpecFunError::NoConvergence("gauss_2f1_unit series"))
}
