//! Gamma function family: ln Γ, Γ, and the lower incomplete gamma in
//! both plain and regularized form.

use super::SpecFunError;

/// Lanczos coefficients for g = 607/128, 15 terms (Godfrey's set).
/// Relative error of `ln_gamma` is a few ulps across the positive axis.
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_049e-4,
    2.174_396_181_152_126e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162e-6,
];

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    let mut y = x;
    let tmp = x + 5.242_187_5;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = 0.999_999_999_999_997_1;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    tmp + (2.506_628_274_631_000_5 * ser / x).ln()
}

/// Γ(x) for `x > 0`, relative error well under 1e-12 up to the f64
/// overflow point (x ≈ 171.6).
pub fn gamma_fn(x: f64) -> Result<f64, SpecFunError> {
    if x.is_nan() || x <= 0.0 {
        return Err(SpecFunError::domain(
            "gamma_fn",
            format!("x must be > 0, got {x}"),
        ));
    }
    let ln = ln_gamma(x);
    if ln > 709.0 {
        return Err(SpecFunError::overflow(
            "gamma_fn",
            format!("Gamma({x}) exceeds f64 range"),
        ));
    }
    Ok(ln.exp())
}

/// Γ(x) for any non-integer x (negative axis via reflection).
/// Internal helper for the hypergeometric Gauss summation.
pub(crate) fn gamma_signed(x: f64) -> f64 {
    if x > 0.0 {
        ln_gamma(x).exp()
    } else {
        // Reflection: Γ(x) Γ(1-x) = π / sin(πx)
        let s = (std::f64::consts::PI * x).sin();
        std::f64::consts::PI / (s * ln_gamma(1.0 - x).exp())
    }
}

const INCGAMMA_EPS: f64 = 1e-16;
const INCGAMMA_MAX_ITER: usize = 10_000;

/// Regularized lower incomplete gamma P(a, x) = γ(a,x) / Γ(a) ∈ [0, 1].
///
/// Series for `x < a + 1`, Lentz continued fraction otherwise.
pub fn reg_lower_gamma(a: f64, x: f64) -> Result<f64, SpecFunError> {
    if a.is_nan() || a <= 0.0 {
        return Err(SpecFunError::domain(
            "reg_lower_gamma",
            format!("a must be > 0, got {a}"),
        ));
    }
    if x < 0.0 {
        return Err(SpecFunError::domain(
            "reg_lower_gamma",
            format!("x must be >= 0, got {x}"),
        ));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    // exp(a ln x - x - ln Γ(a)) underflows to 0 harmlessly in deep tails.
    let ln_front = a * x.ln() - x - ln_gamma(a);
    if x < a + 1.0 {
        // P(a,x) = e^{-x} x^a / Γ(a) * Σ_k x^k / (a (a+1) ... (a+k))
        let mut ap = a;
        let mut del = 1.0 / a;
        let mut sum = del;
        for _ in 0..INCGAMMA_MAX_ITER {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * INCGAMMA_EPS {
                return Ok((sum * ln_front.exp()).clamp(0.0, 1.0));
            }
        }
        Err(SpecFunError::NoConvergence("reg_lower_gamma series"))
    } else {
        // Q(a,x) by modified Lentz, then P = 1 - Q.
        const FPMIN: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / FPMIN;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=INCGAMMA_MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < FPMIN {
                d = FPMIN;
            }
            c = b + an / c;
            if c.abs() < FPMIN {
                c = FPMIN;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < INCGAMMA_EPS {
                let q = ln_front.exp() * h;
                return Ok((1.0 - q).clamp(0.0, 1.0));
            }
        }
        Err(SpecFunError::NoConvergence("reg_lower_gamma fraction"))
    }
}

/// Lower incomplete gamma γ(a, x) = ∫_0^x e^{-t} t^{a-1} dt.
pub fn lower_incomplete_gamma(a: f64, x: f64) -> Result<f64, SpecFunError> {
    let p = reg_lower_gamma(a, x)?;
    Ok(p * gamma_fn(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_known_values() {
        assert!((gamma_fn(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_fn(5.0).unwrap() - 24.0).abs() < 24.0 * 1e-13);
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((gamma_fn(0.5).unwrap() - sqrt_pi).abs() < sqrt_pi * 1e-13);
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-2.5).is_err());
    }

    #[test]
    fn gamma_recurrence_over_range() {
        // Γ(x+1) = x Γ(x) at 100 deterministic points in (0.1, 50).
        for i in 0..100 {
            let x = 0.1 + 49.9 * (i as f64 + 0.5) / 100.0;
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-11 * lhs.abs(),
                "x={x}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn gamma_extreme_arguments() {
        // Γ(170) against Stirling-checked reference magnitude.
        let g = gamma_fn(170.0).unwrap();
        assert!(g.is_finite() && g > 1e304);
        let g_small = gamma_fn(1e-3).unwrap();
        // Γ(x) ~ 1/x - γ_E for small x
        assert!((g_small - (1.0 / 1e-3 - 0.577_215_664_901_532_9)).abs() < 1e-3);
    }

    #[test]
    fn incgamma_exponential_case() {
        // γ(1, x) = 1 - e^{-x}; at x = ln 2 this is exactly 1/2.
        let x = std::f64::consts::LN_2;
        let v = lower_incomplete_gamma(1.0, x).unwrap();
        assert!((v - 0.5).abs() < 1e-14, "{v}");
    }

    #[test]
    fn incgamma_zero_and_domain() {
        assert_eq!(lower_incomplete_gamma(3.7, 0.0).unwrap(), 0.0);
        assert!(lower_incomplete_gamma(0.0, 1.0).is_err());
        assert!(lower_incomplete_gamma(1.0, -0.1).is_err());
    }

    #[test]
    fn incgamma_saturates_to_gamma() {
        // At x = 50 a the true residual Q(a, 50a) is itself ~1e-8 for
        // a near 0.5 and far smaller above, so 1e-8 relative is tight
        // but attainable for shapes >= 0.5.
        for &a in &[0.5, 1.0, 2.5, 7.0, 20.0] {
            let g = gamma_fn(a).unwrap();
            let v = lower_incomplete_gamma(a, 50.0 * a).unwrap();
            assert!((v - g).abs() <= 1e-8 * g, "a={a}: {v} vs {g}");
        }
    }

    #[test]
    fn incgamma_monotone_in_x() {
        let mut prev = 0.0;
        for i in 1..200 {
            let x = i as f64 * 0.1;
            let v = lower_incomplete_gamma(3.5, x).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn reg_lower_gamma_in_unit_interval() {
        for &(a, x) in &[(0.7, 0.2), (3.5, 7.2), (40.0, 12.0), (5.0, 300.0)] {
            let p = reg_lower_gamma(a, x).unwrap();
            assert!((0.0..=1.0).contains(&p), "P({a},{x}) = {p}");
        }
    }
}
