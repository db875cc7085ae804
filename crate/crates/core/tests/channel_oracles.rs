//! Monte Carlo and quadrature oracles for the cascade-channel layer:
//! the fitted statistics must reproduce what raw draws actually do.

mod common;

use common::{adaptive_simpson, ks_critical_1pct, ks_two_sample, mean, variance};
use duoris_core::channel::{
    cascade_mean, cascade_variance, draw_nakagami, draw_rician, draw_trial, exact_cascade_pdf,
    fit_cascade, zeta_mean, FadingParams,
};
use duoris_core::rng::CounterRng;
use duoris_core::system::SystemConfig;

fn table_fading() -> FadingParams {
    FadingParams::new(0.316_227_766_016_837_94, 1.0, 1.0).unwrap()
}

#[test]
fn nakagami_rayleigh_special_case_moments() {
    let fp = FadingParams::new(0.0, 1.0, 1.0).unwrap();
    let n = 1_000_000;
    let mut rng = CounterRng::for_stream(101, 0);
    let (mut s1, mut s2) = (0.0, 0.0);
    for _ in 0..n {
        let x = draw_nakagami(&fp, &mut rng);
        s1 += x;
        s2 += x * x;
    }
    let m1 = s1 / n as f64;
    let m2 = s2 / n as f64;
    assert!((m2 - 1.0).abs() < 0.005, "power {m2}");
    let rayleigh_mean = std::f64::consts::PI.sqrt() / 2.0;
    assert!((m1 - rayleigh_mean).abs() < 0.003, "mean {m1}");
}

#[test]
fn nakagami_matches_gamma_power_construction() {
    // Nakagami(3, 2) draws against sqrt of Gamma(3, 2/3) draws from an
    // independent stream, two-sample KS below the 1% critical value.
    let fp = FadingParams::new(0.0, 3.0, 2.0).unwrap();
    let n = 100_000;
    let mut rng_a = CounterRng::for_stream(7, 1);
    let a: Vec<f64> = (0..n).map(|_| draw_nakagami(&fp, &mut rng_a)).collect();
    let mut rng_b = CounterRng::for_stream(7, 2);
    let b: Vec<f64> = (0..n).map(|_| rng_b.gamma(3.0, 2.0 / 3.0).sqrt()).collect();
    let d = ks_two_sample(a, b);
    assert!(d < ks_critical_1pct(n, n), "KS {d}");
}

#[test]
fn rician_limits_and_mean() {
    let n = 1_000_000;
    // κ = 0: Rayleigh, unit power.
    let mut rng = CounterRng::for_stream(11, 0);
    let p: f64 = (0..n)
        .map(|_| {
            let x = draw_rician(0.0, &mut rng);
            x * x
        })
        .sum::<f64>()
        / n as f64;
    assert!((p - 1.0).abs() < 0.005, "{p}");
    // κ huge: magnitude pins to 1.
    let mut rng = CounterRng::for_stream(11, 1);
    let samples: Vec<f64> = (0..10_000).map(|_| draw_rician(1e6, &mut rng)).collect();
    let sd = variance(&samples).sqrt();
    assert!(sd < 0.01, "{sd}");
    // Moment identity: E[X] = sqrt(π/(4(κ+1))) L_{1/2}(-κ) at m = 1.
    let kappa = 0.316_227_766_016_837_94;
    let mut rng = CounterRng::for_stream(11, 2);
    let m1 = (0..n)
        .map(|_| draw_rician(kappa, &mut rng))
        .sum::<f64>()
        / n as f64;
    let expect = (std::f64::consts::PI / (4.0 * (kappa + 1.0))).sqrt()
        * duoris_core::specfun::laguerre_half_neg(kappa);
    assert!((m1 - expect).abs() < 0.003, "{m1} vs {expect}");
}

#[test]
fn cascade_mean_variance_vs_monte_carlo() {
    // 10^7 products of independent Nakagami and Rician magnitudes.
    let fp = table_fading();
    let n = 10_000_000;
    let mut rng = CounterRng::for_stream(23, 0);
    let (mut s1, mut s2, mut s4) = (0.0, 0.0, 0.0);
    for _ in 0..n {
        let x = draw_nakagami(&fp, &mut rng) * draw_rician(fp.kappa, &mut rng);
        s1 += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    let mc_mean = s1 / n as f64;
    let mc_var = s2 / n as f64 - mc_mean * mc_mean;
    let e = cascade_mean(&fp);
    let d = cascade_variance(&fp).unwrap();
    assert!((e / mc_mean - 1.0).abs() < 0.002, "{e} vs {mc_mean}");
    assert!((d / mc_var - 1.0).abs() < 0.005, "{d} vs {mc_var}");
    // Unit second moment within 3 MC standard errors.
    let second = s2 / n as f64;
    let se_second = ((s4 / n as f64 - second * second) / n as f64).sqrt();
    assert!(
        (second - 1.0).abs() < 3.0 * se_second,
        "{second} ± {se_second}"
    );
}

#[test]
fn fitted_series_pdf_normalizes_and_matches_median() {
    let fp = table_fading();
    let fit = fit_cascade(&fp, 3).unwrap();
    // Numeric normalization of the fitted PDF of ζ, integrated in
    // panels so the adaptive probe cannot step over the bump.
    let panels = [1e-12, 1.0, 5.0, 20.0, 100.0, 2000.0];
    let total: f64 = panels
        .windows(2)
        .map(|w| adaptive_simpson(&|x| fit.pdf_zeta(x), w[0], w[1], 1e-11))
        .sum();
    assert!((total - 1.0).abs() < 1e-6, "{total}");

    // Empirical CDF of ζ_h at its median vs the fitted CDF.
    let cfg = SystemConfig::default();
    let n = 1_000_000u64;
    let mut zetas: Vec<f64> = (0..n)
        .map(|t| draw_trial(&cfg, &mut CounterRng::for_stream(31, t)).zeta_h)
        .collect();
    zetas.sort_by(f64::total_cmp);
    let median = zetas[zetas.len() / 2];
    let fitted_at_median = fit.cdf_zeta(median).unwrap();
    assert!(
        (fitted_at_median - 0.5).abs() < 0.02,
        "fitted CDF at empirical median: {fitted_at_median}"
    );
}

#[test]
fn fitted_moments_gate_across_element_counts() {
    // Fitted-PDF mean within 2% and variance within 5% of MC moments of
    // ζ for n ∈ {1, 3, 5, 10}.
    let fp = table_fading();
    for n_elems in [1usize, 3, 5, 10] {
        let fit = fit_cascade(&fp, n_elems).unwrap();
        // sqrt(ζ) ~ Gamma(a+1, b): E[ζ] = b²(a+1)(a+2),
        // E[ζ²] = b⁴(a+1)(a+2)(a+3)(a+4).
        let (a, b) = (fit.a, fit.b);
        let fitted_mean = b * b * (a + 1.0) * (a + 2.0);
        let fitted_second = b.powi(4) * (a + 1.0) * (a + 2.0) * (a + 3.0) * (a + 4.0);
        let fitted_var = fitted_second - fitted_mean * fitted_mean;

        let trials = 1_000_000u64;
        let mut cfg = SystemConfig::default();
        cfg.pris_elems = n_elems;
        let zetas: Vec<f64> = (0..trials)
            .map(|t| draw_trial(&cfg, &mut CounterRng::for_stream(37, t)).zeta_h)
            .collect();
        let mc_mean = mean(&zetas);
        let mc_var = variance(&zetas);
        assert!(
            (fitted_mean / mc_mean - 1.0).abs() < 0.02,
            "n={n_elems}: mean {fitted_mean} vs {mc_mean}"
        );
        assert!(
            (fitted_var / mc_var - 1.0).abs() < 0.05,
            "n={n_elems}: var {fitted_var} vs {mc_var}"
        );
    }
}

#[test]
fn trial_draw_moments() {
    let cfg = SystemConfig::default();
    let trials = 1_000_000u64;
    let mut sum_zeta = 0.0;
    let mut sum_ri = 0.0;
    let mut sum_norm = 0.0;
    for t in 0..trials {
        let d = draw_trial(&cfg, &mut CounterRng::for_stream(41, t));
        sum_zeta += d.zeta_h;
        sum_ri += d.h_ri_sq;
        sum_norm += d.g_norm_sq_n;
    }
    let n = trials as f64;
    // E[ζ_h] = (N e)² + N d.
    let expect = zeta_mean(&cfg.fading, cfg.pris_elems).unwrap();
    assert!(
        (sum_zeta / n / expect - 1.0).abs() < 0.005,
        "{} vs {expect}",
        sum_zeta / n
    );
    // Residual power is exponential with mean Ω_RI.
    assert!(
        (sum_ri / n / cfg.omega_ri - 1.0).abs() < 0.01,
        "{} vs {}",
        sum_ri / n,
        cfg.omega_ri
    );
    // The exact noise norm averages to M Ω_na: the random part the
    // constant-norm model replaces (the η d^{-α} path-loss factor is
    // the deliberate convention difference between the two models).
    let m_omega = cfg.aris_elems as f64 * cfg.fading.omega_na;
    assert!(
        (sum_norm / n / m_omega - 1.0).abs() < 0.02,
        "{} vs {m_omega}",
        sum_norm / n
    );
}

#[test]
fn exact_pdf_matches_draw_histogram() {
    // 10^7 single-cascade magnitudes against the truncated Bessel
    // series, L∞ bin error below 0.01.
    let fp = table_fading();
    let n = 10_000_000usize;
    let bins = 100;
    let hi = 5.0;
    let width = hi / bins as f64;
    let mut counts = vec![0u64; bins];
    let mut rng = CounterRng::for_stream(53, 0);
    for _ in 0..n {
        let x = draw_nakagami(&fp, &mut rng) * draw_rician(fp.kappa, &mut rng);
        if x < hi {
            counts[(x / width) as usize] += 1;
        }
    }
    let mut worst: f64 = 0.0;
    for (i, &c) in counts.iter().enumerate() {
        // Bin-averaged density via Simpson so the comparison is not
        // biased by curvature inside the bin.
        let l = (i as f64 * width).max(1e-6);
        let r = (i as f64 + 1.0) * width;
        let eval = |y: f64| exact_cascade_pdf(y, &fp, 200).unwrap().value;
        let pdf_avg = (eval(l) + 4.0 * eval(0.5 * (l + r)) + eval(r)) / 6.0;
        let emp = c as f64 / n as f64 / width;
        worst = worst.max((emp - pdf_avg).abs());
    }
    assert!(worst < 0.01, "L∞ bin error {worst}");
}

#[test]
fn exact_pdf_normalizes_noncentral_cases() {
    // Including the Rayleigh-product special case (κ = 0, single K_0
    // term) and a non-integer shape.
    for &(kappa, m_na) in &[(0.0, 1.0), (0.316_227_766_016_837_94, 1.0), (1.0, 2.5)] {
        let fp = FadingParams::new(kappa, m_na, 1.0).unwrap();
        let total = adaptive_simpson(
            &|y| exact_cascade_pdf(y, &fp, 200).unwrap().value,
            1e-6,
            20.0,
            1e-9,
        );
        assert!(
            (total - 1.0).abs() < 1e-4,
            "κ={kappa} m={m_na}: ∫pdf = {total}"
        );
    }
}
