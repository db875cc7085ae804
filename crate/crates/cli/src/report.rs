//! Monte-Carlo-vs-analytic validation reports: per-point tolerance
//! bands plus diversity-order and rate-slope fits against their
//! expected high-power values.

use crate::sweep::{run_sweep, Engine, Metric, SweepSpec};
use duoris_core::analytic::{
    diversity_order, ergodic_dm, ergodic_dn_ipsic, ergodic_dn_psic, ergodic_oma, outage_dm,
    outage_dn_ipsic, outage_dn_psic, rate_slope,
};
use duoris_core::system::{dbm_to_mw, link_budget, Sic, SystemConfig, User};
use std::fmt::Write as _;

pub struct PointCheck {
    pub axis_value: f64,
    pub variant: String,
    pub user: &'static str,
    pub metric: &'static str,
    pub mc: f64,
    pub analytic: f64,
    pub band: f64,
    pub pass: bool,
}

pub struct SlopeCheck {
    pub name: &'static str,
    pub fitted: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub struct ValidationReport {
    pub points: Vec<PointCheck>,
    pub slopes: Vec<SlopeCheck>,
    pub engine_errors: Vec<String>,
}

impl ValidationReport {
    pub fn all_points_pass(&self) -> bool {
        self.points.iter().all(|p| p.pass)
    }

    pub fn all_slopes_pass(&self) -> bool {
        self.slopes.iter().all(|s| s.pass)
    }

    pub fn passed(&self) -> bool {
        self.all_points_pass() && self.all_slopes_pass() && self.engine_errors.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>10} {:>18} {:>4} {:>13} {:>13} {:>13} {:>10} verdict",
            "point", "variant", "user", "metric", "monte-carlo", "analytic", "band"
        );
        for p in &self.points {
            let _ = writeln!(
                out,
                "{:>10} {:>18} {:>4} {:>13} {:>13.6e} {:>13.6e} {:>10.3e} {}",
                p.axis_value,
                p.variant,
                p.user,
                p.metric,
                p.mc,
                p.analytic,
                p.band,
                if p.pass { "pass" } else { "FAIL" }
            );
        }
        let _ = writeln!(out, "\nhigh-power fits (closed forms, 40-60 dBm):");
        for s in &self.slopes {
            let _ = writeln!(
                out,
                "  {:<28} fitted {:>8.4}  expected {:>5.2} ± {:<5.2} {}",
                s.name,
                s.fitted,
                s.expected,
                s.tolerance,
                if s.pass { "pass" } else { "FAIL" }
            );
        }
        for e in &self.engine_errors {
            let _ = writeln!(out, "engine error: {e}");
        }
        let _ = writeln!(
            out,
            "\noverall: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

/// Per-point band: outage |mc - cf| ≤ max(3 binomial σ at the analytic
/// p, 5% relative); rates 3% relative (with an absolute floor where the
/// rate itself vanishes).
fn band_for(metric: &str, cf: f64, trials: u64) -> f64 {
    match metric {
        "outage" => {
            let p = cf.clamp(1e-12, 1.0 - 1e-12);
            (3.0 * (p * (1.0 - p) / trials as f64).sqrt()).max(0.05 * cf)
        }
        _ => (0.03 * cf).max(1e-3),
    }
}

/// Run the spec's Monte Carlo and analytic engines side by side and
/// check every overlapping cell, then fit the canonical high-power
/// slopes on the closed forms.
pub fn validate(spec: &SweepSpec) -> ValidationReport {
    let mut mc_spec = spec.clone();
    mc_spec.engines = vec![Engine::MonteCarlo, Engine::Analytic];
    mc_spec.metrics = spec
        .metrics
        .iter()
        .copied()
        .filter(|m| matches!(m, Metric::Outage | Metric::ErgodicRate))
        .collect();
    if mc_spec.metrics.is_empty() {
        mc_spec.metrics = vec![Metric::Outage];
    }
    let out = run_sweep(&mc_spec);
    let mut points = Vec::new();
    for mc_row in out.rows.iter().filter(|r| r.engine == "monte-carlo") {
        let Some(cf_row) = out.rows.iter().find(|r| {
            r.engine == "analytic"
                && r.axis_value == mc_row.axis_value
                && r.variant == mc_row.variant
                && r.user == mc_row.user
                && r.metric == mc_row.metric
        }) else {
            continue;
        };
        let band = band_for(mc_row.metric, cf_row.value, spec.trials);
        points.push(PointCheck {
            axis_value: mc_row.axis_value,
            variant: mc_row.variant.clone(),
            user: mc_row.user,
            metric: mc_row.metric,
            mc: mc_row.value,
            analytic: cf_row.value,
            band,
            pass: (mc_row.value - cf_row.value).abs() <= band,
        });
    }

    let slopes = slope_section(&spec.base, &spec.qc);
    ValidationReport {
        points,
        slopes,
        engine_errors: out.errors.iter().map(|e| e.message.clone()).collect(),
    }
}

/// Closed-form diversity/rate-slope fits over the 40–60 dBm window with
/// their theoretical targets (M for the power-law outage families, 0
/// for the residual-limited ones, 1 / 0 / ½ for the rates).
fn slope_section(
    base: &SystemConfig,
    qc: &duoris_core::analytic::QuadConfig,
) -> Vec<SlopeCheck> {
    let powers: Vec<f64> = (40..=60).step_by(5).map(|d| dbm_to_mw(d as f64)).collect();
    let curve = |f: &dyn Fn(&SystemConfig) -> Option<f64>, sic: Sic| -> Vec<(f64, f64)> {
        powers
            .iter()
            .filter_map(|&p| {
                let mut cfg = base.clone();
                cfg.p_s_mw = p;
                cfg.sic = sic;
                f(&cfg).map(|v| (p, v))
            })
            .collect()
    };
    let m = base.aris_elems as f64;
    let lb_of = |cfg: &SystemConfig| link_budget(cfg);
    let mut checks = Vec::new();
    let mut push = |name, fitted: Result<f64, _>, expected: f64, tolerance: f64| {
        if let Ok(fitted) = fitted {
            checks.push(SlopeCheck {
                name,
                fitted,
                expected,
                tolerance,
                pass: (fitted - expected).abs() <= tolerance,
            });
        }
    };

    push(
        "outage diversity, pSIC near",
        diversity_order(&curve(
            &|c| outage_dn_psic(c, &lb_of(c), qc).ok(),
            Sic::Perfect,
        )),
        m,
        0.3,
    );
    push(
        "outage diversity, far user",
        diversity_order(&curve(&|c| outage_dm(c, &lb_of(c), qc).ok(), Sic::Perfect)),
        m,
        0.3,
    );
    push(
        "outage diversity, ipSIC near",
        diversity_order(&curve(
            &|c| outage_dn_ipsic(c, &lb_of(c), qc).ok(),
            Sic::Imperfect,
        )),
        0.0,
        0.1,
    );
    push(
        "rate slope, pSIC near",
        rate_slope(&curve(
            &|c| ergodic_dn_psic(c, &lb_of(c), qc).ok(),
            Sic::Perfect,
        )),
        1.0,
        0.1,
    );
    push(
        "rate slope, ipSIC near",
        rate_slope(&curve(
            &|c| ergodic_dn_ipsic(c, &lb_of(c), qc).ok(),
            Sic::Imperfect,
        )),
        0.0,
        0.1,
    );
    push(
        "rate slope, far user",
        rate_slope(&curve(&|c| ergodic_dm(c, &lb_of(c), qc).ok(), Sic::Perfect)),
        0.0,
        0.1,
    );
    push(
        "rate slope, OMA near",
        rate_slope(&curve(
            &|c| ergodic_oma(c, &lb_of(c), qc, User::Near).ok(),
            Sic::Perfect,
        )),
        0.5,
        0.1,
    );
    checks
}
