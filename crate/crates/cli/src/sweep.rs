//! Sweep orchestration: expand a spec into rows across
//! (point × variant × user × metric × engine), dispatching points to a
//! worker pool while keeping row order deterministic.

use duoris_core::analytic::{
    asym_ergodic_dm, asym_ergodic_dn_ipsic, asym_outage_dm, asym_outage_dn_ipsic,
    asym_outage_dn_psic, ergodic_dm, ergodic_dn_ipsic, ergodic_dn_psic, ergodic_oma,
    ergodic_upper_dn_psic, outage_dm, outage_dn_ipsic, outage_dn_psic, outage_oma,
    power_budget_split, throughput, BudgetScheme, PowerOverheads, QuadConfig,
};
use duoris_core::mcsim::{
    mc_ergodic_rate, mc_outage, mc_throughput, Scheme, ThroughputMode,
};
use duoris_core::system::{dbm_to_mw, link_budget, Sic, SystemConfig, User};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    TransmitPowerDbm,
    TotalPowerDbm,
}

impl Axis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Axis::TransmitPowerDbm => "transmit-power-dbm",
            Axis::TotalPowerDbm => "total-power-dbm",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Outage,
    ErgodicRate,
    ThroughputDl,
    ThroughputDt,
}

impl Metric {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "outage" => Ok(Metric::Outage),
            "ergodic-rate" => Ok(Metric::ErgodicRate),
            "throughput-dl" => Ok(Metric::ThroughputDl),
            "throughput-dt" => Ok(Metric::ThroughputDt),
            other => Err(format!("sweep.metrics: unknown metric {other:?}")),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::Outage => "outage",
            Metric::ErgodicRate => "ergodic-rate",
            Metric::ThroughputDl => "throughput-dl",
            Metric::ThroughputDt => "throughput-dt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    NomaPsic,
    NomaIpsic,
    Oma,
    /// Double-passive baseline: β = 1, no active-surface overheads in
    /// the power budget, imperfect SIC (matching the budget-comparison
    /// figures, which all run at Ω_RI = -80 dB).
    DoublePris,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "noma-psic" => Ok(Variant::NomaPsic),
            "noma-ipsic" => Ok(Variant::NomaIpsic),
            "oma" => Ok(Variant::Oma),
            "double-pris" => Ok(Variant::DoublePris),
            other => Err(format!("sweep.variants: unknown variant {other:?}")),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::NomaPsic => "noma-psic",
            Variant::NomaIpsic => "noma-ipsic",
            Variant::Oma => "oma",
            Variant::DoublePris => "double-pris",
        }
    }

    fn scheme(&self) -> Scheme {
        match self {
            Variant::Oma => Scheme::Oma,
            _ => Scheme::Noma,
        }
    }

    fn budget_scheme(&self) -> BudgetScheme {
        match self {
            Variant::DoublePris => BudgetScheme::DoublePris,
            _ => BudgetScheme::PrisAris,
        }
    }

    fn apply(&self, base: &SystemConfig) -> SystemConfig {
        let mut cfg = base.clone();
        match self {
            Variant::NomaPsic => cfg.sic = Sic::Perfect,
            Variant::NomaIpsic => cfg.sic = Sic::Imperfect,
            Variant::Oma => cfg.sic = Sic::Perfect,
            Variant::DoublePris => {
                cfg.sic = Sic::Imperfect;
                cfg.beta = 1.0;
            }
        }
        cfg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    MonteCarlo,
    Analytic,
    Asymptotic,
}

impl Engine {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "monte-carlo" => Ok(Engine::MonteCarlo),
            "analytic" => Ok(Engine::Analytic),
            "asymptotic" => Ok(Engine::Asymptotic),
            other => Err(format!("sweep.engines: unknown engine {other:?}")),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::MonteCarlo => "monte-carlo",
            Engine::Analytic => "analytic",
            Engine::Asymptotic => "asymptotic",
        }
    }
}

/// A fully resolved sweep request.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    /// Optional tag appended to the variant column (used by presets
    /// that expand into families of sweeps, e.g. element counts).
    pub label: Option<String>,
    pub base: SystemConfig,
    pub axis: Axis,
    pub points: Vec<f64>,
    pub metrics: Vec<Metric>,
    pub variants: Vec<Variant>,
    pub engines: Vec<Engine>,
    pub trials: u64,
    pub seed: u64,
    pub qc: QuadConfig,
    pub overheads: PowerOverheads,
}

/// One output record.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis: &'static str,
    pub axis_value: f64,
    pub variant: String,
    pub user: &'static str,
    pub metric: &'static str,
    pub engine: &'static str,
    pub value: f64,
    pub std_error: f64,
    pub meta: String,
}

/// A per-cell engine failure; the sweep continues past it.
#[derive(Debug, Clone)]
pub struct SweepCellError {
    pub axis_value: f64,
    pub variant: String,
    pub message: String,
}

pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub errors: Vec<SweepCellError>,
}

fn mc_meta(trials: u64, seed: u64) -> String {
    format!("trials={trials};seed={seed}")
}

fn quad_meta(qc: &QuadConfig, flags: &str) -> String {
    let mut s = format!(
        "U={};I={};P={};K={}",
        qc.u_order, qc.i_order, qc.p_order, qc.k_order
    );
    s.push_str(flags);
    s
}

/// Run one sweep. Points are dispatched to the rayon pool; output rows
/// are ordered by (point, variant, user, metric, engine) regardless of
/// completion order.
pub fn run_sweep(spec: &SweepSpec) -> SweepOutput {
    let cells: Vec<(usize, f64)> = spec.points.iter().cloned().enumerate().collect();
    let per_point: Vec<(Vec<SweepRow>, Vec<SweepCellError>)> = cells
        .par_iter()
        .map(|&(_, axis_value)| run_point(spec, axis_value))
        .collect();
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (r, e) in per_point {
        rows.extend(r);
        errors.extend(e);
    }
    SweepOutput { rows, errors }
}

fn variant_label(spec: &SweepSpec, variant: Variant) -> String {
    match &spec.label {
        Some(tag) => format!("{}#{}", variant.as_str(), tag),
        None => variant.as_str().to_string(),
    }
}

fn run_point(spec: &SweepSpec, axis_value: f64) -> (Vec<SweepRow>, Vec<SweepCellError>) {
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for &variant in &spec.variants {
        let mut cfg = variant.apply(&spec.base);
        // Resolve the axis into a BS transmit power.
        match spec.axis {
            Axis::TransmitPowerDbm => cfg.p_s_mw = dbm_to_mw(axis_value),
            Axis::TotalPowerDbm => {
                match power_budget_split(
                    dbm_to_mw(axis_value),
                    variant.budget_scheme(),
                    &spec.overheads,
                    cfg.aris_elems,
                    cfg.pris_elems,
                ) {
                    Ok(p) => cfg.p_s_mw = p,
                    Err(e) => {
                        errors.push(SweepCellError {
                            axis_value,
                            variant: variant_label(spec, variant),
                            message: e.to_string(),
                        });
                        continue;
                    }
                }
            }
        }
        let lb = link_budget(&cfg);
        for &metric in &spec.metrics {
            for &engine in &spec.engines {
                match emit_cells(spec, &cfg, &lb, axis_value, variant, metric, engine) {
                    Ok(cells) => rows.extend(cells),
                    Err(msg) => errors.push(SweepCellError {
                        axis_value,
                        variant: variant_label(spec, variant),
                        message: msg,
                    }),
                }
            }
        }
    }
    (rows, errors)
}

#[allow(clippy::too_many_arguments)]
fn emit_cells(
    spec: &SweepSpec,
    cfg: &SystemConfig,
    lb: &duoris_core::system::LinkBudget,
    axis_value: f64,
    variant: Variant,
    metric: Metric,
    engine: Engine,
) -> Result<Vec<SweepRow>, String> {
    let qc = &spec.qc;
    let label = variant_label(spec, variant);
    let row = |user: &'static str, value: f64, std_error: f64, meta: String| SweepRow {
        axis: spec.axis.as_str(),
        axis_value,
        variant: label.clone(),
        user,
        metric: metric.as_str(),
        engine: engine.as_str(),
        value,
        std_error,
        meta,
    };
    let asym_meta = |flagged: &duoris_core::analytic::AsymOutage| {
        let mut flags = String::new();
        if flagged.regularized_2f1 {
            flags.push_str(";regularized-2f1");
        }
        if flagged.n_ne_m {
            flags.push_str(";n-ne-m");
        }
        quad_meta(qc, &flags)
    };
    let e = |err: duoris_core::analytic::AnalyticError| err.to_string();

    let mut out = Vec::new();
    match (metric, engine) {
        (Metric::Outage, Engine::MonteCarlo) => {
            for (user, tag) in [(User::Near, "n"), (User::Far, "m")] {
                let est = mc_outage(cfg, user, variant.scheme(), spec.trials, spec.seed);
                out.push(row(tag, est.value, est.std_error, mc_meta(spec.trials, spec.seed)));
            }
        }
        (Metric::Outage, Engine::Analytic) => {
            let (n, m) = match variant.scheme() {
                Scheme::Noma => {
                    let n = match cfg.sic {
                        Sic::Perfect => outage_dn_psic(cfg, lb, qc).map_err(e)?,
                        Sic::Imperfect => outage_dn_ipsic(cfg, lb, qc).map_err(e)?,
                    };
                    (n, outage_dm(cfg, lb, qc).map_err(e)?)
                }
                Scheme::Oma => (
                    outage_oma(cfg, lb, qc, User::Near).map_err(e)?,
                    outage_oma(cfg, lb, qc, User::Far).map_err(e)?,
                ),
            };
            out.push(row("n", n, 0.0, quad_meta(qc, "")));
            out.push(row("m", m, 0.0, quad_meta(qc, "")));
        }
        (Metric::Outage, Engine::Asymptotic) => {
            // Power-law asymptotes are raw tail expansions; clip them to
            // probability range for emission (as plots do).
            if variant.scheme() == Scheme::Noma {
                match cfg.sic {
                    Sic::Perfect => {
                        let v = asym_outage_dn_psic(cfg, lb, qc).map_err(e)?;
                        out.push(row("n", v.value.min(1.0), 0.0, asym_meta(&v)));
                    }
                    Sic::Imperfect => {
                        let v = asym_outage_dn_ipsic(cfg, lb, qc).map_err(e)?;
                        out.push(row("n", v, 0.0, quad_meta(qc, "")));
                    }
                }
                let v = asym_outage_dm(cfg, lb, qc).map_err(e)?;
                out.push(row("m", v.value.min(1.0), 0.0, asym_meta(&v)));
            }
            // No asymptotic outage family for the OMA baseline.
        }
        (Metric::ErgodicRate, Engine::MonteCarlo) => {
            for (user, tag) in [(User::Near, "n"), (User::Far, "m")] {
                let est = mc_ergodic_rate(cfg, user, variant.scheme(), spec.trials, spec.seed);
                out.push(row(tag, est.value, est.std_error, mc_meta(spec.trials, spec.seed)));
            }
        }
        (Metric::ErgodicRate, Engine::Analytic) => {
            let (n, m) = match variant.scheme() {
                Scheme::Noma => {
                    let n = match cfg.sic {
                        Sic::Perfect => ergodic_dn_psic(cfg, lb, qc).map_err(e)?,
                        Sic::Imperfect => ergodic_dn_ipsic(cfg, lb, qc).map_err(e)?,
                    };
                    (n, ergodic_dm(cfg, lb, qc).map_err(e)?)
                }
                Scheme::Oma => (
                    ergodic_oma(cfg, lb, qc, User::Near).map_err(e)?,
                    ergodic_oma(cfg, lb, qc, User::Far).map_err(e)?,
                ),
            };
            out.push(row("n", n, 0.0, quad_meta(qc, "")));
            out.push(row("m", m, 0.0, quad_meta(qc, "")));
        }
        (Metric::ErgodicRate, Engine::Asymptotic) => {
            if variant.scheme() == Scheme::Noma {
                let n = match cfg.sic {
                    // The pSIC rate grows without bound; its reference
                    // curve is the Jensen upper bound.
                    Sic::Perfect => ergodic_upper_dn_psic(cfg, lb).map_err(e)?,
                    Sic::Imperfect => asym_ergodic_dn_ipsic(cfg, lb, qc).map_err(e)?,
                };
                out.push(row("n", n, 0.0, quad_meta(qc, "")));
                let m = asym_ergodic_dm(cfg, lb, qc).map_err(e)?;
                out.push(row("m", m, 0.0, quad_meta(qc, "")));
            }
        }
        (Metric::ThroughputDl, Engine::MonteCarlo) => {
            let est = mc_throughput(cfg, ThroughputMode::DelayLimited, spec.trials, spec.seed);
            out.push(row("sum", est.value, est.std_error, mc_meta(spec.trials, spec.seed)));
        }
        (Metric::ThroughputDl, Engine::Analytic) => {
            let v = throughput(cfg, lb, qc, ThroughputMode::DelayLimited).map_err(e)?;
            out.push(row("sum", v, 0.0, quad_meta(qc, "")));
        }
        (Metric::ThroughputDt, Engine::MonteCarlo) => {
            let est = mc_throughput(cfg, ThroughputMode::DelayTolerant, spec.trials, spec.seed);
            out.push(row("sum", est.value, est.std_error, mc_meta(spec.trials, spec.seed)));
        }
        (Metric::ThroughputDt, Engine::Analytic) => {
            let v = throughput(cfg, lb, qc, ThroughputMode::DelayTolerant).map_err(e)?;
            out.push(row("sum", v, 0.0, quad_meta(qc, "")));
        }
        (Metric::ThroughputDl | Metric::ThroughputDt, Engine::Asymptotic) => {
            // Throughput has no asymptotic family.
        }
    }
    Ok(out)
}
