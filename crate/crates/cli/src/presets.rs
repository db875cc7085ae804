//! Named sweep presets reproducing the reference result curves
//! (`fig2` … `fig11`). Each preset expands into one or more sweeps;
//! family presets (element counts, fading shapes) tag the variant
//! column per member.
//!
//! Budget-axis presets (`fig3`, `fig8`, `fig10`) depend on the
//! overhead constants, which are documented config inputs rather than
//! published values, so their reproductions are about orderings, not
//! absolute positions. The same goes for `fig6` (long-distance
//! scenario), where absolute curve positions follow the path-loss
//! calibration; its checks are slopes and orderings only.

use crate::config::load_config_str;
use crate::sweep::{Axis, Engine, Metric, SweepSpec, Variant};

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig2",
        description: "outage vs BS transmit power: NOMA pSIC/ipSIC vs OMA, with asymptotes",
    },
    Preset {
        name: "fig3",
        description: "outage vs total power budget: active user-side surface vs double-passive",
    },
    Preset {
        name: "fig4",
        description: "outage vs transmit power for element counts M = N in {3, 5, 7}",
    },
    Preset {
        name: "fig5",
        description: "outage vs transmit power for fading shapes m in {1, 2, 3}",
    },
    Preset {
        name: "fig6",
        description: "outage vs transmit power, long-distance scenario (km-scale links)",
    },
    Preset {
        name: "fig7",
        description: "ergodic rate vs transmit power: NOMA vs OMA, with high-power references",
    },
    Preset {
        name: "fig8",
        description: "ergodic rate vs total power budget: active vs double-passive",
    },
    Preset {
        name: "fig9",
        description: "ergodic rate vs transmit power for element counts M = N in {3, 5, 7}",
    },
    Preset {
        name: "fig10",
        description: "delay-limited throughput vs total power budget, all variants",
    },
    Preset {
        name: "fig11",
        description: "delay-tolerant throughput vs transmit power for M = N in {3, 5}",
    },
];

fn base(points: &[f64], metrics: &[Metric], variants: &[Variant], engines: &[Engine]) -> SweepSpec {
    let mut spec = load_config_str("").expect("defaults are valid");
    spec.points = points.to_vec();
    spec.metrics = metrics.to_vec();
    spec.variants = variants.to_vec();
    spec.engines = engines.to_vec();
    spec
}

fn steps(from: i32, to: i32, step: i32) -> Vec<f64> {
    (from..=to).step_by(step as usize).map(f64::from).collect()
}

/// Expand a preset name into its sweeps. Unknown names return `None`.
pub fn resolve_preset(name: &str) -> Option<Vec<SweepSpec>> {
    let all_engines = [Engine::MonteCarlo, Engine::Analytic, Engine::Asymptotic];
    let two_engines = [Engine::MonteCarlo, Engine::Analytic];
    let spec = match name {
        "fig2" => vec![base(
            &steps(-10, 30, 5),
            &[Metric::Outage],
            &[Variant::NomaPsic, Variant::NomaIpsic, Variant::Oma],
            &all_engines,
        )],
        "fig3" => vec![base(
            &steps(18, 42, 3),
            &[Metric::Outage],
            &[Variant::NomaPsic, Variant::NomaIpsic, Variant::DoublePris],
            &two_engines,
        )]
        .into_iter()
        .map(|mut s| {
            s.axis = Axis::TotalPowerDbm;
            s
        })
        .collect(),
        "fig4" => family(
            &[3, 5, 7],
            |spec, elems| {
                spec.base.aris_elems = elems;
                spec.base.pris_elems = elems;
                spec.label = Some(format!("mn{elems}"));
            },
            || {
                base(
                    &steps(-10, 30, 5),
                    &[Metric::Outage],
                    &[Variant::NomaPsic, Variant::NomaIpsic],
                    &all_engines,
                )
            },
        ),
        "fig5" => family(
            &[1, 2, 3],
            |spec, shape| {
                spec.base.fading.m_na = shape as f64;
                spec.label = Some(format!("mna{shape}"));
            },
            || {
                base(
                    &steps(-10, 30, 5),
                    &[Metric::Outage],
                    &[Variant::NomaPsic, Variant::NomaIpsic],
                    &two_engines,
                )
            },
        ),
        "fig6" => family(
            &[5, 7],
            |spec, elems| {
                spec.base.aris_elems = elems;
                spec.base.pris_elems = elems;
                spec.base.d_h1 = 1000.0;
                spec.base.d_h2 = 1000.0;
                spec.base.d_g1 = 1000.0;
                spec.base.d_gn = 800.0;
                spec.base.d_gm = 1800.0;
                // km-scale links need their own per-hop constant for the
                // curves to sit in the plotted window (the four-hop
                // budget otherwise swamps any feasible transmit power).
                // Slopes and orderings are the deliverable here, not
                // absolute positions.
                spec.base.eta = duoris_core::system::db_to_linear(44.0);
                spec.label = Some(format!("mn{elems}"));
            },
            || {
                base(
                    &steps(-10, 30, 5),
                    &[Metric::Outage],
                    &[Variant::NomaPsic, Variant::NomaIpsic],
                    &two_engines,
                )
            },
        ),
        "fig7" => vec![base(
            &steps(0, 50, 5),
            &[Metric::ErgodicRate],
            &[Variant::NomaPsic, Variant::NomaIpsic, Variant::Oma],
            &all_engines,
        )],
        "fig8" => vec![base(
            &steps(18, 48, 3),
            &[Metric::ErgodicRate],
            &[Variant::NomaPsic, Variant::NomaIpsic, Variant::DoublePris],
            &two_engines,
        )]
        .into_iter()
        .map(|mut s| {
            s.axis = Axis::TotalPowerDbm;
            s
        })
        .collect(),
        "fig9" => family(
            &[3, 5, 7],
            |spec, elems| {
                spec.base.aris_elems = elems;
                spec.base.pris_elems = elems;
                spec.label = Some(format!("mn{elems}"));
            },
            || {
                base(
                    &steps(0, 50, 5),
                    &[Metric::ErgodicRate],
                    &[Variant::NomaPsic, Variant::NomaIpsic],
                    &two_engines,
                )
            },
        ),
        "fig10" => vec![base(
            &steps(18, 45, 3),
            &[Metric::ThroughputDl],
            &[
                Variant::NomaPsic,
                Variant::NomaIpsic,
                Variant::Oma,
                Variant::DoublePris,
            ],
            &two_engines,
        )]
        .into_iter()
        .map(|mut s| {
            s.axis = Axis::TotalPowerDbm;
            s
        })
        .collect(),
        "fig11" => family(
            &[3, 5],
            |spec, elems| {
                spec.base.aris_elems = elems;
                spec.base.pris_elems = elems;
                spec.label = Some(format!("mn{elems}"));
            },
            || {
                base(
                    &steps(-10, 40, 5),
                    &[Metric::ThroughputDt],
                    &[Variant::NomaPsic, Variant::NomaIpsic],
                    &two_engines,
                )
            },
        ),
        _ => return None,
    };
    Some(spec)
}

fn family<T: Copy>(
    members: &[T],
    mutate: impl Fn(&mut SweepSpec, T),
    proto: impl Fn() -> SweepSpec,
) -> Vec<SweepSpec> {
    members
        .iter()
        .map(|&m| {
            let mut spec = proto();
            mutate(&mut spec, m);
            spec
        })
        .collect()
}
