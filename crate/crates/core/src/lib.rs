//! Performance toolkit for double reconfigurable-surface NOMA downlinks.
//!
//! The link under study is a four-hop cascade: base station → passive
//! reflecting surface → amplify-and-forward relay → active reflecting
//! surface → user, with two power-domain NOMA users (a nearby user served
//! with the smaller power share and a distant user with the larger one).
//! Per-hop small-scale fading is Nakagami-m on the outer hops and Rician
//! between the surfaces; coherent phase alignment turns each two-hop
//! segment into a magnitude sum of per-element channel products.
//!
//! Two engines evaluate the same metrics and cross-validate each other:
//!
//! * [`mcsim`]: a trial-level Monte Carlo simulator with reproducible,
//!   counter-seeded parallel streams;
//! * [`analytic`]: closed-form and asymptotic evaluators built on
//!   moment-matched series approximations of the cascade gain statistics
//!   and Gauss–Laguerre / Gauss–Chebyshev quadrature.
//!
//! Supporting layers: [`specfun`] (self-contained special functions and
//! quadrature rules), [`channel`] (fading variate generation and cascade
//! statistics), [`system`] (scenario parameterization, link budget and
//! instantaneous SINRs), and [`rng`] (the splittable counter-based
//! generator both engines share).

pub mod analytic;
pub mod channel;
pub mod mcsim;
pub mod rng;
pub mod specfun;
pub mod system;

pub use channel::{CascadeApprox, FadingParams, TrialDraw};
pub use mcsim::{MetricEstimate, MetricKind, MetricMethod};
pub use rng::CounterRng;
pub use specfun::{QuadKind, QuadRule};
pub use system::{LinkBudget, NoiseNormModel, Sic, SystemConfig, User};
