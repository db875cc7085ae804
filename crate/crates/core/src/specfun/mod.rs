//! Self-contained special functions and quadrature rules.
//!
//! Everything the closed-form evaluators need lives here: the gamma
//! family, modified Bessel functions, the half-order Laguerre polynomial
//! at negative argument, Gauss–Laguerre and Gauss–Chebyshev rules, and
//! the Gauss hypergeometric function at unit argument.
//!
//! All functions are pure and thread-safe; [`QuadRule`] values are
//! immutable once constructed and freely shareable.

mod bessel;
mod gamma;
mod hyp;
mod quad;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_k};
pub use gamma::{gamma_fn, ln_gamma, lower_incomplete_gamma, reg_lower_gamma};
pub use hyp::{gauss_2f1_unit, Hyp2f1Unit};
pub use quad::{gauss_chebyshev_nodes, gauss_laguerre_rule, QuadKind, QuadRule};

use thiserror::Error;

/// Errors from the special-function layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    /// Argument outside the supported domain.
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },
    /// Result does not fit in an `f64` (or the argument is below the
    /// documented underflow/overflow threshold).
    #[error("overflow in {func}: {msg}")]
    Overflow { func: &'static str, msg: String },
    /// An iterative scheme exhausted its iteration budget.
    #[error("no convergence in {0}")]
    NoConvergence(&'static str),
}

impl SpecFunError {
    fn domain(func: &'static str, msg: impl Into<String>) -> Self {
        SpecFunError::Domain {
            func,
            msg: msg.into(),
        }
    }

    fn overflow(func: &'static str, msg: impl Into<String>) -> Self {
        SpecFunError::Overflow {
            func,
            msg: msg.into(),
        }
    }
}

/// L_{1/2}(-kappa), the half-order Laguerre polynomial at negative
/// argument, via the closed form
/// `e^{-k/2} [(1+k) I_0(k/2) + k I_1(k/2)]`.
///
/// Strictly increasing in `kappa`; equals 1 at `kappa = 0`. Scaled
/// Bessel evaluations keep it finite for arbitrarily large Rician
/// factors.
pub fn laguerre_half_neg(kappa: f64) -> f64 {
    assert!(kappa >= 0.0, "laguerre_half_neg requires kappa >= 0");
    let x = 0.5 * kappa;
    // e^{-k/2} I_n(k/2) directly, so the e^{k/2} growth never materializes.
    let i0 = bessel_i_scaled(0, x);
    let i1 = bessel_i_scaled(1, x);
    (1.0 + kappa) * i0 + kappa * i1
}
