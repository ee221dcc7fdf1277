//! Special functions, densities, and deterministic numerical integration.

mod beta;
mod gamma;
mod quadrature;
mod student_t;

pub use beta::{log_beta, reg_inc_beta};
pub use gamma::log_gamma;
pub use quadrature::{integrate, integrate_with_budget, DEFAULT_PANEL_BUDGET};
pub use student_t::StudentT;

pub(crate) use beta::ln_beta_raw;

/// Natural log of π.
pub(crate) const LN_PI: f64 = 1.144_729_885_849_400_2;

/// `x * ln(y)` with the convention `0 * ln(0) = 0`.
pub(crate) fn xlogy(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}
