//! Foundation numerics shared by every other module.

pub mod complex;
pub mod gamma;
pub mod qseries;
pub mod quad;

pub use complex::{c, cpow, expm1, rpow};
pub use gamma::{exp_integral_e, gamma, incomplete_gamma_upper, log_gamma, lower_gamma_series};
pub use qseries::{eta_product_expand, QSeries, Sign, Step};
pub use quad::{adaptive_integrate, QuadratureSpec, Quadrature, Transform};
