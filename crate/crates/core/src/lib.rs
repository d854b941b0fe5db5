//! Numerics for the Lerch zeta function viewed as the propagator of a
//! 1+1 dimensional fermion with logarithmic dispersion `E = log(1 + a p) / a`.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: complex helpers, log-gamma, incomplete gamma, adaptive
//!   Gauss-Kronrod quadrature and exact q-series.
//! * [`dirichlet`]: Hurwitz and Lerch zeta functions, the zeta/eta/lambda/beta
//!   family, theta functions and functional-equation residuals.
//! * [`greens`]: two-point functions for every dispersion case, periodization
//!   and closed-form endpoints.
//! * [`transitions`]: mixing-state transition probabilities and scans.
//! * [`statmech`]: partition functions, thermodynamics, thermal Green's
//!   functions and multiplicative partitions.
//! * [`zeros`]: Hardy function, zero location, zero counting and the
//!   theta-integral / duality identities.
//! * [`string_series`]: Dirichlet series with string degeneracies.
//!
//! Grid scans run through [`par`], which uses rayon when the `parallel`
//! feature is on and plain iterators otherwise. Output order never depends on
//! the execution mode.

pub mod dirichlet;
pub mod error;
pub mod greens;
pub mod numerics;
pub mod par;
pub mod scan;
pub mod statmech;
pub mod string_series;
pub mod transitions;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
