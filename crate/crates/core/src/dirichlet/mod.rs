//! The zeta family: Lerch, Hurwitz, Riemann, eta, lambda, beta, plus Jacobi
//! theta functions and functional-equation residuals.

mod functions;
mod lerch;
mod theta;

pub use functions::{
    dirichlet_function, eta, hurwitz_functional_rhs, lerch_functional_residual, lerch_functional_rhs,
    riemann_zeta, zeta_functional_residual, DirichletKind,
};
pub use lerch::{hurwitz_zeta, lerch_phi, lerch_theta_pair};
pub use theta::{theta_function, ThetaKind};

use num_complex::Complex64;

use crate::{Error, Result};

/// Representation used to evaluate a zeta-family function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Direct partial sums; for a nonzero twist the oscillating series is
    /// accelerated, so `Re s > 0` suffices.
    Series,
    EulerMaclaurin,
    /// Evaluate through the functional equation from `1 - s`.
    FunctionalEquation,
    /// Mellin integral `Gamma(s)^{-1} int w^{s-1} e^{-alpha w} / (1 - e^{2 pi i x - w}) dw`.
    Integral,
    /// Theta-function integral (Riemann zeta only, `Re s > 2`).
    ThetaIntegral,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPolicy {
    pub method: Method,
    pub max_terms: usize,
    /// Number of Bernoulli correction terms in the untwisted Euler-Maclaurin tail.
    pub em_order: usize,
    pub tail_tol: f64,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        Self { method: Method::Auto, max_terms: 2_000_000, em_order: 8, tail_tol: 1e-15 }
    }
}

impl EvalPolicy {
    pub fn with_method(method: Method) -> Self {
        Self { method, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(Error::Invalid("max_terms must be at least 1".into()));
        }
        if self.em_order < 2 || self.em_order > 20 || self.em_order % 2 != 0 {
            return Err(Error::Invalid("em_order must be even and in 2..=20".into()));
        }
        if !(self.tail_tol > 0.0) {
            return Err(Error::Invalid("tail_tol must be positive".into()));
        }
        Ok(())
    }
}

/// Arguments of `phi(x, s, alpha) = sum_{n>=0} e^{2 pi i n x} (n + alpha)^{-s}`.
/// The twist `x` is reduced into `[0, 1)` on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchArgs {
    x: f64,
    pub s: Complex64,
    alpha: f64,
}

impl LerchArgs {
    pub fn new(x: f64, s: Complex64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("Lerch shift alpha must be positive, got {alpha}")));
        }
        if !x.is_finite() || !s.re.is_finite() || !s.im.is_finite() {
            return Err(Error::Domain("non-finite Lerch argument".into()));
        }
        let mut xr = x.rem_euclid(1.0);
        if xr >= 1.0 {
            xr = 0.0;
        }
        Ok(Self { x: xr, s, alpha })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Twist folded into `(-1/2, 1/2]`.
    pub(crate) fn centered_x(&self) -> f64 {
        if self.x > 0.5 {
            self.x - 1.0
        } else {
            self.x
        }
    }
}
