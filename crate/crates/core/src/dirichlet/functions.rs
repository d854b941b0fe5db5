//! Zeta family, functional equations and their residuals.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::lerch::lerch_phi;
use super::{EvalPolicy, LerchArgs, Method};
use crate::numerics::{c, expm1, gamma, rpow};
use crate::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirichletKind {
    Zeta,
    Eta,
    Lambda,
    Beta,
}

pub fn riemann_zeta(s: Complex64, policy: &EvalPolicy) -> Result<Complex64> {
    super::hurwitz_zeta(s, 1.0, policy)
}

/// Alternating zeta `eta(s) = (1 - 2^{1-s}) zeta(s)`, finite at `s = 1`.
pub fn eta(s: Complex64, policy: &EvalPolicy) -> Result<Complex64> {
    if s == c(1.0, 0.0) {
        return Ok(c(LN_2, 0.0));
    }
    // 1 - 2^{1-s} = -expm1((1-s) ln 2) keeps the factor accurate near s = 1
    Ok(-expm1((1.0 - s) * LN_2) * riemann_zeta(s, policy)?)
}

pub fn dirichlet_function(kind: DirichletKind, s: Complex64, policy: &EvalPolicy) -> Result<Complex64> {
    match kind {
        DirichletKind::Zeta => riemann_zeta(s, policy),
        DirichletKind::Eta => eta(s, policy),
        DirichletKind::Lambda => {
            if s == c(1.0, 0.0) {
                return Err(Error::Pole("lambda has a simple pole at s = 1".into()));
            }
            Ok(-expm1(-s * LN_2) * riemann_zeta(s, policy)?)
        }
        DirichletKind::Beta => {
            let phi = lerch_phi(&LerchArgs::new(0.5, s, 0.5)?, policy)?;
            Ok(rpow(2.0, -s) * phi)
        }
    }
}

fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// `e^{i pi s / 2}` without overflow issues for moderate `Im s`.
fn half_turn(s: Complex64, sign: f64) -> Complex64 {
    (c(0.0, sign * 0.5 * PI) * s).exp()
}

/// Right side of the Lerch functional equation, returning `phi(x, 1 - s, alpha)`
/// for `0 < x < 1` from two evaluations at `s`.
///
/// For `alpha = alpha0 + m` with `alpha0` in `(0, 1]` the finite shift
/// `phi(x, w, alpha0 + m) = e^{-2 pi i m x} (phi(x, w, alpha0) - sum_{j<m} e^{2 pi i j x} (j + alpha0)^{-w})`
/// is applied on top.
pub fn lerch_functional_rhs(x: f64, s: Complex64, alpha: f64, policy: &EvalPolicy) -> Result<Complex64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("Lerch functional equation needs 0 < x < 1, got {x}")));
    }
    let (alpha0, m) = split_shift(alpha)?;
    let g = gamma(s)? * rpow(TWO_PI, -s);
    let a = half_turn(s, 1.0) * cis(-TWO_PI * alpha0 * x) * lerch_phi(&LerchArgs::new(-alpha0, s, x)?, policy)?;
    let b = half_turn(s, -1.0)
        * cis(TWO_PI * alpha0 * (1.0 - x))
        * lerch_phi(&LerchArgs::new(alpha0, s, 1.0 - x)?, policy)?;
    let base = g * (a + b);
    if m == 0 {
        return Ok(base);
    }
    let mut head = Complex64::zero();
    for j in 0..m {
        head += cis(TWO_PI * ((j as f64 - m as f64) * x).fract()) * rpow(j as f64 + alpha0, s - 1.0);
    }
    Ok(cis(-TWO_PI * (m as f64 * x).fract()) * base - head)
}

/// `zeta_H(1 - s, alpha)` from the Hurwitz functional equation
/// `Gamma(s) (2 pi)^{-s} (e^{-i pi s/2} F(alpha, s) + e^{i pi s/2} F(-alpha, s))`
/// with `F(b, s) = sum_{n>=1} e^{2 pi i n b} n^{-s}`.
pub fn hurwitz_functional_rhs(s: Complex64, alpha: f64, policy: &EvalPolicy) -> Result<Complex64> {
    let (alpha0, m) = split_shift(alpha)?;
    let f = |b: f64| -> Result<Complex64> { Ok(cis(TWO_PI * b) * lerch_phi(&LerchArgs::new(b, s, 1.0)?, policy)?) };
    let base = gamma(s)? * rpow(TWO_PI, -s) * (half_turn(s, -1.0) * f(alpha0)? + half_turn(s, 1.0) * f(-alpha0)?);
    let mut head = Complex64::zero();
    for j in 0..m {
        head += rpow(j as f64 + alpha0, s - 1.0);
    }
    Ok(base - head)
}

fn split_shift(alpha: f64) -> Result<(f64, usize)> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
    }
    let m = alpha.ceil() - 1.0;
    Ok((alpha - m, m as usize))
}

/// `|phi(x, 1 - s, alpha) - rhs|` with the left side from direct
/// Euler-Maclaurin and the right side from the two-term functional equation.
pub fn lerch_functional_residual(args: &LerchArgs) -> Result<f64> {
    let policy = EvalPolicy::with_method(Method::EulerMaclaurin);
    let lhs = lerch_phi(&LerchArgs::new(args.x(), 1.0 - args.s, args.alpha())?, &policy)?;
    let rhs = if args.x() == 0.0 {
        hurwitz_functional_rhs(args.s, args.alpha(), &policy)?
    } else {
        lerch_functional_rhs(args.x(), args.s, args.alpha(), &policy)?
    };
    Ok((lhs - rhs).norm())
}

/// Residual of the symmetric form
/// `pi^{-s/2} Gamma(s/2) zeta(s) = pi^{-(1-s)/2} Gamma((1-s)/2) zeta(1-s)`.
pub fn zeta_functional_residual(s: Complex64, policy: &EvalPolicy) -> Result<f64> {
    let side = |w: Complex64| -> Result<Complex64> {
        Ok((-0.5 * w * PI.ln()).exp() * gamma(0.5 * w)? * riemann_zeta(w, policy)?)
    };
    Ok((side(s)? - side(1.0 - s)?).norm())
}
