use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dirichlet::{hurwitz_zeta, EvalPolicy};
use crate::greens::{green_case4, Geometry, SPoint};
use crate::numerics::{adaptive_integrate, c, QuadratureSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistics {
    Fermi,
    Bose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumMethod {
    /// Sum of `log(1 +- n^{-beta/a})` over modes, with an integral tail.
    DirectProduct,
    /// Expansion of the logarithm into Hurwitz zeta values.
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoState {
    /// `log Z / beta`
    pub f: f64,
    pub u: f64,
    pub p: f64,
    pub n: f64,
}

fn check_beta(beta: f64, geom: &Geometry) -> Result<f64> {
    if !(beta > geom.a()) {
        return Err(Error::Divergence(format!(
            "mode sums diverge for beta <= a (beta = {beta}, a = {})",
            geom.a()
        )));
    }
    Ok(beta / geom.a())
}

/// `sum_{n>=1} h(n)`: the first `n_direct` terms exactly, the rest by the
/// midpoint rule `int_{N+1/2}^inf h + h'(N+1/2)/24`.
fn mode_sum<F: Fn(f64) -> f64>(h: F, n_direct: usize) -> Result<f64> {
    let n_direct = n_direct.max(1);
    let mut sum = 0.0;
    for n in (1..=n_direct).rev() {
        sum += h(n as f64);
    }
    let m = n_direct as f64 + 0.5;
    let spec = QuadratureSpec { abs_tol: 1e-16, rel_tol: 1e-12, ..QuadratureSpec::default() };
    // u = m e^v turns algebraic decay into exponential decay
    let integrand = |v: f64| {
        let u = m * v.exp();
        if u.is_finite() {
            c(h(u) * u, 0.0)
        } else {
            c(0.0, 0.0)
        }
    };
    let tail = adaptive_integrate(integrand, 0.0, f64::INFINITY, &spec)?.value.re;
    let d = 1e-3 * m;
    let slope = (h(m + d) - h(m - d)) / (2.0 * d);
    Ok(sum + tail + slope / 24.0)
}

/// One-particle partition function `(R/a)^{beta/a} zeta_H(beta/a, R/a)`,
/// continued below `beta = a`.
pub fn one_particle_z(beta: f64, geom: &Geometry) -> Result<f64> {
    let b = beta / geom.a();
    if b == 1.0 {
        return Err(Error::Pole("one-particle partition function has a pole at beta = a".into()));
    }
    let alpha = geom.r() / geom.a();
    Ok(alpha.powf(b) * hurwitz_zeta(c(b, 0.0), alpha, &EvalPolicy::default())?.re)
}

/// `sum_{n>=1} (a n / R + 1)^{-q}`.
fn excited_sum(q: f64, geom: &Geometry) -> Result<f64> {
    let alpha = geom.r() / geom.a();
    Ok(alpha.powf(q) * hurwitz_zeta(c(q, 0.0), alpha + 1.0, &EvalPolicy::default())?.re)
}

/// Grand canonical `log Z` over the modes `n >= 1` (the zero mode has zero
/// energy and is left out), with chemical potential `mu`.
///
/// `terms` is the number of explicit modes for [`SumMethod::DirectProduct`]
/// and the maximum number of logarithm-expansion terms for [`SumMethod::Series`].
pub fn grand_log_z(
    statistics: Statistics,
    beta: f64,
    mu: f64,
    geom: &Geometry,
    method: SumMethod,
    terms: usize,
) -> Result<f64> {
    let b = check_beta(beta, geom)?;
    if terms < 1 {
        return Err(Error::Invalid("need at least one term".into()));
    }
    let y = (beta * mu).exp();
    let ratio = geom.a() / geom.r();
    let first = y * (1.0 + ratio).powf(-b);
    if statistics == Statistics::Bose && first >= 1.0 {
        return Err(Error::Divergence("Bose occupation of the lowest mode diverges".into()));
    }
    match method {
        SumMethod::DirectProduct => {
            let h = |n: f64| {
                let v = y * (ratio * n).ln_1p().mul_add(-b, 0.0).exp();
                match statistics {
                    Statistics::Fermi => v.ln_1p(),
                    Statistics::Bose => -(-v).ln_1p(),
                }
            };
            mode_sum(h, terms)
        }
        SumMethod::Series => {
            if first >= 1.0 {
                return Err(Error::Domain("logarithm expansion needs y (1 + a/R)^{-beta/a} < 1".into()));
            }
            let mut sum = 0.0;
            let mut ym = 1.0;
            for m in 1..=terms {
                ym *= y;
                let mf = m as f64;
                let sign = match statistics {
                    Statistics::Fermi if m % 2 == 0 => -1.0,
                    _ => 1.0,
                };
                let term = sign * ym * excited_sum(mf * b, geom)? / mf;
                sum += term;
                if term.abs() < 1e-17 * sum.abs() {
                    break;
                }
            }
            Ok(sum)
        }
    }
}

/// Fermi gas observables at zero fugacity exponent, see
/// [`thermodynamics_with_fugacity`].
pub fn thermodynamics(beta: f64, geom: &Geometry, terms: usize) -> Result<ThermoState> {
    thermodynamics_with_fugacity(beta, 0.0, geom, terms)
}

/// `f = log Z / beta`, `U = -d log Z / d beta`, `P = (1/2 pi) dU/dR` and
/// `N = sum 1/(e^alpha + w_n^{beta/a})` over the modes `n >= 1`, with
/// `w_n = a n / R + 1`.
pub fn thermodynamics_with_fugacity(beta: f64, alpha: f64, geom: &Geometry, terms: usize) -> Result<ThermoState> {
    let b = check_beta(beta, geom)?;
    let (r, a) = (geom.r(), geom.a());
    let ratio = a / r;
    let ea = alpha.exp();
    let log_z = mode_sum(|n| (-alpha - b * (ratio * n).ln_1p()).exp().ln_1p(), terms)?;
    let u = mode_sum(
        |n| {
            let l = (ratio * n).ln_1p();
            l / (ea * (b * l).exp() + 1.0)
        },
        terms,
    )? / a;
    let p = mode_sum(
        |n| {
            let w = ratio * n + 1.0;
            let l = w.ln();
            let e = ea * (b * l).exp();
            (n / w) / (1.0 + e) * (l * b / (1.0 + e.recip()) - 1.0)
        },
        terms,
    )? / (2.0 * std::f64::consts::PI * r * r);
    let n = mode_sum(|n| 1.0 / (ea + (b * (ratio * n).ln_1p()).exp()), terms)?;
    Ok(ThermoState { f: log_z / beta, u, p, n })
}

/// Antiperiodic image sum `sum_{|m| <= m_max} (-1)^m g_4(x, s_m)` with
/// `s_m = (sigma + i t + m beta) / a`.
pub fn thermal_green(x: f64, t: f64, sigma: f64, beta: f64, geom: &Geometry, m_max: usize) -> Result<Complex64> {
    let a = geom.a();
    let on_pole = (x / geom.length()).fract() == 0.0;
    let mut sum = Complex64::zero();
    let m_max = m_max as i64;
    for m in -m_max..=m_max {
        let s = c(sigma + m as f64 * beta, t) / a;
        if on_pole && s == c(1.0, 0.0) {
            return Err(Error::Pole(format!(
                "thermal term m = {m} hits the Lerch pole (beta = (a - sigma)/m)"
            )));
        }
        let term = green_case4(x, &SPoint::continued(s, a)?, geom)?;
        if m % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}
