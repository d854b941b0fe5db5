//! Critical-line machinery (Riemann-Siegel theta, Hardy's Z, zero location
//! and counting) and the theta-integral and duality identities.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirichlet::{eta, lerch_functional_residual, riemann_zeta, EvalPolicy, LerchArgs};
use crate::greens::{Geometry, SPoint};
use crate::numerics::{adaptive_integrate, c, gamma, log_gamma, rpow, QuadratureSpec};
use crate::{par, Error, Result};

/// Bisection stops once the bracket is this narrow.
const BISECTION_WIDTH: f64 = 1e-10;
/// Largest step of the phase walk used by [`zero_count`].
const PHASE_STEP: f64 = 0.1;
/// Abscissa of the vertical phase walk, off the critical line so the phase
/// of zeta stays continuous.
const PHASE_SIGMA: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub index: usize,
    pub t: f64,
    #[serde(rename = "err")]
    pub refinement_error: f64,
}

/// Zeros found on a grid, with a warning when the count disagrees with
/// [`zero_count`] (usually a close pair the grid stepped over).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroScan {
    pub zeros: Vec<ZeroRecord>,
    pub expected: usize,
    pub warning: Option<String>,
}

/// `theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log pi`.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    Ok(log_gamma(c(0.25, 0.5 * t))?.im - 0.5 * t * PI.ln())
}

/// Hardy's `Z(t) = e^{i theta(t)} zeta(1/2 + i t)`, real for real `t`.
pub fn hardy_function(t: f64) -> Result<f64> {
    let z = riemann_zeta(c(0.5, t), &EvalPolicy::default())?;
    let v = c(0.0, riemann_siegel_theta(t)?).exp() * z;
    if v.im.abs() > 1e-10 * z.norm().max(1.0) {
        return Err(Error::Tolerance { estimate: v, achieved: v.im.abs() });
    }
    Ok(v.re)
}

fn bisect(mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<(f64, f64)> {
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let f_mid = hardy_function(mid)?;
        if f_mid == 0.0 {
            return Ok((mid, 0.0));
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), 0.5 * (hi - lo)))
}

/// Zeros of `zeta(1/2 + i t)` in `[t_lo, t_hi]` from sign changes of Hardy's
/// function on a grid of width `step`, each refined by bisection.
pub fn find_zeros(t_lo: f64, t_hi: f64, step: f64) -> Result<Vec<ZeroRecord>> {
    Ok(find_zeros_checked(t_lo, t_hi, step)?.zeros)
}

/// [`find_zeros`] plus a cross-check against [`zero_count`].
pub fn find_zeros_checked(t_lo: f64, t_hi: f64, step: f64) -> Result<ZeroScan> {
    if !(t_lo >= 0.0 && t_hi > t_lo) {
        return Err(Error::Invalid(format!("need 0 <= t_lo < t_hi, got [{t_lo}, {t_hi}]")));
    }
    if !(step > 0.0 && step <= 0.5) {
        return Err(Error::Invalid(format!("grid step must lie in (0, 0.5], got {step}")));
    }
    let cells = ((t_hi - t_lo) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=cells).map(|k| (t_lo + k as f64 * step).min(t_hi)).collect();
    let values = par::map(&grid, |&t| hardy_function(t)).into_iter().collect::<Result<Vec<f64>>>()?;
    let brackets: Vec<usize> = (0..cells).filter(|&k| values[k] != 0.0 && values[k] * values[k + 1] <= 0.0).collect();
    let refined = par::map(&brackets, |&k| {
        if values[k + 1] == 0.0 {
            Ok((grid[k + 1], 0.0))
        } else {
            bisect(grid[k], grid[k + 1], values[k])
        }
    })
    .into_iter()
    .collect::<Result<Vec<(f64, f64)>>>()?;
    let below = if t_lo > 0.0 { zero_count(t_lo)? } else { 0 };
    let zeros: Vec<ZeroRecord> = refined
        .into_iter()
        .enumerate()
        .map(|(i, (t, err))| ZeroRecord { index: below + i + 1, t, refinement_error: err })
        .collect();
    let expected = zero_count(t_hi)? - below;
    let warning = (expected != zeros.len()).then(|| {
        format!(
            "located {} zeros but the phase count gives {expected}; refine the grid step",
            zeros.len()
        )
    });
    Ok(ZeroScan { zeros, expected, warning })
}

/// Number of zeros with `0 < t <= T`,
/// `N(T) = theta(T)/pi + 1 + arg zeta(1/2 + i T)/pi`.
///
/// The argument is followed continuously from `arg zeta(s) = -pi` just above
/// the real axis, up the line `Re s = 0.6` and then across to the critical
/// line, with adaptive steps so the unwrapping never skips a branch.
pub fn zero_count(t: f64) -> Result<usize> {
    if !(t > 0.0) {
        return Err(Error::Invalid(format!("zero count needs T > 0, got {t}")));
    }
    let policy = EvalPolicy::default();
    let on_line = riemann_zeta(c(0.5, t), &policy)?;
    if on_line.norm() < 1e-10 {
        return Err(Error::Domain(format!("T = {t} is a zero ordinate")));
    }
    let mut arg = -PI;
    let mut prev = riemann_zeta(c(PHASE_SIGMA, 0.0), &policy)?;
    let walk = |from: Complex64, to: Complex64, prev: &mut Complex64, arg: &mut f64| -> Result<()> {
        let mut pos = 0.0;
        let mut h = (PHASE_STEP / (to - from).norm()).min(1.0);
        while pos < 1.0 {
            let next = (pos + h).min(1.0);
            let z = riemann_zeta(from + (to - from) * next, &policy)?;
            let d = (z / *prev).arg();
            if d.abs() > PI / 4.0 && h > 1e-9 {
                h *= 0.5;
                continue;
            }
            *arg += d;
            *prev = z;
            pos = next;
            h = (h * 2.0).min(PHASE_STEP / (to - from).norm());
        }
        Ok(())
    };
    walk(c(PHASE_SIGMA, 0.0), c(PHASE_SIGMA, t), &mut prev, &mut arg)?;
    walk(c(PHASE_SIGMA, t), c(0.5, t), &mut prev, &mut arg)?;
    let n = riemann_siegel_theta(t)? / PI + 1.0 + arg / PI;
    Ok(n.round().max(0.0) as usize)
}

/// Quadrature and closed form of
/// `(1/2) int_0^inf dC C^{s/2-1} (theta_3 - theta_2 - theta_4)(iC)
///  = (2^s - 1)(2^{1-s} - 1) pi^{-s/2} Gamma(s/2) zeta(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaZetaCheck {
    pub quadrature: Complex64,
    pub quadrature_error: f64,
    pub closed_form: Complex64,
}

impl ThetaZetaCheck {
    pub fn relative_error(&self) -> f64 {
        (self.quadrature - self.closed_form).norm() / self.closed_form.norm()
    }
}

/// `theta_3 - theta_4 - theta_2` at nome `e^{-pi u}` for `u >= 1`, summed
/// without cancellation: `4 sum_{odd n} q^{n^2} - 2 sum_{n>=0} q^{(n+1/2)^2}`.
fn theta_combination(u: f64) -> f64 {
    let mut sum = 0.0;
    for n in 0.. {
        let odd = 2.0 * n as f64 + 1.0;
        let half = n as f64 + 0.5;
        let odd_term = 4.0 * (-PI * u * odd * odd).exp();
        let half_term = 2.0 * (-PI * u * half * half).exp();
        sum += odd_term - half_term;
        if half_term <= 1e-18 * sum.abs() || half_term == 0.0 {
            break;
        }
    }
    sum
}

/// The integrand is folded onto `[1, inf)` with the modular relations
/// `theta_3(i/u) = sqrt(u) theta_3(iu)` and `theta_2 <-> theta_4`, then
/// integrated in `C = e^phi`.
pub fn theta_integral_zeta(s: Complex64, spec: &QuadratureSpec) -> Result<ThetaZetaCheck> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("theta integral evaluated for Re s > 0, got {s}")));
    }
    // the integral is of the size of its gamma and power factors; zeta can vanish
    let scale = (rpow(2.0, s) - 1.0) * rpow(PI, -0.5 * s) * gamma(0.5 * s)?;
    let closed_form = -scale * eta(s, &EvalPolicy::default())?;
    let integrand = |phi: f64| {
        let u = phi.exp();
        if !u.is_finite() {
            return c(0.0, 0.0);
        }
        let weight = (0.5 * s * phi).exp() + (0.5 * (1.0 - s) * phi).exp();
        weight * theta_combination(u)
    };
    let scaled = QuadratureSpec { abs_tol: spec.abs_tol * scale.norm().max(1e-300), ..*spec };
    let q = adaptive_integrate(integrand, 0.0, f64::INFINITY, &scaled)?;
    Ok(ThetaZetaCheck { quadrature: 0.5 * q.value, quadrature_error: 0.5 * q.error, closed_form })
}

/// Radii and positions related by the Lerch functional equation:
/// `R' = a x / (2 pi R)` at `x' = x` and `R'' = a - R'` at `x'' = 2 pi R - x`,
/// both with `t -> -t` and `sigma -> a - sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualityMap {
    pub r_prime: f64,
    pub x_prime: f64,
    pub r_double_prime: f64,
    pub x_double_prime: f64,
    pub sigma_rule: &'static str,
}

pub fn duality_map(x: f64, geom: &Geometry) -> Result<DualityMap> {
    let (r, a) = (geom.r(), geom.a());
    if !(x > 0.0 && x < 2.0 * PI * r) {
        return Err(Error::Domain(format!("duality map needs 0 < x < 2 pi R, got {x}")));
    }
    let r_prime = a * x / (2.0 * PI * r);
    Ok(DualityMap {
        r_prime,
        x_prime: x,
        r_double_prime: a - r_prime,
        x_double_prime: 2.0 * PI * r - x,
        sigma_rule: "sigma' = sigma'' = a - sigma, t' = t'' = -t",
    })
}

/// Absolute residual of
/// `phi(x/2piR, 1 - s, R/a) = (2 pi)^{-s} Gamma(s) [e^{i pi s/2} e^{-i x/a} phi(-R/a, s, R'/a)
///  + e^{-i pi s/2} e^{i 2 pi (R/a)(1 - x/2piR)} phi(R/a, s, R''/a)]`.
///
/// For `R > a` the finite-shift correction of the functional equation is
/// included.
pub fn duality_residual(x: f64, pt: &SPoint, geom: &Geometry) -> Result<f64> {
    duality_map(x, geom)?;
    let args = LerchArgs::new(x / geom.length(), pt.s(), geom.r() / geom.a())?;
    lerch_functional_residual(&args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_is_odd() {
        for t in [0.5, 3.0, 17.0] {
            assert!((riemann_siegel_theta(-t).unwrap() + riemann_siegel_theta(t).unwrap()).abs() < 1e-13);
        }
        assert_eq!(riemann_siegel_theta(0.0).unwrap(), 0.0);
    }

    #[test]
    fn theta_combination_decays() {
        assert!(theta_combination(1.0).abs() < 1.0);
        // for large u only -2 q^{1/4} from theta_2 is left
        let lead = -2.0 * (-PI * 40.0 / 4.0).exp();
        assert!((theta_combination(40.0) / lead - 1.0).abs() < 1e-12);
    }
}
