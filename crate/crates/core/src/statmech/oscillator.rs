use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::dirichlet::{lerch_phi, EvalPolicy, LerchArgs};
use crate::numerics::rpow;
use crate::{Error, Result};

const MAX_DIRECT_TERMS: usize = 10_000_000;

/// Partition function of the logarithmic oscillator,
/// `z = sum_{n>=0} e^{-mu n} (a omega (n + 1/2) + 1)^{-beta/a}`.
///
/// Imaginary `mu` is a Lerch twist, `z = (a omega)^{-beta/a} phi(x, beta/a, 1/(a omega) + 1/2)`
/// with `e^{2 pi i x} = e^{-mu}`. A damping `Re mu > 0` is summed directly.
pub fn log_oscillator_z(beta: Complex64, mu: Complex64, a_omega: f64, a: f64) -> Result<Complex64> {
    if !(a > 0.0) || !(a_omega > 0.0) {
        return Err(Error::Domain("need a > 0 and a omega > 0".into()));
    }
    let s = beta / a;
    let alpha = 1.0 / a_omega + 0.5;
    if mu.re < 0.0 {
        return Err(Error::Domain("Re mu < 0 makes the level sum grow".into()));
    }
    if mu.re == 0.0 {
        let args = LerchArgs::new(-mu.im / (2.0 * PI), s, alpha)?;
        return Ok(rpow(a_omega, -s) * lerch_phi(&args, &EvalPolicy::default())?);
    }
    let ratio = (-mu.re).exp();
    let mut sum = Complex64::zero();
    for n in 0..MAX_DIRECT_TERMS {
        let nf = n as f64;
        let base = a_omega * (nf + 0.5) + 1.0;
        let term = (-mu * nf).exp() * rpow(base, -s);
        sum += term;
        // past the peak of the power envelope the tail is below a geometric series
        let envelope_falling = s.re >= 0.0 || (1.0 + a_omega / base).powf(-s.re) * ratio < 1.0;
        if envelope_falling && term.norm() / (1.0 - ratio) < 1e-16 * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence(format!("oscillator sum not converged after {MAX_DIRECT_TERMS} levels")))
}

/// Classical period `(2 pi / omega) e^{a E}` with
/// `e^{a E} = a (p0^2 / 2m + m omega^2 q0^2 / 2) + 1`.
pub fn oscillator_period(q0: f64, p0: f64, m: f64, omega: f64, a: f64) -> Result<f64> {
    if !(m > 0.0 && omega > 0.0 && a >= 0.0) {
        return Err(Error::Domain("need m, omega > 0 and a >= 0".into()));
    }
    let h = p0 * p0 / (2.0 * m) + 0.5 * m * omega * omega * q0 * q0;
    Ok(2.0 * PI / omega * (a * h + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::numerics::c;

    #[test]
    fn damped_sum_polynomial_levels() {
        // beta = -a turns the levels into a(n + 1/2) omega + 1, an arithmetico-geometric series
        let mu = c(0.7, 0.3);
        let r = (-mu).exp();
        let aw = 2.0;
        let want = (aw / 2.0 + 1.0) / (1.0 - r) + aw * r / ((1.0 - r) * (1.0 - r));
        let got = log_oscillator_z(c(-1.0, 0.0), mu, aw, 1.0).unwrap();
        assert!((got - want).norm() < 1e-13 * want.norm());
    }
}
