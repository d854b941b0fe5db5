//! Log-gamma, gamma, the generalized exponential integral and the upper
//! incomplete gamma function for complex arguments.

use num_complex::Complex64;
use num_traits::Zero;

use super::complex::{cpow, is_nonpositive_integer};
use crate::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Bernoulli numbers `B_{2k}` for `k = 0..=20`.
pub const BERNOULLI_2K: [f64; 21] = [
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
];

/// Principal branch of `log Gamma(z)`.
///
/// The argument is shifted up by the recurrence until `Re w >= 0` and
/// `|w| >= 15`, where a ten-term Stirling series is accurate to well below
/// machine precision. Summing principal logs of the shifted factors keeps
/// the imaginary part continuous away from the negative real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("log_gamma of non-finite {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Gamma has a pole at {}", z.re)));
    }
    let mut w = z;
    let mut shift = Complex64::zero();
    while !(w.re >= 0.0 && w.norm() >= 15.0) {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut corr = Complex64::zero();
    let mut p = inv;
    for k in 1..=10 {
        let kk = (2 * k) as f64;
        corr += p * (BERNOULLI_2K[k] / (kk * (kk - 1.0)));
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + corr
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// Generalized exponential integral `E_p(z) = int_1^inf e^{-z t} t^{-p} dt`,
/// continued analytically; equals `z^{p-1} Gamma(1-p, z)`.
pub fn exp_integral_e(p: Complex64, z: Complex64) -> Result<Complex64> {
    if z.is_zero() {
        return if p.re > 1.0 {
            Ok((p - 1.0).inv())
        } else {
            Err(Error::Domain(format!("E_p(0) diverges for Re p = {} <= 1", p.re)))
        };
    }
    // the phase of e^{-zt} t^{-p} is stationary at t = -Im p / Im z; once that
    // point is well inside the range the continued fraction loses digits
    let stationary = if z.im != 0.0 { -p.im / z.im } else { 0.0 };
    if z.norm() >= 2.0 && stationary < 2.0 {
        match exp_integral_cf(p, z) {
            Ok(v) => Ok(v),
            Err(cf_err) => exp_integral_series(p, z).map_err(|_| cf_err),
        }
    } else {
        match exp_integral_series(p, z) {
            Ok(v) => Ok(v),
            Err(series_err) => exp_integral_cf(p, z).map_err(|_| series_err),
        }
    }
}

/// Legendre continued fraction, evaluated with the modified Lentz method.
fn exp_integral_cf(p: Complex64, z: Complex64) -> Result<Complex64> {
    const TINY: f64 = 1e-300;
    const MAX_ITER: usize = 100_000;
    let fix = |v: Complex64| if v.norm() < TINY { Complex64::new(TINY, 0.0) } else { v };
    let mut f = fix(z + p);
    let mut cc = f;
    let mut d = Complex64::zero();
    for i in 1..MAX_ITER {
        let fi = i as f64;
        let a = -fi * (p + (fi - 1.0));
        let b = z + p + 2.0 * fi;
        d = fix(b + a * d).inv();
        cc = fix(b + a / cc);
        let delta = cc * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            let v = (-z).exp() / f;
            return if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(Error::NoConvergence(format!("E_p continued fraction overflow at p={p}, z={z}")))
            };
        }
    }
    Err(Error::NoConvergence(format!(
        "E_p continued fraction did not converge at p={p}, z={z}"
    )))
}

fn exp_integral_series(p: Complex64, z: Complex64) -> Result<Complex64> {
    let n = p.re.round();
    let integer = n >= 1.0 && (p.re - n).abs() < 1e-12 && p.im.abs() < 1e-12;
    let nz = -z;
    let mut term = Complex64::new(1.0, 0.0); // (-z)^k / k!
    let mut sum = Complex64::zero();
    let mut biggest = 0.0f64;
    let mut k = 0usize;
    loop {
        let denom = 1.0 - p + k as f64;
        if !(integer && k + 1 == n as usize) {
            let t = term / denom;
            sum += t;
            biggest = biggest.max(t.norm());
            if k as f64 > z.norm() && t.norm() <= 1e-17 * sum.norm().max(1e-300) {
                break;
            }
        }
        k += 1;
        if k > 2000 {
            return Err(Error::NoConvergence(format!("E_p series at p={p}, z={z}")));
        }
        term = term * nz / k as f64;
    }
    let head = if integer {
        // (-z)^{n-1}/(n-1)! (psi(n) - log z)
        let m = n as usize;
        let mut pw = Complex64::new(1.0, 0.0);
        let mut harmonic = 0.0;
        for j in 1..m {
            pw = pw * nz / j as f64;
            harmonic += 1.0 / j as f64;
        }
        pw * (harmonic - EULER_GAMMA - z.ln())
    } else {
        cpow(z, p - 1.0) * gamma(1.0 - p)?
    };
    let value = head - sum;
    if biggest * 1e-16 > 1e-6 * value.norm().max(1e-300) {
        return Err(Error::NoConvergence(format!(
            "E_p series loses all precision at p={p}, z={z}"
        )));
    }
    Ok(value)
}

/// Upper incomplete gamma `Gamma(b, x) = int_x^inf y^{b-1} e^{-y} dy` on the
/// principal branch. Small `|x|` uses the power series, larger `|x|` the
/// Legendre continued fraction; each falls back on the other.
pub fn incomplete_gamma_upper(b: Complex64, x: Complex64) -> Result<Complex64> {
    if x.is_zero() {
        return if b.re > 0.0 {
            gamma(b)
        } else {
            Err(Error::Domain(format!("Gamma({b}, 0) diverges for Re b <= 0")))
        };
    }
    Ok(cpow(x, b) * exp_integral_e(1.0 - b, x)?)
}

/// Lower incomplete gamma by its power series
/// `gamma(b, x) = x^b sum_k (-x)^k / (k! (b + k))`.
pub fn lower_gamma_series(b: Complex64, x: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(b) {
        return Err(Error::Pole(format!("lower gamma pole at b = {b}")));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::zero();
    for k in 0..5000usize {
        let t = term / (b + k as f64);
        sum += t;
        if k as f64 > x.norm() && t.norm() <= 1e-17 * sum.norm() {
            return Ok(cpow(x, b) * sum);
        }
        term = -term * x / (k + 1) as f64;
    }
    Err(Error::NoConvergence(format!("lower gamma series at b={b}, x={x}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn log_gamma_small_integers() {
        let mut fact = 1.0f64;
        for n in 1..20 {
            let lg = log_gamma(Complex64::new(n as f64, 0.0)).unwrap();
            assert_abs_diff_eq!(lg.re, fact.ln(), epsilon = 1e-13);
            assert_eq!(lg.im, 0.0);
            fact *= n as f64;
        }
    }

    #[test]
    fn log_gamma_rejects_poles() {
        assert!(matches!(log_gamma(Complex64::new(-3.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(log_gamma(Complex64::new(0.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn reflection_on_negative_axis() {
        // Gamma(-0.5) = -2 sqrt(pi)
        let g = gamma(Complex64::new(-0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(g.re, -2.0 * std::f64::consts::PI.sqrt(), epsilon = 1e-13);
        assert_abs_diff_eq!(g.im, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn e1_matches_reference() {
        // E_1(1) = 0.21938393439552027
        let e = exp_integral_e(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(e.re, 0.219_383_934_395_520_27, epsilon = 1e-14);
        let e = exp_integral_e(Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0)).unwrap();
        assert_abs_diff_eq!(e.re, 0.013_048_381_094_197_04, epsilon = 1e-15);
    }
}
