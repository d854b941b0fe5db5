//! Two-point functions of the log-dispersion fermion on the line and on a
//! circle, their periodizations and closed-form endpoints.
//!
//! Everything here is the lowercase `g = 2 pi G`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dirichlet::{hurwitz_zeta, lerch_phi, riemann_zeta, EvalPolicy, LerchArgs};
use crate::numerics::{c, cpow, exp_integral_e, expm1, gamma, rpow};
use crate::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// Circle of radius `R` with short-distance scale `a` and an optional gauge
/// shift `A = R q A_1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    r: f64,
    a: f64,
    gauge_shift: f64,
}

impl Geometry {
    pub fn new(r: f64, a: f64, gauge_shift: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite() && a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("geometry needs R > 0 and a > 0, got R = {r}, a = {a}")));
        }
        if !gauge_shift.is_finite() {
            return Err(Error::Domain("gauge shift must be finite".into()));
        }
        Ok(Self { r, a, gauge_shift })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn gauge_shift(&self) -> f64 {
        self.gauge_shift
    }

    /// Circumference `L = 2 pi R`.
    pub fn length(&self) -> f64 {
        TWO_PI * self.r
    }

    /// Lerch shift `R/a + A`.
    pub fn alpha(&self) -> f64 {
        self.r / self.a + self.gauge_shift
    }
}

/// Time `t`, mixing length `sigma` and scale `a`, packaged as
/// `s = (sigma + i t) / a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SPoint {
    t: f64,
    sigma: f64,
    a: f64,
}

impl SPoint {
    pub fn new(t: f64, sigma: f64, a: f64) -> Result<Self> {
        if !(sigma >= 0.0) {
            return Err(Error::Domain(format!("sigma must be non-negative, got {sigma}")));
        }
        Self::continued(c(sigma, t) / a, a)
    }

    /// Point with an arbitrary complex `s`, including `Re s < 0` where the
    /// image sums of the `3'` propagator converge.
    pub fn continued(s: Complex64, a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("scale a must be positive, got {a}")));
        }
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::Domain("non-finite s".into()));
        }
        Ok(Self { t: s.im * a, sigma: s.re * a, a })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn s(&self) -> Complex64 {
        c(self.sigma, self.t) / self.a
    }
}

/// Linear dispersion on the line: `i / (x - t + i sigma)`.
pub fn green_case1(x: f64, pt: &SPoint) -> Result<Complex64> {
    let d = c(x - pt.t, pt.sigma);
    if d.is_zero() {
        return Err(Error::Pole("case 1 propagator at x = t, sigma = 0".into()));
    }
    Ok(c(0.0, 1.0) / d)
}

/// Linear dispersion on a circle: `(1/R) / (1 - e^{i (x - t + i sigma) / R})`.
pub fn green_case2(x: f64, pt: &SPoint, geom: &Geometry) -> Result<Complex64> {
    let z = c(-pt.sigma, x - pt.t) / geom.r;
    let den = -expm1(z);
    if den.is_zero() || (pt.sigma == 0.0 && ((x - pt.t) / geom.length()).fract() == 0.0) {
        return Err(Error::Pole("case 2 propagator at x - t = 0 mod 2 pi R, sigma = 0".into()));
    }
    Ok(den.inv() / geom.r)
}

/// Log dispersion on the line:
/// `(1/a) e^{-ix/a} (-ix/a)^{s-1} Gamma(1 - s, -ix/a)`.
///
/// The incomplete gamma is `w^{1-s} E_s(w)`, so the branch factors cancel and
/// the value is `(1/a) e^w E_s(w)` with `w = -ix/a`.
pub fn green_case3(x: f64, pt: &SPoint) -> Result<Complex64> {
    if x == 0.0 {
        return Err(Error::Domain("case 3 propagator needs x != 0".into()));
    }
    let w = c(0.0, -x / pt.a);
    Ok(w.exp() * exp_integral_e(pt.s(), w)? / pt.a)
}

/// Log dispersion on the line with the lower cutoff removed:
/// `(1/a) (-ix/a)^{s-1} e^{-ix/a} Gamma(1 - s)`.
pub fn green_case3p(x: f64, pt: &SPoint) -> Result<Complex64> {
    if x == 0.0 {
        return Err(Error::Domain("case 3' propagator needs x != 0".into()));
    }
    let s = pt.s();
    let w = c(0.0, -x / pt.a);
    Ok(cpow(w, s - 1.0) * w.exp() * gamma(1.0 - s)? / pt.a)
}

/// Log dispersion on a circle: `(1/R) (R/a)^s phi(x / 2 pi R, s, R/a)`.
pub fn green_case4(x: f64, pt: &SPoint, geom: &Geometry) -> Result<Complex64> {
    let plain = Geometry { gauge_shift: 0.0, ..*geom };
    green_gauge(x, pt, &plain)
}

/// Gauge-shifted circle propagator,
/// `(1/R) (R/a)^s e^{i x A / R} phi(x / 2 pi R, s, R/a + A)`.
pub fn green_gauge(x: f64, pt: &SPoint, geom: &Geometry) -> Result<Complex64> {
    let alpha = geom.alpha();
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!("shifted Lerch parameter R/a + A = {alpha} must be positive")));
    }
    let s = pt.s();
    let phi = lerch_phi(&LerchArgs::new(x / geom.length(), s, alpha)?, &EvalPolicy::default())?;
    let phase = if geom.gauge_shift == 0.0 {
        c(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, x * geom.gauge_shift / geom.r)
    };
    Ok(rpow(geom.r / geom.a, s) * phase * phi / geom.r)
}

/// Propagator summed over images in [`periodize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodicBase {
    Case1,
    Case3p,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Periodized {
    pub value: Complex64,
    /// Estimated size of the omitted rings, extrapolated from the decay of
    /// the last two. Infinite when the rings do not decay.
    pub tail_estimate: f64,
    pub cutoff: usize,
}

impl Periodized {
    pub fn converged(&self, tol: f64) -> bool {
        self.tail_estimate <= tol
    }
}

fn base_value(base: PeriodicBase, x: f64, pt: &SPoint) -> Result<Complex64> {
    match base {
        PeriodicBase::Case1 => green_case1(x, pt),
        PeriodicBase::Case3p => green_case3p(x, pt),
    }
}

/// `sum_{|n| <= cutoff} g(x - 2 pi R n)`.
pub fn periodize(base: PeriodicBase, x: f64, pt: &SPoint, geom: &Geometry, cutoff: usize) -> Result<Periodized> {
    let l = geom.length();
    let ring = |n: usize| -> Result<Complex64> {
        let d = l * n as f64;
        Ok(base_value(base, x - d, pt)? + base_value(base, x + d, pt)?)
    };
    let mut rings = Vec::with_capacity(cutoff);
    for n in 1..=cutoff {
        rings.push(ring(n)?);
    }
    let mut value = Complex64::zero();
    for r in rings.iter().rev() {
        value += r;
    }
    value += base_value(base, x, pt)?;
    let tail_estimate = if cutoff < 2 {
        f64::INFINITY
    } else {
        let last = rings[cutoff - 1].norm();
        let half = rings[cutoff / 2 - 1].norm();
        let ratio = (cutoff as f64) / ((cutoff / 2) as f64);
        let p = (half / last).ln() / ratio.ln();
        if last == 0.0 {
            0.0
        } else if p > 1.0 + 1e-3 {
            last * cutoff as f64 / (p - 1.0)
        } else {
            f64::INFINITY
        }
    };
    Ok(Periodized { value, tail_estimate, cutoff })
}

/// [`periodize`] with the cutoff doubled from 16 until the tail estimate drops
/// below `tail_tol`, or up to `10^6` rings.
pub fn periodize_auto(
    base: PeriodicBase,
    x: f64,
    pt: &SPoint,
    geom: &Geometry,
    tail_tol: f64,
) -> Result<Periodized> {
    let mut cutoff = 16;
    loop {
        let p = periodize(base, x, pt, geom, cutoff)?;
        if p.converged(tail_tol) {
            return Ok(p);
        }
        if cutoff >= 1_000_000 {
            return Err(Error::NoConvergence(format!(
                "image sum tail {} above {tail_tol} at cutoff {cutoff}",
                p.tail_estimate
            )));
        }
        cutoff = (cutoff * 2).min(1_000_000);
    }
}

/// Endpoint of the `4'` closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormPoint {
    Zero,
    PiA,
}

/// `x = 0`: `(1/a) zeta(s) / sin(pi s / 2)`.
/// `x = pi a`: `(1/2a) (2^{1-s} - 1) zeta(s) / (1 - e^{i pi s})`.
pub fn closed_form_case4p(point: ClosedFormPoint, s: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("scale a must be positive, got {a}")));
    }
    let even_integer = s.im == 0.0 && s.re.fract() == 0.0 && (s.re as i64) % 2 == 0;
    if even_integer {
        return Err(Error::Pole(format!("closed form has a pole at even integer s = {}", s.re)));
    }
    let zeta = riemann_zeta(s, &EvalPolicy::default())?;
    match point {
        ClosedFormPoint::Zero => Ok(zeta / (0.5 * PI * s).sin() / a),
        ClosedFormPoint::PiA => {
            let den = -expm1(c(0.0, PI) * s);
            Ok(expm1((1.0 - s) * std::f64::consts::LN_2) * zeta / den / (2.0 * a))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarVariant {
    /// Mode weights `1 / (2 E_n)`.
    Field,
    /// Time-derivative correlator, mode weights `1/2`.
    DtField,
}

/// Scalar mode sum `sum_{n = first_mode}^{n_max} w_n (a n / R + 1)^{-s} e^{i n x / R}`
/// with `E_n = log(a n / R + 1) / a`.
///
/// The `n = 0` mode has `E_0 = 0`, so `first_mode = 0` is a divergence for
/// [`ScalarVariant::Field`].
pub fn scalar_two_point(
    x: f64,
    pt: &SPoint,
    geom: &Geometry,
    variant: ScalarVariant,
    first_mode: usize,
    n_max: usize,
) -> Result<Complex64> {
    if n_max < 1 || first_mode > n_max {
        return Err(Error::Invalid(format!("need 1 <= n_max and first_mode <= n_max, got {first_mode}..={n_max}")));
    }
    if variant == ScalarVariant::Field && first_mode == 0 {
        return Err(Error::Divergence("zero mode has E_0 = 0 and weight 1/(2 E_0)".into()));
    }
    let s = pt.s();
    let ratio = geom.a / geom.r;
    let mut sum = Complex64::zero();
    for n in (first_mode..=n_max).rev() {
        let l = (ratio * n as f64).ln_1p();
        let weight = match variant {
            ScalarVariant::Field => 0.5 * geom.a / l,
            ScalarVariant::DtField => 0.5,
        };
        let phase = TWO_PI * (x * n as f64 / geom.length()).fract();
        sum += weight * (-s * l + c(0.0, phase)).exp();
    }
    Ok(sum)
}

/// Image sum of the plane wave around the circle, in Hurwitz form:
/// `(2 pi R / a)^{s-1} (zeta_H(1-s, y) + (-1)^{s-1} zeta_H(1-s, 1-y)) i^{1-s} Gamma(1-s)`
/// with `y = x / 2 pi R`.
///
/// At positive integers `s` the gamma pole meets a vanishing bracket; there the
/// value is taken from the equivalent form `(R/a)^{s-1} sum_{n>=1} e^{2 pi i n y} n^{-s}`.
pub fn periodized_wavefunction(pt: &SPoint, x: f64, geom: &Geometry) -> Result<Complex64> {
    let s = pt.s();
    let y = x / geom.length();
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::Domain(format!("need 0 < x / 2 pi R < 1, got {y}")));
    }
    let policy = EvalPolicy::default();
    if s.im == 0.0 && s.re >= 1.0 && s.re.fract() == 0.0 {
        let f = Complex64::from_polar(1.0, TWO_PI * y) * lerch_phi(&LerchArgs::new(y, s, 1.0)?, &policy)?;
        return Ok(rpow(geom.r / geom.a, s - 1.0) * f);
    }
    let w = 1.0 - s;
    let sign = (c(0.0, PI) * (s - 1.0)).exp();
    let inner = hurwitz_zeta(w, y, &policy)? + sign * hurwitz_zeta(w, 1.0 - y, &policy)?;
    let i_pow = (c(0.0, 0.5 * PI) * w).exp();
    Ok(rpow(geom.length() / geom.a, s - 1.0) * inner * i_pow * gamma(w)?)
}
