//! Lerch and Hurwitz zeta evaluation.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use super::functions::{hurwitz_functional_rhs, lerch_functional_rhs};
use super::theta::theta3_minus_one;
use super::{EvalPolicy, LerchArgs, Method};
use crate::numerics::gamma::BERNOULLI_2K;
use crate::numerics::{adaptive_integrate, c, exp_integral_e, expm1, gamma, rpow, QuadratureSpec, Transform};
use crate::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;
const TWISTED_EM_TERMS: usize = 20;

/// `phi(x, s, alpha) = sum_{n>=0} e^{2 pi i n x} (n + alpha)^{-s}`, analytically
/// continued in `s`.
///
/// `Method::Auto` sums directly when `Re s` is large enough for a handful of
/// terms, maps `Re s < 0` through the functional equation, and otherwise uses
/// Euler-Maclaurin.
pub fn lerch_phi(args: &LerchArgs, policy: &EvalPolicy) -> Result<Complex64> {
    policy.validate()?;
    let s = args.s;
    if args.x() == 0.0 && s == c(1.0, 0.0) {
        return Err(Error::Pole("phi(0, s, alpha) has a simple pole at s = 1".into()));
    }
    match policy.method {
        Method::Series => series(args, policy),
        Method::EulerMaclaurin => euler_maclaurin(args, policy),
        Method::FunctionalEquation => via_functional_equation(args, policy),
        Method::Integral => mellin_integral(args),
        Method::ThetaIntegral => theta_zeta(args),
        Method::Auto => {
            if s.re < 0.0 {
                via_functional_equation(args, policy)
            } else if s.re > 1.0 && direct_terms_needed(s.re, args.alpha(), policy.tail_tol) <= 64.0 {
                direct_series(args, policy)
            } else {
                euler_maclaurin(args, policy)
            }
        }
    }
}

/// `zeta_H(s, alpha) = sum_{n>=0} (n + alpha)^{-s}`.
pub fn hurwitz_zeta(s: Complex64, alpha: f64, policy: &EvalPolicy) -> Result<Complex64> {
    if s == c(1.0, 0.0) {
        return Err(Error::Pole("Hurwitz zeta has a simple pole at s = 1".into()));
    }
    lerch_phi(&LerchArgs::new(0.0, s, alpha)?, policy)
}

#[inline]
fn twisted_term(x: f64, n: usize, alpha: f64, s: Complex64) -> Complex64 {
    let l = (n as f64 + alpha).ln();
    let phase = TWO_PI * (x * n as f64).fract();
    Complex64::from_polar((-s.re * l).exp(), phase - s.im * l)
}

fn direct_terms_needed(sigma: f64, alpha: f64, tol: f64) -> f64 {
    // smallest N with (N + alpha)^{1 - sigma} / (sigma - 1) <= tol
    let v = (tol * (sigma - 1.0)).ln() / (1.0 - sigma);
    (v.exp() - alpha).max(1.0).ceil()
}

fn direct_series(args: &LerchArgs, policy: &EvalPolicy) -> Result<Complex64> {
    let s = args.s;
    if s.re <= 1.0 {
        return Err(Error::Domain(format!("direct series needs Re s > 1, got {}", s.re)));
    }
    let n = direct_terms_needed(s.re, args.alpha(), policy.tail_tol);
    if n > policy.max_terms as f64 {
        return Err(Error::NoConvergence(format!(
            "direct series needs {n} terms, above max_terms = {}",
            policy.max_terms
        )));
    }
    let mut sum = Complex64::zero();
    for k in (0..n as usize).rev() {
        sum += twisted_term(args.x(), k, args.alpha(), s);
    }
    Ok(sum)
}

fn series(args: &LerchArgs, policy: &EvalPolicy) -> Result<Complex64> {
    if args.x() == 0.0 {
        direct_series(args, policy)
    } else if args.s.re > 0.0 {
        accelerated_series(args, policy)
    } else {
        Err(Error::Domain("twisted series needs Re s > 0".into()))
    }
}

/// Oscillating series `sum z^n a_n` with `a_n = (n + beta)^{-s}` summed by a
/// Chebyshev-weighted transform.
///
/// Writing `a_n` as moments of `x^{beta-1} (-log x)^{s-1} / Gamma(s)` on
/// `[0, 1]`, the sum is `z^{-1} int dmu / (u - x)` with `u = 1/z`. Replacing
/// `1/(u - x)` by `Q(x)/P(u)`, where `P` is the shifted Chebyshev polynomial
/// and `Q = (P(u) - P(x))/(u - x)`, leaves an error below
/// `|mu| / (|P(u)| dist(u, [0, 1]))`. Twists close to zero are first split
/// into residue classes mod `q` so that the effective twist is near `1/2`.
fn accelerated_series(args: &LerchArgs, policy: &EvalPolicy) -> Result<Complex64> {
    let s = args.s;
    let theta = TWO_PI * args.centered_x();
    let q = if theta.abs() >= 0.5 * PI { 1 } else { (PI / theta.abs()).round().max(2.0) as usize };
    if q > 100_000 {
        return Err(Error::NoConvergence("twist too close to an integer for the accelerated series".into()));
    }
    let qt = theta * q as f64;
    let z = Complex64::from_polar(1.0, qt);
    let u = z.conj();
    let v = 1.0 - 2.0 * u;
    let root = (v * v - 1.0).sqrt();
    let rho = (v + root).norm().max((v - root).norm());
    let dist = if u.re <= 0.0 { 1.0 } else if u.re >= 1.0 { (u - 1.0).norm() } else { u.im.abs() };
    // total-variation bound of the moment measure relative to |a_0|
    let mass = crate::numerics::log_gamma(c(s.re, 0.0))?.re - crate::numerics::log_gamma(s)?.re;
    let tol = policy.tail_tol.max(1e-16);
    let n = ((mass + (2.0 / (dist * tol)).ln()) / rho.ln()).ceil().max(4.0) as usize;
    if n > 250 {
        return Err(Error::NoConvergence(format!(
            "accelerated series would need {n} terms at s = {s}"
        )));
    }
    let weights = chebyshev_weights(n, u);
    let scale = (z * horner_real(&weights.1, u)).inv();
    let qf = q as f64;
    let mut total = Complex64::zero();
    for r in 0..q {
        let beta = (r as f64 + args.alpha()) / qf;
        let mut inner = Complex64::zero();
        for (k, w) in weights.0.iter().enumerate().rev() {
            inner += w * rpow(k as f64 + beta, -s);
        }
        let phase = TWO_PI * (args.x() * r as f64).fract();
        total += Complex64::from_polar(1.0, phase) * inner;
    }
    Ok(total * scale * rpow(qf, -s))
}

/// Coefficients of `Q(x) = (P(u) - P(x)) / (u - x)` and of `P` itself, where
/// `P(x) = T_n(1 - 2x)`.
fn chebyshev_weights(n: usize, u: Complex64) -> (Vec<Complex64>, Vec<f64>) {
    let mut p = vec![0.0f64; n + 1];
    p[0] = 1.0;
    let nf = n as f64;
    for k in 0..n {
        let kf = k as f64;
        p[k + 1] = -p[k] * 4.0 * (nf + kf) * (nf - kf) / ((2.0 * kf + 1.0) * (2.0 * kf + 2.0));
    }
    let mut qc = vec![Complex64::zero(); n];
    qc[n - 1] = c(p[n], 0.0);
    for k in (0..n - 1).rev() {
        qc[k] = p[k + 1] + u * qc[k + 1];
    }
    (qc, p)
}

fn horner_real(p: &[f64], u: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::zero(), |acc, &a| acc * u + a)
}

fn euler_maclaurin(args: &LerchArgs, policy: &EvalPolicy) -> Result<Complex64> {
    if args.centered_x() == 0.0 {
        hurwitz_em(args.s, args.alpha(), policy.em_order)
    } else {
        twisted_em(args)
    }
}

/// Hurwitz zeta by Euler-Maclaurin after `M = max(15, |Im s|, |Re s|)` terms.
fn hurwitz_em(s: Complex64, alpha: f64, em_order: usize) -> Result<Complex64> {
    if s == c(1.0, 0.0) {
        return Err(Error::Pole("Hurwitz zeta has a simple pole at s = 1".into()));
    }
    let m = 15usize.max(s.im.abs().ceil() as usize).max(s.re.abs().ceil() as usize);
    let mut head = Complex64::zero();
    for n in (0..m).rev() {
        head += rpow(n as f64 + alpha, -s);
    }
    let v = m as f64 + alpha;
    let vs = rpow(v, -s);
    let mut tail = vs * v / (s - 1.0) + 0.5 * vs;
    // B_{2k}/(2k)! (s)_{2k-1} v^{-s-2k+1}
    let mut rising = s * vs / v;
    let mut fact = 2.0;
    for k in 1..=em_order {
        tail += rising * (BERNOULLI_2K[k] / fact);
        let kf = k as f64;
        rising *= (s + 2.0 * kf - 1.0) * (s + 2.0 * kf) / (v * v);
        fact *= (2.0 * kf + 1.0) * (2.0 * kf + 2.0);
    }
    Ok(head + tail)
}

/// Twisted Euler-Maclaurin: direct sum to `N`, the tail integral as a
/// generalized exponential integral, and Bernoulli corrections added while
/// they keep shrinking.
fn twisted_em(args: &LerchArgs) -> Result<Complex64> {
    let s = args.s;
    let alpha = args.alpha();
    let theta = TWO_PI * args.centered_x();
    // cut past the stationary point of e^{i theta u} (u + alpha)^{-s}
    let past_saddle = (0.75 * s.im.abs() / theta.abs() - alpha).min(1e5);
    let n = 40usize.max((3.0 * s.norm()).ceil() as usize).max(past_saddle.ceil() as usize);
    let mut head = Complex64::zero();
    for k in (0..n).rev() {
        head += twisted_term(args.x(), k, alpha, s);
    }
    let v = n as f64 + alpha;
    let it = c(0.0, theta);
    let z = -it * v;
    let integral = Complex64::from_polar(1.0, -theta * alpha) * rpow(v, 1.0 - s) * exp_integral_e(s, z)?;
    let phase_n = Complex64::from_polar(1.0, TWO_PI * (args.x() * n as f64).fract());
    // g^{(j)}(N) for g(u) = (u + alpha)^{-s}
    let jmax = 2 * TWISTED_EM_TERMS;
    let mut g = Vec::with_capacity(jmax);
    g.push(rpow(v, -s));
    for j in 0..jmax - 1 {
        let next = g[j] * (-(s + j as f64)) / v;
        g.push(next);
    }
    let mut itpow = vec![c(1.0, 0.0); jmax];
    for j in 1..jmax {
        itpow[j] = itpow[j - 1] * it;
    }
    let mut corr = Complex64::zero();
    let mut prev = f64::INFINITY;
    let mut fact = 2.0;
    for k in 1..=TWISTED_EM_TERMS {
        let m = 2 * k - 1;
        let mut deriv = Complex64::zero();
        let mut binom = 1.0;
        for j in 0..=m {
            deriv += itpow[m - j] * g[j] * binom;
            binom = binom * (m - j) as f64 / (j + 1) as f64;
        }
        let term = -phase_n * deriv * (BERNOULLI_2K[k] / fact);
        let size = term.norm();
        if size > prev {
            break;
        }
        corr += term;
        prev = size;
        if size <= 1e-17 * (head.norm() + corr.norm()) {
            break;
        }
        let kf = k as f64;
        fact *= (2.0 * kf + 1.0) * (2.0 * kf + 2.0);
    }
    Ok(head + integral + 0.5 * phase_n * g[0] + corr)
}

fn via_functional_equation(args: &LerchArgs, policy: &EvalPolicy) -> Result<Complex64> {
    let inner = EvalPolicy { method: Method::EulerMaclaurin, ..*policy };
    let s = 1.0 - args.s;
    if args.x() == 0.0 {
        hurwitz_functional_rhs(s, args.alpha(), &inner)
    } else {
        lerch_functional_rhs(args.x(), s, args.alpha(), &inner)
    }
}

fn mellin_integral(args: &LerchArgs) -> Result<Complex64> {
    let s = args.s;
    let x = args.x();
    if s.re <= 0.0 || (x == 0.0 && s.re <= 1.0) {
        return Err(Error::Domain(format!(
            "Mellin integral needs Re s > {} here, got {}",
            if x == 0.0 { 1 } else { 0 },
            s.re
        )));
    }
    let alpha = args.alpha();
    let twist = c(0.0, TWO_PI * args.centered_x());
    let g = gamma(s)?;
    // the integral is Gamma(s) phi, which is tiny for large |Im s|
    let spec = QuadratureSpec {
        abs_tol: 1e-12 * g.norm(),
        rel_tol: 1e-11,
        max_refinements: 20_000,
        transform: Transform::ExpSubstitution,
    };
    let sm1 = s - 1.0;
    let f = |w: f64| {
        if w < 1e-300 || alpha * w > 800.0 {
            return Complex64::zero();
        }
        // dividing inside the exponent avoids underflow in |den|^2
        let den = -expm1(twist - w);
        (sm1 * w.ln() - alpha * w - den.ln()).exp()
    };
    let q = adaptive_integrate(f, 0.0, f64::INFINITY, &spec)?;
    Ok(q.value / g)
}

/// `zeta(s) = pi^{s/2} / Gamma(s/2) * (1/2) int_0^inf tau^{s/2-1} (theta3(i tau) - 1) d tau`.
fn theta_zeta(args: &LerchArgs) -> Result<Complex64> {
    let s = args.s;
    if args.x() != 0.0 || args.alpha() != 1.0 {
        return Err(Error::Domain("theta integral is implemented for the Riemann zeta case (x = 0, alpha = 1)".into()));
    }
    if s.re <= 2.0 {
        return Err(Error::Domain(format!("theta integral restricted to Re s > 2, got {}", s.re)));
    }
    let pre = (0.5 * s * PI.ln()).exp() / gamma(0.5 * s)?;
    let spec = QuadratureSpec {
        abs_tol: 1e-14 / pre.norm(),
        rel_tol: 1e-12,
        max_refinements: 20_000,
        transform: Transform::ExpSubstitution,
    };
    let h = 0.5 * s - 1.0;
    let q = adaptive_integrate(|t| (h * t.ln()).exp() * theta3_minus_one(t), 0.0, f64::INFINITY, &spec)?;
    Ok(0.5 * q.value * pre)
}

/// `phi(x, s, alpha) + e^{-2 pi i x} phi(-x, s, 1 - alpha)` for `0 < alpha < 1`
/// through `pi^{s/2}/Gamma(s/2) int tau^{s/2-1} sum_n e^{-pi (n+alpha)^2 tau} e^{2 pi i n x}`.
pub fn lerch_theta_pair(x: f64, s: Complex64, alpha: f64) -> Result<Complex64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain("theta pair needs 0 < alpha < 1".into()));
    }
    if s.re <= 1.0 {
        return Err(Error::Domain(format!("theta pair needs Re s > 1, got {}", s.re)));
    }
    let pre = (0.5 * s * PI.ln()).exp() / gamma(0.5 * s)?;
    let spec = QuadratureSpec {
        abs_tol: 1e-14 / pre.norm(),
        rel_tol: 1e-12,
        max_refinements: 20_000,
        transform: Transform::ExpSubstitution,
    };
    let h = 0.5 * s - 1.0;
    let q = adaptive_integrate(
        |t| (h * t.ln()).exp() * shifted_theta(x, alpha, t),
        0.0,
        f64::INFINITY,
        &spec,
    )?;
    Ok(q.value * pre)
}

/// `sum_{n in Z} e^{-pi (n + alpha)^2 tau} e^{2 pi i n x}`, switching to the
/// Poisson-dual sum for `tau < 1`.
fn shifted_theta(x: f64, alpha: f64, tau: f64) -> Complex64 {
    let mut sum = Complex64::zero();
    if tau >= 1.0 {
        let kmax = (8.0 / tau.sqrt()).ceil() as i64 + 2;
        for n in -kmax..=kmax {
            let d = n as f64 + alpha;
            sum += Complex64::from_polar((-PI * d * d * tau).exp(), TWO_PI * n as f64 * x);
        }
    } else {
        let kmax = (8.0 * tau.sqrt()).ceil() as i64 + 2;
        for k in -kmax..=kmax {
            let d = k as f64 - x;
            sum += Complex64::from_polar((-PI * d * d / tau).exp(), TWO_PI * alpha * d);
        }
        sum /= tau.sqrt();
    }
    sum
}
