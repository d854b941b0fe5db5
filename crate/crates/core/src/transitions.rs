//! Transition probabilities between mixing states, their time averages and
//! the critical-strip scans built from them.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::dirichlet::{eta, hurwitz_zeta, lerch_phi, riemann_zeta, EvalPolicy, LerchArgs};
use crate::greens::{green_case1, green_case2, green_case3, green_case3p, Geometry, SPoint};
use crate::numerics::{c, rpow};
use crate::par;
use crate::scan::ScanTable;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixingCase {
    C1,
    C2,
    C3,
    C3p,
    C4,
    /// First `N` modes of the circle at `R = a`, with `E_n = log(n) / a`.
    Partial(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixingSpec {
    pub case: MixingCase,
    pub sigma: f64,
    pub geom: Geometry,
}

impl MixingSpec {
    pub fn new(case: MixingCase, sigma: f64, geom: Geometry) -> Result<Self> {
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::Domain(format!("sigma must be non-negative, got {sigma}")));
        }
        if let MixingCase::Partial(n) = case {
            if n < 2 {
                return Err(Error::Invalid(format!("partial sums need N >= 2, got {n}")));
            }
        }
        Ok(Self { case, sigma, geom })
    }

    /// `sigma = 0` is the unmixed edge.
    pub fn is_unmixed(&self) -> bool {
        self.sigma == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityRow {
    pub t: f64,
    pub p: f64,
}

/// Norm `<nu|nu>` of the mixing state. For case 4 and `sigma < a` this is the
/// analytic continuation of the mode sum.
pub fn mixing_norm(spec: &MixingSpec) -> Result<f64> {
    let (r, a, sigma) = (spec.geom.r(), spec.geom.a(), spec.sigma);
    match spec.case {
        MixingCase::C1 => {
            if sigma == 0.0 {
                return Err(Error::Divergence("case 1 norm 1/sigma diverges at sigma = 0".into()));
            }
            Ok(1.0 / sigma)
        }
        MixingCase::C2 => {
            if sigma == 0.0 {
                return Err(Error::Divergence("case 2 norm diverges at sigma = 0".into()));
            }
            Ok(1.0 / -(-sigma / r).exp_m1())
        }
        MixingCase::C3 => {
            if sigma == a {
                return Err(Error::Pole("case 3 norm 1/(sigma - a) at sigma = a".into()));
            }
            Ok(1.0 / (sigma - a))
        }
        MixingCase::C3p => Ok(1.0 / a),
        MixingCase::C4 => {
            let u = sigma / a;
            if u == 1.0 {
                return Err(Error::Pole("case 4 norm has a pole at sigma = a".into()));
            }
            let z = hurwitz_zeta(c(u, 0.0), r / a, &EvalPolicy::default())?;
            Ok((r / a).powf(u) * z.re)
        }
        MixingCase::Partial(n) => {
            let u = sigma / a;
            Ok((1..=n).rev().map(|k| (k as f64).powf(-u)).sum())
        }
    }
}

/// Probability of finding the particle at `x = pi R` (`pi a` on the line)
/// at time `t`.
pub fn transition_prob(spec: &MixingSpec, t: f64) -> Result<f64> {
    let (r, a) = (spec.geom.r(), spec.geom.a());
    let z = mixing_norm(spec)?;
    let amp = match spec.case {
        MixingCase::C1 => green_case1(PI * a, &SPoint::new(t, spec.sigma, a)?)?,
        MixingCase::C2 => green_case2(PI * r, &SPoint::new(t, spec.sigma, a)?, &spec.geom)? * r,
        MixingCase::C3 => green_case3(PI * a, &SPoint::new(t, spec.sigma, a)?)?,
        MixingCase::C3p => green_case3p(PI * a, &SPoint::new(t, spec.sigma, a)?)?,
        MixingCase::C4 => {
            let s = c(spec.sigma, t) / a;
            let phi = lerch_phi(&LerchArgs::new(0.5, s, r / a)?, &EvalPolicy::default())?;
            // the (R/a)^s prefactor of the amplitude cancels against the norm up to its phase
            return Ok(phi.norm_sqr() / (z / (r / a).powf(spec.sigma / a)).powi(2));
        }
        MixingCase::Partial(n) => return transition_prob_partial(n, spec.sigma / a, t / a),
    };
    Ok(amp.norm_sqr() / (z * z))
}

/// `|sum_{n=1}^N (-1)^n n^{-(sigma + i t)}|^2 / (sum_{n=1}^N n^{-sigma})^2`, in units of `a`.
pub fn transition_prob_partial(n: usize, sigma_over_a: f64, t_over_a: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Invalid(format!("partial sums need N >= 2, got {n}")));
    }
    let s = c(sigma_over_a, t_over_a);
    let mut amp = c(0.0, 0.0);
    let mut norm = 0.0;
    for k in (1..=n).rev() {
        let term = rpow(k as f64, -s);
        if k % 2 == 0 {
            amp += term;
        } else {
            amp -= term;
        }
        norm += (k as f64).powf(-sigma_over_a);
    }
    Ok(amp.norm_sqr() / (norm * norm))
}

/// Two-state closed form `1 - sin^2(2 theta) cos^2(t log sqrt 2)` with
/// `theta = atan(2^{-sigma/2})`.
pub fn two_state_closed_form(sigma_over_a: f64, t_over_a: f64) -> f64 {
    let theta = (-0.5 * sigma_over_a * LN_2).exp().atan();
    let s2 = (2.0 * theta).sin();
    let c2 = (0.5 * t_over_a * LN_2).cos();
    1.0 - s2 * s2 * c2 * c2
}

/// Smallest value of the case-2 probability over `t`,
/// `((1 - e^{-sigma/R}) / (1 + e^{-sigma/R}))^2`.
pub fn case2_minimum(sigma: f64, geom: &Geometry) -> f64 {
    (0.5 * sigma / geom.r()).tanh().powi(2)
}

/// Normalization of the time-averaged probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AverageNorm {
    /// Both states carry `sigma / 2`: divide by `z(sigma)^2`.
    MixedPair,
    /// Position state against the `|sigma>` state: divide by `z(2 sigma)`.
    SigmaState,
}

/// `(1/T) int_a^T |<x', t>|^2 dt / norm` by composite Simpson with `steps`
/// panels, for the circle amplitude at twist `x / 2 pi R`.
pub fn time_averaged_prob(
    t_max: f64,
    sigma: f64,
    x: f64,
    geom: &Geometry,
    steps: usize,
    norm: AverageNorm,
) -> Result<f64> {
    let a = geom.a();
    if !(t_max > a) {
        return Err(Error::Domain(format!("need T > a, got T = {t_max}")));
    }
    if steps < 100 {
        return Err(Error::Invalid(format!("need at least 100 quadrature steps, got {steps}")));
    }
    let steps = steps + steps % 2;
    let alpha = geom.r() / a;
    let u = sigma / a;
    let denom = match norm {
        AverageNorm::MixedPair => {
            if u == 1.0 {
                return Err(Error::Pole("norm zeta(sigma/a) has a pole at sigma = a".into()));
            }
            hurwitz_zeta(c(u, 0.0), alpha, &EvalPolicy::default())?.re.powi(2)
        }
        AverageNorm::SigmaState => {
            if 2.0 * u == 1.0 {
                return Err(Error::Pole("norm zeta(2 sigma/a) has a pole at sigma = a/2".into()));
            }
            hurwitz_zeta(c(2.0 * u, 0.0), alpha, &EvalPolicy::default())?.re
        }
    };
    let h = (t_max - a) / steps as f64;
    let twist = x / geom.length();
    let nodes: Vec<usize> = (0..=steps).collect();
    let values = par::map(&nodes, |&k| -> Result<f64> {
        let t = a + h * k as f64;
        let s = c(sigma, t) / a;
        Ok(lerch_phi(&LerchArgs::new(twist, s, alpha)?, &EvalPolicy::default())?.norm_sqr())
    });
    let mut sum = 0.0;
    for (k, v) in values.into_iter().enumerate() {
        let w = if k == 0 || k == steps {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        sum += w * v?;
    }
    Ok(sum * h / 3.0 / denom / t_max)
}

/// Two leading terms of the mean square of the Lerch function on a vertical
/// line, normalized to tend to 1:
/// `1 + zeta_H(2 - 2 sigma, x) / ((2 - 2 sigma) zeta_H(2 sigma, alpha)) (T / 2 pi)^{1 - 2 sigma}`.
/// `T` and `sigma` are in units of `a`; `x` is the twist in `(0, 1)`.
pub fn lerch_mean_square_asymptotic(t_max: f64, sigma: f64, x: f64, alpha: f64) -> Result<f64> {
    if !(sigma > 0.5 && sigma < 1.0) {
        return Err(Error::Domain(format!("asymptotic mean square needs 1/2 < sigma/a < 1, got {sigma}")));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("twist must lie in (0, 1), got {x}")));
    }
    let policy = EvalPolicy::default();
    let num = hurwitz_zeta(c(2.0 - 2.0 * sigma, 0.0), x, &policy)?.re;
    let den = hurwitz_zeta(c(2.0 * sigma, 0.0), alpha, &policy)?.re;
    Ok(1.0 + num / ((2.0 - 2.0 * sigma) * den) * (t_max / (2.0 * PI)).powf(1.0 - 2.0 * sigma))
}

/// `|zeta(sigma + i y)|^2`.
pub fn susy_potential(sigma_over_a: f64, y: f64) -> Result<f64> {
    Ok(riemann_zeta(c(sigma_over_a, y), &EvalPolicy::default())?.norm_sqr())
}

/// Transition probability on a time grid, rows in grid order.
pub fn transition_scan(spec: &MixingSpec, t_grid: &[f64]) -> ScanTable {
    let mut table = ScanTable::new(["t", "p"])
        .with_meta("case", format!("{:?}", spec.case).to_lowercase())
        .with_meta("sigma", spec.sigma)
        .with_meta("R", spec.geom.r())
        .with_meta("a", spec.geom.a());
    let rows = par::map(t_grid, |&t| transition_prob(spec, t));
    for (&t, r) in t_grid.iter().zip(rows) {
        table.push_result(&[t], r.map(|p| vec![p]));
    }
    table
}

/// Minimum of a scan and where it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanMinimum {
    pub p: f64,
    pub sigma: f64,
    pub t: f64,
}

/// Case-4 probability at `R = a = 1` on the product grid `sigma x t`.
pub fn rh_scan(sigma_grid: &[f64], t_grid: &[f64]) -> Result<(ScanTable, ScanMinimum)> {
    if sigma_grid.is_empty() || t_grid.is_empty() {
        return Err(Error::Invalid("rh_scan needs non-empty grids".into()));
    }
    let geom = Geometry::new(1.0, 1.0, 0.0)?;
    let points: Vec<(f64, f64)> = sigma_grid.iter().flat_map(|&s| t_grid.iter().map(move |&t| (s, t))).collect();
    let rows = par::map(&points, |&(sigma, t)| {
        MixingSpec::new(MixingCase::C4, sigma, geom).and_then(|spec| transition_prob(&spec, t))
    });
    let mut table = ScanTable::new(["sigma", "t", "p"]).with_meta("case", "c4").with_meta("R", 1).with_meta("a", 1);
    let mut best = ScanMinimum { p: f64::INFINITY, sigma: f64::NAN, t: f64::NAN };
    for (&(sigma, t), r) in points.iter().zip(rows) {
        if let Ok(p) = r {
            if p < best.p {
                best = ScanMinimum { p, sigma, t };
            }
        }
        table.push_result(&[sigma, t], r.map(|p| vec![p]));
    }
    Ok((table, best))
}

/// `|eta((sigma + i t)/a)|^2 / zeta(sigma/a)^2` at `R = a`, the case-4 value
/// written through the alternating zeta.
pub fn eta_ratio(sigma_over_a: f64, t_over_a: f64) -> Result<f64> {
    let policy = EvalPolicy::default();
    let e = eta(c(sigma_over_a, t_over_a), &policy)?;
    let z = riemann_zeta(c(sigma_over_a, 0.0), &policy)?.re;
    Ok(e.norm_sqr() / (z * z))
}
