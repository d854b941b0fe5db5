//! Dirichlet series weighted by string-state degeneracies: the Ramanujan
//! zeta function and the string-modified two-point function.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::greens::{Geometry, SPoint};
use crate::numerics::{c, eta_product_expand, gamma, incomplete_gamma_upper, rpow, QSeries, Sign, Step};
use crate::{par, Error, Result};

/// Mean of `tau(n)^2 n^{-11}` (Rankin-Selberg), used for the random-walk
/// size of the truncated tail of `sum tau(n) n^{-s}`.
const RANKIN_SELBERG_DENSITY: f64 = 0.3839;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StringModel {
    /// `q prod (1 + q^n)^24`
    Heterotic12,
    /// `q prod (1 - q^n)^24`, coefficients `tau(N)`
    RamanujanTau,
    /// `prod (1 + q^{n/2})^8 / prod (1 - q^n)^8`, in steps of `q^{1/2}`
    OpenFermionic,
    /// A single massless level, `rho(N) = delta_{N,0}`.
    Massless,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracySpec {
    pub model: StringModel,
    /// Highest power of `q` kept.
    pub order: usize,
}

/// Exact degeneracies `rho(N)` up to `q^order`.
pub fn degeneracies(spec: &DegeneracySpec) -> Result<QSeries> {
    let order = spec.order;
    Ok(match spec.model {
        StringModel::Heterotic12 => eta_product_expand(Sign::Plus, 24, false, true, order),
        StringModel::RamanujanTau => eta_product_expand(Sign::Minus, 24, false, true, order),
        StringModel::OpenFermionic => {
            let num = eta_product_expand(Sign::Plus, 8, true, false, 2 * order);
            let whole = eta_product_expand(Sign::Minus, 8, false, false, order);
            let mut den = QSeries::zero(Step::Half, 2 * order);
            for (k, v) in whole.coeffs.into_iter().enumerate() {
                den.coeffs[2 * k] = v;
            }
            num.div(&den)?
        }
        StringModel::Massless => QSeries::one(Step::Whole, order),
    })
}

fn coefficients_f64(series: &QSeries) -> Result<Vec<f64>> {
    series
        .coeffs
        .iter()
        .map(|c| c.to_f64().filter(|v| v.is_finite()))
        .collect::<Option<Vec<f64>>>()
        .ok_or_else(|| Error::Resource("degeneracy too large for double precision".into()))
}

/// Truncated Dirichlet series with an estimate of the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_estimate: f64,
}

/// `F(s) = sum_{n <= n_max} tau(n) n^{-s}`.
///
/// The tail estimate is the random-walk size
/// `sqrt(sum_{n > n_max} c n^{11 - 2 Re s})` with the Rankin-Selberg mean `c`.
pub fn ramanujan_f(s: Complex64, n_max: usize) -> Result<SeriesValue> {
    if !(s.re > 6.5) {
        return Err(Error::NoConvergence(format!(
            "truncated Ramanujan series needs Re s > 13/2, got {s}"
        )));
    }
    if n_max < 10 {
        return Err(Error::Invalid(format!("n_max must be at least 10, got {n_max}")));
    }
    let tau = coefficients_f64(&degeneracies(&DegeneracySpec { model: StringModel::RamanujanTau, order: n_max })?)?;
    let mut value = Complex64::zero();
    for n in (1..=n_max).rev() {
        value += tau[n] * rpow(n as f64, -s);
    }
    let p = 2.0 * s.re - 12.0;
    let tail_estimate = (RANKIN_SELBERG_DENSITY * (n_max as f64).powf(-p) / p).sqrt();
    Ok(SeriesValue { value, tail_estimate })
}

/// Completed function `Lambda(s) = (2 pi)^{-s} Gamma(s) F(s)` for any `s`,
/// from the modular symmetry of the discriminant:
/// `Lambda(s) = sum_n tau(n) [(2 pi n)^{-s} Gamma(s, 2 pi n) + (2 pi n)^{s-12} Gamma(12 - s, 2 pi n)]`.
/// Terms fall off like `e^{-2 pi n}`, so 30 of them reach double precision.
pub fn ramanujan_completed(s: Complex64) -> Result<Complex64> {
    const TERMS: usize = 30;
    let tau = coefficients_f64(&degeneracies(&DegeneracySpec { model: StringModel::RamanujanTau, order: TERMS })?)?;
    let mut sum = Complex64::zero();
    for n in (1..=TERMS).rev() {
        let x = 2.0 * std::f64::consts::PI * n as f64;
        let z = c(x, 0.0);
        sum += tau[n]
            * (rpow(x, -s) * incomplete_gamma_upper(s, z)? + rpow(x, s - 12.0) * incomplete_gamma_upper(12.0 - s, z)?);
    }
    Ok(sum)
}

/// `(2 pi)^{-s} Gamma(s) F(s)` from the truncated series, with its tail
/// estimate scaled the same way.
pub fn ramanujan_completed_truncated(s: Complex64, n_max: usize) -> Result<SeriesValue> {
    let f = ramanujan_f(s, n_max)?;
    let factor = rpow(2.0 * std::f64::consts::PI, -s) * gamma(s)?;
    Ok(SeriesValue { value: factor * f.value, tail_estimate: factor.norm() * f.tail_estimate })
}

/// Estimate of `sum_{k > K} |T_k|` from the magnitudes over the last two
/// doubling blocks, treating their ratio as geometric. Infinite when the
/// magnitudes are not shrinking.
fn doubling_tail(mags: &[f64]) -> f64 {
    let k = mags.len();
    if k < 4 {
        return if mags.iter().skip(1).all(|&m| m == 0.0) { 0.0 } else { f64::INFINITY };
    }
    let last: f64 = mags[k / 2..].iter().sum();
    let prev: f64 = mags[k / 4..k / 2].iter().sum();
    if last == 0.0 {
        return 0.0;
    }
    let r = last / prev;
    if !(r < 1.0) {
        return f64::INFINITY;
    }
    last * r / (1.0 - r)
}

/// String-modified two-point function
/// `sum_{n=0}^{n_max} sum_{N} rho(N) ((a (n + A)/R)^2 + a^2 N / alpha')^{-s/2}`
/// with `s = (sigma + i t)/a` and `N` running over the levels of the model up
/// to `big_n_max`.
///
/// The tail estimate adds doubling-block estimates in `n` and in `N`; it is
/// infinite when the degeneracies outgrow the damping, as they do for the
/// heterotic model.
pub fn string_green_series(
    pt: &SPoint,
    geom: &Geometry,
    spec: &DegeneracySpec,
    alpha_prime: f64,
    shift: f64,
    n_max: usize,
    big_n_max: usize,
) -> Result<SeriesValue> {
    if pt.sigma() <= 0.0 {
        return Err(Error::NoConvergence("undamped string series (sigma = 0) only oscillates".into()));
    }
    if !(alpha_prime > 0.0) {
        return Err(Error::Domain(format!("alpha' must be positive, got {alpha_prime}")));
    }
    if n_max < 1 || big_n_max < 1 {
        return Err(Error::Invalid("truncations must be at least 1".into()));
    }
    if spec.order < big_n_max {
        return Err(Error::Invalid(format!(
            "degeneracies known to order {} but N_max = {big_n_max}",
            spec.order
        )));
    }
    let series = degeneracies(&DegeneracySpec { model: spec.model, order: big_n_max })?;
    let rho = coefficients_f64(&series)?;
    let level_step = series.step.as_f64();
    let (a, r) = (geom.a(), geom.r());
    let w = -0.5 * pt.s();
    let ns: Vec<usize> = (0..=n_max).collect();
    let rows = par::map(&ns, |&n| -> Result<Vec<Complex64>> {
        let k2 = (a * (n as f64 + shift) / r).powi(2);
        rho.iter()
            .enumerate()
            .map(|(j, &d)| {
                if d == 0.0 {
                    return Ok(Complex64::zero());
                }
                let x = k2 + a * a * j as f64 * level_step / alpha_prime;
                if x == 0.0 {
                    return Err(Error::Pole(format!("massless zero mode at n = {n}, N = 0")));
                }
                Ok(d * rpow(x, w))
            })
            .collect()
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut value = Complex64::zero();
    for row in rows.iter().rev() {
        for t in row.iter().rev() {
            value += t;
        }
    }
    let by_n: Vec<f64> = rows.iter().map(|row| row.iter().map(|t| t.norm()).sum()).collect();
    let by_level: Vec<f64> = (0..rho.len()).map(|j| rows.iter().map(|row| row[j].norm()).sum()).collect();
    Ok(SeriesValue { value, tail_estimate: doubling_tail(&by_n) + doubling_tail(&by_level) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_tail_of_geometric_terms() {
        let mags: Vec<f64> = (0..64).map(|k| 0.5f64.powi(k)).collect();
        let exact: f64 = (64..200).map(|k| 0.5f64.powi(k)).sum();
        let est = doubling_tail(&mags);
        assert!(est >= exact && est < 1e-8);
        assert!(doubling_tail(&[1.0, 2.0, 3.0, 4.0, 5.0]).is_infinite());
    }

    #[test]
    fn massless_is_single_level() {
        let d = degeneracies(&DegeneracySpec { model: StringModel::Massless, order: 3 }).unwrap();
        assert_eq!(d.to_i64().unwrap(), vec![1, 0, 0, 0]);
    }
}
