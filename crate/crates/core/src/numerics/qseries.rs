//! Truncated power series with exact integer coefficients, for eta-product
//! expansions such as `q prod (1 - q^n)^24`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::{Error, Result};

/// Exponent increment between consecutive coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Step {
    /// coefficients of `q^0, q^1, q^2, ...`
    Whole,
    /// coefficients of `q^0, q^{1/2}, q^1, ...`
    Half,
}

impl Step {
    pub fn as_f64(self) -> f64 {
        match self {
            Step::Whole => 1.0,
            Step::Half => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub coeffs: Vec<BigInt>,
    pub step: Step,
    pub truncation_order: usize,
}

impl QSeries {
    pub fn zero(step: Step, order: usize) -> Self {
        Self { coeffs: vec![BigInt::zero(); order + 1], step, truncation_order: order }
    }

    pub fn one(step: Step, order: usize) -> Self {
        let mut s = Self::zero(step, order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Coefficient of the `k`-th power of the expansion variable.
    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    /// Coefficients as `i64`, or `None` if any does not fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.step != other.step {
            return Err(Error::Invalid("q-series with different steps cannot be combined".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.truncation_order.min(other.truncation_order);
        let mut out = Self::zero(self.step, order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    /// Exact series division; the divisor must have constant term `+-1`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d0 = &other.coeffs[0];
        if d0.abs() != BigInt::one() {
            return Err(Error::Invalid("divisor constant term must be +-1".into()));
        }
        let order = self.truncation_order.min(other.truncation_order);
        let mut out = Self::zero(self.step, order);
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &other.coeffs[j] * &out.coeffs[k - j];
            }
            out.coeffs[k] = acc * d0;
        }
        Ok(out)
    }

    /// Multiply by the expansion variable raised to `k`, dropping overflow.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.step, self.truncation_order);
        for i in 0..=self.truncation_order {
            if i >= k {
                out.coeffs[i] = self.coeffs[i - k].clone();
            }
        }
        out
    }

    /// Multiply in place by `(1 + sign u^n)^{power}` where `u` is the
    /// expansion variable; negative powers divide.
    fn apply_factor(&mut self, n: usize, sign: Sign, power: i64) {
        let order = self.truncation_order;
        if n > order || n == 0 {
            return;
        }
        for _ in 0..power.unsigned_abs() {
            if power > 0 {
                for k in (n..=order).rev() {
                    let prev = self.coeffs[k - n].clone();
                    match sign {
                        Sign::Plus => self.coeffs[k] += prev,
                        Sign::Minus => self.coeffs[k] -= prev,
                    }
                }
            } else {
                for k in n..=order {
                    let prev = self.coeffs[k - n].clone();
                    match sign {
                        Sign::Plus => self.coeffs[k] -= prev,
                        Sign::Minus => self.coeffs[k] += prev,
                    }
                }
            }
        }
    }
}

/// Exact coefficients of `[q] prod_{n>=1} (1 +- q^{n step})^exponent`.
///
/// With `half_powers` the expansion variable is `u = q^{1/2}` and the result
/// has `Step::Half`; `order` counts powers of the expansion variable. The
/// optional leading `q` (`leading_q`) shifts by one power of `q`, which is two
/// powers of `u` in half-step mode.
pub fn eta_product_expand(
    sign: Sign,
    exponent: i64,
    half_powers: bool,
    leading_q: bool,
    order: usize,
) -> QSeries {
    let step = if half_powers { Step::Half } else { Step::Whole };
    let mut s = QSeries::one(step, order);
    if exponent != 0 {
        for n in 1..=order {
            s.apply_factor(n, sign, exponent);
        }
    }
    if leading_q {
        s = s.shift(if half_powers { 2 } else { 1 });
    }
    s
}
