//! Jacobi theta constants with nome `q = e^{-pi tau}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaKind {
    /// `theta_1'(0) = 2 sum_{n>=0} (-1)^n (2n+1) q^{(n+1/2)^2}`
    Theta1Prime,
    Theta2,
    Theta3,
    Theta4,
}

/// Theta constant at `tau > 0`, summing at most `order` nome terms and
/// stopping once a term drops below `1e-16` of the partial sum.
pub fn theta_function(kind: ThetaKind, tau: f64, order: usize) -> Result<f64> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Domain(format!("theta needs tau > 0, got {tau}")));
    }
    if order == 0 {
        return Err(Error::Invalid("theta order must be at least 1".into()));
    }
    let term = |n: usize| -> f64 {
        let nf = n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        match kind {
            ThetaKind::Theta1Prime => {
                let h = nf + 0.5;
                2.0 * sign * (2.0 * nf + 1.0) * (-PI * tau * h * h).exp()
            }
            ThetaKind::Theta2 => {
                let h = nf + 0.5;
                2.0 * (-PI * tau * h * h).exp()
            }
            ThetaKind::Theta3 => 2.0 * (-PI * tau * nf * nf).exp(),
            ThetaKind::Theta4 => 2.0 * sign * (-PI * tau * nf * nf).exp(),
        }
    };
    let (mut sum, start) = match kind {
        ThetaKind::Theta3 | ThetaKind::Theta4 => (1.0, 1),
        _ => (0.0, 0),
    };
    for n in start..start + order {
        let t = term(n);
        sum += t;
        if t.abs() < 1e-16 * sum.abs() {
            break;
        }
    }
    Ok(sum)
}

/// `theta_3(i tau) - 1 = 2 sum_{n>=1} e^{-pi n^2 tau}`, using the modular
/// transform below `tau = 1`.
pub(crate) fn theta3_minus_one(tau: f64) -> f64 {
    if tau >= 1.0 {
        let mut sum = 0.0;
        let mut n = 1.0f64;
        loop {
            let t = (-PI * n * n * tau).exp();
            sum += t;
            if t <= 1e-18 * sum {
                break;
            }
            n += 1.0;
        }
        2.0 * sum
    } else {
        (1.0 + theta3_minus_one(1.0 / tau)) / tau.sqrt() - 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_identity_for_theta3() {
        for &t in &[0.3, 0.7, 1.0, 2.5] {
            let lhs = theta_function(ThetaKind::Theta3, t, 200).unwrap();
            let rhs = theta_function(ThetaKind::Theta3, 1.0 / t, 200).unwrap() / t.sqrt();
            assert!((lhs - rhs).abs() < 1e-14, "{t}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn jacobi_identity_and_derivative_product() {
        let t = 0.8;
        let [t1, t2, t3, t4] = [ThetaKind::Theta1Prime, ThetaKind::Theta2, ThetaKind::Theta3, ThetaKind::Theta4]
            .map(|k| theta_function(k, t, 200).unwrap());
        assert!((t3.powi(4) - t2.powi(4) - t4.powi(4)).abs() < 1e-13);
        assert!((t1 - t2 * t3 * t4).abs() < 1e-13);
    }

    #[test]
    fn shifted_minus_one_is_continuous_at_one() {
        let a = theta3_minus_one(1.0 - 1e-12);
        let b = theta3_minus_one(1.0);
        assert!((a - b).abs() < 1e-11);
    }
}
