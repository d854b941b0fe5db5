use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use zlab::dirichlet::{lerch_phi, EvalPolicy, LerchArgs};
use zlab::statmech::{count_factorizations, FactorMode};

fn phi(x: f64, s: Complex64, alpha: f64) -> Complex64 {
    lerch_phi(&LerchArgs::new(x, s, alpha).unwrap(), &EvalPolicy::default()).unwrap()
}

fn lerch_point() -> impl Strategy<Value = (f64, Complex64, f64)> {
    (0.05f64..0.95, -2.0f64..4.0, -20.0f64..20.0, 0.2f64..3.0).prop_map(|(x, re, im, a)| (x, Complex64::new(re, im), a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lerch_shift_recurrence((x, s, alpha) in lerch_point()) {
        let head = (-s * alpha.ln()).exp();
        let tail = Complex64::from_polar(1.0, 2.0 * PI * x) * phi(x, s, alpha + 1.0);
        let lhs = phi(x, s, alpha);
        let scale = head.norm().max(tail.norm());
        prop_assert!((lhs - head - tail).norm() < 1e-9 * scale, "{lhs} vs {}", head + tail);
    }

    #[test]
    fn lerch_is_periodic_in_x((x, s, alpha) in lerch_point(), k in -3i32..4) {
        let a = phi(x, s, alpha);
        let b = phi(x + k as f64, s, alpha);
        prop_assert!((a - b).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn lerch_conjugation((x, s, alpha) in lerch_point()) {
        let a = phi(x, s, alpha).conj();
        let b = phi(1.0 - x, s.conj(), alpha);
        prop_assert!((a - b).norm() < 1e-9 * a.norm().max(1e-3));
    }

    #[test]
    fn factorization_listings(n in 2u64..50_000) {
        let d = count_factorizations(n, FactorMode::Distinct).unwrap();
        let r = count_factorizations(n, FactorMode::WithRepeats).unwrap();
        prop_assert_eq!(d.count, d.listing.len());
        prop_assert_eq!(r.count, r.listing.len());
        prop_assert!(d.count <= r.count);
        for f in &d.listing {
            prop_assert_eq!(f.iter().product::<u64>(), n);
            prop_assert!(f.windows(2).all(|w| w[0] > w[1]));
        }
        for f in &r.listing {
            prop_assert_eq!(f.iter().product::<u64>(), n);
            prop_assert!(f.windows(2).all(|w| w[0] >= w[1]));
        }
        // every listing with a repeated factor is missing from the distinct list
        let repeated = r.listing.iter().filter(|f| f.windows(2).any(|w| w[0] == w[1])).count();
        prop_assert_eq!(d.count + repeated, r.count);
    }
}
