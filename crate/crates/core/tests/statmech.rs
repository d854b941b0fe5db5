mod common;

use std::f64::consts::{LN_2, PI};

use common::c;
use zlab::greens::{green_case4, Geometry, SPoint};
use zlab::statmech::{
    count_factorizations, grand_log_z, log_oscillator_z, one_particle_z, oscillator_period, thermal_green,
    thermodynamics, thermodynamics_with_fugacity, FactorMode, Statistics, SumMethod,
};
use zlab::Error;

const ZETA_3: f64 = 1.202_056_903_159_594_285_4;

fn geom(r: f64) -> Geometry {
    Geometry::new(r, 1.0, 0.0).unwrap()
}

#[test]
fn one_particle_partition_function() {
    assert!((one_particle_z(2.0, &geom(1.0)).unwrap() - PI * PI / 6.0).abs() < 1e-14);
    assert!((one_particle_z(3.0, &geom(2.0)).unwrap() - 8.0 * (ZETA_3 - 1.0)).abs() < 1e-13);
    assert!(matches!(one_particle_z(1.0, &geom(1.0)), Err(Error::Pole(_))));
    // residue at beta = a, with the linear term removed by extrapolation
    let f = |e: f64| e * one_particle_z(1.0 + e, &geom(1.0)).unwrap();
    assert!((2.0 * f(1e-3) - f(2e-3) - 1.0).abs() < 1e-6);
}

#[test]
fn fermi_series_and_product_agree() {
    let g = geom(1.0);
    for &b in &[1.5, 2.0, 3.0, 5.0] {
        let direct = grand_log_z(Statistics::Fermi, b, 0.0, &g, SumMethod::DirectProduct, 200).unwrap();
        let series = grand_log_z(Statistics::Fermi, b, 0.0, &g, SumMethod::Series, 200).unwrap();
        assert!((direct - series).abs() < 1e-10, "beta = {b}");
    }
    // at beta = 2a: sum -(-1)^m (zeta(2m) - 1) / m over the modes n >= 2
    let oracle: f64 = (1..=60)
        .map(|m| {
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            sign * (common::zeta_em(c(2.0 * m as f64, 0.0)).re - 1.0) / m as f64
        })
        .sum();
    let got = grand_log_z(Statistics::Fermi, 2.0, 0.0, &g, SumMethod::Series, 200).unwrap();
    assert!((got - oracle).abs() < 1e-13);
}

#[test]
fn bose_telescoping_product() {
    // prod_{n>=2} (1 - n^{-2}) = 1/2
    let g = geom(1.0);
    for method in [SumMethod::DirectProduct, SumMethod::Series] {
        let v = grand_log_z(Statistics::Bose, 2.0, 0.0, &g, method, 300).unwrap();
        assert!((v - LN_2).abs() < 1e-10, "{method:?}: {v}");
    }
}

#[test]
fn ground_state_limit() {
    let g = geom(1.0);
    let v = grand_log_z(Statistics::Fermi, 60.0, 0.0, &g, SumMethod::DirectProduct, 50).unwrap();
    assert!(v > 0.0 && v < 1e-17);
    let th = thermodynamics(60.0, &g, 50).unwrap();
    for q in [th.f, th.u, th.p, th.n] {
        assert!(q.abs() < 1e-15, "{th:?}");
    }
}

#[test]
fn divergences() {
    let g = geom(1.0);
    assert!(matches!(
        grand_log_z(Statistics::Fermi, 1.0, 0.0, &g, SumMethod::DirectProduct, 10),
        Err(Error::Divergence(_))
    ));
    assert!(matches!(thermodynamics(0.5, &g, 10), Err(Error::Divergence(_))));
    // e^{beta mu} 2^{-beta} >= 1 puts the lowest Bose mode at infinite occupation
    assert!(matches!(
        grand_log_z(Statistics::Bose, 2.0, LN_2, &g, SumMethod::DirectProduct, 10),
        Err(Error::Divergence(_))
    ));
    assert!(matches!(
        grand_log_z(Statistics::Fermi, 2.0, 1.0, &g, SumMethod::Series, 10),
        Err(Error::Domain(_))
    ));
    assert!(grand_log_z(Statistics::Fermi, 2.0, 1.0, &g, SumMethod::DirectProduct, 10).unwrap() > 0.0);
}

fn sigma_counts(limit: u64) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; limit as usize + 1];
    let mut r = vec![0.0; limit as usize + 1];
    d[1] = 1.0;
    r[1] = 1.0;
    for n in 2..=limit {
        d[n as usize] = count_factorizations(n, FactorMode::Distinct).unwrap().count as f64;
        r[n as usize] = count_factorizations(n, FactorMode::WithRepeats).unwrap().count as f64;
    }
    (d, r)
}

#[test]
fn partition_function_is_dirichlet_series_of_state_counts() {
    // Z(beta) = sum_n sigma(n) n^{-beta/a}; the modes at R = a have w = n + 1
    let b = 4.0;
    let (d, r) = sigma_counts(500);
    let fermi: f64 = (1..=500).rev().map(|n| d[n] * (n as f64).powf(-b)).sum();
    let bose: f64 = (1..=500).rev().map(|n| r[n] * (n as f64).powf(-b)).sum();
    let g = geom(1.0);
    let zf = grand_log_z(Statistics::Fermi, b, 0.0, &g, SumMethod::Series, 200).unwrap().exp();
    let zb = grand_log_z(Statistics::Bose, b, 0.0, &g, SumMethod::Series, 200).unwrap().exp();
    // tails beyond n = 500 are below 500^{-3} times the average count
    assert!((zf - fermi).abs() < 1e-6, "{zf} vs {fermi}");
    assert!((zb - bose).abs() < 1e-6, "{zb} vs {bose}");
}

/// Unordered factorizations of `n` with every factor at most `max`, counted
/// by memo-free recursion over divisors.
fn brute_count(n: u64, max: u64, distinct: bool) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut total = 0;
    for f in 2..=max.min(n) {
        if n % f == 0 {
            total += brute_count(n / f, if distinct { f - 1 } else { f }, distinct);
        }
    }
    total
}

#[test]
fn factorization_counts_match_brute_force() {
    for n in 2..=2000u64 {
        let d = count_factorizations(n, FactorMode::Distinct).unwrap();
        let r = count_factorizations(n, FactorMode::WithRepeats).unwrap();
        assert_eq!(d.count as u64, brute_count(n, n, true), "distinct {n}");
        assert_eq!(r.count as u64, brute_count(n, n, false), "repeats {n}");
    }
}

#[test]
fn factorization_invariants() {
    for n in (2..=10_000u64).step_by(7) {
        let d = count_factorizations(n, FactorMode::Distinct).unwrap();
        let r = count_factorizations(n, FactorMode::WithRepeats).unwrap();
        assert!(d.count <= r.count);
        for f in d.listing.iter().chain(r.listing.iter()) {
            assert_eq!(f.iter().product::<u64>(), n);
            assert!(f.windows(2).all(|w| w[0] >= w[1]) && f.iter().all(|&x| x >= 2));
        }
        for f in &d.listing {
            assert!(f.windows(2).all(|w| w[0] > w[1]));
        }
    }
    // square-free numbers cannot repeat a factor
    for n in [30u64, 210, 2310] {
        assert_eq!(
            count_factorizations(n, FactorMode::Distinct).unwrap().count,
            count_factorizations(n, FactorMode::WithRepeats).unwrap().count
        );
    }
}

#[test]
fn factorizations_of_120() {
    let d = count_factorizations(120, FactorMode::Distinct).unwrap();
    let by_len = |l: usize| d.listing.iter().filter(|f| f.len() == l).count();
    assert_eq!((by_len(4), by_len(3), by_len(2), by_len(1)), (1, 7, 7, 1));
    assert!(d.listing.contains(&vec![10, 6, 2]));
    assert_eq!(d.listing[0], vec![5, 4, 3, 2]);
    assert_eq!(*d.listing.last().unwrap(), vec![120]);
    let r = count_factorizations(120, FactorMode::WithRepeats).unwrap();
    assert_eq!(r.count, 21);
    assert_eq!(count_factorizations(97, FactorMode::WithRepeats).unwrap().listing, vec![vec![97]]);
}

#[test]
fn energy_is_minus_log_z_derivative() {
    let g = geom(1.0);
    let log_z = |b: f64| grand_log_z(Statistics::Fermi, b, 0.0, &g, SumMethod::DirectProduct, 400).unwrap();
    for &b in &[1.5, 2.0, 4.0] {
        let h = 1e-4;
        let fd = -(log_z(b + h) - log_z(b - h)) / (2.0 * h);
        let th = thermodynamics(b, &g, 400).unwrap();
        assert!((th.u - fd).abs() < 1e-7 * fd.abs(), "beta = {b}");
        assert!((th.f - log_z(b) / b).abs() < 1e-14);
    }
}

#[test]
fn pressure_is_radius_derivative_of_energy() {
    let b = 2.5;
    let u = |r: f64| thermodynamics(b, &geom(r), 400).unwrap().u;
    for &r in &[0.8, 1.0, 2.0] {
        let h = 1e-4 * r;
        let fd = (u(r + h) - u(r - h)) / (2.0 * h) / (2.0 * PI);
        let p = thermodynamics(b, &geom(r), 400).unwrap().p;
        assert!((p - fd).abs() < 1e-6 * fd.abs().max(1e-6), "R = {r}: {p} vs {fd}");
    }
}

#[test]
fn particle_number_direct_sum() {
    let g = geom(1.0);
    let mut direct = 0.0;
    for n in (1..=2_000_000u64).rev() {
        let w = (n + 1) as f64;
        direct += 1.0 / (1.0 + w * w);
    }
    direct += 1.0 / 2_000_001.5;
    let th = thermodynamics(2.0, &g, 300).unwrap();
    assert!((th.n - direct).abs() < 1e-9, "{} vs {direct}", th.n);
    let alpha = 0.7;
    let shifted = thermodynamics_with_fugacity(2.0, alpha, &g, 300).unwrap();
    let want: f64 = (1..=20_000u64).rev().map(|n| 1.0 / (alpha.exp() + ((n + 1) as f64).powi(2))).sum::<f64>()
        + 1.0 / 20_001.5;
    assert!((shifted.n - want).abs() < 1e-9);
}

#[test]
fn thermal_green_single_image_is_circle_propagator() {
    let g = geom(1.2);
    let v = thermal_green(0.7, 3.0, 0.6, 2.0, &g, 0).unwrap();
    let w = green_case4(0.7, &SPoint::new(3.0, 0.6, 1.0).unwrap(), &g).unwrap();
    assert_eq!(v, w);
}

#[test]
fn thermal_green_at_the_origin() {
    // zeta(0) - zeta(2) + zeta(4) - zeta(6); the negative images sit on trivial zeros
    let g = geom(1.0);
    let v = thermal_green(0.0, 0.0, 0.0, 2.0, &g, 3).unwrap();
    let want = -0.5 - PI.powi(2) / 6.0 + PI.powi(4) / 90.0 - PI.powi(6) / 945.0;
    assert!((v.re - want).abs() < 1e-12 && v.im.abs() < 1e-12, "{v}");
    assert!((want + 2.079_953_895_1).abs() < 1e-9);
}

#[test]
fn thermal_green_pole() {
    let g = geom(1.0);
    let e = thermal_green(0.0, 0.0, 0.25, 0.75, &g, 2);
    assert!(matches!(e, Err(Error::Pole(ref m)) if m.contains("m = 1")), "{e:?}");
    assert!(thermal_green(0.3, 0.0, 0.25, 0.75, &g, 2).is_ok());
}

#[test]
fn oscillator_partition_function() {
    let z = log_oscillator_z(c(2.0, 0.0), c(0.0, 0.0), 2.0, 1.0).unwrap();
    assert!((z - c(PI * PI / 24.0, 0.0)).norm() < 1e-14);
    let alt = log_oscillator_z(c(2.0, 0.0), c(0.0, PI), 2.0, 1.0).unwrap();
    assert!((alt - c(PI * PI / 48.0, 0.0)).norm() < 1e-14);
    // residue a / (a omega) at beta = a
    let f = |e: f64| e * log_oscillator_z(c(1.0 + e, 0.0), c(0.0, 0.0), 2.0, 1.0).unwrap().re;
    assert!((2.0 * f(1e-3) - f(2e-3) - 0.5).abs() < 1e-6);
    assert!(matches!(log_oscillator_z(c(2.0, 0.0), c(-0.1, 0.0), 2.0, 1.0), Err(Error::Domain(_))));
}

#[test]
fn damped_oscillator_sum() {
    let (beta, mu, aw) = (c(1.5, 2.0), c(0.4, 1.1), 0.8);
    let mut want = c(0.0, 0.0);
    for n in (0..2000).rev() {
        let level = aw * (n as f64 + 0.5) + 1.0;
        want += (-mu * n as f64 - beta * level.ln()).exp();
    }
    let got = log_oscillator_z(beta, mu, aw, 1.0).unwrap();
    assert!((got - want).norm() < 1e-13);
}

#[test]
fn oscillator_zero_at_first_zeta_zero() {
    // a omega = 2 gives zeta(beta/a)/4, which vanishes at the first nontrivial zero
    let z = log_oscillator_z(c(0.5, 14.134_725_141_734_694), c(0.0, 0.0), 2.0, 1.0).unwrap();
    assert!(z.norm() < 1e-10);
}

#[test]
fn classical_period() {
    let w = 3.0;
    assert!((oscillator_period(0.0, 0.0, 1.0, w, 0.5).unwrap() - 2.0 * PI / w).abs() < 1e-15);
    assert!((oscillator_period(1.2, 0.4, 1.0, w, 0.0).unwrap() - 2.0 * PI / w).abs() < 1e-15);
    let (q0, m, a) = (0.7, 2.0, 0.3);
    let want = 2.0 * PI / w * (1.0 + a * m * w * w * q0 * q0 / 2.0);
    assert!((oscillator_period(q0, 0.0, m, w, a).unwrap() - want).abs() < 1e-14);
    assert!(matches!(oscillator_period(1.0, 1.0, 0.0, w, a), Err(Error::Domain(_))));
}
