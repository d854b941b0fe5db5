mod common;

use std::f64::consts::{LN_2, PI};

use common::c;
use rand::{rngs::StdRng, Rng, SeedableRng};
use zlab::greens::{Geometry, SPoint};
use zlab::numerics::QuadratureSpec;
use zlab::zeros::{
    duality_map, duality_residual, find_zeros, find_zeros_checked, hardy_function, riemann_siegel_theta,
    theta_integral_zeta, zero_count,
};
use zlab::Error;

#[test]
fn theta_reference_values() {
    assert!((riemann_siegel_theta(20.0).unwrap() - 1.186_894_808_444_484_044_8).abs() < 1e-12);
    assert!((riemann_siegel_theta(100.5).unwrap() - 88.664_611_436_109_324_776).abs() < 1e-10);
    for t in [3.0, 17.5, 40.0] {
        assert!((riemann_siegel_theta(t).unwrap() - common::rs_theta(t)).abs() < 1e-11);
    }
}

#[test]
fn hardy_reference_values() {
    let table = [
        (0.0, -1.460_354_508_809_586_812_9),
        (7.0, -1.095_579_302_151_126_956_1),
        (50.0, -0.340_735_005_955_024_982_75),
    ];
    for (t, z) in table {
        assert!((hardy_function(t).unwrap() - z).abs() < 1e-11, "Z({t})");
    }
    assert!(hardy_function(14.0).unwrap() * hardy_function(14.2).unwrap() < 0.0);
}

#[test]
fn hardy_matches_oracle() {
    let mut t = 0.5;
    while t < 60.0 {
        let (z, o) = (hardy_function(t).unwrap(), common::hardy_z(t));
        assert!((z - o).abs() < 1e-9 * o.abs().max(1.0), "t = {t}: {z} vs {o}");
        t += 1.37;
    }
}

#[test]
fn zeros_match_independent_scan() {
    let found = find_zeros(10.0, 30.0, 0.05).unwrap();
    let oracle = common::scan_zeros(10.0, 30.0, 0.1);
    assert_eq!(found.len(), oracle.len());
    for (k, (z, o)) in found.iter().zip(&oracle).enumerate() {
        assert_eq!(z.index, k + 1);
        assert!((z.t - o).abs() < 1e-8, "{} vs {o}", z.t);
        assert!(z.refinement_error <= 1e-9);
        assert!(hardy_function(z.t).unwrap().abs() < 1e-8);
    }
    assert!(find_zeros(0.0, 10.0, 0.05).unwrap().is_empty());
    assert!(matches!(find_zeros(5.0, 5.0, 0.1), Err(Error::Invalid(_))));
}

#[test]
fn counting_function() {
    assert_eq!(zero_count(10.0).unwrap(), 0);
    assert_eq!(zero_count(15.0).unwrap(), 1);
    assert_eq!(zero_count(30.0).unwrap(), 3);
    for t in [20.0, 30.0, 50.0] {
        assert_eq!(zero_count(t).unwrap(), common::scan_zeros(1.0, t, 0.05).len(), "T = {t}");
    }
    let scan = find_zeros_checked(0.0, 50.0, 0.05).unwrap();
    assert_eq!(scan.zeros.len(), scan.expected);
    assert!(scan.warning.is_none());
}

#[test]
fn grid_step_is_validated() {
    assert!(matches!(find_zeros_checked(40.0, 50.0, 2.5), Err(Error::Invalid(_))));
    assert!(matches!(find_zeros(40.0, 50.0, 0.0), Err(Error::Invalid(_))));
}

#[test]
fn theta_integral_special_values() {
    let spec = QuadratureSpec::default();
    let two = theta_integral_zeta(c(2.0, 0.0), &spec).unwrap();
    assert!((two.closed_form - c(-PI / 4.0, 0.0)).norm() < 1e-14);
    assert!((two.quadrature - two.closed_form).norm() < 1e-9);
    let one = theta_integral_zeta(c(1.0, 0.0), &spec).unwrap();
    assert!((one.closed_form - c(-LN_2, 0.0)).norm() < 1e-14);
    assert!(one.relative_error() < 1e-9);
    for s in [c(0.5, 3.0), c(1.7, -6.0), c(3.0, 10.0)] {
        let check = theta_integral_zeta(s, &spec).unwrap();
        assert!(check.relative_error() < 1e-8, "{s}: {}", check.relative_error());
    }
    assert!(matches!(theta_integral_zeta(c(0.0, 1.0), &spec), Err(Error::Domain(_))));
}

#[test]
fn theta_integral_vanishes_at_zero() {
    let check = theta_integral_zeta(c(0.5, 14.134_725_141_734_694), &QuadratureSpec::default()).unwrap();
    assert!(check.closed_form.norm() < 1e-12);
    assert!(check.quadrature.norm() < 1e-9);
}

#[test]
fn duality_map_geometry() {
    let a = 1.3;
    let g = Geometry::new(a, a, 0.0).unwrap();
    let m = duality_map(PI * a, &g).unwrap();
    assert!((m.r_prime - a / 2.0).abs() < 1e-15 && (m.r_double_prime - a / 2.0).abs() < 1e-15);
    assert!((m.x_double_prime - PI * a).abs() < 1e-14);
    let self_dual = Geometry::new(a / 2f64.sqrt(), a, 0.0).unwrap();
    assert!((duality_map(PI * a, &self_dual).unwrap().r_prime - a / 2f64.sqrt()).abs() < 1e-15);
    // x = 2 pi R^2 / a is a fixed point of R -> R'
    let r = 0.9;
    let g = Geometry::new(r, a, 0.0).unwrap();
    let m = duality_map(2.0 * PI * r * r / a, &g).unwrap();
    assert!((m.r_prime - r).abs() < 1e-14);
    assert!((m.r_prime + m.r_double_prime - a).abs() < 1e-15);
    assert!((m.x_prime + m.x_double_prime - 2.0 * PI * r).abs() < 1e-14);
    assert!(matches!(duality_map(0.0, &g), Err(Error::Domain(_))));
    assert!(matches!(duality_map(2.0 * PI * r, &g), Err(Error::Domain(_))));
}

#[test]
fn duality_residuals_are_small() {
    let g = Geometry::new(1.0, 1.0, 0.0).unwrap();
    let pt = SPoint::new(2.0, 0.3, 1.0).unwrap();
    assert!(duality_residual(PI, &pt, &g).unwrap() < 1e-7);
    let mut rng = StdRng::seed_from_u64(77);
    for _ in 0..20 {
        let r = rng.gen_range(0.3..2.5);
        let g = Geometry::new(r, 1.0, 0.0).unwrap();
        let x = rng.gen_range(0.05..0.95) * 2.0 * PI * r;
        let pt = SPoint::new(rng.gen_range(-15.0..15.0), rng.gen_range(0.0..2.0), 1.0).unwrap();
        let res = duality_residual(x, &pt, &g).unwrap();
        assert!(res < 1e-6, "R = {r}, x = {x}, {:?}: {res}", pt.s());
    }
}
