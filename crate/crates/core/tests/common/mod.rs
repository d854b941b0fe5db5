//! Reference implementations used as test oracles. They share no code with
//! the library: plain Euler-Maclaurin with Bernoulli numbers from their
//! recurrence, brute-force sums and a Stirling log-gamma.
#![allow(dead_code)]

use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

/// B_0, B_2, ..., B_{2m} from `sum_{k<n} C(n+1, k) B_k = -(n+1) B_n`.
pub fn bernoulli_even(m: usize) -> Vec<f64> {
    let n_max = 2 * m;
    let mut b = vec![0.0f64; n_max + 1];
    b[0] = 1.0;
    for n in 1..=n_max {
        let mut acc = 0.0;
        let mut binom = 1.0; // C(n+1, 0)
        for (k, bk) in b.iter().enumerate().take(n) {
            acc += binom * bk;
            binom *= (n + 1 - k) as f64 / (k + 1) as f64;
        }
        b[n] = -acc / (n + 1) as f64;
    }
    (0..=m).map(|k| b[2 * k]).collect()
}

/// Hurwitz zeta by Euler-Maclaurin with `n` explicit terms and `m`
/// Bernoulli corrections.
pub fn hurwitz_em(s: Complex64, alpha: f64, n: usize, m: usize) -> Complex64 {
    let b = bernoulli_even(m);
    let mut sum = c(0.0, 0.0);
    for k in 0..n {
        sum += (-s * (k as f64 + alpha).ln()).exp();
    }
    let big = n as f64 + alpha;
    let lb = big.ln();
    sum += (-(s - 1.0) * lb).exp() / (s - 1.0);
    sum += 0.5 * (-s * lb).exp();
    // term_k = B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    let mut rising = s;
    let mut fact = 1.0;
    for k in 1..=m {
        fact *= (2 * k - 1) as f64 * (2 * k) as f64;
        sum += b[k] / fact * rising * (-(s + (2 * k - 1) as f64) * lb).exp();
        rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
    }
    sum
}

pub fn zeta_em(s: Complex64) -> Complex64 {
    let n = 30 + s.im.abs() as usize;
    hurwitz_em(s, 1.0, n, 14)
}

/// Stirling log-gamma after shifting `Re z` above 12.
pub fn log_gamma_stirling(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = c(0.0, 0.0);
    while z.re < 12.0 {
        shift += z.ln();
        z += 1.0;
    }
    let half_ln_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let b = bernoulli_even(8);
    let mut series = c(0.0, 0.0);
    let mut zp = z;
    for k in 1..=8 {
        series += b[k] / ((2 * k) as f64 * (2 * k - 1) as f64) / zp;
        zp *= z * z;
    }
    (z - 0.5) * z.ln() - z + half_ln_2pi + series - shift
}

pub fn gamma_stirling(z: Complex64) -> Complex64 {
    log_gamma_stirling(z).exp()
}

/// Dirichlet eta by averaging consecutive partial sums of the alternating
/// series, repeated (Euler transform in its simplest form).
pub fn eta_averaged(s: Complex64, terms: usize, rounds: usize) -> Complex64 {
    let mut partial = Vec::with_capacity(terms);
    let mut acc = c(0.0, 0.0);
    for n in 1..=terms {
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        acc += sign * (-s * (n as f64).ln()).exp();
        partial.push(acc);
    }
    for _ in 0..rounds {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    *partial.last().unwrap()
}

/// Riemann-Siegel theta from the Stirling log-gamma.
pub fn rs_theta(t: f64) -> f64 {
    log_gamma_stirling(c(0.25, 0.5 * t)).im - 0.5 * t * std::f64::consts::PI.ln()
}

pub fn hardy_z(t: f64) -> f64 {
    (c(0.0, rs_theta(t)).exp() * zeta_em(c(0.5, t))).re
}

/// Zeros of `hardy_z` on `[lo, hi]` by a coarse scan and bisection.
pub fn scan_zeros(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut t = lo;
    let mut f = hardy_z(t);
    while t < hi {
        let t2 = (t + step).min(hi);
        let f2 = hardy_z(t2);
        if f * f2 < 0.0 {
            let (mut a, mut b, mut fa) = (t, t2, f);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                let fm = hardy_z(m);
                if fm * fa > 0.0 {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        t = t2;
        f = f2;
    }
    out
}

/// Reference Lerch values `(x, s, alpha, phi)` from a 30-digit evaluation.
pub const LERCH_TABLE: [(f64, (f64, f64), f64, (f64, f64)); 9] = [
    (0.25, (2.0, 0.0), 0.5, (3.8741843919967266243, 0.38475229217728685725)),
    (0.3, (0.5, 14.0), 1.7, (-0.69922068831338775103, 0.76877873603063626257)),
    (0.0, (3.0, 2.0), 0.3, (-27.165876484928691517, 24.478629894290882502)),
    (0.5, (0.75, 3.0), 1.0, (1.0162861704465994973, 0.4528956425618922517)),
    (0.9, (-1.5, 2.0), 0.8, (0.1237066968424009221, 0.16102555133339793182)),
    (0.1, (0.2, -25.0), 1.3, (2.1676629349917124295, 0.57815431721148607063)),
    (0.0, (-2.5, 0.5), 2.5, (-2.8759004006199891087, 0.497333598185347918)),
    (0.7, (1.0, 0.0), 1.0, (0.74626906478591282347, -0.26349853806867260978)),
    (0.5, (0.5, 40.0), 1.0, (2.5178406066241159071, -1.7131571873745603839)),
];
