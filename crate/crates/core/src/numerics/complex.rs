use num_complex::Complex64;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `z^w` on the principal branch, `exp(w * Log z)`. `0^w` is 0 for `Re w > 0`.
pub fn cpow(z: Complex64, w: Complex64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return if w.re > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    (w * z.ln()).exp()
}

/// `x^w` for real `x > 0`, using the real logarithm.
#[inline]
pub fn rpow(x: f64, w: Complex64) -> Complex64 {
    (w * x.ln()).exp()
}

/// `exp(z) - 1` without cancellation for small `|z|`.
pub fn expm1(z: Complex64) -> Complex64 {
    let s = (0.5 * z.im).sin();
    Complex64::new(
        z.re.exp_m1() * z.im.cos() - 2.0 * s * s,
        z.re.exp() * z.im.sin(),
    )
}

/// Is `z` a non-positive integer (a pole of Gamma)?
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}
