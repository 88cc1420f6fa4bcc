//! Complex helpers that `num-complex` does not provide with enough accuracy
//! near the points this crate cares about.

use num_complex::Complex64;
use std::f64::consts::PI;

/// `ln(1 + w)` without cancellation for small `w`.
pub(crate) fn ln_1p(w: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let im = w.im.atan2(1.0 + w.re);
    Complex64::new(re, im)
}

/// `exp(z) - 1` without cancellation for small `z`.
pub(crate) fn exp_m1(z: Complex64) -> Complex64 {
    let half_sin = (0.5 * z.im).sin();
    let re = z.re.exp_m1() * z.im.cos() - 2.0 * half_sin * half_sin;
    let im = z.re.exp() * z.im.sin();
    Complex64::new(re, im)
}

/// `sin(pi z)` with the real part reduced modulo 2 before scaling.
pub(crate) fn sin_pi(z: Complex64) -> Complex64 {
    let x = z.re % 2.0;
    let (s, c) = sin_cos_pi_real(x);
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

fn sin_cos_pi_real(x: f64) -> (f64, f64) {
    // exact zeros at the integers keep trivial-zero and pole tests clean
    if x == x.round() {
        let c = if (x as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return (0.0, c);
    }
    let a = PI * x;
    (a.sin(), a.cos())
}

/// Distance from `z` to the nearest non-positive integer, or infinity when
/// `Re z` is positive enough that no such integer is close.
pub(crate) fn distance_to_nonpositive_integer(z: Complex64) -> f64 {
    if z.re > 0.5 {
        return f64::INFINITY;
    }
    let k = z.re.round().min(0.0);
    (z - Complex64::new(k, 0.0)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_1p_small_argument() {
        let w = Complex64::new(1e-10, -2e-10);
        let v = ln_1p(w);
        // ln(1+w) = w - w^2/2 + ...
        let expect = w - w * w / 2.0;
        assert!((v - expect).norm() < 1e-25);
    }

    #[test]
    fn exp_m1_matches_exp_away_from_zero() {
        let z = Complex64::new(0.7, -1.3);
        assert!((exp_m1(z) - (z.exp() - 1.0)).norm() < 1e-15);
        let small = Complex64::new(1e-9, 1e-9);
        assert!((exp_m1(small) - small).norm() < 1e-17);
    }

    #[test]
    fn sin_pi_integers_and_generic() {
        assert_eq!(sin_pi(Complex64::new(-3.0, 0.0)).re, 0.0);
        let z = Complex64::new(0.37, 0.8);
        assert!((sin_pi(z) - (z * PI).sin()).norm() < 1e-14);
        let z = Complex64::new(-7.25, -2.0);
        assert!((sin_pi(z) - (z * PI).sin()).norm() / (z * PI).sin().norm() < 1e-13);
    }
}
