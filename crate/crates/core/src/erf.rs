//! Complex error function.
//!
//! `erf(z) = (2/√π) ∫_0^z e^{-t²} dt` is evaluated through the Faddeeva
//! function `w(z) = e^{-z²} erfc(-iz)` away from the origin, and through its
//! Taylor series close to it. The Faddeeva kernel follows the Poppe–Wijers
//! scheme (power series near the origin, Gautschi-shifted continued fraction
//! in the intermediate band, plain Laplace continued fraction outside).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest `|Im z|` for which [`cerf`] is documented to hold its accuracy.
pub const ENVELOPE_IM: f64 = 12.0;

/// Radius below which the Taylor series of `erf` is used directly.
const TAYLOR_RADIUS: f64 = 1.0;

const TWO_OVER_SQRT_PI: f64 = 1.128_379_167_095_512_573_9;

/// An error-function value together with its argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErfValue {
    pub z: Complex64,
    pub value: Complex64,
}

impl ErfValue {
    pub fn new(z: Complex64) -> Result<Self> {
        Ok(Self { z, value: cerf(z)? })
    }
}

/// Error function with the accuracy envelope enforced.
pub fn cerf(z: Complex64) -> Result<Complex64> {
    check_envelope(z)?;
    Ok(erf(z))
}

pub(crate) fn check_envelope(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() || z.im.abs() > ENVELOPE_IM {
        return Err(Error::OutsideEnvelope { re: z.re, im: z.im });
    }
    Ok(())
}

/// Error function, unchecked.
pub fn erf(z: Complex64) -> Complex64 {
    if z.norm() < TAYLOR_RADIUS {
        return erf_taylor(z);
    }
    if z.re >= 0.0 {
        Complex64::new(1.0, 0.0) - erfc_right(z)
    } else {
        erfc_right(-z) - 1.0
    }
}

/// Complementary error function, `1 - erf(z)`.
pub fn erfc(z: Complex64) -> Complex64 {
    if z.re >= 0.0 {
        if z.norm() < TAYLOR_RADIUS {
            return Complex64::new(1.0, 0.0) - erf_taylor(z);
        }
        erfc_right(z)
    } else {
        Complex64::new(2.0, 0.0) - erfc(-z)
    }
}

/// `e^{s} (erf(a) - erf(b))` without the cancellation that the plain
/// difference suffers when both arguments sit far out on the same side of
/// the imaginary axis.
pub fn scaled_erf_diff(s: Complex64, a: Complex64, b: Complex64) -> Complex64 {
    if a.re >= 0.0 && b.re >= 0.0 && a.norm() >= TAYLOR_RADIUS && b.norm() >= TAYLOR_RADIUS {
        // erf(a) - erf(b) = erfc(b) - erfc(a), erfc(z) = e^{-z²} w(iz)
        let i = Complex64::i();
        (s - b * b).exp() * faddeeva(i * b) - (s - a * a).exp() * faddeeva(i * a)
    } else if a.re < 0.0 && b.re < 0.0 && a.norm() >= TAYLOR_RADIUS && b.norm() >= TAYLOR_RADIUS {
        // erf(a) - erf(b) = erfc(-a) - erfc(-b)
        let i = Complex64::i();
        (s - a * a).exp() * faddeeva(-i * a) - (s - b * b).exp() * faddeeva(-i * b)
    } else {
        s.exp() * (erf(a) - erf(b))
    }
}

// erfc for Re z >= 0: e^{-z²} w(iz), with iz in the closed upper half-plane.
fn erfc_right(z: Complex64) -> Complex64 {
    let iz = Complex64::new(-z.im, z.re);
    (-(z * z)).exp() * faddeeva(iz)
}

fn erf_taylor(z: Complex64) -> Complex64 {
    // erf(z) = 2/√π Σ (-1)^n z^{2n+1} / (n! (2n+1))
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for n in 1..60 {
        term *= -z2 / n as f64;
        let add = term / (2 * n + 1) as f64;
        sum += add;
        if add.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * TWO_OVER_SQRT_PI
}

/// Faddeeva function `w(z) = e^{-z²} erfc(-iz)` on the whole complex plane.
pub fn faddeeva(z: Complex64) -> Complex64 {
    if z.im >= 0.0 {
        let w = faddeeva_upper(z.re.abs(), z.im);
        if z.re < 0.0 {
            w.conj()
        } else {
            w
        }
    } else {
        // w(z) = 2 e^{-z²} - w(-z)
        2.0 * (-(z * z)).exp() - faddeeva(-z)
    }
}

// First quadrant, x >= 0 and y >= 0.
fn faddeeva_upper(x: f64, y: f64) -> Complex64 {
    let xs = x / 6.3;
    let ys = y / 4.4;
    let mut qrho = xs * xs + ys * ys;
    let xquad = x * x - y * y;
    let yquad = 2.0 * x * y;

    if qrho < 0.085264 {
        qrho = (1.0 - 0.85 * ys) * qrho.sqrt();
        let n = (6.0 + 72.0 * qrho).round() as usize;
        let mut j = 2 * n + 1;
        let mut xsum = 1.0 / j as f64;
        let mut ysum = 0.0;
        for i in (1..=n).rev() {
            j -= 2;
            let xaux = (xsum * xquad - ysum * yquad) / i as f64;
            ysum = (xsum * yquad + ysum * xquad) / i as f64;
            xsum = xaux + 1.0 / j as f64;
        }
        let u1 = -TWO_OVER_SQRT_PI * (xsum * y + ysum * x) + 1.0;
        let v1 = TWO_OVER_SQRT_PI * (xsum * x - ysum * y);
        let daux = (-xquad).exp();
        let u2 = daux * yquad.cos();
        let v2 = -daux * yquad.sin();
        return Complex64::new(u1 * u2 - v1 * v2, u1 * v2 + v1 * u2);
    }

    let (h, kapn, nu) = if qrho > 1.0 {
        let r = qrho.sqrt();
        (0.0, 0usize, (3.0 + 1442.0 / (26.0 * r + 77.0)) as usize)
    } else {
        let r = (1.0 - ys) * (1.0 - qrho).sqrt();
        (
            1.88 * r,
            (7.0 + 34.0 * r).round() as usize,
            (16.0 + 26.0 * r).round() as usize,
        )
    };
    let shifted = h > 0.0;
    let h2 = 2.0 * h;
    let mut qlambda = if shifted { h2.powi(kapn as i32) } else { 0.0 };

    let (mut rx, mut ry, mut sx, mut sy) = (0.0, 0.0, 0.0, 0.0);
    for n in (0..=nu).rev() {
        let np1 = (n + 1) as f64;
        let tx = y + h + np1 * rx;
        let ty = x - np1 * ry;
        let c = 0.5 / (tx * tx + ty * ty);
        rx = c * tx;
        ry = c * ty;
        if shifted && n <= kapn {
            let tx = qlambda + sx;
            sx = rx * tx - ry * sy;
            sy = ry * tx + rx * sy;
            qlambda /= h2;
        }
    }
    let (mut u, v) = if shifted {
        (TWO_OVER_SQRT_PI * sx, TWO_OVER_SQRT_PI * sy)
    } else {
        (TWO_OVER_SQRT_PI * rx, TWO_OVER_SQRT_PI * ry)
    };
    if y == 0.0 {
        u = (-x * x).exp();
    }
    Complex64::new(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Reference values from an arbitrary-precision evaluation (50 digits).
    const REFERENCE: &[(f64, f64, f64, f64)] = &[
        (0.5, 0.0, 0.520_499_877_813_046_54, 0.0),
        (3.0, 0.0, 0.999_977_909_503_001_41, 0.0),
        (1.0, 1.0, 1.316_151_281_697_947_6, 0.190_453_469_237_834_69),
        (-2.0, 0.5, -1.003_502_243_313_036_3, 0.004_740_903_031_294_336_1),
        (0.3, 2.5, 114.494_509_474_596_58, 26.191_395_067_040_959),
        (4.5, -3.25, 0.999_999_903_615_126_62, 6.271_285_513_753_307_3e-6),
        (0.05, 0.02, 0.056_394_493_527_206_731, 0.022_514_221_695_625_041),
    ];

    #[test]
    fn reference_points() {
        for &(x, y, re, im) in REFERENCE {
            let got = erf(c(x, y));
            let want = c(re, im);
            assert!(
                (got - want).norm() <= 1e-13 * want.norm().max(1.0),
                "erf({x}+{y}i) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn erf_zero_and_three() {
        assert_eq!(erf(c(0.0, 0.0)), c(0.0, 0.0));
        let e3 = erf(c(3.0, 0.0));
        assert!((e3.re - 1.0).abs() < 3e-5);
        assert!(e3.im.abs() < 1e-16);
    }

    #[test]
    fn imaginary_argument_gives_imaginary_value() {
        let v = erf(c(0.0, 1.0));
        assert!(v.re.abs() < 1e-15);
        assert!(v.im > 0.0);
    }

    #[test]
    fn envelope_is_enforced() {
        assert!(matches!(cerf(c(0.0, 12.5)), Err(Error::OutsideEnvelope { .. })));
        assert!(cerf(c(40.0, -12.0)).is_ok());
    }

    #[test]
    fn stable_difference_matches_far_out() {
        // erf(8+a) - erf(8) ~ e^{-64}/(8√π); the naive difference is 0 in f64.
        let a = (2.0 * PI).sqrt();
        let d = scaled_erf_diff(c(0.0, 0.0), c(8.0 + a, 0.0), c(8.0, 0.0));
        let pole = (-64.0f64).exp() / (8.0 * PI.sqrt());
        assert!(d.re > 0.9 * pole && d.re < pole);
    }
}
