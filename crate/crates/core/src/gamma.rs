//! Complex gamma kernel.
//!
//! `log_gamma` uses the Stirling series with recurrence lifting on the right
//! half-plane and the reflection formula on the left. The returned value is
//! the principal branch: analytic on the plane slit along `(-inf, 0]` and real
//! on the positive axis, matching the usual `loggamma` convention.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{MbError, Result};

/// Absolute tolerance on both components when deciding whether a value sits
/// on a non-positive integer.
pub const POLE_TOL: f64 = 1e-12;

/// Log-magnitudes above this are reported as overflow instead of `inf`.
pub const MAX_LOG_MAGNITUDE: f64 = 700.0;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Re z threshold for the asymptotic series.
const STIRLING_MIN_RE: f64 = 10.0;

/// B_{2k} / (2k (2k - 1)) for k = 1..=12.
const STIRLING_COEFFS: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
    77683.0 / 5796.0,
    -236_364_091.0 / 1_506_960.0,
];

/// Admissibility of a parameter: anything but `0, -1, -2, ...`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Admissibility {
    pub value: Complex64,
    pub admissible: bool,
}

impl Admissibility {
    pub fn of(value: Complex64) -> Self {
        Admissibility {
            value,
            admissible: !is_nonpositive_integer(value),
        }
    }
}

/// True when `z` is within [`POLE_TOL`] of one of `0, -1, -2, ...`.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im.abs() <= POLE_TOL && z.re <= POLE_TOL && (z.re - z.re.round()).abs() <= POLE_TOL
}

pub fn is_admissible(z: Complex64) -> bool {
    !is_nonpositive_integer(z)
}

/// `Some(m)` when `z` is the non-positive integer `-m`.
pub fn as_nonpositive_integer(z: Complex64) -> Option<u64> {
    if is_nonpositive_integer(z) {
        Some((-z.re).round() as u64)
    } else {
        None
    }
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    // Horner in 1/z^2, smallest terms first.
    for c in STIRLING_COEFFS.iter().rev() {
        series = series * inv2 + c;
    }
    (z - 0.5) * z.ln() - z + LN_2PI_HALF + series * inv
}

fn log_gamma_right(z: Complex64) -> Complex64 {
    if z.re >= STIRLING_MIN_RE {
        return stirling(z);
    }
    let shift = (STIRLING_MIN_RE - z.re).ceil() as usize;
    // Re(z + k) > 0 for every factor, so the sum of principal logs stays on
    // the principal branch of log-gamma.
    let mut logs = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        logs += (z + k as f64).ln();
    }
    stirling(z + shift as f64) - logs
}

/// sin(pi z) with exact argument reduction on the real part.
fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = z.re - n;
    let sign = if (n as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let (s, c) = (PI * r).sin_cos();
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh()) * sign
}

/// The branch of log sin(pi z) that is continuous on each open half-plane
/// and vanishes at z = 1/2.
fn log_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let upper = z.im >= 0.0;
    let w = if upper { z } else { z.conj() };
    // sin(pi w) = (i/2) e^{-i pi w} (1 - e^{2 pi i w}) for Im w >= 0.
    let asymptotic = -std::f64::consts::LN_2 + i * (PI / 2.0) - i * PI * w
        + (1.0 - (2.0 * PI * i * w).exp()).ln();
    let value = if w.im >= 5.0 {
        asymptotic
    } else {
        // Near the real axis the bracket above cancels; use the direct value
        // and borrow only the branch from the asymptotic form.
        let direct = sin_pi(w).ln();
        let k = ((asymptotic.im - direct.im) / (2.0 * PI)).round();
        direct + i * (2.0 * PI * k)
    };
    if upper {
        value
    } else {
        value.conj()
    }
}

/// Principal branch of log Γ(z).
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(MbError::Domain(format!("non-finite argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(MbError::Pole { at: z });
    }
    if z.re >= 0.5 {
        Ok(log_gamma_right(z))
    } else {
        let one_minus = Complex64::new(1.0, 0.0) - z;
        Ok(LN_PI - log_sin_pi(z) - log_gamma_right(one_minus))
    }
}

/// exp of a log-space value, refusing results outside the binary64 range.
pub fn exp_checked(log_value: Complex64) -> Result<Complex64> {
    if !log_value.re.is_finite() || log_value.re > MAX_LOG_MAGNITUDE {
        return Err(MbError::Overflow {
            log_magnitude: log_value.re,
        });
    }
    Ok(log_value.exp())
}

/// Γ(z). Overflow beyond the binary64 range is an error, never `inf`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    exp_checked(log_gamma(z)?)
}

/// 1/Γ(z), entire: exactly zero at the poles of Γ.
pub fn recip_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    exp_checked(-log_gamma(z)?)
}

/// Rising factorial (ξ)_n = ξ(ξ+1)...(ξ+n-1), with (ξ)_0 = 1.
pub fn pochhammer(xi: Complex64, n: u32) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (xi + k as f64))
}

/// Exponential decay rates of a gamma-product integrand along a vertical line.
///
/// For `num_plus` factors Γ(α+s), `num_minus` factors Γ(β-s), `den` factors
/// 1/Γ(γ+s) and a power z^s with `arg z = arg_z`, the magnitude on
/// `s = σ + it` behaves like `exp(-rate_up * t)` as `t -> +inf` and
/// `exp(-rate_down * |t|)` as `t -> -inf`, up to a power of |t|.
/// A non-positive rate means the integral diverges.
pub fn gamma_line_decay(num_plus: usize, num_minus: usize, den: usize, arg_z: f64) -> (f64, f64) {
    let net = num_plus as f64 + num_minus as f64 - den as f64;
    let base = 0.5 * PI * net;
    (base + arg_z, base - arg_z)
}
