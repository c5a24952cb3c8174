//! Fixed inputs shared by the benchmarks.

use mbkit_core::series::HypParams;
use mbkit_core::Complex64;

/// Points spread over the plane, including the reflection half.
pub fn gamma_points() -> Vec<Complex64> {
    (0..64)
        .map(|k| {
            let t = (k as f64 + 0.5) / 64.0;
            Complex64::new(-12.0 + 30.0 * t, 20.0 * (7.0 * t).sin())
        })
        .collect()
}

pub fn series_case() -> (HypParams, Complex64) {
    (
        HypParams::new(
            Complex64::new(0.3, 0.2),
            Complex64::new(0.7, -0.1),
            Complex64::new(1.1, 0.4),
        ),
        Complex64::new(-0.45, 0.3),
    )
}

/// (a, b, c, d) for the lemma integral.
pub fn lemma_case() -> [Complex64; 4] {
    [
        Complex64::new(0.3, 0.2),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.4, -0.1),
        Complex64::new(0.6, 0.3),
    ]
}
