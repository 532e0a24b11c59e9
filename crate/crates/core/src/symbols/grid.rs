//! Uniform sampling of the unit circle and discrete Fourier inversion.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::laurent::LaurentPoly;

/// Points `e^{2 pi i j / m}`, `j = 0..m`.
pub fn circle_points(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / m as f64))
        .collect()
}

/// Values of `p` at the `m` grid points. Exact for any `m` since exponents
/// can be reduced mod `m` on the grid.
pub fn eval_on_grid(p: &LaurentPoly, m: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (k, c) in p.terms() {
        buf[k.rem_euclid(m as i64) as usize] += c;
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
    buf
}

/// Fourier coefficients `lo..=hi` of a function sampled at the `m` grid points.
/// Coefficients alias modulo `m`; callers pick `m` large enough for the decay.
pub fn coeffs_from_samples(samples: &[Complex64], lo: i64, hi: i64) -> LaurentPoly {
    let m = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    let coeffs = (lo..=hi)
        .map(|k| buf[k.rem_euclid(m as i64) as usize] * scale)
        .collect();
    LaurentPoly::from_dense(lo, coeffs)
}

/// Smallest power of two `>= n`.
pub fn pow2_at_least(n: usize) -> usize {
    n.max(1).next_power_of_two()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_roundtrip() {
        let p = LaurentPoly::from_real(-3, &[1.0, -2.0, 0.5, 0.0, 4.0]);
        let vals = eval_on_grid(&p, 16);
        for (z, v) in circle_points(16).iter().zip(&vals) {
            assert!((p.eval(*z) - v).norm() < 1e-13);
        }
        let back = coeffs_from_samples(&vals, -4, 4).chop(1e-14);
        assert_eq!(back.band(), p.band());
        assert!((&back - &p).norm_max() < 1e-14);
    }
}
