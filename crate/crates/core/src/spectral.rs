//! FFT plumbing shared by the norm routines.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::grid::GridFunction;

/// Signed frequency index of FFT bin `i` on an axis of `m` points.
pub(crate) fn signed_index(i: usize, m: usize) -> i64 {
    if i < m / 2 {
        i as i64
    } else {
        i as i64 - m as i64
    }
}

/// Physical frequency vector `2 pi k / L` of every bin, row-major.
pub(crate) fn frequencies(u: &GridFunction) -> Vec<[f64; 2]> {
    let m = u.size();
    let scale = 2.0 * PI / u.period();
    match u.dim() {
        1 => (0..m).map(|i| [scale * signed_index(i, m) as f64, 0.0]).collect(),
        _ => {
            let mut out = Vec::with_capacity(m * m);
            for r in 0..m {
                let ky = scale * signed_index(r, m) as f64;
                for c in 0..m {
                    out.push([scale * signed_index(c, m) as f64, ky]);
                }
            }
            out
        }
    }
}

pub(crate) fn radii(u: &GridFunction) -> Vec<f64> {
    frequencies(u).into_iter().map(|[a, b]| a.hypot(b)).collect()
}

fn transform(data: &mut [Complex64], m: usize, dim: u32, inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse {
        planner.plan_fft_inverse(m)
    } else {
        planner.plan_fft_forward(m)
    };
    // rows
    for row in data.chunks_exact_mut(m) {
        fft.process(row);
    }
    if dim == 2 {
        let mut column = vec![Complex64::new(0.0, 0.0); m];
        for c in 0..m {
            for r in 0..m {
                column[r] = data[r * m + c];
            }
            fft.process(&mut column);
            for r in 0..m {
                data[r * m + c] = column[r];
            }
        }
    }
}

/// Unnormalized forward DFT.
pub(crate) fn forward(u: &GridFunction) -> Vec<Complex64> {
    let mut data = u.samples().to_vec();
    transform(&mut data, u.size(), u.dim(), false);
    data
}

/// Inverse DFT including the `1/M^dim` factor, on the grid of `like`.
pub(crate) fn inverse(like: &GridFunction, mut coeffs: Vec<Complex64>) -> GridFunction {
    transform(&mut coeffs, like.size(), like.dim(), true);
    let norm = 1.0 / like.samples().len() as f64;
    for z in &mut coeffs {
        *z *= norm;
    }
    like.with_samples(coeffs)
}

/// Synthesis without normalization: `sum_k c_k e^{i k x}`.
pub(crate) fn synthesize(like: &GridFunction, mut coeffs: Vec<Complex64>) -> GridFunction {
    transform(&mut coeffs, like.size(), like.dim(), true);
    like.with_samples(coeffs)
}

/// Applies a Fourier multiplier `weight(xi)`.
pub(crate) fn apply_multiplier(u: &GridFunction, weight: impl Fn([f64; 2]) -> Complex64) -> GridFunction {
    let mut coeffs = forward(u);
    for (c, xi) in coeffs.iter_mut().zip(frequencies(u)) {
        *c *= weight(xi);
    }
    inverse(u, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_indices() {
        let idx: Vec<i64> = (0..8).map(|i| signed_index(i, 8)).collect();
        assert_eq!(idx, vec![0, 1, 2, 3, -4, -3, -2, -1]);
    }

    #[test]
    fn roundtrip_2d() {
        let g = GridFunction::from_fn_2d(8, 3.0, |x, y| Complex64::new(x * y, x - y)).unwrap();
        let back = inverse(&g, forward(&g));
        for (a, b) in g.samples().iter().zip(back.samples()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn single_mode_lands_in_its_bin() {
        let g = GridFunction::from_fn_1d(16, 2.0 * PI, |x| Complex64::new(0.0, 3.0 * x).exp()).unwrap();
        let c = forward(&g);
        assert!((c[3] - Complex64::new(16.0, 0.0)).norm() < 1e-9);
        assert_eq!(frequencies(&g)[3][0], 3.0);
    }
}
