use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::GridError;
use crate::grid::GridFunction;
use crate::spectral;

/// Random trigonometric polynomial with independent complex Gaussian
/// coefficients scaled by `(1 + |k|)^-decay` on integer modes `|k| <= bandwidth`.
pub fn random_band_limited<R: Rng>(
    dim: u32,
    m: usize,
    period: f64,
    bandwidth: usize,
    decay: f64,
    rng: &mut R,
) -> Result<GridFunction, GridError> {
    let like = GridFunction::zeros(dim, m, period)?;
    if 2 * bandwidth >= m {
        return Err(GridError::SampleCount {
            expected: 2 * bandwidth + 1,
            got: m,
        });
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); m.pow(dim)];
    let k_limit = bandwidth as f64;
    let rows = if dim == 1 { 1 } else { m };
    for r in 0..rows {
        let ky = if dim == 1 { 0 } else { spectral::signed_index(r, m) };
        for c in 0..m {
            let kx = spectral::signed_index(c, m);
            let radius = ((kx * kx + ky * ky) as f64).sqrt();
            if radius > k_limit {
                continue;
            }
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            coeffs[r * m + c] = Complex64::new(re, im) * (1.0 + radius).powf(-decay);
        }
    }
    Ok(spectral::synthesize(&like, coeffs))
}
