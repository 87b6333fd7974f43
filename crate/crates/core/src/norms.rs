//! Sobolev-type norms of periodic grid functions.
//!
//! Exponent preconditions (`p >= 1` and friends) are programmer errors and
//! panic; dimension restrictions surface as [`GridError`].

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::filter::LPFilterBank;
use crate::grid::GridFunction;
use crate::rational::Rational;
use crate::space::{Family, SpaceSpec};
use crate::spectral;

const TILE: usize = 64;

fn exponent(p: &Rational, strict: bool) -> f64 {
    let one = Rational::one();
    assert!(
        if strict { *p > one } else { *p >= one },
        "exponent p = {p} out of range"
    );
    p.to_f64()
}

fn pow_abs(z: Complex64, p: f64) -> f64 {
    if p == 2.0 {
        z.norm_sqr()
    } else {
        z.norm().powf(p)
    }
}

fn lp_of_samples(samples: &[Complex64], p: f64, cell: f64) -> f64 {
    let sum: f64 = samples.iter().map(|&z| pow_abs(z, p)).sum();
    (sum * cell).powf(1.0 / p)
}

/// `(sum |u_i|^p (L/M)^dim)^(1/p)`. Panics unless `p >= 1`.
pub fn lp_norm_grid(u: &GridFunction, p: &Rational) -> f64 {
    lp_of_samples(u.samples(), exponent(p, false), u.cell_volume())
}

fn japanese_bracket(xi: [f64; 2]) -> f64 {
    (1.0 + xi[0] * xi[0] + xi[1] * xi[1]).sqrt()
}

/// `|| F^-1 <xi>^s F u ||_p`. Panics unless `p > 1`.
pub fn bessel_norm(u: &GridFunction, s: &Rational, p: &Rational) -> f64 {
    let pf = exponent(p, true);
    if s.is_zero() {
        return lp_of_samples(u.samples(), pf, u.cell_volume());
    }
    let sf = s.to_f64();
    let v = spectral::apply_multiplier(u, |xi| Complex64::new(japanese_bracket(xi).powf(sf), 0.0));
    lp_of_samples(v.samples(), pf, u.cell_volume())
}

/// Gagliardo double sum over ordered pairs `x != y` with periodic distance.
/// Rows are split into fixed tiles and partial sums combined in tile order,
/// so the result does not depend on the thread count.
pub fn slobodeckij_seminorm(u: &GridFunction, theta: &Rational, p: &Rational) -> Result<f64, GridError> {
    if u.dim() != 1 {
        return Err(GridError::OneDimensionalOnly("slobodeckij_seminorm"));
    }
    assert!(
        theta.is_positive() && *theta < Rational::one(),
        "theta = {theta} must lie in (0, 1)"
    );
    let pf = exponent(p, false);
    let m = u.size();
    let h = u.period() / m as f64;
    let power = 1.0 + theta.to_f64() * pf;
    // kernel[d] = 1 / dist(d)^(1 + theta p) for an index offset d
    let kernel: Vec<f64> = (0..m)
        .map(|d| if d == 0 { 0.0 } else { (h * d.min(m - d) as f64).powf(-power) })
        .collect();
    let samples = u.samples();
    let partials: Vec<f64> = (0..m.div_ceil(TILE))
        .into_par_iter()
        .map(|tile| {
            let mut acc = 0.0;
            for i in tile * TILE..((tile + 1) * TILE).min(m) {
                let ui = samples[i];
                let mut row = 0.0;
                for (j, &uj) in samples.iter().enumerate() {
                    let d = if j >= i { j - i } else { j + m - i };
                    row += pow_abs(ui - uj, pf) * kernel[d];
                }
                acc += row;
            }
            acc
        })
        .collect();
    let total: f64 = partials.iter().sum();
    Ok((total * h * h).powf(1.0 / pf))
}

fn derivative(u: &GridFunction, nu: [u32; 2]) -> GridFunction {
    if nu == [0, 0] {
        return u.clone();
    }
    spectral::apply_multiplier(u, |xi| {
        Complex64::new(0.0, xi[0]).powu(nu[0]) * Complex64::new(0.0, xi[1]).powu(nu[1])
    })
}

fn multi_indices(dim: u32, order: u32) -> Vec<[u32; 2]> {
    match dim {
        1 => vec![[order, 0]],
        _ => (0..=order).map(|a| [a, order - a]).collect(),
    }
}

/// `sum_{|nu| <= k} ||d^nu u||_p`, plus `sum_{|nu| = k} |d^nu u|_{theta,p}`
/// when `s = k + theta` with `0 < theta < 1` (dimension 1 only).
pub fn sobolev_norm(u: &GridFunction, s: &Rational, p: &Rational) -> Result<f64, GridError> {
    assert!(!s.is_negative(), "sobolev_norm needs s >= 0, got {s}");
    let k = s.floor();
    let theta = s - &k;
    if !theta.is_zero() && u.dim() != 1 {
        return Err(GridError::OneDimensionalOnly("fractional sobolev_norm"));
    }
    let k = k.to_i64().expect("small smoothness") as u32;
    let mut total = 0.0;
    let mut top = Vec::new();
    for order in 0..=k {
        for nu in multi_indices(u.dim(), order) {
            let d = derivative(u, nu);
            total += lp_norm_grid(&d, p);
            if order == k {
                top.push(d);
            }
        }
    }
    if !theta.is_zero() {
        for d in &top {
            total += slobodeckij_seminorm(d, &theta, p)?;
        }
    }
    Ok(total)
}

/// `F^-1 (phi_j F u)`.
pub fn lp_block(u: &GridFunction, j: u32, bank: &LPFilterBank) -> GridFunction {
    spectral::apply_multiplier(u, |xi| Complex64::new(bank.block_weight(j, xi[0].hypot(xi[1])), 0.0))
}

/// Nonzero Littlewood–Paley blocks of `u`, in increasing `j`.
fn blocks(u: &GridFunction, bank: &LPFilterBank) -> Vec<(u32, GridFunction)> {
    let coeffs = spectral::forward(u);
    let radii = spectral::radii(u);
    let top = radii
        .iter()
        .zip(&coeffs)
        .filter(|(_, c)| c.norm_sqr() > 0.0)
        .map(|(r, _)| bank.max_block(*r))
        .max();
    let Some(top) = top else { return Vec::new() };
    (0..=top)
        .filter_map(|j| {
            let mut any = false;
            let masked: Vec<Complex64> = coeffs
                .iter()
                .zip(&radii)
                .map(|(c, &r)| {
                    let w = bank.block_weight(j, r);
                    any |= w != 0.0 && c.norm_sqr() > 0.0;
                    c * w
                })
                .collect();
            any.then(|| (j, spectral::inverse(u, masked)))
        })
        .collect()
}

/// `( sum_j (2^{sj} ||block_j||_p)^q )^{1/q}`. Panics unless `p, q >= 1`.
pub fn besov_norm(u: &GridFunction, s: &Rational, p: &Rational, q: &Rational, bank: &LPFilterBank) -> f64 {
    let pf = exponent(p, false);
    let qf = exponent(q, false);
    let sf = s.to_f64();
    let sum: f64 = blocks(u, bank)
        .iter()
        .map(|(j, b)| {
            let weighted = (2.0f64).powf(sf * *j as f64) * lp_of_samples(b.samples(), pf, u.cell_volume());
            weighted.powf(qf)
        })
        .sum();
    sum.powf(1.0 / qf)
}

/// `|| ( sum_j |2^{sj} block_j(x)|^q )^{1/q} ||_p`. Panics unless `p, q >= 1`.
pub fn triebel_norm(u: &GridFunction, s: &Rational, p: &Rational, q: &Rational, bank: &LPFilterBank) -> f64 {
    let pf = exponent(p, false);
    let qf = exponent(q, false);
    let sf = s.to_f64();
    let mut pointwise = vec![0.0f64; u.samples().len()];
    for (j, b) in blocks(u, bank) {
        let w = (2.0f64).powf(sf * j as f64);
        for (acc, z) in pointwise.iter_mut().zip(b.samples()) {
            *acc += (w * z.norm()).powf(qf);
        }
    }
    let sum: f64 = pointwise.iter().map(|a| a.powf(pf / qf)).sum();
    (sum * u.cell_volume()).powf(1.0 / pf)
}

/// How a space's norm is evaluated on the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "norm", rename_all = "snake_case")]
pub enum NumericNorm {
    Bessel { s: Rational, p: Rational },
    Sobolev { s: Rational, p: Rational },
    /// `B^s_{p,p}`, used for W with non-integer or negative `s` and for Bpp.
    Besov { s: Rational, p: Rational },
}

impl NumericNorm {
    pub fn for_space(spec: &SpaceSpec) -> NumericNorm {
        let (s, p) = (spec.s.clone(), spec.p.clone());
        match spec.family {
            Family::H => NumericNorm::Bessel { s, p },
            Family::W if s.is_integer() && !s.is_negative() => NumericNorm::Sobolev { s, p },
            Family::W | Family::Bpp => NumericNorm::Besov { s, p },
        }
    }

    pub fn eval(&self, u: &GridFunction, bank: &LPFilterBank) -> Result<f64, GridError> {
        Ok(match self {
            NumericNorm::Bessel { s, p } => bessel_norm(u, s, p),
            NumericNorm::Sobolev { s, p } => sobolev_norm(u, s, p)?,
            NumericNorm::Besov { s, p } => besov_norm(u, s, p, p, bank),
        })
    }

    pub fn describe(&self) -> String {
        match self {
            NumericNorm::Bessel { s, p } => format!("bessel_norm(s={s}, p={p})"),
            NumericNorm::Sobolev { s, p } => format!("sobolev_norm(s={s}, p={p})"),
            NumericNorm::Besov { s, p } => format!("besov_norm(s={s}, p={p}, q={p}) as W/B^s_pp proxy"),
        }
    }
}
