use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::json;

use crate::error::ExperimentError;
use crate::filter::LPFilterBank;
use crate::grid::GridFunction;
use crate::norms::{besov_norm, lp_norm_grid, NumericNorm};
use crate::rational::{q, Rational};
use crate::space::{DomainSpec, SpaceSpec};
use crate::spectral;

use super::{loglog_fit, ExperimentReport, ReportRow, SlopeCriterion, EXACT_SLOPE_TOLERANCE};

/// Setup for `g_N = sum_{j <= N} 2^{-s m_j} e^{i 2^{m_j} x} f(x)` on `[0, 2 pi)`.
#[derive(Debug, Clone)]
pub struct CounterexampleConfig {
    pub s: Rational,
    pub p1: Rational,
    pub p: Rational,
    /// Smoothness and integrability of the fixed factor `f`.
    pub s2: Rational,
    pub p2: Rational,
    pub n_list: Vec<u32>,
    pub base: GridFunction,
    /// `f` has no modes with `|k| >= epsilon_modes`.
    pub epsilon_modes: u32,
    /// Block indices `m_1 < m_2 < ...`.
    pub offsets: Vec<u32>,
    pub bank: LPFilterBank,
}

impl CounterexampleConfig {
    /// `f = 1 + cos(x)/2` with `epsilon_modes = 2`, `m_j = j + 5`,
    /// `N = 1..=n_max`, and `f` measured in `W^{1,2}`.
    pub fn new(s: Rational, p1: Rational, p: Rational, grid: usize, n_max: u32) -> Result<Self, ExperimentError> {
        Ok(CounterexampleConfig {
            s,
            p1,
            p,
            s2: q(1, 1),
            p2: q(2, 1),
            n_list: (1..=n_max).collect(),
            base: default_base(grid)?,
            epsilon_modes: 2,
            offsets: default_offsets(n_max),
            bank: LPFilterBank::default(),
        })
    }

    fn describe(&self) -> serde_json::Value {
        json!({
            "s": self.s,
            "p1": self.p1,
            "p": self.p,
            "s2": self.s2,
            "p2": self.p2,
            "n_list": self.n_list,
            "grid": self.base.size(),
            "period": self.base.period(),
            "epsilon_modes": self.epsilon_modes,
            "offsets": self.offsets,
            "phi0_plateau": self.bank.plateau(),
            "phi0_support": self.bank.support(),
        })
    }

    /// Frequency reach of one modulated copy of `f^2`.
    fn product_band(&self) -> f64 {
        2.0 * (self.epsilon_modes as f64 - 1.0)
    }

    fn validate(&self, n: u32) -> Result<(), ExperimentError> {
        let base = &self.base;
        if base.dim() != 1 {
            return Err(ExperimentError::Config("g_N lives on the 1D torus".into()));
        }
        if (base.period() - 2.0 * PI).abs() > 1e-12 {
            return Err(ExperimentError::Config(format!(
                "base function must have period 2*pi, got {}",
                base.period()
            )));
        }
        if self.epsilon_modes == 0 {
            return Err(ExperimentError::Config("epsilon_modes must be positive".into()));
        }
        let coeffs = spectral::forward(base);
        let peak = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return Err(ExperimentError::Config("base function is identically zero".into()));
        }
        let eps = self.epsilon_modes as i64;
        if coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| spectral::signed_index(i, base.size()).abs() >= eps && c.norm() > 1e-12 * peak)
        {
            return Err(ExperimentError::Config(format!(
                "spectrum of the base function reaches |k| >= epsilon_modes = {eps}"
            )));
        }
        if n == 0 {
            return Err(ExperimentError::Config("N must be positive".into()));
        }
        if self.offsets.len() < n as usize {
            return Err(ExperimentError::Config(format!(
                "N = {n} needs {n} dyadic offsets, {} given",
                self.offsets.len()
            )));
        }
        let used = &self.offsets[..n as usize];
        if used.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ExperimentError::Config("dyadic offsets must be strictly increasing".into()));
        }
        let band = self.product_band();
        for &m in used {
            let centre = (2.0f64).powi(m as i32);
            let (lo, hi) = self.bank.plateau_shell(m);
            if centre - band < lo || centre + band > hi {
                return Err(ExperimentError::Config(format!(
                    "modes 2^{m} +- {band} leave the plateau [{lo}, {hi}] of block {m}; raise the offsets or lower epsilon_modes"
                )));
            }
        }
        let needed = required_grid_log2(self, n)?;
        if (base.size() as f64).log2() < needed as f64 {
            return Err(ExperimentError::Config(format!(
                "grid too small for N = {n}: need M >= 2^{needed}, have M = {}",
                base.size()
            )));
        }
        Ok(())
    }
}

fn default_base(grid: usize) -> Result<GridFunction, ExperimentError> {
    Ok(GridFunction::from_fn_1d(grid, 2.0 * PI, |x| Complex64::new(1.0 + 0.5 * x.cos(), 0.0))?)
}

fn default_offsets(count: u32) -> Vec<u32> {
    (1..=count).map(|j| j + 5).collect()
}

/// Smallest `r` such that `M = 2^r` resolves `g_N f` without aliasing.
pub fn required_grid_log2(cfg: &CounterexampleConfig, n: u32) -> Result<u32, ExperimentError> {
    let m = *cfg
        .offsets
        .get(n.saturating_sub(1) as usize)
        .ok_or_else(|| ExperimentError::Config(format!("no dyadic offset for N = {n}")))?;
    let top = (2.0f64).powi(m as i32) + cfg.product_band();
    // need M / 2 > top
    let mut r = 1;
    while (2.0f64).powi(r as i32 - 1) <= top {
        r += 1;
    }
    Ok(r)
}

/// The `j`-th (1-based) modulated copy `2^{-s m_j} e^{i 2^{m_j} x} f(x)`.
pub fn gn_summand(cfg: &CounterexampleConfig, j: u32) -> Result<GridFunction, ExperimentError> {
    cfg.validate(j)?;
    Ok(summand(cfg, j))
}

fn summand(cfg: &CounterexampleConfig, j: u32) -> GridFunction {
    let m = cfg.offsets[j as usize - 1];
    let size = cfg.base.size();
    let freq = 1usize << m;
    let amplitude = (2.0f64).powf(-cfg.s.to_f64() * m as f64);
    let samples = cfg
        .base
        .samples()
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            // exact phase reduction: 2^m x_i = 2 pi (2^m i mod M) / M
            let turns = ((freq as u128 * i as u128) % size as u128) as f64 / size as f64;
            Complex64::from_polar(amplitude, 2.0 * PI * turns) * f
        })
        .collect();
    GridFunction::new(1, size, cfg.base.period(), samples).expect("summand of a valid grid function")
}

pub fn build_gn(cfg: &CounterexampleConfig, n: u32) -> Result<GridFunction, ExperimentError> {
    cfg.validate(n)?;
    let mut acc = summand(cfg, 1);
    for j in 2..=n {
        acc = acc.add(&summand(cfg, j));
    }
    Ok(acc)
}

/// Measured and predicted `B^s_{p,q}` norms of `g_N` and `g_N f`.
#[derive(Debug, Clone, PartialEq)]
pub struct GnIdentities {
    pub n: u32,
    pub besov_g: f64,
    pub expected_g: f64,
    pub besov_gf: f64,
    pub expected_gf: f64,
}

impl GnIdentities {
    pub fn rel_err_g(&self) -> f64 {
        (self.besov_g - self.expected_g).abs() / self.expected_g
    }

    pub fn rel_err_gf(&self) -> f64 {
        (self.besov_gf - self.expected_gf).abs() / self.expected_gf
    }
}

/// Checks `||g_N||_{B^s_{p,q}} = N^{1/q} ||f||_p` and
/// `||g_N f||_{B^s_{p,q}} = N^{1/q} ||f^2||_p`.
pub fn gn_identities(cfg: &CounterexampleConfig, n: u32, p: &Rational, q: &Rational) -> Result<GnIdentities, ExperimentError> {
    let g = build_gn(cfg, n)?;
    let gf = g.mul(&cfg.base);
    let scale = (n as f64).powf(1.0 / q.to_f64());
    let f2 = cfg.base.mul(&cfg.base);
    Ok(GnIdentities {
        n,
        besov_g: besov_norm(&g, &cfg.s, p, q, &cfg.bank),
        expected_g: scale * lp_norm_grid(&cfg.base, p),
        besov_gf: besov_norm(&gf, &cfg.s, p, q, &cfg.bank),
        expected_gf: scale * lp_norm_grid(&f2, p),
    })
}

/// Fits the growth of `||g_N f||_{W^{s,p}} / (||g_N||_{W^{s,p1}} ||f||_{W^{s2,p2}})`
/// in `N`; the expected slope is `1/p - 1/p1`.
pub fn counterexample_growth(cfg: &CounterexampleConfig) -> Result<ExperimentReport, ExperimentError> {
    if !cfg.s.is_positive() || cfg.s.is_integer() {
        return Err(ExperimentError::Config(format!("s must be positive and non-integer, got {}", cfg.s)));
    }
    if cfg.p < Rational::one() || cfg.p1 < cfg.p {
        return Err(ExperimentError::Config(format!(
            "need 1 <= p <= p1, got p = {}, p1 = {}",
            cfg.p, cfg.p1
        )));
    }
    if cfg.n_list.len() < 3 {
        return Err(ExperimentError::Config(format!(
            "slope fit needs at least 3 values of N, got {}",
            cfg.n_list.len()
        )));
    }
    let f_space = SpaceSpec::w(cfg.s2.clone(), cfg.p2.clone(), DomainSpec::whole(1));
    let f_norm_kind = NumericNorm::for_space(&f_space);
    let f_norm = f_norm_kind.eval(&cfg.base, &cfg.bank)?;
    let f2 = cfg.base.mul(&cfg.base);
    let f2_p = lp_norm_grid(&f2, &cfg.p);
    let f_p1 = lp_norm_grid(&cfg.base, &cfg.p1);

    let mut rows = Vec::with_capacity(cfg.n_list.len());
    let mut points = Vec::with_capacity(cfg.n_list.len());
    for &n in &cfg.n_list {
        let g = build_gn(cfg, n)?;
        let gf = g.mul(&cfg.base);
        let norm_gf = besov_norm(&gf, &cfg.s, &cfg.p, &cfg.p, &cfg.bank);
        let norm_g = besov_norm(&g, &cfg.s, &cfg.p1, &cfg.p1, &cfg.bank);
        let ratio = norm_gf / (norm_g * f_norm);
        let nf = n as f64;
        points.push((nf, ratio));
        rows.push(ReportRow {
            parameter: nf,
            measured: [
                ("ratio", ratio),
                ("norm_gf", norm_gf),
                ("norm_g", norm_g),
                ("norm_f", f_norm),
                ("expected_norm_gf", nf.powf(1.0 / cfg.p.to_f64()) * f2_p),
                ("expected_norm_g", nf.powf(1.0 / cfg.p1.to_f64()) * f_p1),
            ]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        });
    }
    let (slope, stderr) = loglog_fit(&points)?;
    let expected = SlopeCriterion::Within {
        value: cfg.p.recip() - cfg.p1.recip(),
        tolerance: EXACT_SLOPE_TOLERANCE,
    };
    Ok(ExperimentReport {
        experiment: "counterexample_growth".into(),
        config: cfg.describe(),
        fitted_column: "ratio".into(),
        pass: expected.accepts(slope),
        rows,
        slope,
        stderr,
        expected,
        provenance: vec![
            "g_N = sum_{j<=N} 2^{-s m_j} e^{i 2^{m_j} x} f(x): dyadically modulated copies of f, one Littlewood-Paley block each".into(),
            format!("numerator: besov_norm(g_N f, s={}, p={}, q={}) as W^{{s,p}} norm", cfg.s, cfg.p, cfg.p),
            format!("denominator: besov_norm(g_N, s={}, p={}, q={}) times {} of f", cfg.s, cfg.p1, cfg.p1, f_norm_kind.describe()),
            "negative or non-integer s W norms are evaluated as B^s_{p,p} norms".into(),
            format!("1D torus [0, 2 pi), M = {}, squared-cosine phi0 with plateau {} and support {}", cfg.base.size(), cfg.bank.plateau(), cfg.bank.support()),
            "deterministic: no random input".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::lp_block;

    fn cfg(grid: usize, n_max: u32) -> CounterexampleConfig {
        CounterexampleConfig::new(q(1, 2), q(4, 1), q(2, 1), grid, n_max).unwrap()
    }

    #[test]
    fn single_block_identity() {
        let c = cfg(1 << 10, 3);
        let id = gn_identities(&c, 1, &q(2, 1), &q(2, 1)).unwrap();
        assert!(id.rel_err_g() < 1e-9, "{id:?}");
        assert!(id.rel_err_gf() < 1e-9, "{id:?}");
    }

    #[test]
    fn gn_identities_within_capacity() {
        let c = cfg(1 << 12, 5);
        for n in 1..=5 {
            for (p, qq) in [(q(2, 1), q(2, 1)), (q(3, 1), q(3, 2)), (q(4, 1), q(4, 1))] {
                let id = gn_identities(&c, n, &p, &qq).unwrap();
                assert!(id.rel_err_g() < 1e-8 && id.rel_err_gf() < 1e-8, "N={n}: {id:?}");
            }
        }
    }

    #[test]
    fn summands_occupy_disjoint_blocks() {
        let c = cfg(1 << 11, 4);
        for j in 1..=4 {
            let piece = gn_summand(&c, j).unwrap();
            for (jj, &m) in c.offsets[..4].iter().enumerate() {
                let block = lp_block(&piece, m, &c.bank);
                let norm = lp_norm_grid(&block, &q(2, 1));
                if jj + 1 == j as usize {
                    assert!((norm - lp_norm_grid(&piece, &q(2, 1))).abs() < 1e-12);
                } else {
                    assert!(norm < 1e-12, "block {m} of summand {j}: {norm}");
                }
            }
        }
    }

    #[test]
    fn grid_capacity_is_reported() {
        let c = cfg(1 << 10, 8);
        // m_5 = 10 needs 2^10 + 2 < M / 2
        assert_eq!(required_grid_log2(&c, 5).unwrap(), 12);
        let err = build_gn(&c, 5).unwrap_err().to_string();
        assert!(err.contains("need M >= 2^12"), "{err}");
        assert!(build_gn(&c, 3).is_ok());
    }

    #[test]
    fn wide_base_spectrum_rejected() {
        let mut c = cfg(1 << 10, 3);
        c.base = GridFunction::from_fn_1d(1 << 10, 2.0 * PI, |x| Complex64::new((5.0 * x).cos(), 0.0)).unwrap();
        assert!(build_gn(&c, 1).is_err());
    }

    #[test]
    fn plateau_condition_enforced() {
        let mut c = cfg(1 << 10, 3);
        c.offsets = vec![2, 3, 4];
        let err = build_gn(&c, 1).unwrap_err().to_string();
        assert!(err.contains("plateau"), "{err}");
    }

    #[test]
    fn growth_slope_quarter() {
        let report = counterexample_growth(&cfg(1 << 12, 5)).unwrap();
        assert!((report.slope - 0.25).abs() < 1e-9, "{}", report.slope);
        assert!(report.pass);
    }

    #[test]
    fn equal_exponents_give_flat_ratio() {
        let c = CounterexampleConfig::new(q(1, 2), q(2, 1), q(2, 1), 1 << 11, 4).unwrap();
        let report = counterexample_growth(&c).unwrap();
        assert!(report.slope.abs() < 1e-9);
        assert!(report.pass);
    }

    #[test]
    fn slope_invariant_under_rescaling_f() {
        let c = cfg(1 << 11, 4);
        let mut scaled = c.clone();
        scaled.base = c.base.scale(Complex64::new(3.0, 0.0));
        let a = counterexample_growth(&c).unwrap().slope;
        let b = counterexample_growth(&scaled).unwrap().slope;
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn configuration_errors() {
        let mut c = cfg(1 << 11, 4);
        c.n_list = vec![2];
        assert!(matches!(counterexample_growth(&c), Err(ExperimentError::Config(_))));
        let c = CounterexampleConfig::new(q(1, 1), q(4, 1), q(2, 1), 1 << 11, 4).unwrap();
        assert!(counterexample_growth(&c).is_err());
        let c = CounterexampleConfig::new(q(1, 2), q(3, 2), q(2, 1), 1 << 11, 4).unwrap();
        assert!(counterexample_growth(&c).is_err());
    }
}
