use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::ExperimentError;
use crate::filter::LPFilterBank;
use crate::norms::NumericNorm;
use crate::rules::{check_embedding, check_multiplication, EmbedQuery, MultQuery, Status, Verdict};
use crate::space::{DomainSpec, SpaceSpec};

use super::random::random_band_limited;
use super::{loglog_fit, ExperimentReport, ReportRow, SlopeCriterion, BOUNDEDNESS_SLOPE_BOUND};

pub const DEFAULT_BANDWIDTHS: [usize; 4] = [16, 32, 64, 128];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProvedQuery {
    Mult(MultQuery),
    Embed(EmbedQuery),
}

impl ProvedQuery {
    fn verdict(&self) -> Result<Verdict, ExperimentError> {
        Ok(match self {
            ProvedQuery::Mult(q) => check_multiplication(q)?,
            ProvedQuery::Embed(q) => check_embedding(q)?,
        })
    }

    fn domain(&self) -> DomainSpec {
        match self {
            ProvedQuery::Mult(q) => q.target.domain,
            ProvedQuery::Embed(q) => q.target.domain,
        }
    }

    fn specs(&self) -> Vec<&SpaceSpec> {
        match self {
            ProvedQuery::Mult(q) => vec![&q.left, &q.right, &q.target],
            ProvedQuery::Embed(q) => vec![&q.source, &q.target],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundednessConfig {
    pub samples: usize,
    pub seed: u64,
    pub bandwidths: Vec<usize>,
    /// Spectral decay exponent of the random inputs.
    pub decay: f64,
    /// Points per axis; `None` picks the smallest power of two that resolves
    /// products at each bandwidth.
    pub grid: Option<usize>,
}

impl Default for BoundednessConfig {
    fn default() -> Self {
        BoundednessConfig {
            samples: 200,
            seed: 0,
            bandwidths: DEFAULT_BANDWIDTHS.to_vec(),
            decay: 1.0,
            grid: None,
        }
    }
}

impl BoundednessConfig {
    fn grid_for(&self, bandwidth: usize) -> Result<usize, ExperimentError> {
        let minimal = (4 * bandwidth + 1).next_power_of_two();
        match self.grid {
            None => Ok(minimal),
            Some(m) if m.is_power_of_two() && m >= minimal => Ok(m),
            Some(m) => Err(ExperimentError::Config(format!(
                "grid {m} cannot resolve products at bandwidth {bandwidth}: need a power of two >= {minimal}"
            ))),
        }
    }
}

fn stream_id(level: usize, sample: usize) -> u64 {
    ((level as u64) << 32) | sample as u64
}

/// Samples `||uv||_target / (||u||_left ||v||_right)` (or `||u||_target / ||u||_source`)
/// over random band-limited inputs and fits the growth of the maximum ratio
/// against bandwidth. Only queries the engine proves are accepted.
pub fn empirical_boundedness(query: &ProvedQuery, cfg: &BoundednessConfig) -> Result<ExperimentReport, ExperimentError> {
    let verdict = query.verdict()?;
    if verdict.status != Status::Proved {
        let rule = verdict.rule().map_or("no rule".to_string(), |r| r.to_string());
        return Err(ExperimentError::Unproved(format!("verdict {} via {rule}", verdict.status)));
    }
    let domain = query.domain();
    if domain.is_bounded() {
        return Err(ExperimentError::Config(
            "the periodic harness models the whole space only".into(),
        ));
    }
    if domain.n > 2 {
        return Err(ExperimentError::Config(format!("numeric norms support n <= 2, got n = {}", domain.n)));
    }
    if cfg.samples == 0 {
        return Err(ExperimentError::Config("samples must be positive".into()));
    }
    if cfg.bandwidths.len() < 3 {
        return Err(ExperimentError::Config("need at least 3 bandwidths for a slope".into()));
    }
    let dim = domain.n;
    let bank = LPFilterBank::default();
    let norms: Vec<NumericNorm> = query.specs().into_iter().map(NumericNorm::for_space).collect();
    let grids: Vec<usize> = cfg.bandwidths.iter().map(|&k| cfg.grid_for(k)).collect::<Result<_, _>>()?;

    let mut rows = Vec::with_capacity(cfg.bandwidths.len());
    let mut points = Vec::with_capacity(cfg.bandwidths.len());
    for (level, (&bandwidth, &m)) in cfg.bandwidths.iter().zip(&grids).enumerate() {
        let ratios: Vec<f64> = (0..cfg.samples)
            .into_par_iter()
            .map(|i| -> Result<f64, ExperimentError> {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(stream_id(level, i));
                let u = random_band_limited(dim, m, 2.0 * PI, bandwidth, cfg.decay, &mut rng)?;
                match query {
                    ProvedQuery::Mult(_) => {
                        let v = random_band_limited(dim, m, 2.0 * PI, bandwidth, cfg.decay, &mut rng)?;
                        let uv = u.mul(&v);
                        let top = norms[2].eval(&uv, &bank)?;
                        Ok(top / (norms[0].eval(&u, &bank)? * norms[1].eval(&v, &bank)?))
                    }
                    ProvedQuery::Embed(_) => Ok(norms[1].eval(&u, &bank)? / norms[0].eval(&u, &bank)?),
                }
            })
            .collect::<Result<_, _>>()?;
        let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        points.push((bandwidth as f64, max));
        rows.push(ReportRow {
            parameter: bandwidth as f64,
            measured: BTreeMap::from([
                ("max_ratio".to_string(), max),
                ("mean_ratio".to_string(), mean),
                ("grid".to_string(), m as f64),
            ]),
        });
    }
    let (slope, stderr) = loglog_fit(&points)?;
    let expected = SlopeCriterion::AtMost { bound: BOUNDEDNESS_SLOPE_BOUND };
    let mut provenance = vec![
        format!("verdict Proved via {}", verdict.rule().map_or("?".to_string(), |r| r.to_string())),
        "random inputs: complex Gaussian Fourier coefficients times (1+|k|)^-decay, hard cut |k| <= bandwidth".into(),
        format!("seed {}; sample i at ladder level l uses ChaCha8 stream (l << 32) | i", cfg.seed),
        format!("torus [0, 2 pi)^{dim} as a model of R^{dim}; grids {grids:?}"),
    ];
    provenance.extend(norms.iter().map(NumericNorm::describe));
    if norms.iter().any(|n| matches!(n, NumericNorm::Besov { .. })) {
        provenance.push("negative or non-integer s W norms are evaluated as B^s_{p,p} norms".into());
    }
    Ok(ExperimentReport {
        experiment: "empirical_boundedness".into(),
        config: json!({ "query": query, "settings": cfg }),
        fitted_column: "max_ratio".into(),
        pass: expected.accepts(slope),
        rows,
        slope,
        stderr,
        expected,
        provenance,
    })
}
