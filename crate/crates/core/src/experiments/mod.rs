//! Numeric experiments: the g_N growth law and empirical boundedness of
//! proved estimates.

mod boundedness;
mod counterexample;
mod random;

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{ExperimentError, GridError};
use crate::rational::Rational;

pub use boundedness::{empirical_boundedness, BoundednessConfig, ProvedQuery, DEFAULT_BANDWIDTHS};
pub use counterexample::{
    build_gn, counterexample_growth, gn_identities, gn_summand, required_grid_log2, CounterexampleConfig,
    GnIdentities,
};
pub use random::random_band_limited;

/// Tolerance for slopes that follow from exact block identities.
pub const EXACT_SLOPE_TOLERANCE: f64 = 0.02;
/// Upper bound on the max-ratio slope for a bounded estimate.
pub const BOUNDEDNESS_SLOPE_BOUND: f64 = 0.05;

/// One measurement: the swept parameter and named quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub parameter: f64,
    pub measured: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SlopeCriterion {
    /// `|slope - value| <= tolerance`
    Within { value: Rational, tolerance: f64 },
    /// `slope <= bound`
    AtMost { bound: f64 },
}

impl SlopeCriterion {
    pub fn accepts(&self, slope: f64) -> bool {
        match self {
            SlopeCriterion::Within { value, tolerance } => (slope - value.to_f64()).abs() <= *tolerance,
            SlopeCriterion::AtMost { bound } => slope <= *bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: serde_json::Value,
    /// Name of the measured column the slope is fitted against.
    pub fitted_column: String,
    pub rows: Vec<ReportRow>,
    pub slope: f64,
    pub stderr: f64,
    pub expected: SlopeCriterion,
    pub pass: bool,
    pub provenance: Vec<String>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per measurement: `parameter` followed by the measured columns.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), GridError> {
        let mut wtr = csv::Writer::from_writer(w);
        let columns: Vec<&String> = self.rows.first().map(|r| r.measured.keys().collect()).unwrap_or_default();
        let mut header = vec!["parameter".to_string()];
        header.extend(columns.iter().map(|c| c.to_string()));
        wtr.write_record(&header)?;
        for row in &self.rows {
            let mut record = vec![row.parameter.to_string()];
            record.extend(columns.iter().map(|c| row.measured.get(*c).map_or(String::new(), f64::to_string)));
            wtr.write_record(&record)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Ordinary least squares slope of `ln y` against `ln x`, with its standard
/// error. Needs at least three points with positive coordinates.
pub fn loglog_fit(points: &[(f64, f64)]) -> Result<(f64, f64), ExperimentError> {
    if points.len() < 3 {
        return Err(ExperimentError::Config(format!(
            "slope fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some((x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(ExperimentError::Config(format!("cannot take logs of point ({x}, {y})")));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(ExperimentError::Config("slope fit needs distinct parameter values".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let stderr = (sse / (n - 2.0) / sxx).sqrt();
    Ok((slope, stderr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn exact_power_law_fit() {
        let pts: Vec<(f64, f64)> = [2.0, 4.0, 8.0, 16.0].iter().map(|&x: &f64| (x, 3.0 * x.powf(0.25))).collect();
        let (slope, stderr) = loglog_fit(&pts).unwrap();
        assert!((slope - 0.25).abs() < 1e-12);
        assert!(stderr < 1e-12);
    }

    #[test]
    fn fit_rejects_degenerate_input() {
        assert!(loglog_fit(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(loglog_fit(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]).is_err());
        assert!(loglog_fit(&[(1.0, 1.0), (2.0, 0.0), (3.0, 3.0)]).is_err());
    }

    #[test]
    fn criteria() {
        let within = SlopeCriterion::Within { value: q(1, 4), tolerance: 0.02 };
        assert!(within.accepts(0.26) && !within.accepts(0.28));
        let at_most = SlopeCriterion::AtMost { bound: 0.05 };
        assert!(at_most.accepts(-3.0) && !at_most.accepts(0.06));
    }

    #[test]
    fn csv_has_one_row_per_measurement() {
        let report = ExperimentReport {
            experiment: "t".into(),
            config: serde_json::Value::Null,
            fitted_column: "a".into(),
            rows: vec![
                ReportRow { parameter: 1.0, measured: BTreeMap::from([("a".into(), 2.0), ("b".into(), 3.0)]) },
                ReportRow { parameter: 2.0, measured: BTreeMap::from([("a".into(), 4.0), ("b".into(), 5.0)]) },
            ],
            slope: 1.0,
            stderr: 0.0,
            expected: SlopeCriterion::AtMost { bound: 0.05 },
            pass: false,
            provenance: vec![],
        };
        let mut out = Vec::new();
        report.write_csv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "parameter,a,b\n1,2,3\n2,4,5\n");
        let back: ExperimentReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
    }
}
