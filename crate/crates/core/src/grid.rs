//! Complex samples on a uniform periodic grid in one or two dimensions.
//!
//! Binary layout (little-endian): magic `SOBG`, `u32` dim, `u32` M, `f64`
//! period, then `M^dim` interleaved `f64` (re, im) pairs in row-major order.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::GridError;

const MAGIC: &[u8; 4] = b"SOBG";

#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    dim: u32,
    m: usize,
    period: f64,
    samples: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(dim: u32, m: usize, period: f64, samples: Vec<Complex64>) -> Result<Self, GridError> {
        if dim != 1 && dim != 2 {
            return Err(GridError::Dimension(dim));
        }
        if !m.is_power_of_two() {
            return Err(GridError::NotPowerOfTwo(m));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(GridError::Period(period));
        }
        let expected = m.pow(dim);
        if samples.len() != expected {
            return Err(GridError::SampleCount {
                expected,
                got: samples.len(),
            });
        }
        if let Some(i) = samples.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(GridError::NonFinite(i));
        }
        Ok(GridFunction { dim, m, period, samples })
    }

    pub fn zeros(dim: u32, m: usize, period: f64) -> Result<Self, GridError> {
        Self::new(dim, m, period, vec![Complex64::new(0.0, 0.0); m.pow(dim)])
    }

    /// Samples `f` at `x_i = i L / M`.
    pub fn from_fn_1d(m: usize, period: f64, f: impl Fn(f64) -> Complex64) -> Result<Self, GridError> {
        let h = period / m as f64;
        let samples = (0..m).map(|i| f(i as f64 * h)).collect();
        Self::new(1, m, period, samples)
    }

    /// Samples `f(x, y)` with `x` along rows' second index (row-major, `y` major).
    pub fn from_fn_2d(m: usize, period: f64, f: impl Fn(f64, f64) -> Complex64) -> Result<Self, GridError> {
        let h = period / m as f64;
        let mut samples = Vec::with_capacity(m * m);
        for r in 0..m {
            for c in 0..m {
                samples.push(f(c as f64 * h, r as f64 * h));
            }
        }
        Self::new(2, m, period, samples)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Points per axis.
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// `(L/M)^dim`
    pub fn cell_volume(&self) -> f64 {
        (self.period / self.m as f64).powi(self.dim as i32)
    }

    pub fn same_grid(&self, other: &GridFunction) -> bool {
        self.dim == other.dim && self.m == other.m && self.period == other.period
    }

    /// Replaces the samples, keeping the grid.
    pub(crate) fn with_samples(&self, samples: Vec<Complex64>) -> GridFunction {
        debug_assert_eq!(samples.len(), self.samples.len());
        GridFunction {
            dim: self.dim,
            m: self.m,
            period: self.period,
            samples,
        }
    }

    pub fn scale(&self, factor: Complex64) -> GridFunction {
        self.with_samples(self.samples.iter().map(|z| z * factor).collect())
    }

    /// Pointwise sum. Panics if the grids differ.
    pub fn add(&self, other: &GridFunction) -> GridFunction {
        assert!(self.same_grid(other), "grid mismatch");
        self.with_samples(self.samples.iter().zip(&other.samples).map(|(a, b)| a + b).collect())
    }

    /// Pointwise product. Panics if the grids differ.
    pub fn mul(&self, other: &GridFunction) -> GridFunction {
        assert!(self.same_grid(other), "grid mismatch");
        self.with_samples(self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).collect())
    }

    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<(), GridError> {
        w.write_all(MAGIC)?;
        w.write_all(&self.dim.to_le_bytes())?;
        w.write_all(&(self.m as u32).to_le_bytes())?;
        w.write_all(&self.period.to_le_bytes())?;
        for z in &self.samples {
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self, GridError> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(GridError::Magic);
        }
        let mut u32buf = [0u8; 4];
        r.read_exact(&mut u32buf)?;
        let dim = u32::from_le_bytes(u32buf);
        r.read_exact(&mut u32buf)?;
        let m = u32::from_le_bytes(u32buf) as usize;
        let mut f64buf = [0u8; 8];
        r.read_exact(&mut f64buf)?;
        let period = f64::from_le_bytes(f64buf);
        if dim != 1 && dim != 2 {
            return Err(GridError::Dimension(dim));
        }
        if !m.is_power_of_two() {
            return Err(GridError::NotPowerOfTwo(m));
        }
        let count = m.pow(dim);
        let mut samples = Vec::with_capacity(count);
        for _ in 0..count {
            r.read_exact(&mut f64buf)?;
            let re = f64::from_le_bytes(f64buf);
            r.read_exact(&mut f64buf)?;
            let im = f64::from_le_bytes(f64buf);
            samples.push(Complex64::new(re, im));
        }
        Self::new(dim, m, period, samples)
    }

    /// Reads `index,re,im` rows (an optional header line is skipped). Indices
    /// are row-major flat indices and must cover `0..M^dim` exactly once.
    pub fn read_csv<R: Read>(reader: R, dim: u32, period: f64) -> Result<Self, GridError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut rows: Vec<(usize, Complex64)> = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record?;
            let parsed = (
                record.get(0).and_then(|v| v.parse::<usize>().ok()),
                record.get(1).and_then(|v| v.parse::<f64>().ok()),
                record.get(2).and_then(|v| v.parse::<f64>().ok()),
            );
            match parsed {
                (Some(i), Some(re), Some(im)) => rows.push((i, Complex64::new(re, im))),
                _ if line == 0 => continue,
                _ => {
                    return Err(GridError::Io(std::io::Error::new(
                        std::io::ErrorKind::InvalidData,
                        format!("malformed csv row {}", line + 1),
                    )))
                }
            }
        }
        let total = rows.len();
        let m = match dim {
            1 => total,
            2 => (total as f64).sqrt().round() as usize,
            other => return Err(GridError::Dimension(other)),
        };
        let mut samples = vec![Complex64::new(f64::NAN, f64::NAN); m.pow(dim)];
        if samples.len() != total {
            return Err(GridError::SampleCount {
                expected: samples.len(),
                got: total,
            });
        }
        for (i, z) in rows {
            if i >= samples.len() {
                return Err(GridError::SampleCount {
                    expected: samples.len(),
                    got: i + 1,
                });
            }
            samples[i] = z;
        }
        Self::new(dim, m, period, samples)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), GridError> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["index", "re", "im"])?;
        for (i, z) in self.samples.iter().enumerate() {
            wtr.write_record([i.to_string(), z.re.to_string(), z.im.to_string()])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn validates_construction() {
        assert!(matches!(GridFunction::zeros(1, 12, 1.0), Err(GridError::NotPowerOfTwo(12))));
        assert!(matches!(GridFunction::zeros(3, 4, 1.0), Err(GridError::Dimension(3))));
        assert!(matches!(GridFunction::zeros(1, 4, 0.0), Err(GridError::Period(_))));
        let nan = vec![Complex64::new(f64::NAN, 0.0); 4];
        assert!(matches!(GridFunction::new(1, 4, 1.0, nan), Err(GridError::NonFinite(0))));
    }

    #[test]
    fn binary_roundtrip_and_layout() {
        let g = GridFunction::from_fn_2d(4, 2.0 * PI, |x, y| Complex64::new(x.cos(), y.sin())).unwrap();
        let mut buf = Vec::new();
        g.write_binary(&mut buf).unwrap();
        assert_eq!(&buf[..4], b"SOBG");
        assert_eq!(u32::from_le_bytes(buf[4..8].try_into().unwrap()), 2);
        assert_eq!(u32::from_le_bytes(buf[8..12].try_into().unwrap()), 4);
        assert_eq!(f64::from_le_bytes(buf[12..20].try_into().unwrap()), 2.0 * PI);
        assert_eq!(buf.len(), 20 + 16 * 16);
        assert_eq!(GridFunction::read_binary(buf.as_slice()).unwrap(), g);
    }

    #[test]
    fn rejects_bad_magic() {
        let buf = b"NOPE\x01\x00\x00\x00".to_vec();
        assert!(matches!(GridFunction::read_binary(buf.as_slice()), Err(GridError::Magic)));
    }

    #[test]
    fn csv_import() {
        let text = "index,re,im\n0,1.0,0\n2,3.0,0.5\n1,2.0,-1\n3,4,0\n";
        let g = GridFunction::read_csv(text.as_bytes(), 1, 1.0).unwrap();
        assert_eq!(g.samples()[2], Complex64::new(3.0, 0.5));
        let mut out = Vec::new();
        g.write_csv(&mut out).unwrap();
        let back = GridFunction::read_csv(out.as_slice(), 1, 1.0).unwrap();
        assert_eq!(back, g);
        assert!(GridFunction::read_csv("0,1,0\n1,1,0\n2,1,0\n".as_bytes(), 1, 1.0).is_err());
    }
}
