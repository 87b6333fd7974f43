//! Dyadic Littlewood–Paley partition of unity.
//!
//! `phi0` equals 1 on `|xi| <= a`, vanishes on `|xi| >= b`, with a squared
//! cosine in between. Block 0 is `phi0`; block `j >= 1` is
//! `phi0(2^-j xi) - phi0(2^(1-j) xi)`, flat on `[b 2^(j-1), a 2^j]`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::rational::{q, Rational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LPFilterBank {
    plateau: Rational,
    support: Rational,
    #[serde(skip)]
    a: f64,
    #[serde(skip)]
    b: f64,
}

impl Default for LPFilterBank {
    fn default() -> Self {
        Self::new(q(11, 10), q(19, 10)).expect("default bank is valid")
    }
}

impl LPFilterBank {
    /// Requires `1 <= plateau < support <= 2` and `support < 2 plateau`, so
    /// every block `j >= 1` has a plateau of positive width.
    pub fn new(plateau: Rational, support: Rational) -> Result<Self, GridError> {
        let one = Rational::one();
        let two = Rational::from_integer(2);
        if plateau < one || support <= plateau || support > two || support >= &two * &plateau {
            return Err(GridError::FilterBank(format!(
                "need 1 <= plateau < support <= 2 and support < 2*plateau, got plateau {plateau}, support {support}"
            )));
        }
        let (a, b) = (plateau.to_f64(), support.to_f64());
        Ok(LPFilterBank { plateau, support, a, b })
    }

    pub fn plateau(&self) -> &Rational {
        &self.plateau
    }

    pub fn support(&self) -> &Rational {
        &self.support
    }

    pub fn phi0(&self, r: f64) -> f64 {
        if r <= self.a {
            1.0
        } else if r >= self.b {
            0.0
        } else {
            let c = (FRAC_PI_2 * (r - self.a) / (self.b - self.a)).cos();
            c * c
        }
    }

    /// `phi_j(r)` for a radius `r = |xi|`.
    pub fn block_weight(&self, j: u32, r: f64) -> f64 {
        if j == 0 {
            return self.phi0(r);
        }
        let scale = (2.0f64).powi(j as i32);
        self.phi0(r / scale) - self.phi0(2.0 * r / scale)
    }

    /// Smallest `J` with `phi_0 + ... + phi_J = 1` at radius `r`.
    pub fn max_block(&self, r: f64) -> u32 {
        let mut j = 0;
        while self.a * (2.0f64).powi(j as i32) < r {
            j += 1;
        }
        j
    }

    /// Closed interval of radii on which `phi_j = 1`.
    pub fn plateau_shell(&self, j: u32) -> (f64, f64) {
        if j == 0 {
            return (0.0, self.a);
        }
        let scale = (2.0f64).powi(j as i32);
        (self.b * scale / 2.0, self.a * scale)
    }

    /// Open interval of radii outside which `phi_j = 0`.
    pub fn support_shell(&self, j: u32) -> (f64, f64) {
        if j == 0 {
            return (0.0, self.b);
        }
        let scale = (2.0f64).powi(j as i32);
        (self.a * scale / 2.0, self.b * scale)
    }
}
