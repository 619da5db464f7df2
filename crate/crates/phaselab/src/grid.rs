//! Centered one-dimensional sample grids.

use crate::error::{PhaseLabError, Result};
use serde::{Deserialize, Serialize};

/// Uniform centered grid: sample `m` of `0..n` sits at `t_m = (m - n/2) * dt`.
///
/// `n` is restricted to powers of two so every transform stays on fast FFT
/// paths. The dual frequency grid has spacing `1 / (n * dt)` and is centered
/// the same way.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    n: usize,
    dt: f64,
}

impl Grid1D {
    pub fn new(n: usize, dt: f64) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(PhaseLabError::InvalidParameter(format!(
                "grid length must be a power of two >= 2, got {n}"
            )));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(PhaseLabError::InvalidParameter(format!(
                "grid spacing must be positive and finite, got {dt}"
            )));
        }
        Ok(Self { n, dt })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Physical coordinate of sample `m`.
    pub fn point(&self, m: usize) -> f64 {
        (m as f64 - (self.n / 2) as f64) * self.dt
    }

    /// Total span `n * dt`; samples cover `[-span/2, span/2)`.
    pub fn span(&self) -> f64 {
        self.n as f64 * self.dt
    }

    /// Dual grid spacing `1 / (n * dt)`.
    pub fn dual_spacing(&self) -> f64 {
        1.0 / (self.n as f64 * self.dt)
    }

    /// The centered dual grid carrying the discrete Fourier transform.
    pub fn dual(&self) -> Grid1D {
        Grid1D {
            n: self.n,
            dt: self.dual_spacing(),
        }
    }

    /// Nyquist frequency `1 / (2 dt)`.
    pub fn nyquist(&self) -> f64 {
        0.5 / self.dt
    }

    /// True if `t` lies within the sampled fundamental domain.
    pub fn contains(&self, t: f64) -> bool {
        let half = 0.5 * self.span();
        t >= -half - 0.25 * self.dt && t <= half - 0.75 * self.dt
    }
}

/// A point of the time-frequency plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: f64,
    pub xi: f64,
}

impl PhasePoint {
    pub fn new(x: f64, xi: f64) -> Self {
        Self { x, xi }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.xi)
    }
}
