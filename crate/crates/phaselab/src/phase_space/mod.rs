//! Phase-space distributions on 2-D `(x, xi)` grids.
//!
//! The Wigner-type transforms use a lag-doubling convention: the lag variable
//! steps by `2 dt`, so the frequency axis carries spacing `1 / (2 n dt)` and
//! the tau = 1/2 case never touches half-integer sample shifts. Auto-term
//! fields are real up to rounding.

mod adjoint;
mod ambiguity;
mod born_jordan;
mod tau;
mod wigner;

pub use adjoint::wigner_adjoint;
pub use ambiguity::ambiguity;
pub use born_jordan::{
    born_jordan, born_jordan_on, born_jordan_value_at_zero, sech_kernel_check, QuadSpec,
};
pub use tau::{covariance_center, tau_wigner, tau_wigner_on, tau_wigner_value_at_zero};
pub use wigner::{cross_wigner, cross_wigner_on, wigner};

use crate::error::{PhaseLabError, Result};
use crate::grid::Grid1D;
use crate::numeric::pairwise_sum_complex;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One uniform axis of a phase-space grid. Unlike [`Grid1D`] it may describe
/// a contiguous sub-range of rows, so fields can be computed only where a
/// domain mask needs them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub n: usize,
    pub start: f64,
    pub step: f64,
}

impl Axis {
    pub fn centered(n: usize, step: f64) -> Self {
        Self {
            n,
            start: -((n / 2) as f64) * step,
            step,
        }
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }
}

/// 2-D sampling lattice of the `(x, xi)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    pub x: Axis,
    pub xi: Axis,
}

impl PhaseGrid {
    /// Full canonical grid of the Wigner-type transforms for signals on
    /// `grid`: x-axis equals the signal grid, xi spacing `1 / (2 n dt)`.
    pub fn wigner_full(grid: Grid1D) -> Self {
        let n = grid.len();
        PhaseGrid {
            x: Axis::centered(n, grid.dt()),
            xi: Axis::centered(n, 0.5 * grid.dual_spacing()),
        }
    }

    /// Row-restricted Wigner grid covering signal-grid indices
    /// `row_lo..row_hi`.
    pub fn wigner_rows(grid: Grid1D, row_lo: usize, row_hi: usize) -> Result<Self> {
        let n = grid.len();
        if row_lo >= row_hi || row_hi > n {
            return Err(PhaseLabError::InvalidParameter(format!(
                "invalid row range {row_lo}..{row_hi} for grid of length {n}"
            )));
        }
        Ok(PhaseGrid {
            x: Axis {
                n: row_hi - row_lo,
                start: grid.point(row_lo),
                step: grid.dt(),
            },
            xi: Axis::centered(n, 0.5 * grid.dual_spacing()),
        })
    }

    /// Canonical ambiguity grid: x steps by `2 dt`, xi is the signal's dual
    /// grid.
    pub fn ambiguity_full(grid: Grid1D) -> Self {
        let n = grid.len();
        PhaseGrid {
            x: Axis::centered(n, 2.0 * grid.dt()),
            xi: Axis::centered(n, grid.dual_spacing()),
        }
    }

    pub fn cell_area(&self) -> f64 {
        self.x.step * self.xi.step
    }

    pub fn cells(&self) -> usize {
        self.x.n * self.xi.n
    }

    /// Index of the signal-grid row that `self.x` starts at, when `self` is a
    /// row restriction of the canonical Wigner grid for `grid`.
    pub fn row_offset(&self, grid: Grid1D) -> Result<usize> {
        let full = Axis::centered(grid.len(), grid.dt());
        let off = (self.x.start - full.start) / grid.dt();
        let rounded = off.round();
        if (off - rounded).abs() > 1e-9 || rounded < 0.0 {
            return Err(PhaseLabError::GridMismatch(
                "phase grid x-axis is not aligned with the signal grid".into(),
            ));
        }
        let off = rounded as usize;
        if self.x.step != grid.dt() || off + self.x.n > grid.len() {
            return Err(PhaseLabError::GridMismatch(
                "phase grid x-axis is not a sub-range of the signal grid".into(),
            ));
        }
        Ok(off)
    }
}

/// Which distribution a field holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FieldKind {
    Wigner,
    CrossWigner,
    TauWigner(f64),
    Ambiguity,
    BornJordan,
}

impl FieldKind {
    /// Auto-term kinds whose values are real up to rounding.
    pub fn is_real_auto(&self) -> bool {
        matches!(self, FieldKind::Wigner | FieldKind::BornJordan)
    }
}

/// Tau parameter of the tau-Wigner family, constrained to the open interval
/// `(0, 1)`; tau = 1/2 recovers the Wigner distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauParam(f64);

impl TauParam {
    pub fn new(tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau < 1.0) {
            return Err(PhaseLabError::InvalidParameter(format!(
                "tau must lie in the open interval (0, 1), got {tau}"
            )));
        }
        Ok(TauParam(tau))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Complex samples of a distribution on a [`PhaseGrid`], stored row-major:
/// `values[ix * xi.n + ixi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceField {
    grid: PhaseGrid,
    kind: FieldKind,
    values: Vec<Complex64>,
}

impl PhaseSpaceField {
    pub fn new(grid: PhaseGrid, kind: FieldKind, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.cells() {
            return Err(PhaseLabError::GridMismatch(format!(
                "value count {} does not match grid with {} cells",
                values.len(),
                grid.cells()
            )));
        }
        Ok(Self { grid, kind, values })
    }

    pub fn grid(&self) -> PhaseGrid {
        self.grid
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, ix: usize, ixi: usize) -> Complex64 {
        self.values[ix * self.grid.xi.n + ixi]
    }

    /// Value at the cell whose coordinates are closest to `(x, xi)`.
    pub fn value_near(&self, x: f64, xi: f64) -> Complex64 {
        let ix = ((x - self.grid.x.start) / self.grid.x.step).round() as isize;
        let ixi = ((xi - self.grid.xi.start) / self.grid.xi.step).round() as isize;
        let ix = ix.clamp(0, self.grid.x.n as isize - 1) as usize;
        let ixi = ixi.clamp(0, self.grid.xi.n as isize - 1) as usize;
        self.value(ix, ixi)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest imaginary part relative to the field's peak; small for
    /// auto-term kinds.
    pub fn max_relative_imag(&self) -> f64 {
        let peak = self.max_abs();
        if peak == 0.0 {
            return 0.0;
        }
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max) / peak
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> PhaseSpaceField {
        PhaseSpaceField {
            grid: self.grid,
            kind: self.kind,
            values: self.values.iter().map(|v| f(*v)).collect(),
        }
    }

    pub fn add(&self, other: &PhaseSpaceField) -> Result<PhaseSpaceField> {
        if self.grid != other.grid {
            return Err(PhaseLabError::GridMismatch("field grids differ".into()));
        }
        Ok(PhaseSpaceField {
            grid: self.grid,
            kind: self.kind,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `cell_area * sum a * conj(b)` over the whole grid.
    pub fn field_inner(&self, other: &PhaseSpaceField) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(PhaseLabError::GridMismatch("field grids differ".into()));
        }
        let terms: Vec<Complex64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .collect();
        Ok(pairwise_sum_complex(&terms) * self.grid.cell_area())
    }
}
