//! Phase-space domains and concentration functionals.

mod interference;
mod lp;
mod pairs;
mod visibility;

pub use interference::{
    extremal_pair_diagnostic, interference_block, interference_limit_prediction,
    ExtremalPairReport, InterferencePrediction,
};
pub use lp::{concentration_value, global_lp_norm, lp_norm, TransformKind};
pub use pairs::{surviving_pair_graph, CenterTrajectory, PairGraph, DEFAULT_BOUND_THRESHOLD};
pub use visibility::visibility_constant;

use crate::error::{PhaseLabError, Result};
use crate::phase_space::PhaseGrid;

/// Cell-aligned boolean subset of a phase-space grid with finite positive
/// measure. Cells are rasterized by the center-in rule, so the measure is the
/// exact cell count times the cell area.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainMask {
    grid: PhaseGrid,
    cells: Vec<bool>,
}

impl DomainMask {
    pub fn from_cells(grid: PhaseGrid, cells: Vec<bool>) -> Result<Self> {
        if cells.len() != grid.cells() {
            return Err(PhaseLabError::GridMismatch(
                "mask cell count does not match grid".into(),
            ));
        }
        let mask = DomainMask { grid, cells };
        if mask.active_cells() == 0 {
            return Err(PhaseLabError::EmptyMask);
        }
        // The domain hypothesis is 0 < measure < total area; a mask covering
        // every cell would stand in for all of phase space.
        if mask.active_cells() == grid.cells() {
            return Err(PhaseLabError::InvalidParameter(
                "mask must not cover the whole grid".into(),
            ));
        }
        Ok(mask)
    }

    /// Rasterize `predicate(x, xi)` with the center-in rule.
    pub fn from_predicate(grid: PhaseGrid, predicate: impl Fn(f64, f64) -> bool) -> Result<Self> {
        let mut cells = vec![false; grid.cells()];
        for ix in 0..grid.x.n {
            let x = grid.x.point(ix);
            for ixi in 0..grid.xi.n {
                cells[ix * grid.xi.n + ixi] = predicate(x, grid.xi.point(ixi));
            }
        }
        Self::from_cells(grid, cells)
    }

    pub fn rectangle(grid: PhaseGrid, x0: f64, x1: f64, xi0: f64, xi1: f64) -> Result<Self> {
        Self::from_predicate(grid, |x, xi| x >= x0 && x <= x1 && xi >= xi0 && xi <= xi1)
    }

    pub fn disk(grid: PhaseGrid, center_x: f64, center_xi: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(PhaseLabError::InvalidParameter(
                "disk radius must be positive".into(),
            ));
        }
        Self::from_predicate(grid, |x, xi| (x - center_x).hypot(xi - center_xi) <= radius)
    }

    pub fn annulus(
        grid: PhaseGrid,
        center_x: f64,
        center_xi: f64,
        inner_radius: f64,
        outer_radius: f64,
    ) -> Result<Self> {
        if !(0.0 <= inner_radius && inner_radius < outer_radius) {
            return Err(PhaseLabError::InvalidParameter(
                "annulus requires 0 <= inner < outer radius".into(),
            ));
        }
        Self::from_predicate(grid, |x, xi| {
            let r = (x - center_x).hypot(xi - center_xi);
            r >= inner_radius && r <= outer_radius
        })
    }

    pub fn union(&self, other: &DomainMask) -> Result<DomainMask> {
        if self.grid != other.grid {
            return Err(PhaseLabError::GridMismatch(
                "mask union requires a shared grid".into(),
            ));
        }
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| *a || *b)
            .collect();
        DomainMask::from_cells(self.grid, cells)
    }

    pub fn grid(&self) -> PhaseGrid {
        self.grid
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn contains_cell(&self, ix: usize, ixi: usize) -> bool {
        self.cells[ix * self.grid.xi.n + ixi]
    }

    pub fn active_cells(&self) -> usize {
        self.cells.iter().filter(|c| **c).count()
    }

    /// `count(true) * cell_area`.
    pub fn measure(&self) -> f64 {
        self.active_cells() as f64 * self.grid.cell_area()
    }

    /// Translate the mask by an integer number of cells; fails if any active
    /// cell would leave the grid.
    pub fn translate_cells(&self, dx_cells: isize, dxi_cells: isize) -> Result<DomainMask> {
        let nx = self.grid.x.n as isize;
        let nxi = self.grid.xi.n as isize;
        let mut cells = vec![false; self.cells.len()];
        for ix in 0..nx {
            for ixi in 0..nxi {
                if self.cells[(ix * nxi + ixi) as usize] {
                    let jx = ix + dx_cells;
                    let jxi = ixi + dxi_cells;
                    if jx < 0 || jx >= nx || jxi < 0 || jxi >= nxi {
                        return Err(PhaseLabError::MaskLeavesGrid);
                    }
                    cells[(jx * nxi + jxi) as usize] = true;
                }
            }
        }
        DomainMask::from_cells(self.grid, cells)
    }

    /// Centers of the active cells, in row-major order.
    pub fn active_centers(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.active_cells());
        for ix in 0..self.grid.x.n {
            for ixi in 0..self.grid.xi.n {
                if self.cells[ix * self.grid.xi.n + ixi] {
                    out.push((self.grid.x.point(ix), self.grid.xi.point(ixi)));
                }
            }
        }
        out
    }

    /// Range of x-rows holding at least one active cell.
    pub fn row_span(&self) -> (usize, usize) {
        let nxi = self.grid.xi.n;
        let mut lo = self.grid.x.n;
        let mut hi = 0;
        for ix in 0..self.grid.x.n {
            if self.cells[ix * nxi..(ix + 1) * nxi].iter().any(|c| *c) {
                lo = lo.min(ix);
                hi = hi.max(ix + 1);
            }
        }
        (lo, hi)
    }

    pub fn is_subset_of(&self, other: &DomainMask) -> bool {
        self.grid == other.grid && self.cells.iter().zip(&other.cells).all(|(a, b)| !*a || *b)
    }
}
