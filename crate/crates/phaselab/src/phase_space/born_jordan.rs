//! Born-Jordan distribution by quadrature over the tau family.

use super::{FieldKind, PhaseGrid, PhaseSpaceField, TauParam};
use crate::error::{PhaseLabError, Result};
use crate::numeric::composite_gauss_legendre_unit;
use crate::phase_space::tau::{tau_wigner_on, tau_wigner_value_at_zero};
use crate::signal::{dft, Signal};
use num_complex::Complex64;

/// Quadrature specification for the tau average.
///
/// The integral over tau uses the substitution `tau = (1 - cos(pi u)) / 2`,
/// which flattens the `(tau (1-tau))^{-1/2}` endpoint growth of the tau-Wigner
/// sup bound, with composite Gauss-Legendre nodes in `u`. Convergence is
/// certified by node doubling at `z = 0`: the relative change (against
/// `max(|value|, |f| |g|)`) must stay below `rel_tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub nodes: usize,
    pub rel_tol: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            nodes: 32,
            rel_tol: 1e-6,
        }
    }
}

impl QuadSpec {
    pub fn new(nodes: usize, rel_tol: f64) -> Result<Self> {
        if nodes < 8 {
            return Err(PhaseLabError::InvalidParameter(format!(
                "quadrature needs at least 8 nodes, got {nodes}"
            )));
        }
        if !(rel_tol > 0.0) {
            return Err(PhaseLabError::InvalidParameter(
                "quadrature tolerance must be positive".into(),
            ));
        }
        Ok(QuadSpec { nodes, rel_tol })
    }

    /// Cosine-substituted nodes `(tau_i, weight_i)`; weights sum to 1.
    fn tau_nodes(&self) -> Vec<(f64, f64)> {
        let panels = self.nodes.div_ceil(8);
        composite_gauss_legendre_unit(panels)
            .into_iter()
            .map(|(u, w)| {
                let pi = std::f64::consts::PI;
                let tau = 0.5 * (1.0 - (pi * u).cos());
                (tau, w * 0.5 * pi * (pi * u).sin())
            })
            .collect()
    }
}

/// Born-Jordan distribution `W_BJ(f, g)` on the full canonical grid.
pub fn born_jordan(f: &Signal, g: &Signal, quad: QuadSpec) -> Result<PhaseSpaceField> {
    let grid = PhaseGrid::wigner_full(f.grid());
    born_jordan_on(f, g, quad, &grid)
}

/// Born-Jordan restricted to the rows of `grid`, with the node-doubling
/// certification at `z = 0` (errors out when the quadrature has not settled).
pub fn born_jordan_on(
    f: &Signal,
    g: &Signal,
    quad: QuadSpec,
    grid: &PhaseGrid,
) -> Result<PhaseSpaceField> {
    let v1 = born_jordan_value_at_zero(f, g, quad.nodes)?;
    let v2 = born_jordan_value_at_zero(f, g, quad.nodes * 2)?;
    let scale = (f.energy() * g.energy()).sqrt();
    let denom = v2.norm().max(scale);
    if denom > 0.0 && (v1 - v2).norm() / denom > quad.rel_tol {
        return Err(PhaseLabError::QuadratureNotConverged(format!(
            "doubling {} -> {} nodes moves the value at zero by {:.3e} (tolerance {:.3e})",
            quad.nodes,
            quad.nodes * 2,
            (v1 - v2).norm() / denom,
            quad.rel_tol
        )));
    }

    let mut acc = vec![Complex64::new(0.0, 0.0); grid.cells()];
    for (tau, w) in quad.tau_nodes() {
        let field = tau_wigner_on(f, g, TauParam::new(tau)?, grid)?;
        for (a, v) in acc.iter_mut().zip(field.values()) {
            *a += w * v;
        }
    }
    PhaseSpaceField::new(*grid, FieldKind::BornJordan, acc)
}

/// `W_BJ(f, g)(0, 0)` by quadrature of the chirp-z lag sums.
pub fn born_jordan_value_at_zero(f: &Signal, g: &Signal, nodes: usize) -> Result<Complex64> {
    let spec = QuadSpec {
        nodes,
        rel_tol: 1.0,
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for (tau, w) in spec.tau_nodes() {
        acc += w * tau_wigner_value_at_zero(f, g, TauParam::new(tau)?)?;
    }
    Ok(acc)
}

/// Numerically transform the hyperbolic-secant kernel `k(t) = 1/(2 cosh(t/2))`
/// sampled on `|t| <= 60` and report the largest deviation from
/// `pi * sech(2 pi^2 xi)` over the dual bins with `|xi| <= xi_max`.
pub fn sech_kernel_check(xi_max: f64) -> Result<f64> {
    let n = 4096usize;
    let span = 120.0;
    let grid = crate::grid::Grid1D::new(n, span / n as f64)?;
    let k = Signal::from_fn(grid, |t| Complex64::new(0.5 / (0.5 * t).cosh(), 0.0));
    let khat = dft(&k);
    let dual = khat.grid();
    let pi = std::f64::consts::PI;
    let mut worst = 0.0f64;
    for i in 0..dual.len() {
        let xi = dual.point(i);
        if xi.abs() <= xi_max {
            let expected = pi / (2.0 * pi * pi * xi).cosh();
            worst = worst.max((khat.values()[i] - Complex64::new(expected, 0.0)).norm());
        }
    }
    Ok(worst)
}
