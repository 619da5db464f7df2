//! Local L^p norms and the normalized concentration functional.

use super::DomainMask;
use crate::error::{PhaseLabError, Result};
use crate::numeric::pairwise_sum;
use crate::phase_space::{cross_wigner_on, tau_wigner_on, PhaseSpaceField, TauParam};
use crate::signal::Signal;

/// `(cell_area * sum_{Omega} |field|^p)^{1/p}` for finite `p >= 1`; the exact
/// maximum of `|field|` over the active cells for `p = infinity`.
pub fn lp_norm(field: &PhaseSpaceField, mask: &DomainMask, p: f64) -> Result<f64> {
    if field.grid() != mask.grid() {
        return Err(PhaseLabError::GridMismatch(
            "field and mask live on different phase grids".into(),
        ));
    }
    if !(p >= 1.0) {
        return Err(PhaseLabError::InvalidParameter(format!(
            "p must satisfy p >= 1, got {p}"
        )));
    }
    let values = field.values();
    let cells = mask.cells();
    if p.is_infinite() {
        let mut max = 0.0f64;
        for (v, active) in values.iter().zip(cells) {
            if *active {
                max = max.max(v.norm());
            }
        }
        return Ok(max);
    }
    let terms: Vec<f64> = values
        .iter()
        .zip(cells)
        .map(
            |(v, active)| {
                if *active {
                    power_abs(v.norm(), p)
                } else {
                    0.0
                }
            },
        )
        .collect();
    Ok((pairwise_sum(&terms) * field.grid().cell_area()).powf(1.0 / p))
}

/// Global norm over the whole field: `(cell_area * sum |field|^p)^{1/p}`,
/// or the maximum modulus for `p = infinity`.
pub fn global_lp_norm(field: &PhaseSpaceField, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(PhaseLabError::InvalidParameter(format!(
            "p must satisfy p >= 1, got {p}"
        )));
    }
    if p.is_infinite() {
        return Ok(field.max_abs());
    }
    let values = field.values();
    let terms: Vec<f64> = values.iter().map(|v| power_abs(v.norm(), p)).collect();
    Ok((pairwise_sum(&terms) * field.grid().cell_area()).powf(1.0 / p))
}

fn power_abs(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x * x
    } else if p == 3.0 {
        x * x * x
    } else if p == 4.0 {
        let s = x * x;
        s * s
    } else {
        x.powf(p)
    }
}

/// Which quadratic distribution a concentration functional measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformKind {
    Wigner,
    TauWigner(f64),
    BornJordan { nodes: usize },
}

/// `||T f||_{L^p(Omega)} / ||f||^2` for the selected transform; invariant
/// under rescaling of `f`.
pub fn concentration_value(
    f: &Signal,
    mask: &DomainMask,
    p: f64,
    kind: TransformKind,
) -> Result<f64> {
    let energy = f.energy();
    if energy <= 0.0 {
        return Err(PhaseLabError::ZeroSignal);
    }
    let grid = mask.grid();
    let field = match kind {
        TransformKind::Wigner => cross_wigner_on(f, f, &grid)?,
        TransformKind::TauWigner(tau) => tau_wigner_on(f, f, TauParam::new(tau)?, &grid)?,
        TransformKind::BornJordan { nodes } => {
            crate::phase_space::born_jordan(f, f, crate::phase_space::QuadSpec::new(nodes, 1e-6)?)?
        }
    };
    Ok(lp_norm(&field, mask, p)? / energy)
}
