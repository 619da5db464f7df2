//! Interference blocks of antipodally shifted packets and their predicted
//! L^p limits, plus extremal-pair diagnostics.

use super::{lp_norm, visibility_constant, DomainMask};
use crate::error::{PhaseLabError, Result};
use crate::grid::PhasePoint;
use crate::phase_space::{cross_wigner_on, PhaseSpaceField};
use crate::signal::{inner, tf_shift, Signal, GUARD_TAIL_FRACTION};
use num_complex::Complex64;

/// Symmetric cross block `S = 2 Re W(pi(a) f, pi(b) g)` on the rows of
/// `mask`'s grid; real-valued to rounding.
///
/// Errors when a shifted packet carries more than the guard budget of energy
/// near the grid edges (its lag products would then wrap).
pub fn interference_block(
    f: &Signal,
    g: &Signal,
    a: PhasePoint,
    b: PhasePoint,
    grid: &crate::phase_space::PhaseGrid,
) -> Result<PhaseSpaceField> {
    let fa = tf_shift(f, a);
    let gb = tf_shift(g, b);
    let edge = f.grid().len() / 16;
    for (name, s) in [("pi(a) f", &fa), ("pi(b) g", &gb)] {
        let tail = s.tail_energy_fraction(edge);
        if tail > GUARD_TAIL_FRACTION {
            return Err(PhaseLabError::GuardViolation(format!(
                "{name} keeps {tail:.3e} of its energy near the grid edge"
            )));
        }
    }
    let cross = cross_wigner_on(&fa, &gb, grid)?;
    Ok(cross.map(|v| Complex64::new(2.0 * v.re, 0.0)))
}

/// Predicted interference limit and optional coarse upper bound.
#[derive(Debug, Clone, Copy)]
pub struct InterferencePrediction {
    /// `2 C_p ||W(f,g)||_{L^p(Omega - c)}`.
    pub limit: f64,
    /// `L_est (|f|^2 + |g|^2)` when an estimate of the optimal value is given.
    pub upper_bound: Option<f64>,
}

/// Limit of `||S_n||_{L^p(Omega)}` for packets separating antipodally around
/// the fixed midpoint `c`.
pub fn interference_limit_prediction(
    f: &Signal,
    g: &Signal,
    c: PhasePoint,
    mask: &DomainMask,
    p: f64,
    l_est: Option<f64>,
) -> Result<InterferencePrediction> {
    if !p.is_finite() {
        return Err(PhaseLabError::InvalidParameter(
            "interference prediction requires finite p".into(),
        ));
    }
    let grid = mask.grid();
    let dx_cells = (-c.x / grid.x.step).round() as isize;
    let dxi_cells = (-c.xi / grid.xi.step).round() as isize;
    if ((dx_cells as f64) * grid.x.step + c.x).abs() > 1e-9
        || ((dxi_cells as f64) * grid.xi.step + c.xi).abs() > 1e-9
    {
        return Err(PhaseLabError::InvalidParameter(
            "midpoint c must be cell-aligned to translate the mask".into(),
        ));
    }
    let shifted_mask = if dx_cells == 0 && dxi_cells == 0 {
        mask.clone()
    } else {
        mask.translate_cells(dx_cells, dxi_cells)?
    };
    let envelope = cross_wigner_on(f, g, &grid)?;
    let limit = 2.0 * visibility_constant(p)? * lp_norm(&envelope, &shifted_mask, p)?;
    let upper_bound = l_est.map(|l| l * (f.energy() + g.energy()));
    Ok(InterferencePrediction { limit, upper_bound })
}

/// Necessary-condition defects for an exotic optimizer pair.
#[derive(Debug, Clone, Copy)]
pub struct ExtremalPairReport {
    /// `|<f, g>| / (|f| |g|)`; zero for orthogonal pairs.
    pub orthogonality_defect: f64,
    /// `||Wf + Wg||_{L^p(Omega)} / (||Wf||_{L^p(Omega)} + ||Wg||_{L^p(Omega)})`;
    /// zero when the Wigner distributions cancel on the domain.
    pub antiwigner_defect: f64,
}

pub fn extremal_pair_diagnostic(
    f: &Signal,
    g: &Signal,
    mask: &DomainMask,
    p: f64,
) -> Result<ExtremalPairReport> {
    let nf = f.norm();
    let ng = g.norm();
    if nf <= 0.0 || ng <= 0.0 {
        return Err(PhaseLabError::ZeroSignal);
    }
    let grid = mask.grid();
    let orthogonality_defect = inner(f, g)?.norm() / (nf * ng);
    let wf = cross_wigner_on(f, f, &grid)?;
    let wg = cross_wigner_on(g, g, &grid)?;
    let sum = wf.add(&wg)?;
    let denom = lp_norm(&wf, mask, p)? + lp_norm(&wg, mask, p)?;
    let antiwigner_defect = if denom > 0.0 {
        lp_norm(&sum, mask, p)? / denom
    } else {
        0.0
    };
    Ok(ExtremalPairReport {
        orthogonality_defect,
        antiwigner_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concentration::DomainMask;
    use crate::grid::Grid1D;
    use crate::phase_space::PhaseGrid;
    use crate::signal::{gaussian, hermite};

    fn grid_1024() -> Grid1D {
        Grid1D::new(1024, 1.0 / 64.0).unwrap()
    }

    #[test]
    fn coincident_packets_give_twice_wigner() {
        let sg = grid_1024();
        let g = gaussian(sg, 1.0);
        let grid = PhaseGrid::wigner_full(sg);
        let zero = PhasePoint::new(0.0, 0.0);
        let s = interference_block(&g, &g, zero, zero, &grid).unwrap();
        let w = crate::phase_space::wigner(&g).unwrap();
        for (a, b) in s.values().iter().zip(w.values()) {
            assert!((a.re - 2.0 * b.re).abs() < 1e-10);
        }
    }

    #[test]
    fn antipodal_gaussians_match_cosine_fringe() {
        // S(x, xi) = 2 sqrt(2)/norm e^{-2 pi (x^2 + xi^2)} cos(4 pi r x) for
        // unit-width packets modulated to +-r.
        let sg = grid_1024();
        let f = gaussian(sg, 1.0);
        let r = 4.0;
        let grid = PhaseGrid::wigner_full(sg);
        let s = interference_block(
            &f,
            &f,
            PhasePoint::new(0.0, r),
            PhasePoint::new(0.0, -r),
            &grid,
        )
        .unwrap();
        let mut max_err = 0.0f64;
        for ix in (0..grid.x.n).step_by(7) {
            for ixi in (0..grid.xi.n).step_by(7) {
                let x = grid.x.point(ix);
                let xi = grid.xi.point(ixi);
                if x.abs() > 2.0 || xi.abs() > 2.0 {
                    continue;
                }
                let envelope = 2.0 * 2.0 * (-2.0 * std::f64::consts::PI * (x * x + xi * xi)).exp();
                let expected = envelope * (4.0 * std::f64::consts::PI * r * x).cos();
                max_err = max_err.max((s.value(ix, ixi).re - expected).abs());
            }
        }
        assert!(
            max_err / 4.0 < 1e-5,
            "relative fringe error {}",
            max_err / 4.0
        );
    }

    #[test]
    fn fringe_spacing_matches_carrier() {
        let sg = grid_1024();
        let f = gaussian(sg, 1.0);
        let r = 4.0;
        let grid = PhaseGrid::wigner_full(sg);
        let s = interference_block(
            &f,
            &f,
            PhasePoint::new(0.0, r),
            PhasePoint::new(0.0, -r),
            &grid,
        )
        .unwrap();
        // Count zero crossings along the xi = 0 row inside |x| <= 1.
        let ixi = grid.xi.n / 2;
        let mut crossings = Vec::new();
        for ix in 1..grid.x.n {
            let x0 = grid.x.point(ix - 1);
            let x1 = grid.x.point(ix);
            if x0 < -1.0 || x1 > 1.0 {
                continue;
            }
            let v0 = s.value(ix - 1, ixi).re;
            let v1 = s.value(ix, ixi).re;
            if v0 == 0.0 {
                continue;
            }
            if v0.signum() != v1.signum() {
                // Linear interpolation localizes the crossing sub-sample.
                crossings.push(x0 + (x1 - x0) * v0 / (v0 - v1));
            }
        }
        assert!(crossings.len() > 3);
        // The carrier cos(4 pi r x) has period 1/(2r); adjacent zero
        // crossings sit half a period apart.
        let half_period = 1.0 / (4.0 * r);
        for w in crossings.windows(2) {
            let gap = w[1] - w[0];
            assert!(
                (gap - half_period).abs() < 0.2 * half_period,
                "gap {gap} expected {half_period}"
            );
        }
        let period = 1.0 / (2.0 * r);
        for w in crossings.windows(3) {
            let gap = w[2] - w[0];
            assert!((gap - period).abs() < 0.2 * period);
        }
    }

    #[test]
    fn prediction_zero_signal_and_c1() {
        let sg = grid_1024();
        let f = gaussian(sg, 1.0);
        let zero = Signal::zero(sg);
        let grid = PhaseGrid::wigner_full(sg);
        let mask = DomainMask::disk(grid, 0.0, 0.0, 1.0).unwrap();
        let p0 =
            interference_limit_prediction(&f, &zero, PhasePoint::new(0.0, 0.0), &mask, 2.0, None)
                .unwrap();
        assert_eq!(p0.limit, 0.0);

        let p1 = interference_limit_prediction(
            &f,
            &f,
            PhasePoint::new(0.0, 0.0),
            &mask,
            1.0,
            Some(2.0 * mask.measure()),
        )
        .unwrap();
        let envelope = crate::phase_space::cross_wigner(&f, &f).unwrap();
        let expected = 2.0 * (2.0 / std::f64::consts::PI) * lp_norm(&envelope, &mask, 1.0).unwrap();
        assert!((p1.limit - expected).abs() < 1e-12);
        assert!(p1.upper_bound.unwrap() > 0.0);
    }

    #[test]
    fn guard_violation_detected() {
        let sg = grid_1024();
        let f = gaussian(sg, 1.0);
        let grid = PhaseGrid::wigner_full(sg);
        // Push the packet right at the grid edge.
        let err = interference_block(
            &f,
            &f,
            PhasePoint::new(0.49 * sg.span(), 0.0),
            PhasePoint::new(0.0, 0.0),
            &grid,
        );
        assert!(matches!(err, Err(PhaseLabError::GuardViolation(_))));
    }

    #[test]
    fn hermite_pair_diagnostics() {
        let sg = grid_1024();
        let h0 = hermite(sg, 0);
        let h1 = hermite(sg, 1);
        let grid = PhaseGrid::wigner_full(sg);
        let mask = DomainMask::disk(grid, 0.0, 0.0, 1.0).unwrap();
        let same = extremal_pair_diagnostic(&h0, &h0, &mask, 2.0).unwrap();
        assert!((same.orthogonality_defect - 1.0).abs() < 1e-12);
        let pair = extremal_pair_diagnostic(&h0, &h1, &mask, 2.0).unwrap();
        assert!(pair.orthogonality_defect <= 1e-8);
        assert!(pair.antiwigner_defect > 0.0 && pair.antiwigner_defect <= 1.0);
    }
}
