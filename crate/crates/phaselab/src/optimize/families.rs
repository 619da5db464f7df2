//! Closed-form and asymptotic constructions for the L^infinity problems.
//!
//! The Wigner supremum 2 is attained by any even (or odd, in modulus) signal
//! shifted onto the domain. For tau != 1/2 and for Born-Jordan the suprema
//! `(tau (1-tau))^{-1/2}` and `pi` are approached but not attained; both
//! families are built in logarithmic coordinates, where the dilation group
//! becomes the translation group and widening Gaussians are near-invariant
//! vectors.

use crate::concentration::{lp_norm, DomainMask};
use crate::error::{PhaseLabError, Result};
use crate::grid::{Grid1D, PhasePoint};
use crate::numeric::gauss_legendre;
use crate::phase_space::{sech_kernel_check, TauParam};
use crate::signal::{gaussian, inner, tf_shift, Signal};

/// Result of the attained Wigner L^infinity problem.
#[derive(Debug, Clone)]
pub struct LinftyResult {
    pub value: f64,
    pub signal: Signal,
    /// Cell the optimizer was shifted onto.
    pub center: PhasePoint,
}

/// Shift an even Gaussian onto a cell of the mask; the Wigner distribution
/// peaks there at twice the energy, which is the supremum.
pub fn linfty_optimizer(mask: &DomainMask, sgrid: Grid1D) -> Result<LinftyResult> {
    let centers = mask.active_centers();
    if centers.is_empty() {
        return Err(PhaseLabError::EmptyMask);
    }
    // Cell closest to the mask centroid keeps the packet in the interior.
    let (cx, cxi) = centers
        .iter()
        .fold((0.0, 0.0), |(ax, axi), (x, xi)| (ax + x, axi + xi));
    let centroid = (cx / centers.len() as f64, cxi / centers.len() as f64);
    let (x, xi) = centers
        .iter()
        .copied()
        .min_by(|a, b| {
            let da = (a.0 - centroid.0).hypot(a.1 - centroid.1);
            let db = (b.0 - centroid.0).hypot(b.1 - centroid.1);
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    let center = PhasePoint::new(x, xi);
    let signal = tf_shift(&gaussian(sgrid, 1.0), center);
    let field = crate::phase_space::cross_wigner_on(&signal, &signal, &mask.grid())?;
    let value = lp_norm(&field, mask, f64::INFINITY)? / signal.energy();
    Ok(LinftyResult {
        value,
        signal,
        center,
    })
}

/// Family report for the non-attained tau-Wigner supremum.
#[derive(Debug, Clone)]
pub struct TauFamilyReport {
    /// `|W_tau f_sigma(0)| / |f_sigma|^2` for sigma = 1, 2, 4, ...
    pub values: Vec<f64>,
    pub sup_predicted: f64,
}

/// Logarithmic grid wide enough for a Gaussian of width `sigma_max` plus the
/// translations the overlap integrals apply.
fn log_grid(sigma_max: f64, extra_span: f64) -> Result<Grid1D> {
    let span_needed = 14.0 * sigma_max + 2.0 * extra_span;
    let mut n = 1024usize;
    // Spacing at most 1/4 keeps the widest translation overlaps accurate.
    while (span_needed / n as f64) > 0.25 && n < (1 << 16) {
        n *= 2;
    }
    Grid1D::new(n, span_needed / n as f64)
}

/// Near-invariant family for the dilation `D_{-tau/(1-tau)}`:
/// log-coordinate Gaussians of widths `2^0 .. 2^{m-1}`. Every value is
/// strictly below `(tau (1-tau))^{-1/2}` and increases toward it.
pub fn tau_linfty_family(tau: TauParam, m: usize) -> Result<TauFamilyReport> {
    let t = tau.value();
    if (t - 0.5).abs() < 1e-12 {
        return Err(PhaseLabError::InvalidParameter(
            "tau = 1/2 is the attained Wigner regime; pick tau != 1/2".into(),
        ));
    }
    if m < 1 {
        return Err(PhaseLabError::InvalidParameter(
            "family needs at least one member".into(),
        ));
    }
    let sup_predicted = (t * (1.0 - t)).powf(-0.5);
    // |W_tau f(0)| = sup * |<D_{-s0} f, f>| with s0 = tau/(1-tau); in log
    // coordinates the overlap is a translation by ln(s0).
    let shift = (t / (1.0 - t)).ln();
    let sigma_max = 2.0f64.powi(m as i32 - 1);
    let grid = log_grid(sigma_max, shift.abs())?;
    let mut values = Vec::with_capacity(m);
    for k in 0..m {
        let sigma = 2.0f64.powi(k as i32);
        let g = gaussian(grid, sigma);
        let shifted = tf_shift(&g, PhasePoint::new(shift, 0.0));
        let overlap = inner(&shifted, &g)?.norm() / g.energy();
        values.push(sup_predicted * overlap);
    }
    Ok(TauFamilyReport {
        values,
        sup_predicted,
    })
}

/// Family report for the non-attained Born-Jordan supremum `pi`.
#[derive(Debug, Clone)]
pub struct BjFamilyReport {
    /// `W_BJ f_sigma(0) / |f_sigma|^2` per family member.
    pub values: Vec<f64>,
    pub sup_predicted: f64,
    /// Max deviation of the numerically transformed kernel from
    /// `pi sech(2 pi^2 xi)`.
    pub khat_check: f64,
}

/// Even signals built from low-frequency log-coordinate bumps via the
/// unitary `(U f)(y) = sqrt(2) e^{y/2} f(e^y)`: under `U` the value at zero
/// becomes `<k * g, g>` with the sech kernel, so widening bumps push the
/// value toward `|khat|_infty = pi` without reaching it.
pub fn bj_linfty_family(m: usize) -> Result<BjFamilyReport> {
    if m < 1 {
        return Err(PhaseLabError::InvalidParameter(
            "family needs at least one member".into(),
        ));
    }
    let sup_predicted = std::f64::consts::PI;
    let khat_check = sech_kernel_check(1.0)?;

    // Quadrature over t of k(t) <T_t g, g>; the kernel decays like
    // e^{-|t|/2}, so |t| <= 60 reaches far below the tolerances used here.
    let t_max = 60.0;
    let rule = gauss_legendre(24);
    let panels = 60usize;
    let sigma_max = 2.0f64.powi(m as i32 - 1);
    let grid = log_grid(sigma_max, t_max)?;
    let mut values = Vec::with_capacity(m);
    for k in 0..m {
        let sigma = 2.0f64.powi(k as i32);
        let g = gaussian(grid, sigma);
        let energy = g.energy();
        let mut acc = 0.0;
        let h = 2.0 * t_max / panels as f64;
        for panel in 0..panels {
            let a = -t_max + panel as f64 * h;
            for &(xnode, w) in &rule {
                let t = a + 0.5 * h * (xnode + 1.0);
                let kernel = 0.5 / (0.5 * t).cosh();
                let overlap = inner(&tf_shift(&g, PhasePoint::new(t, 0.0)), &g)?.re;
                acc += 0.5 * h * w * kernel * overlap;
            }
        }
        values.push(acc / energy);
    }
    Ok(BjFamilyReport {
        values,
        sup_predicted,
        khat_check,
    })
}
