//! tau-Wigner distributions and covariance centers.

use super::{FieldKind, PhaseGrid, PhaseSpaceField, TauParam};
use crate::error::{PhaseLabError, Result};
use crate::fft;
use crate::grid::PhasePoint;
use crate::numeric::pairwise_sum_complex;
use crate::signal::{resample_scaled, Signal};
use num_complex::Complex64;

/// Covariance center `c_tau(a, b) = ((1-tau) x_a + tau x_b, tau xi_a + (1-tau) xi_b)`.
/// At tau = 1/2 this is the midpoint governing Wigner cross terms.
pub fn covariance_center(a: PhasePoint, b: PhasePoint, tau: TauParam) -> PhasePoint {
    let t = tau.value();
    PhasePoint::new((1.0 - t) * a.x + t * b.x, t * a.xi + (1.0 - t) * b.xi)
}

/// Cross tau-Wigner distribution on the full canonical grid.
pub fn tau_wigner(f: &Signal, g: &Signal, tau: TauParam) -> Result<PhaseSpaceField> {
    let grid = PhaseGrid::wigner_full(f.grid());
    tau_wigner_on(f, g, tau, &grid)
}

/// Cross tau-Wigner restricted to the rows of `grid`.
///
/// The lag variable steps by `2 dt` as in the Wigner case. Each lag row
/// evaluates `f(x + 2 tau l dt)` and `g(x - 2 (1-tau) l dt)` by band-limited
/// fractional shifts; products whose true arguments fall outside the
/// fundamental domain are zeroed, which removes the aliases the periodic
/// shifts would otherwise wrap in.
pub fn tau_wigner_on(
    f: &Signal,
    g: &Signal,
    tau: TauParam,
    grid: &PhaseGrid,
) -> Result<PhaseSpaceField> {
    if f.grid() != g.grid() {
        return Err(PhaseLabError::GridMismatch(
            "tau_wigner requires both signals on the same grid".into(),
        ));
    }
    let t = tau.value();
    let sgrid = f.grid();
    let n = sgrid.len();
    let dt = sgrid.dt();
    let row0 = grid.row_offset(sgrid)?;
    let expected_xi = 0.5 * sgrid.dual_spacing();
    if grid.xi.n != n || (grid.xi.step - expected_xi).abs() > 1e-15 {
        return Err(PhaseLabError::GridMismatch(
            "phase grid xi-axis does not match the lag-doubling convention".into(),
        ));
    }

    let half = n / 2;
    // Spectra are hoisted out of the lag loop and the per-row shift phases
    // advance by a constant per-bin multiplier, so each lag row costs one
    // elementwise multiply and one inverse transform per signal.
    let mut f_spec = f.values().to_vec();
    fft::centered_forward(&mut f_spec);
    let mut g_spec = g.values().to_vec();
    fft::centered_forward(&mut g_spec);
    let dual = sgrid.dual();
    let inv_n = 1.0 / n as f64;
    let two_pi = 2.0 * std::f64::consts::PI;

    // Shift multiplier for f at lag l is exp(2 pi i t (2 l dt) nu_k); start
    // at l = -n/2 and step by the fixed increment per row.
    let y0 = 2.0 * -(half as f64) * dt;
    let mut f_phase: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, two_pi * t * y0 * dual.point(k)))
        .collect();
    let f_step: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, two_pi * t * 2.0 * dt * dual.point(k)))
        .collect();
    let mut g_phase: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, -two_pi * (1.0 - t) * y0 * dual.point(k)))
        .collect();
    let g_step: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, -two_pi * (1.0 - t) * 2.0 * dt * dual.point(k)))
        .collect();

    // lag_rows[l + n/2][ix] = masked product at lag l, position x.
    let nx = grid.x.n;
    let mut lag_rows = vec![Complex64::new(0.0, 0.0); n * nx];
    let mut f_buf = vec![Complex64::new(0.0, 0.0); n];
    let mut g_buf = vec![Complex64::new(0.0, 0.0); n];
    for l in -(half as isize)..(half as isize) {
        let y = 2.0 * l as f64 * dt;
        for k in 0..n {
            f_buf[k] = f_spec[k] * f_phase[k] * inv_n;
            g_buf[k] = g_spec[k] * g_phase[k] * inv_n;
            f_phase[k] *= f_step[k];
            g_phase[k] *= g_step[k];
        }
        fft::centered_inverse(&mut f_buf);
        fft::centered_inverse(&mut g_buf);
        let slot = (l + half as isize) as usize;
        let row = &mut lag_rows[slot * nx..(slot + 1) * nx];
        for (ix, out) in row.iter_mut().enumerate() {
            let m = row0 + ix;
            let x = sgrid.point(m);
            if sgrid.contains(x + t * y) && sgrid.contains(x - (1.0 - t) * y) {
                *out = f_buf[m] * g_buf[m].conj();
            }
        }
    }

    let scale = 2.0 * dt;
    let mut values = vec![Complex64::new(0.0, 0.0); grid.cells()];
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for ix in 0..nx {
        for slot in 0..n {
            col[slot] = lag_rows[slot * nx + ix];
        }
        fft::centered_forward(&mut col);
        let out = &mut values[ix * n..(ix + 1) * n];
        for (o, c) in out.iter_mut().zip(col.iter()) {
            *o = c * scale;
        }
    }

    PhaseSpaceField::new(*grid, FieldKind::TauWigner(t), values)
}

/// `W_tau(f, g)(0, 0)` by chirp-z resampling of the lag product, without
/// building the field. Used for quadrature convergence certification.
pub fn tau_wigner_value_at_zero(f: &Signal, g: &Signal, tau: TauParam) -> Result<Complex64> {
    if f.grid() != g.grid() {
        return Err(PhaseLabError::GridMismatch(
            "tau_wigner requires both signals on the same grid".into(),
        ));
    }
    let t = tau.value();
    let sgrid = f.grid();
    let n = sgrid.len();
    let dt = sgrid.dt();
    // Samples f(2 tau l dt) and g(-2 (1-tau) l dt) along the centered lag grid.
    let f_scaled = resample_scaled(f, 2.0 * t)?;
    let g_scaled = resample_scaled(g, -2.0 * (1.0 - t))?;
    let terms: Vec<Complex64> = (0..n)
        .map(|j| f_scaled.values()[j] * g_scaled.values()[j].conj())
        .collect();
    Ok(pairwise_sum_complex(&terms) * 2.0 * dt)
}
