//! Adjoint of the discrete Wigner map: the gradient engine of the optimizer.

use super::PhaseSpaceField;
use crate::error::{PhaseLabError, Result};
use crate::fft;
use crate::signal::Signal;
use num_complex::Complex64;

/// For a real symbol `a` on (a row range of) the Wigner grid of `f`, returns
/// the signal `h` such that `Re <h, v>` equals half the directional
/// derivative of `cell_area * sum a * W(f + eps v)` at `eps = 0`, for every
/// direction `v`.
///
/// Reverses the lag-product pipeline: a DFT over the frequency index per row
/// turns the symbol into lag space, after which each lag entry redistributes
/// onto the sample the lag product touched,
/// `h(u) = (1/n) sum_l f(u + 2l) A(u + l, l)`.
pub fn wigner_adjoint(a: &PhaseSpaceField, f: &Signal) -> Result<Signal> {
    let sgrid = f.grid();
    let n = sgrid.len();
    let grid = a.grid();
    let row0 = grid.row_offset(sgrid)?;
    let expected_xi = 0.5 * sgrid.dual_spacing();
    if grid.xi.n != n || (grid.xi.step - expected_xi).abs() > 1e-15 {
        return Err(PhaseLabError::GridMismatch(
            "symbol grid xi-axis does not match the Wigner convention".into(),
        ));
    }

    let half = n as isize / 2;
    let nx = grid.x.n;
    // Lag transform of every symbol row (pure sums, no measure factor).
    let mut lag = vec![Complex64::new(0.0, 0.0); nx * n];
    let mut row = vec![Complex64::new(0.0, 0.0); n];
    for ix in 0..nx {
        for (k, slot) in row.iter_mut().enumerate() {
            *slot = a.value(ix, k);
        }
        fft::centered_forward(&mut row);
        lag[ix * n..(ix + 1) * n].copy_from_slice(&row);
    }

    let fv = f.values();
    let inv_n = 1.0 / n as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (ix, mid_lags) in lag.chunks_exact(n).enumerate() {
        let mid = (row0 + ix) as isize;
        for (slot, coef) in mid_lags.iter().enumerate() {
            let l = slot as isize - half;
            let u = mid - l;
            let far = mid + l;
            if u >= 0 && u < n as isize && far >= 0 && far < n as isize {
                out[u as usize] += fv[far as usize] * coef;
            }
        }
    }
    for v in &mut out {
        *v *= inv_n;
    }
    Signal::new(sgrid, out)
}
