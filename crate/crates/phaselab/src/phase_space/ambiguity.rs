//! Ambiguity function by lag products over the integration variable.

use super::{FieldKind, PhaseGrid, PhaseSpaceField};
use crate::error::{PhaseLabError, Result};
use crate::fft;
use crate::signal::Signal;
use num_complex::Complex64;

/// Cross-ambiguity function `A(f, g)(x, xi)`.
///
/// Row `j` carries the separation `x = 2 j' dt` (`j'` centered), holding the
/// product `f(y + j' dt) conj(g(y - j' dt))`; the DFT runs over the `y`
/// variable, so the xi-axis is the signal's dual grid.
pub fn ambiguity(f: &Signal, g: &Signal) -> Result<PhaseSpaceField> {
    if f.grid() != g.grid() {
        return Err(PhaseLabError::GridMismatch(
            "ambiguity requires both signals on the same grid".into(),
        ));
    }
    let sgrid = f.grid();
    let n = sgrid.len();
    let half = n as isize / 2;
    let grid = PhaseGrid::ambiguity_full(sgrid);
    let fv = f.values();
    let gv = g.values();

    let mut values = vec![Complex64::new(0.0, 0.0); grid.cells()];
    let mut row = vec![Complex64::new(0.0, 0.0); n];
    for jslot in 0..n {
        let j = jslot as isize - half;
        for (m, out) in row.iter_mut().enumerate() {
            let a = m as isize + j;
            let b = m as isize - j;
            *out = if a >= 0 && a < n as isize && b >= 0 && b < n as isize {
                fv[a as usize] * gv[b as usize].conj()
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        fft::centered_forward(&mut row);
        let out = &mut values[jslot * n..(jslot + 1) * n];
        let dt = sgrid.dt();
        for (o, r) in out.iter_mut().zip(row.iter()) {
            *o = r * dt;
        }
    }

    PhaseSpaceField::new(grid, FieldKind::Ambiguity, values)
}
