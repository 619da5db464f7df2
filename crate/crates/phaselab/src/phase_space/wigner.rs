//! Cross-Wigner distribution by lag products and a per-row DFT.

use super::{FieldKind, PhaseGrid, PhaseSpaceField};
use crate::error::{PhaseLabError, Result};
use crate::fft;
use crate::signal::Signal;
use num_complex::Complex64;

/// Cross-Wigner distribution `W(f, g)` on the full canonical grid.
///
/// For each grid point `x` the lag product `r[l] = f(x + l dt) conj(g(x - l dt))`
/// (zero where an index leaves the grid) is transformed over the lag index and
/// scaled by `2 dt`, so bin `k` carries frequency `(k - n/2) / (2 n dt)`.
pub fn cross_wigner(f: &Signal, g: &Signal) -> Result<PhaseSpaceField> {
    let grid = PhaseGrid::wigner_full(f.grid());
    cross_wigner_on(f, g, &grid)
}

/// `W(f, f)`, flagged as a real auto-term field.
pub fn wigner(f: &Signal) -> Result<PhaseSpaceField> {
    let field = cross_wigner(f, f)?;
    PhaseSpaceField::new(field.grid(), FieldKind::Wigner, field.values().to_vec())
}

/// Cross-Wigner restricted to the rows of `grid`, which must be a sub-range
/// of the canonical grid. This keeps masked experiments cheap on fine grids.
pub fn cross_wigner_on(f: &Signal, g: &Signal, grid: &PhaseGrid) -> Result<PhaseSpaceField> {
    if f.grid() != g.grid() {
        return Err(PhaseLabError::GridMismatch(
            "cross_wigner requires both signals on the same grid".into(),
        ));
    }
    let sgrid = f.grid();
    let n = sgrid.len();
    let row0 = grid.row_offset(sgrid)?;
    let expected_xi = 0.5 * sgrid.dual_spacing();
    if grid.xi.n != n || (grid.xi.step - expected_xi).abs() > 1e-15 {
        return Err(PhaseLabError::GridMismatch(
            "phase grid xi-axis does not match the lag-doubling convention".into(),
        ));
    }

    let fv = f.values();
    let gv = g.values();
    let half = n / 2;
    let scale = 2.0 * sgrid.dt();
    let mut values = vec![Complex64::new(0.0, 0.0); grid.cells()];
    let mut row = vec![Complex64::new(0.0, 0.0); n];

    for ix in 0..grid.x.n {
        let m = row0 + ix;
        // Lag index l in [-n/2, n/2); buffer slot l + n/2. Both m+l and m-l
        // must stay on the grid, so the extreme slot 0 is always empty.
        let l_lo = -(m.min(n - 1 - m) as isize);
        let l_hi = (m.min(n - 1 - m)) as isize;
        for v in row.iter_mut() {
            *v = Complex64::new(0.0, 0.0);
        }
        for l in l_lo..=l_hi {
            let a = (m as isize + l) as usize;
            let b = (m as isize - l) as usize;
            row[(l + half as isize) as usize] = fv[a] * gv[b].conj();
        }
        fft::centered_forward(&mut row);
        let out = &mut values[ix * n..(ix + 1) * n];
        for (o, r) in out.iter_mut().zip(row.iter()) {
            *o = r * scale;
        }
    }

    let kind = if std::ptr::eq(f, g) || f == g {
        FieldKind::Wigner
    } else {
        FieldKind::CrossWigner
    };
    PhaseSpaceField::new(*grid, kind, values)
}
