//! Centered FFT helpers on top of rustfft.
//!
//! All transforms in this crate use the centered convention: index `m` of a
//! length-`n` buffer corresponds to the physical coordinate `(m - n/2) * step`.
//! The helpers here translate that convention to rustfft's standard layout
//! with half-buffer swaps. Plans are cached per thread.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

thread_local! {
    static PLANS: RefCell<(FftPlanner<f64>, HashMap<(usize, bool), Arc<dyn Fft<f64>>>)> =
        RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn with_plan<R>(n: usize, inverse: bool, f: impl FnOnce(&Arc<dyn Fft<f64>>) -> R) -> R {
    PLANS.with(|cell| {
        let mut guard = cell.borrow_mut();
        let (planner, cache) = &mut *guard;
        let plan = cache
            .entry((n, inverse))
            .or_insert_with(|| {
                if inverse {
                    planner.plan_fft_inverse(n)
                } else {
                    planner.plan_fft_forward(n)
                }
            })
            .clone();
        drop(guard);
        f(&plan)
    })
}

/// Swap the two halves of an even-length buffer (fftshift == ifftshift here).
pub fn swap_halves(buf: &mut [Complex64]) {
    let n = buf.len();
    debug_assert!(n % 2 == 0);
    let (a, b) = buf.split_at_mut(n / 2);
    a.swap_with_slice(b);
}

/// In-place centered forward transform:
/// `out[k] = sum_m buf[m] * exp(-2*pi*i*(k - n/2)*(m - n/2)/n)`.
pub fn centered_forward(buf: &mut [Complex64]) {
    swap_halves(buf);
    with_plan(buf.len(), false, |p| p.process(buf));
    swap_halves(buf);
}

/// In-place centered inverse transform (unnormalized):
/// `out[m] = sum_k buf[k] * exp(+2*pi*i*(k - n/2)*(m - n/2)/n)`.
pub fn centered_inverse(buf: &mut [Complex64]) {
    swap_halves(buf);
    with_plan(buf.len(), true, |p| p.process(buf));
    swap_halves(buf);
}

/// Chirp-z evaluation of a centered spectral sum on a scaled grid.
///
/// Given spectral coefficients `coef[k]`, computes for each output index `j`
/// `out[j] = sum_k coef[k] * exp(2*pi*i * alpha * (k - n/2) * (j - n/2))`
/// using Bluestein's factorization (three FFTs of length 2n), which keeps
/// the evaluation `O(n log n)` for arbitrary real `alpha`.
pub fn centered_chirp_z(coef: &[Complex64], alpha: f64) -> Vec<Complex64> {
    let n = coef.len();
    debug_assert!(n.is_power_of_two());
    let half = (n / 2) as isize;
    let two_n = 2 * n;
    let pi = std::f64::consts::PI;

    // exp(2*pi*i*a*k'*j') = exp(pi*i*a*(k'^2 + j'^2 - (k'-j')^2))
    let chirp = |q: isize| -> Complex64 {
        // Reduce the phase modulo 2 before multiplying by pi to limit
        // argument size; q^2 * alpha can be large.
        let phase = (alpha * (q * q) as f64) % 2.0;
        Complex64::from_polar(1.0, pi * phase)
    };

    let mut u = vec![Complex64::new(0.0, 0.0); two_n];
    for (k, &c) in coef.iter().enumerate() {
        u[k] = c * chirp(k as isize - half);
    }
    // Kernel v[d] = exp(-pi*i*alpha*d^2) laid out circularly for d in (-n, n).
    let mut v = vec![Complex64::new(0.0, 0.0); two_n];
    for d in -(n as isize - 1)..(n as isize) {
        let idx = d.rem_euclid(two_n as isize) as usize;
        v[idx] = chirp(d).conj();
    }

    with_plan(two_n, false, |p| {
        p.process(&mut u);
        p.process(&mut v);
    });
    for (a, b) in u.iter_mut().zip(v.iter()) {
        *a *= b;
    }
    with_plan(two_n, true, |p| p.process(&mut u));
    let scale = 1.0 / two_n as f64;

    (0..n)
        .map(|j| {
            let jj = j as isize - half;
            u[j] * chirp(jj) * scale
        })
        .collect()
}
