//! Shared test oracles, independent of the library's implementation paths:
//! composite Simpson quadrature with Richardson refinement, directional
//! finite differences and a dense Hermitian Jacobi eigensolver.
//!
//! Each test target compiles its own copy and uses a subset.
#![allow(dead_code)]

use num_complex::Complex64;
use phaselab::signal::Signal;

/// Composite-Simpson quadrature refined by interval doubling until two
/// successive levels agree to `tol`.
pub fn quadrature<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let mut intervals = 64usize;
    let mut prev = simpson(f, a, b, intervals);
    for _ in 0..20 {
        intervals *= 2;
        let next = simpson(f, a, b, intervals);
        if (next - prev).abs() <= tol * (1.0 + next.abs()) {
            return next;
        }
        prev = next;
    }
    prev
}

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, intervals: usize) -> f64 {
    let n = intervals * 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Best central finite-difference directional derivative over a step sweep,
/// reported with the step that produced it.
pub fn central_difference<F: Fn(&Signal) -> f64>(
    objective: &F,
    f: &Signal,
    direction: &Signal,
    steps: &[f64],
    analytic: f64,
) -> f64 {
    let mut best = f64::INFINITY;
    for &eps in steps {
        let plus = f
            .add(&direction.scale(Complex64::new(eps, 0.0)))
            .expect("same grid");
        let minus = f
            .add(&direction.scale(Complex64::new(-eps, 0.0)))
            .expect("same grid");
        let fd = (objective(&plus) - objective(&minus)) / (2.0 * eps);
        best = best.min((fd - analytic).abs() / analytic.abs().max(1e-12));
    }
    best
}

/// Dense Hermitian eigensolver by cyclic Jacobi rotations. Returns
/// eigenvalues in descending order along with their eigenvectors (columns).
pub fn hermitian_eigen(matrix: &[Vec<Complex64>]) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = matrix.len();
    let mut a: Vec<Vec<Complex64>> = matrix.to_vec();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q].norm_sqr();
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.norm() < 1e-300 {
                    continue;
                }
                // Unitary 2x2 rotation that zeroes the (p, q) entry:
                // diagonalize [[app, apq], [conj(apq), aqq]].
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let phase = apq / apq.norm();
                let theta = 0.5 * (2.0 * apq.norm()).atan2(aqq - app);
                let c = theta.cos();
                let s = theta.sin();
                let s1 = phase * s;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = akp * c - akq * s1.conj();
                    a[k][q] = akp * s1 + akq * c;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = apk * c - aqk * s1;
                    a[q][k] = apk * s1.conj() + aqk * c;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = vkp * c - vkq * s1.conj();
                    v[k][q] = vkp * s1 + vkq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].re.partial_cmp(&a[i][i].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i].re).collect();
    let eigenvectors: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row][col]).collect())
        .collect();
    (eigenvalues, eigenvectors)
}

#[allow(dead_code)]
pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: {actual} vs {expected} (tolerance {tol})"
    );
}
