//! Acceptance suite: every quantitative gate of the project, one test per
//! criterion, each printing a PASS/FAIL line (run with `--nocapture` to see
//! them). All tolerances are pinned here.

mod common;

use num_complex::Complex64;
use phaselab::concentration::{global_lp_norm, visibility_constant, DomainMask};
use phaselab::grid::Grid1D;
use phaselab::optimize::{maximize, AscentConfig};
use phaselab::phase_space::{cross_wigner, wigner, PhaseGrid};
use phaselab::scenario::{run, ScenarioConfig};
use phaselab::signal::{random_signal, Signal};

const PI: f64 = std::f64::consts::PI;

fn report(criterion: &str, pass: bool, detail: String) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion}: {detail}");
}

/// 1. Pointwise Gaussian closed form on the default grid, 1e-6 sup error.
#[test]
fn criterion_1_gaussian_closed_form() {
    let grid = Grid1D::new(512, 1.0 / 16.0).unwrap();
    let f = Signal::from_fn(grid, |t| Complex64::new((-PI * t * t).exp(), 0.0));
    let w = wigner(&f).unwrap();
    let pg = w.grid();
    let peak = 2.0f64.sqrt();
    let mut max_err = 0.0f64;
    for ix in 0..pg.x.n {
        let x = pg.x.point(ix);
        for ixi in 0..pg.xi.n {
            let xi = pg.xi.point(ixi);
            let expected = peak * (-2.0 * PI * (x * x + xi * xi)).exp();
            max_err = max_err.max((w.value(ix, ixi).re - expected).abs());
        }
    }
    let rel = max_err / peak;
    report(
        "1 (Gaussian closed form)",
        rel <= 1e-6,
        format!("max relative error {rel:.3e} (tolerance 1e-6)"),
    );
}

/// 2. Moyal norm identity and the sup bound on 100 seeded pairs.
#[test]
fn criterion_2_moyal_and_norm_identities() {
    let grid = Grid1D::new(512, 1.0 / 16.0).unwrap();
    let mut worst_l2 = 0.0f64;
    let mut worst_sup = f64::NEG_INFINITY;
    for seed in 0..100u64 {
        let f = random_signal(10_000 + seed, 2.0, grid).unwrap();
        let g = random_signal(20_000 + seed, 2.0, grid).unwrap();
        let w = cross_wigner(&f, &g).unwrap();
        let l2 = global_lp_norm(&w, 2.0).unwrap();
        let product = f.norm() * g.norm();
        worst_l2 = worst_l2.max((l2 - product).abs() / product);
        let sup = global_lp_norm(&w, f64::INFINITY).unwrap();
        worst_sup = worst_sup.max(sup - (2.0 * product + 1e-9));
    }
    report(
        "2 (Moyal/norm identities)",
        worst_l2 <= 1e-8 && worst_sup <= 0.0,
        format!("worst L2 defect {worst_l2:.3e} (tol 1e-8); sup-bound slack {worst_sup:.3e}"),
    );
}

/// 3. Interference limit at p in {1, 2, 3}: final defect within 2%, with the
/// visibility constants verified against closed forms to 1e-10.
#[test]
fn criterion_3_interference_limit() {
    let c1 = visibility_constant(1.0).unwrap();
    let c2 = visibility_constant(2.0).unwrap();
    let constants_ok = (c1 - 2.0 / PI).abs() <= 1e-10 && (c2 - 0.5f64.sqrt()).abs() <= 1e-10;

    let mut detail = format!(
        "C_1 defect {:.2e}, C_2 defect {:.2e}",
        (c1 - 2.0 / PI).abs(),
        (c2 - 0.5f64.sqrt()).abs()
    );
    let mut all_pass = constants_ok;
    for p in [1.0, 2.0, 3.0] {
        let mut cfg = ScenarioConfig::new("interference-limit");
        cfg.p = Some(p);
        let result = run(&cfg).unwrap();
        let final_defect = result.rows.last().unwrap().defect;
        detail.push_str(&format!("; p={p}: final defect {final_defect:.4}"));
        all_pass &= result.pass && final_defect <= 0.02;
    }
    report("3 (interference limit)", all_pass, detail);
}

/// 4. Semicontinuity failure at xi = 16 within 3%, weak-convergence proxy
/// below 1e-3, Born-Jordan contrast below 10% of the Wigner limit.
#[test]
fn criterion_4_semicontinuity_and_bj_contrast() {
    let cfg = ScenarioConfig::new("semicontinuity");
    let result = run(&cfg).unwrap();
    // Rows at the largest modulation: J row, probe row, then the BJ row at
    // param xi + 0.5.
    let j_row = result
        .rows
        .iter()
        .find(|r| r.param == 16.0 && r.predicted > 0.0)
        .unwrap();
    let probe_row = result
        .rows
        .iter()
        .find(|r| r.param == 16.0 && r.predicted == 0.0)
        .unwrap();
    let bj_row = result.rows.iter().find(|r| r.param == 16.5).unwrap();
    let pass = result.pass
        && j_row.defect <= 0.03
        && probe_row.measured <= 1e-3
        && bj_row.measured <= 0.10 * bj_row.predicted;
    report(
        "4 (semicontinuity failure + BJ contrast)",
        pass,
        format!(
            "J defect {:.4} (tol 0.03); probe {:.2e} (tol 1e-3); BJ/Wigner {:.4} (tol 0.10)",
            j_row.defect,
            probe_row.measured,
            bj_row.measured / bj_row.predicted
        ),
    );
}

/// 5. The three L^infinity constants: attained 2, non-attained
/// (3/16)^{-1/2} and pi with 95% approach and the sech kernel check.
#[test]
fn criterion_5_linfty_constants() {
    let linfty = run(&ScenarioConfig::new("linfty")).unwrap();
    let value = linfty.rows[0].measured;
    let wigner_ok = (value - 2.0).abs() <= 1e-6;

    let tau = run(&ScenarioConfig::new("tau-sup")).unwrap();
    let tau_sup = (3.0f64 / 16.0).powf(-0.5);
    let tau_values: Vec<f64> = tau.rows.iter().map(|r| r.measured).collect();
    let tau_ok = tau.pass
        && tau_values.iter().all(|&v| v < tau_sup)
        && *tau_values.last().unwrap() >= 0.95 * tau_sup;

    let bj = run(&ScenarioConfig::new("bj-sup")).unwrap();
    let khat = bj.rows.iter().find(|r| r.param == -1.0).unwrap().measured;
    let bj_values: Vec<f64> = bj
        .rows
        .iter()
        .filter(|r| r.param >= 1.0)
        .map(|r| r.measured)
        .collect();
    let bj_ok = bj.pass
        && bj_values.iter().all(|&v| v < PI)
        && *bj_values.last().unwrap() >= 0.95 * PI
        && khat <= 1e-8;

    report(
        "5 (L-infinity constants)",
        wigner_ok && tau_ok && bj_ok,
        format!(
            "Wigner value {value:.8}; tau family top {:.6}/{tau_sup:.6}; BJ top {:.6}/pi; khat {khat:.2e}",
            tau_values.last().unwrap(),
            bj_values.last().unwrap(),
        ),
    );
}

/// 6. Gradient against central finite differences: 50 seeds x 4 exponents,
/// best-of-step-sweep agreement within 1e-5 relative.
#[test]
fn criterion_6_gradient_correctness() {
    use common::central_difference;
    use phaselab::optimize::{gradient, objective_power};
    use phaselab::signal::inner;

    let grid = Grid1D::new(128, 1.0 / 8.0).unwrap();
    let pg = PhaseGrid::wigner_full(grid);
    let mask = DomainMask::disk(pg, 0.0, 0.0, 1.0).unwrap();
    let mut worst = 0.0f64;
    for seed in 0..50u64 {
        for p in [1.5, 2.0, 3.0, 4.0] {
            let f = random_signal(30_000 + seed, 1.5, grid).unwrap();
            let v = random_signal(40_000 + seed, 1.5, grid).unwrap();
            let grad = gradient(&f, &mask, p).unwrap();
            let analytic = inner(&grad, &v).unwrap().re;
            let objective = |s: &Signal| objective_power(s, &mask, p).unwrap();
            let best = central_difference(&objective, &f, &v, &[1e-3, 1e-4, 1e-5, 1e-6], analytic);
            worst = worst.max(best);
        }
    }
    report(
        "6 (gradient correctness)",
        worst <= 1e-5,
        format!("worst relative finite-difference error {worst:.3e} over 50 seeds x 4 exponents"),
    );
}

/// 7. Ascent sanity: monotone traces, the coarse bound, and the Moyal value
/// 1 on an effectively full domain.
#[test]
fn criterion_7_ascent_sanity() {
    let grid = Grid1D::new(512, 1.0 / 16.0).unwrap();
    let pg = PhaseGrid::wigner_full(grid);

    // Ball covering everything except the far corner cells (the xi axis
    // spans +-4 here, so the farthest cell center sits at distance 16.49).
    let full = DomainMask::disk(pg, 0.0, 0.0, 16.2).unwrap();
    let mut cfg_full = AscentConfig::new(full.clone(), 2.0);
    cfg_full.restarts = 6;
    let report_full = maximize(grid, &cfg_full).unwrap();
    let full_monotone = report_full.trace.windows(2).all(|w| w[1] >= w[0]);
    let moyal_ok = (report_full.best_value - 1.0).abs() <= 1e-3;

    let disk = DomainMask::disk(pg, 0.0, 0.0, 1.0).unwrap();
    let mut cfg_disk = AscentConfig::new(disk.clone(), 2.0);
    cfg_disk.restarts = 4;
    cfg_disk.max_iter = 300;
    let report_disk = maximize(grid, &cfg_disk).unwrap();
    let disk_monotone = report_disk.trace.windows(2).all(|w| w[1] >= w[0]);
    let bound_ok = report_full.best_value <= 2.0 * full.measure().sqrt() + cfg_full.tol
        && report_disk.best_value <= 2.0 * disk.measure().sqrt() + cfg_disk.tol;

    report(
        "7 (ascent sanity)",
        full_monotone && disk_monotone && moyal_ok && bound_ok,
        format!(
            "full-grid value {:.6} (target 1 +- 1e-3); traces monotone: {}; coarse bounds hold: {}",
            report_full.best_value,
            full_monotone && disk_monotone,
            bound_ok
        ),
    );
}

/// 8. Lieb bounds with (2^{p-1}/p)^{1/p} constants on 200 seeded signals.
#[test]
fn criterion_8_lieb_bounds() {
    let result = run(&ScenarioConfig::new("lieb-check")).unwrap();
    let detail: Vec<String> = result
        .rows
        .iter()
        .map(|r| {
            format!(
                "p={}: extremal {:.6} vs {:.6}",
                r.param, r.measured, r.predicted
            )
        })
        .collect();
    report(
        "8 (Lieb bounds)",
        result.pass,
        format!("zero violations across 200 signals; {}", detail.join("; ")),
    );
}

/// 9. Chain-graph invariants on 1000 seeded families at tau != 1/2 and the
/// matching structure at tau = 1/2.
#[test]
fn criterion_9_chain_graph_invariants() {
    let quarter = run(&ScenarioConfig::new("chain-graph")).unwrap();
    let mut cfg_half = ScenarioConfig::new("chain-graph");
    cfg_half.tau = Some(0.5);
    let half = run(&cfg_half).unwrap();
    let violations = quarter.rows[0].measured + half.rows[0].measured;
    report(
        "9 (chain-graph invariants)",
        quarter.pass && half.pass && violations == 0.0,
        format!(
            "violations: {} at tau=1/4, {} at tau=1/2 over 1000 families each",
            quarter.rows[0].measured, half.rows[0].measured
        ),
    );
}

/// 10. Determinism: byte-identical CSV across reruns and thread counts.
#[test]
fn criterion_10_determinism() {
    let mut cfg = ScenarioConfig::new("lieb-check");
    cfg.draws = Some(32);
    cfg.threads = Some(1);
    let first = run(&cfg).unwrap().csv_string();
    let rerun = run(&cfg).unwrap().csv_string();
    cfg.threads = Some(4);
    let threaded = run(&cfg).unwrap().csv_string();

    let mut cfg_i = ScenarioConfig::new("interference-limit");
    cfg_i.r_list = Some(vec![2.0, 4.0]);
    cfg_i.threads = Some(1);
    let i_first = run(&cfg_i).unwrap().csv_string();
    cfg_i.threads = Some(3);
    let i_threaded = run(&cfg_i).unwrap().csv_string();

    let pass = first == rerun && first == threaded && i_first == i_threaded;
    report(
        "10 (determinism)",
        pass,
        format!(
            "lieb-check rerun identical: {}, across threads: {}; interference across threads: {}",
            first == rerun,
            first == threaded,
            i_first == i_threaded
        ),
    );
}
