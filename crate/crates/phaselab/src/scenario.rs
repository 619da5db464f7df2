//! Scenario-driven experiments: declarative configs, validation, seeded
//! deterministic runs and CSV/JSON emission.

use crate::concentration::{
    global_lp_norm, interference_block, lp_norm, surviving_pair_graph, visibility_constant,
    CenterTrajectory, DomainMask,
};
use crate::error::{PhaseLabError, Result};
use crate::grid::{Grid1D, PhasePoint};
use crate::optimize::{
    bj_linfty_family, linfty_optimizer, localization_baseline, maximize, tau_linfty_family,
    AscentConfig,
};
use crate::phase_space::{
    ambiguity, born_jordan_on, cross_wigner, cross_wigner_on, tau_wigner, PhaseGrid, QuadSpec,
    TauParam,
};
use crate::signal::{gaussian, inner, random_signal, tf_shift, Signal};
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Absolute floor of the defect denominator.
pub const EPS_ABS: f64 = 1e-12;

/// Environment variable naming the default output directory.
pub const OUTPUT_ENV: &str = "PHASELAB_OUT";

// Frozen experiment tolerances.
const INTERFERENCE_FINAL_DEFECT_TOL: f64 = 0.02;
const SEMICONTINUITY_J_TOL: f64 = 0.03;
const SEMICONTINUITY_PROBE_TOL: f64 = 1e-3;
const BJ_CONTRAST_FRACTION: f64 = 0.10;
const LINFTY_TOL: f64 = 1e-6;
const FAMILY_FRACTION: f64 = 0.95;
const KHAT_TOL: f64 = 1e-8;
const LIEB_SLACK: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub dt: f64,
}

impl GridSpec {
    fn build(&self) -> Result<Grid1D> {
        Grid1D::new(self.n, self.dt)
    }
}

/// Declarative mask description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum MaskSpec {
    Disk {
        #[serde(default)]
        center_x: f64,
        #[serde(default)]
        center_xi: f64,
        radius: f64,
    },
    Rectangle {
        x0: f64,
        x1: f64,
        xi0: f64,
        xi1: f64,
    },
    Annulus {
        #[serde(default)]
        center_x: f64,
        #[serde(default)]
        center_xi: f64,
        inner: f64,
        outer: f64,
    },
    Union {
        parts: Vec<MaskSpec>,
    },
    Bitmap {
        path: String,
    },
}

impl MaskSpec {
    fn build(&self, grid: PhaseGrid) -> Result<DomainMask> {
        match self {
            MaskSpec::Disk {
                center_x,
                center_xi,
                radius,
            } => DomainMask::disk(grid, *center_x, *center_xi, *radius),
            MaskSpec::Rectangle { x0, x1, xi0, xi1 } => {
                DomainMask::rectangle(grid, *x0, *x1, *xi0, *xi1)
            }
            MaskSpec::Annulus {
                center_x,
                center_xi,
                inner,
                outer,
            } => DomainMask::annulus(grid, *center_x, *center_xi, *inner, *outer),
            MaskSpec::Union { parts } => {
                let mut iter = parts.iter();
                let first = iter.next().ok_or_else(|| {
                    PhaseLabError::InvalidParameter("union mask needs at least one part".into())
                })?;
                let mut mask = first.build(grid)?;
                for part in iter {
                    mask = mask.union(&part.build(grid)?)?;
                }
                Ok(mask)
            }
            MaskSpec::Bitmap { path } => {
                let mask = crate::io::read_mask_pbm(Path::new(path))?;
                if mask.grid() != grid {
                    return Err(PhaseLabError::GridMismatch(
                        "bitmap mask grid does not match the scenario grid".into(),
                    ));
                }
                Ok(mask)
            }
        }
    }

    /// Extent of the mask region along x (used to restrict field rows).
    fn x_extent(&self) -> Option<(f64, f64)> {
        match self {
            MaskSpec::Disk {
                center_x, radius, ..
            } => Some((center_x - radius, center_x + radius)),
            MaskSpec::Rectangle { x0, x1, .. } => Some((*x0, *x1)),
            MaskSpec::Annulus {
                center_x, outer, ..
            } => Some((center_x - outer, center_x + outer)),
            MaskSpec::Union { parts } => {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for p in parts {
                    let (a, b) = p.x_extent()?;
                    lo = lo.min(a);
                    hi = hi.max(b);
                }
                Some((lo, hi))
            }
            MaskSpec::Bitmap { .. } => None,
        }
    }
}

fn default_scenario_field() -> String {
    String::new()
}

/// Declarative description of one experiment. Unset fields fall back to
/// scenario-specific defaults (see [`ScenarioConfig::resolve`]).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_scenario_field")]
    pub scenario: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mask: Option<MaskSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_list: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_list: Option<Vec<f64>>,
    /// Family size: widths 2^0 .. 2^{m-1} for the sup families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Number of seeded draws (lieb-check signals, chain-graph families).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub draws: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_tol: Option<f64>,
    /// Grid of the Born-Jordan contrast leg of the semicontinuity run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bj_grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    InterferenceLimit,
    Semicontinuity,
    Maximize,
    Linfty,
    TauSup,
    BjSup,
    LiebCheck,
    CovarianceCheck,
    ChainGraph,
}

pub const SCENARIOS: &[(&str, &str)] = &[
    (
        "interference-limit",
        "L^p norms of antipodal interference blocks against the visibility-constant limit",
    ),
    (
        "semicontinuity",
        "concentration along a weakly vanishing modulated sequence, with the Born-Jordan contrast",
    ),
    (
        "maximize",
        "multistart projected gradient ascent for the Wigner concentration supremum",
    ),
    (
        "linfty",
        "the attained Wigner L^infinity supremum (value 2)",
    ),
    (
        "tau-sup",
        "non-attained tau-Wigner L^infinity supremum approached by a dilation-invariant family",
    ),
    (
        "bj-sup",
        "non-attained Born-Jordan L^infinity supremum pi, with the sech kernel check",
    ),
    (
        "lieb-check",
        "global L^p norm bounds of the Wigner distribution over seeded random signals",
    ),
    (
        "covariance-check",
        "shift covariance, Moyal and polarization identities at tight tolerances",
    ),
    (
        "chain-graph",
        "degree and acyclicity invariants of surviving-pair graphs on synthetic trajectories",
    ),
];

impl Scenario {
    pub fn parse(name: &str) -> Option<Scenario> {
        Some(match name {
            "interference-limit" => Scenario::InterferenceLimit,
            "semicontinuity" => Scenario::Semicontinuity,
            "maximize" => Scenario::Maximize,
            "linfty" => Scenario::Linfty,
            "tau-sup" => Scenario::TauSup,
            "bj-sup" => Scenario::BjSup,
            "lieb-check" => Scenario::LiebCheck,
            "covariance-check" => Scenario::CovarianceCheck,
            "chain-graph" => Scenario::ChainGraph,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::InterferenceLimit => "interference-limit",
            Scenario::Semicontinuity => "semicontinuity",
            Scenario::Maximize => "maximize",
            Scenario::Linfty => "linfty",
            Scenario::TauSup => "tau-sup",
            Scenario::BjSup => "bj-sup",
            Scenario::LiebCheck => "lieb-check",
            Scenario::CovarianceCheck => "covariance-check",
            Scenario::ChainGraph => "chain-graph",
        }
    }
}

/// Fully resolved parameters of one run.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub scenario: String,
    pub grid: GridSpec,
    pub mask: MaskSpec,
    pub p: f64,
    pub tau: f64,
    pub r_list: Vec<f64>,
    pub xi_list: Vec<f64>,
    pub m: usize,
    pub draws: usize,
    pub band: f64,
    pub quad_nodes: usize,
    pub quad_tol: f64,
    pub bj_grid: GridSpec,
    pub restarts: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
    pub threads: usize,
}

impl ScenarioConfig {
    pub fn new(scenario: &str) -> Self {
        ScenarioConfig {
            scenario: scenario.to_string(),
            ..Default::default()
        }
    }

    /// Apply scenario defaults to the unset fields.
    pub fn resolve(&self) -> Result<(Scenario, ResolvedConfig)> {
        let scenario = Scenario::parse(&self.scenario).ok_or_else(|| {
            PhaseLabError::InvalidParameter(format!("unknown scenario {:?}", self.scenario))
        })?;
        // Shared defaults: n = 512, dt = 1/16, unit disk, p = 2, seed = 1.
        // The interference and modulation sweeps need finer grids to resolve
        // their fringes and carriers, and a sampling rate incommensurate
        // with the dyadic carrier frequencies: at 1/dt = 32 * 17 no low
        // harmonic of |cos|^p aliases onto DC for any separation in the
        // default sweeps.
        let grid = self.grid.unwrap_or(match scenario {
            Scenario::InterferenceLimit | Scenario::Semicontinuity => GridSpec {
                n: 4096,
                dt: 1.0 / 544.0,
            },
            _ => GridSpec {
                n: 512,
                dt: 1.0 / 16.0,
            },
        });
        let resolved = ResolvedConfig {
            scenario: self.scenario.clone(),
            grid,
            mask: self.mask.clone().unwrap_or(MaskSpec::Disk {
                center_x: 0.0,
                center_xi: 0.0,
                radius: 1.0,
            }),
            p: self.p.unwrap_or(2.0),
            tau: self.tau.unwrap_or(0.25),
            r_list: self
                .r_list
                .clone()
                .unwrap_or_else(|| vec![2.0, 4.0, 8.0, 16.0, 32.0]),
            xi_list: self
                .xi_list
                .clone()
                .unwrap_or_else(|| vec![2.0, 4.0, 8.0, 16.0]),
            m: self.m.unwrap_or(6),
            draws: self.draws.unwrap_or(match scenario {
                Scenario::ChainGraph => 1000,
                _ => 200,
            }),
            band: self.band.unwrap_or(2.0),
            quad_nodes: self.quad_nodes.unwrap_or(match scenario {
                Scenario::Semicontinuity => 512,
                _ => 32,
            }),
            quad_tol: self.quad_tol.unwrap_or(1e-6),
            bj_grid: self.bj_grid.unwrap_or(GridSpec {
                n: 1024,
                dt: 1.0 / 64.0,
            }),
            restarts: self.restarts.unwrap_or(12),
            max_iter: self.max_iter.unwrap_or(2000),
            tol: self.tol.unwrap_or(1e-8),
            seed: self.seed.unwrap_or(1),
            threads: self.threads.unwrap_or(1).max(1),
        };
        Ok((scenario, resolved))
    }

    /// List every schema violation; never runs computation.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        let (scenario, cfg) = match self.resolve() {
            Ok(pair) => pair,
            Err(e) => return vec![e.to_string()],
        };
        if cfg.grid.n < 2 || !cfg.grid.n.is_power_of_two() {
            violations.push(format!(
                "grid.n must be a power of two >= 2, got {}",
                cfg.grid.n
            ));
        }
        if !(cfg.grid.dt > 0.0) {
            violations.push(format!("grid.dt must be positive, got {}", cfg.grid.dt));
        }
        if !(cfg.p >= 1.0) || !cfg.p.is_finite() {
            violations.push(format!("p must be >= 1, got {}", cfg.p));
        }
        if !(cfg.tol > 0.0) {
            violations.push("tol must be positive".into());
        }
        if cfg.restarts == 0 {
            violations.push("restarts must be >= 1".into());
        }
        if cfg.quad_nodes < 8 {
            violations.push(format!("quad_nodes must be >= 8, got {}", cfg.quad_nodes));
        }
        if let Some(ref mask) = self.mask {
            if let Err(e) = validate_mask_spec(mask) {
                violations.push(e);
            }
        }
        let nyquist = 0.5 / cfg.grid.dt;
        match scenario {
            Scenario::InterferenceLimit => {
                if cfg.r_list.is_empty() {
                    violations.push("r_list must be nonempty".into());
                }
                if let Some(max_r) = cfg
                    .r_list
                    .iter()
                    .cloned()
                    .fold(None::<f64>, |acc, r| Some(acc.map_or(r, |a| a.max(r))))
                {
                    if max_r + 6.0 > nyquist {
                        violations.push(format!(
                            "largest separation {max_r} needs nyquist > {} but grid gives {nyquist}",
                            max_r + 6.0
                        ));
                    }
                    // Keep at least 8 samples per carrier fringe.
                    if 1.0 / cfg.grid.dt < 16.0 * max_r {
                        violations.push(format!(
                            "fringes of separation {max_r} need dt <= {} for adequate sampling",
                            1.0 / (16.0 * max_r)
                        ));
                    }
                }
            }
            Scenario::Semicontinuity => {
                if cfg.xi_list.is_empty() {
                    violations.push("xi_list must be nonempty".into());
                }
                let max_xi = cfg.xi_list.iter().cloned().fold(0.0f64, f64::max);
                if max_xi + 6.0 > nyquist {
                    violations.push(format!(
                        "largest modulation {max_xi} needs nyquist > {} but grid gives {nyquist}",
                        max_xi + 6.0
                    ));
                }
                let bj_nyquist = 0.5 / cfg.bj_grid.dt;
                if max_xi + 6.0 > bj_nyquist {
                    violations.push(format!(
                        "bj_grid nyquist {bj_nyquist} too small for modulation {max_xi}"
                    ));
                }
            }
            Scenario::TauSup => {
                if !(cfg.tau > 0.0 && cfg.tau < 1.0) {
                    violations.push(format!("tau must lie in (0,1), got {}", cfg.tau));
                }
                if (cfg.tau - 0.5).abs() < 1e-12 {
                    violations.push(
                        "tau = 1/2 is the attained Wigner regime; tau-sup requires tau != 1/2"
                            .into(),
                    );
                }
                if cfg.m == 0 {
                    violations.push("m must be >= 1".into());
                }
            }
            Scenario::BjSup => {
                if cfg.m == 0 {
                    violations.push("m must be >= 1".into());
                }
            }
            Scenario::LiebCheck => {
                if cfg.draws == 0 {
                    violations.push("draws must be >= 1".into());
                }
                if !(cfg.band > 0.0) || cfg.band >= nyquist {
                    violations.push(format!(
                        "band must lie in (0, nyquist = {nyquist}), got {}",
                        cfg.band
                    ));
                }
            }
            Scenario::ChainGraph => {
                if cfg.draws == 0 {
                    violations.push("draws must be >= 1".into());
                }
                if !(cfg.tau > 0.0 && cfg.tau < 1.0) {
                    violations.push(format!("tau must lie in (0,1), got {}", cfg.tau));
                }
            }
            _ => {}
        }
        violations
    }
}

fn validate_mask_spec(mask: &MaskSpec) -> std::result::Result<(), String> {
    match mask {
        MaskSpec::Disk { radius, .. } => {
            if !(*radius > 0.0) {
                return Err(format!("disk radius must be positive, got {radius}"));
            }
        }
        MaskSpec::Rectangle { x0, x1, xi0, xi1 } => {
            if x0 >= x1 || xi0 >= xi1 {
                return Err("rectangle bounds must satisfy x0 < x1 and xi0 < xi1".into());
            }
        }
        MaskSpec::Annulus { inner, outer, .. } => {
            if !(*inner >= 0.0 && inner < outer) {
                return Err("annulus requires 0 <= inner < outer".into());
            }
        }
        MaskSpec::Union { parts } => {
            if parts.is_empty() {
                return Err("union mask needs at least one part".into());
            }
            for p in parts {
                validate_mask_spec(p)?;
            }
        }
        MaskSpec::Bitmap { path } => {
            if !Path::new(path).exists() {
                return Err(format!("bitmap mask file {path} does not exist"));
            }
        }
    }
    Ok(())
}

/// One output row: `param,measured,predicted,defect` with
/// `defect = |measured - predicted| / max(|predicted|, EPS_ABS)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RunRow {
    pub param: f64,
    pub measured: f64,
    pub predicted: f64,
    pub defect: f64,
}

impl RunRow {
    pub fn new(param: f64, measured: f64, predicted: f64) -> RunRow {
        RunRow {
            param,
            measured,
            predicted,
            defect: (measured - predicted).abs() / predicted.abs().max(EPS_ABS),
        }
    }
}

/// Outcome of one scenario run.
#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    pub scenario: String,
    pub config: ResolvedConfig,
    pub rows: Vec<RunRow>,
    pub pass: bool,
    pub failures: Vec<String>,
    pub wall_seconds: f64,
}

impl RunResult {
    pub fn csv_string(&self) -> String {
        let mut out = String::from("param,measured,predicted,defect\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.param, row.measured, row.predicted, row.defect
            ));
        }
        out
    }

    pub fn write_outputs(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir)?;
        let csv_path = dir.join(format!("{}.csv", self.scenario));
        let mut f = std::fs::File::create(&csv_path)?;
        f.write_all(self.csv_string().as_bytes())?;
        let json_path = dir.join(format!("{}.json", self.scenario));
        std::fs::write(&json_path, serde_json::to_string_pretty(self)?)?;
        Ok((csv_path, json_path))
    }
}

/// Order-preserving parallel map over `0..count` with plain threads.
fn parallel_map<T: Send>(
    count: usize,
    threads: usize,
    f: impl Fn(usize) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    if threads <= 1 || count <= 1 {
        return (0..count).map(&f).collect();
    }
    let chunk = count.div_ceil(threads);
    let mut slots: Vec<Option<Result<T>>> = (0..count).map(|_| None).collect();
    std::thread::scope(|scope| {
        for (tid, block) in slots.chunks_mut(chunk).enumerate() {
            let f = &f;
            scope.spawn(move || {
                for (off, slot) in block.iter_mut().enumerate() {
                    *slot = Some(f(tid * chunk + off));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("worker filled every slot"))
        .collect()
}

/// Run a validated config. Deterministic given the seed; rows are sorted by
/// parameter before emission.
pub fn run(config: &ScenarioConfig) -> Result<RunResult> {
    let violations = config.validate();
    if !violations.is_empty() {
        return Err(PhaseLabError::InvalidConfig(
            violations.len(),
            violations.join("; "),
        ));
    }
    let (scenario, cfg) = config.resolve()?;
    let start = std::time::Instant::now();
    let (rows, failures) = match scenario {
        Scenario::InterferenceLimit => run_interference(&cfg)?,
        Scenario::Semicontinuity => run_semicontinuity(&cfg)?,
        Scenario::Maximize => run_maximize(&cfg, config.output.as_deref())?,
        Scenario::Linfty => run_linfty(&cfg)?,
        Scenario::TauSup => run_tau_sup(&cfg)?,
        Scenario::BjSup => run_bj_sup(&cfg)?,
        Scenario::LiebCheck => run_lieb(&cfg)?,
        Scenario::CovarianceCheck => run_covariance(&cfg)?,
        Scenario::ChainGraph => run_chain_graph(&cfg)?,
    };
    let mut rows = rows;
    rows.sort_by(|a, b| {
        a.param
            .partial_cmp(&b.param)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(RunResult {
        scenario: scenario.name().to_string(),
        config: cfg,
        pass: failures.is_empty(),
        failures,
        rows,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Default output directory: `$PHASELAB_OUT` or `./phaselab-out`.
pub fn default_output_dir() -> PathBuf {
    std::env::var_os(OUTPUT_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("phaselab-out"))
}

/// Wigner grid restricted to rows covering `[x_lo, x_hi]` (one cell margin).
fn restricted_rows(sgrid: Grid1D, x_lo: f64, x_hi: f64) -> Result<PhaseGrid> {
    let n = sgrid.len();
    let to_index = |x: f64| ((x - sgrid.point(0)) / sgrid.dt()).floor() as isize;
    let lo = (to_index(x_lo) - 1).clamp(0, n as isize - 1) as usize;
    let hi = (to_index(x_hi) + 2).clamp(1, n as isize) as usize;
    PhaseGrid::wigner_rows(sgrid, lo, hi)
}

/// Mask plus the field grid the scenario computes on: row-restricted when the
/// mask spec exposes its x extent, full otherwise.
fn build_mask(cfg: &ResolvedConfig) -> Result<(DomainMask, PhaseGrid)> {
    let sgrid = cfg.grid.build()?;
    let grid = match cfg.mask.x_extent() {
        Some((lo, hi)) => restricted_rows(sgrid, lo, hi)?,
        None => PhaseGrid::wigner_full(sgrid),
    };
    Ok((cfg.mask.build(grid)?, grid))
}

// ---- interference-limit ----

fn run_interference(cfg: &ResolvedConfig) -> Result<(Vec<RunRow>, Vec<String>)> {
    let sgrid = cfg.grid.build()?;
    let (mask, grid) = build_mask(cfg)?;
    let g = gaussian(sgrid, 1.0);
    let envelope = cross_wigner_on(&g, &g, &grid)?;
    let prediction = 2.0 * visibility_constant(cfg.p)? * lp_norm(&envelope, &mask, cfg.p)?;

    let measured = parallel_map(cfg.r_list.len(), cfg.threads, |i| {
        let r = cfg.r_list[i];
        let block = interference_block(
            &g,
            &g,
            PhasePoint::new(0.0, r),
            PhasePoint::new(0.0, -r),
            &grid,
        )?;
        lp_norm(&block, &mask, cfg.p)
    })?;

    let rows: Vec<RunRow> = cfg
        .r_list
        .iter()
        .zip(&measured)
        .map(|(&r, &m)| RunRow::new(r, m, prediction))
        .collect();

    let mut failures = Vec::new();
    if let Some(last) = rows.last() {
        if last.defect > INTERFERENCE_FINAL_DEFECT_TOL {
            failures.push(format!(
                "final defect {:.4} exceeds {INTERFERENCE_FINAL_DEFECT_TOL}",
                last.defect
            ));
        }
    }
    // Monotone decrease of the defect past r = 8, above a noise floor that
    // ignores jitter once the limit is resolved to rounding.
    let tail: Vec<&RunRow> = rows.iter().filter(|r| r.param >= 8.0).collect();
    for w in tail.windows(2) {
        if w[1].defect > w[0].defect + 1e-4 {
            failures.push(format!(
                "defect not monotone: {:.4} at r={} then {:.4} at r={}",
                w[0].defect, w[0].param, w[1].defect, w[1].param
            ));
        }
    }
    // Coarse upper bound from the sup-norm estimate.
    let coarse = 2.0 * mask.measure().powf(1.0 / cfg.p) * 2.0;
    for row in &rows {
        if row.measured > coarse {
            failures.push(format!(
                "measured {:.4} at r={} exceeds the coarse bound {coarse:.4}",
                row.measured, row.param
            ));
        }
    }
    Ok((rows, failures))
}

// ---- semicontinuity ----

fn antipodal_unit(g: &Signal, xi: f64) -> Result<Signal> {
    let plus = tf_shift(g, PhasePoint::new(0.0, xi));
    let minus = tf_shift(g, PhasePoint::new(0.0, -xi));
    plus.add(&minus)?.normalized()
}

fn run_semicontinuity(cfg: &ResolvedConfig) -> Result<(Vec<RunRow>, Vec<String>)> {
    let sgrid = cfg.grid.build()?;
    let (mask, grid) = build_mask(cfg)?;
    let g = gaussian(sgrid, 1.0);
    let wg = cross_wigner_on(&g, &g, &grid)?;
    let limit = visibility_constant(cfg.p)? * lp_norm(&wg, &mask, cfg.p)?;

    // Fixed probe dictionary of shifted Gaussians for the weak-convergence
    // proxy.
    let probes: Vec<Signal> = (-2..=2)
        .flat_map(|ix| (-2..=2).map(move |ixi| (ix as f64, ixi as f64)))
        .map(|(x, xi)| tf_shift(&g, PhasePoint::new(x, xi)))
        .collect();

    let per_xi = parallel_map(cfg.xi_list.len(), cfg.threads, |i| {
        let xi = cfg.xi_list[i];
        let u = antipodal_unit(&g, xi)?;
        let w = cross_wigner_on(&u, &u, &grid)?;
        let j = lp_norm(&w, &mask, cfg.p)? / u.energy();
        let mut probe_max = 0.0f64;
        for probe in &probes {
            probe_max = probe_max.max(inner(&u, probe)?.norm());
        }
        Ok((j, probe_max))
    })?;

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (&xi, &(j, probe)) in cfg.xi_list.iter().zip(&per_xi) {
        rows.push(RunRow::new(xi, j, limit));
        rows.push(RunRow::new(xi, probe, 0.0));
    }
    let last_xi = *cfg.xi_list.last().expect("validated nonempty");
    let (last_j, last_probe) = per_xi[per_xi.len() - 1];
    if (last_j - limit).abs() / limit > SEMICONTINUITY_J_TOL {
        failures.push(format!(
            "J defect {:.4} at xi={last_xi} exceeds {SEMICONTINUITY_J_TOL}",
            (last_j - limit).abs() / limit
        ));
    }
    if last_probe > SEMICONTINUITY_PROBE_TOL {
        failures.push(format!(
            "weak-convergence proxy {last_probe:.3e} exceeds {SEMICONTINUITY_PROBE_TOL}"
        ));
    }

    // Born-Jordan contrast at the largest modulation, on its own grid.
    let bj_sgrid = cfg.bj_grid.build()?;
    let bj_g = gaussian(bj_sgrid, 1.0);
    let bj_u = antipodal_unit(&bj_g, last_xi)?;
    let (x_lo, x_hi) = cfg.mask.x_extent().unwrap_or((-1.0, 1.0));
    let bj_gridp = restricted_rows(bj_sgrid, x_lo, x_hi)?;
    let bj_mask = cfg.mask.build(bj_gridp)?;
    let quad = QuadSpec::new(cfg.quad_nodes, cfg.quad_tol)?;
    let bj_field = born_jordan_on(&bj_u, &bj_u, quad, &bj_gridp)?;
    let bj_norm = lp_norm(&bj_field, &bj_mask, cfg.p)? / bj_u.energy();
    rows.push(RunRow::new(last_xi + 0.5, bj_norm, limit));
    if bj_norm > BJ_CONTRAST_FRACTION * limit {
        failures.push(format!(
            "Born-Jordan norm {bj_norm:.4} exceeds {BJ_CONTRAST_FRACTION} of the Wigner limit {limit:.4}"
        ));
    }
    Ok((rows, failures))
}

// ---- maximize ----

fn run_maximize(cfg: &ResolvedConfig, output: Option<&Path>) -> Result<(Vec<RunRow>, Vec<String>)> {
    let sgrid = cfg.grid.build()?;
    let (mask, _grid) = build_mask(cfg)?;
    let mut ascent = AscentConfig::new(mask.clone(), cfg.p);
    ascent.restarts = cfg.restarts;
    ascent.max_iter = cfg.max_iter;
    ascent.tol = cfg.tol;
    ascent.seed = cfg.seed;
    let report = maximize(sgrid, &ascent)?;

    let mut failures = Vec::new();
    for w in report.trace.windows(2) {
        if w[1] < w[0] {
            failures.push("trace is not nondecreasing".into());
            break;
        }
    }
    let coarse = 2.0 * mask.measure().powf(1.0 / cfg.p);
    if report.best_value > coarse + cfg.tol {
        failures.push(format!(
            "best value {:.6} exceeds the coarse bound {coarse:.6}",
            report.best_value
        ));
    }

    // Linear localization baseline provides a lower bound through its top
    // eigenfunction.
    let baseline = localization_baseline(&mask)?;
    let baseline_value = crate::concentration::concentration_value(
        &baseline.top_eigenfunction,
        &mask,
        cfg.p,
        crate::concentration::TransformKind::Wigner,
    )?;
    if report.best_value < baseline_value * (1.0 - 1e-3) {
        failures.push(format!(
            "ascent best {:.6} fell below the localization baseline {:.6}",
            report.best_value, baseline_value
        ));
    }

    let mut rows: Vec<RunRow> = report
        .restart_values
        .iter()
        .enumerate()
        .map(|(i, &v)| RunRow::new(i as f64, v, report.best_value))
        .collect();
    rows.push(RunRow::new(-1.0, baseline_value, report.best_value));

    if let Some(dir) = output {
        std::fs::create_dir_all(dir)?;
        let echo = crate::io::AscentEcho {
            p: cfg.p,
            mask_measure: mask.measure(),
            restarts: cfg.restarts,
            max_iter: cfg.max_iter,
            tol: cfg.tol,
            seed: cfg.seed,
        };
        crate::io::write_ascent_report(&dir.join("maximize-report.json"), &report, &echo)?;
    }
    Ok((rows, failures))
}

// ---- linfty ----

fn run_linfty(cfg: &ResolvedConfig) -> Result<(Vec<RunRow>, Vec<String>)> {
    let sgrid = cfg.grid.build()?;
    let (mask, _grid) = build_mask(cfg)?;
    let result = linfty_optimizer(&mask, sgrid)?;
    let row = RunRow::new(0.0, result.value, 2.0);
    let mut failures = Vec::new();
    if (result.value - 2.0).abs() > LINFTY_TOL {
        failures.push(format!(
            "L^infinity value {:.9} deviates from 2 by more than {LINFTY_TOL}",
            result.value
        ));
    }
    Ok((vec![row], failures))
}

// ---- tau-sup ----

fn run_tau_sup(cfg: &ResolvedConfig) -> Result<(Vec<RunRow>, Vec<String>)> {
    let tau = TauParam::new(cfg.tau)?;
    let report = tau_linfty_family(tau, cfg.m)?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut prev = 0.0;
    for (k, &v) in report.values.iter().enumerate() {
        rows.push(RunRow::new(2.0f64.powi(k as i32), v, report.sup_predicted));
        if v >= report.sup_predicted {
            failures.push(format!(
                "family value {v:.6} reached the unattained supremum {:.6}",
                report.sup_predicted
            ));
        }
        if v <= prev {
            failures.push(format!("family values not increasing at member {k}"));
        }
        prev = v;
    }
    if let Some(&last) = report.values.last() {
        if last < FAMILY_FRACTION * report.sup_predicted {
            failures.push(format!(
                "largest member {last:.6} below {FAMILY_FRACTION} of the supremum {:.6}",
                report.sup_predicted
            ));
        }
    }
    Ok((rows, failures))
}

// ---- bj-sup ----

fn run_bj_sup(cfg: &ResolvedConfig) -> Result<(Vec<RunRow>, Vec<String>)> {
    let report = bj_linfty_family(cfg.m)?;
    let pi = std::f64::consts::PI;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut prev = 0.0;
    for (k, &v) in report.values.iter().enumerate() {
        rows.push(RunRow::new(2.0f64.powi(k as i32), v, pi));
        if v >= pi {
            failures.push(format!(
                "family value {v:.6} reached the unattained supremum pi"
            ));
        }
        if v <= prev {
            failures.push(format!("family values not increasing at member {k}"));
        }
        prev = v;
    }
    if let Some(&last) = report.values.last() {
        if last < FAMILY_FRACTION * pi {
            failures.push(format!(
                "largest member {last:.6} below {FAMILY_FRACTION} of pi"
            ));
        }
    }
    rows.push(RunRow::new(-1.0, report.khat_check, 0.0));
    if report.khat_check > KHAT_TOL {
        failures.push(format!(
            "sech kernel transform deviates by {:.3e} (tolerance {KHAT_TOL})",
            report.khat_check
        ));
    }
    Ok((rows, failures))
}

// ---- lieb-check ----

fn lieb_constant(p: f64) -> f64 {
    (2.0f64.powf(p - 1.0) / p).powf(1.0 / p)
}

fn run_lieb(cfg: &ResolvedConfig) -> Result<(Vec<RunRow>, Vec<String>)> {
    let sgrid = cfg.grid.build()?;
    let grid = PhaseGrid::wigner_full(sgrid);
    let p_values = [1.0, 2.0, 4.0, 8.0];

    let norms = parallel_map(cfg.draws, cfg.threads, |i| {
        let f = random_signal(cfg.seed.wrapping_add(i as u64), cfg.band, sgrid)?;
        let w = cross_wigner_on(&f, &f, &grid)?;
        let mut out = [0.0f64; 4];
        for (slot, &p) in out.iter_mut().zip(&p_values) {
            *slot = global_lp_norm(&w, p)?;
        }
        Ok(out)
    })?;

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut violations = 0usize;
    for (idx, &p) in p_values.iter().enumerate() {
        let constant = lieb_constant(p);
        let extremal = if p < 2.0 {
            // Lower bound regime: the worst case is the smallest norm.
            norms.iter().map(|n| n[idx]).fold(f64::INFINITY, f64::min)
        } else {
            norms.iter().map(|n| n[idx]).fold(0.0f64, f64::max)
        };
        rows.push(RunRow::new(p, extremal, constant));
        for n in &norms {
            let v = n[idx];
            let violated = if p < 2.0 {
                v < constant - LIEB_SLACK
            } else {
                v > constant + LIEB_SLACK
            };
            if violated {
                violations += 1;
            }
        }
    }
    if violations > 0 {
        failures.push(format!(
            "{violations} Lieb bound violations across {} signals",
            cfg.draws
        ));
    }
    Ok((rows, failures))
}

// ---- covariance-check ----

/// Seeded random signal damped by a wide Gaussian window, so shifted copies
/// keep essentially no mass near the grid edges.
fn guarded_random(seed: u64, band: f64, grid: Grid1D) -> Result<Signal> {
    let raw = random_signal(seed, band, grid)?;
    let window = gaussian(grid, grid.span() / 8.0);
    let values = raw
        .values()
        .iter()
        .zip(window.values())
        .map(|(a, w)| a * w.re)
        .collect();
    Signal::new(grid, values)?.normalized()
}

fn run_covariance(cfg: &ResolvedConfig) -> Result<(Vec<RunRow>, Vec<String>)> {
    let sgrid = cfg.grid.build()?;
    let dt = sgrid.dt();
    let dnu = sgrid.dual_spacing();
    let dxi = 0.5 * dnu;
    let f = guarded_random(cfg.seed.wrapping_add(11), cfg.band, sgrid)?;
    let g = guarded_random(cfg.seed.wrapping_add(12), cfg.band, sgrid)?;
    let n = sgrid.len();

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut push_check = |idx: f64, defect: f64, tol: f64, name: &str| {
        rows.push(RunRow::new(idx, defect, 0.0));
        if defect > tol {
            failures.push(format!("{name} defect {defect:.3e} exceeds {tol:.0e}"));
        }
    };

    // 1. Wigner covariance in modulus: shifts with a grid-aligned midpoint.
    let a = PhasePoint::new(12.0 * dt, 8.0 * dnu);
    let b = PhasePoint::new(-4.0 * dt, -2.0 * dnu);
    let base = cross_wigner(&f, &g)?;
    let shifted = cross_wigner(&tf_shift(&f, a), &tf_shift(&g, b))?;
    let c_cells_x = 4i64; // (12 - 4) / 2 cells
    let c_cells_xi = 6i64; // midpoint 3 dnu = 6 dxi bins
    let peak = base.max_abs();
    let mut worst = 0.0f64;
    let mut worst_strict = 0.0f64;
    let phase0 = Complex64::from_polar(1.0, std::f64::consts::PI * (a.xi + b.xi) * (a.x - b.x));
    for ix in 0..n {
        for ixi in 0..n {
            let jx = ix as i64 - c_cells_x;
            let jxi = ixi as i64 - c_cells_xi;
            if jx < 0 || jx >= n as i64 || jxi < 0 || jxi >= n as i64 {
                continue;
            }
            let lhs = shifted.value(ix, ixi);
            let rhs = base.value(jx as usize, jxi as usize);
            worst = worst.max((lhs.norm() - rhs.norm()).abs());
            // Strict phase: e^{pi i (xi_a + xi_b)(x_a - x_b)} e^{2 pi i [z, a - b]}.
            let x = base.grid().x.point(ix);
            let xi = base.grid().xi.point(ixi);
            let sympl = x * (a.xi - b.xi) - xi * (a.x - b.x);
            let phase = phase0 * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * sympl);
            worst_strict = worst_strict.max((lhs - phase * rhs).norm());
        }
    }
    push_check(1.0, worst / peak, 1e-8, "Wigner covariance (modulus)");
    push_check(
        2.0,
        worst_strict / peak,
        1e-8,
        "Wigner covariance (strict phase)",
    );

    // 3. tau covariance at tau = 1/4 with a cell-aligned center.
    let tau = TauParam::new(0.25)?;
    let ta = PhasePoint::new(8.0 * dt, 8.0 * dxi);
    let tb = PhasePoint::new(-4.0 * dt, 0.0);
    let tau_base = tau_wigner(&f, &g, tau)?;
    let tau_shifted = tau_wigner(&tf_shift(&f, ta), &tf_shift(&g, tb), tau)?;
    let t_cells_x = 5i64;
    let t_cells_xi = 2i64;
    let tau_peak = tau_base.max_abs();
    let mut tau_worst = 0.0f64;
    for ix in 0..n {
        for ixi in 0..n {
            let jx = ix as i64 - t_cells_x;
            let jxi = ixi as i64 - t_cells_xi;
            if jx < 0 || jx >= n as i64 || jxi < 0 || jxi >= n as i64 {
                continue;
            }
            let lhs = tau_shifted.value(ix, ixi).norm();
            let rhs = tau_base.value(jx as usize, jxi as usize).norm();
            tau_worst = tau_worst.max((lhs - rhs).abs());
        }
    }
    push_check(3.0, tau_worst / tau_peak, 1e-6, "tau covariance (modulus)");

    // 4. Ambiguity modulus invariance under a grid-aligned shift.
    let z = PhasePoint::new(16.0 * dt, 24.0 * dnu);
    let amb0 = ambiguity(&f, &f)?;
    let amb1 = {
        let sf = tf_shift(&f, z);
        ambiguity(&sf, &sf)?
    };
    let amb_peak = amb0.max_abs();
    let mut amb_worst = 0.0f64;
    for (u, v) in amb0.values().iter().zip(amb1.values()) {
        amb_worst = amb_worst.max((u.norm() - v.norm()).abs());
    }
    push_check(4.0, amb_worst / amb_peak, 1e-10, "ambiguity invariance");

    // 5. Moyal identity on a random quadruple (no shifts involved, so the
    // plain periodic signals are fine here).
    let f2 = random_signal(cfg.seed.wrapping_add(13), cfg.band, sgrid)?;
    let g2 = random_signal(cfg.seed.wrapping_add(14), cfg.band, sgrid)?;
    let w11 = cross_wigner(&f, &g)?;
    let w22 = cross_wigner(&f2, &g2)?;
    let lhs = w11.field_inner(&w22)?;
    let rhs = inner(&f, &f2)? * inner(&g, &g2)?.conj();
    let scale = f.norm() * g.norm() * f2.norm() * g2.norm();
    push_check(5.0, (lhs - rhs).norm() / scale, 1e-6, "Moyal identity");

    // 6. Polarization: W(h+) - W(h-) = 4 Re(e^{-i theta} W(f, g)).
    let theta = 0.7f64;
    let rot = Complex64::from_polar(1.0, theta);
    let h_plus = f.add(&g.scale(rot))?;
    let h_minus = f.sub(&g.scale(rot))?;
    let wp = cross_wigner(&h_plus, &h_plus)?;
    let wm = cross_wigner(&h_minus, &h_minus)?;
    let wfg = cross_wigner(&f, &g)?;
    let mut pol_worst = 0.0f64;
    let rot_conj = Complex64::from_polar(1.0, -theta);
    for ((p, m2), c) in wp.values().iter().zip(wm.values()).zip(wfg.values()) {
        let lhs = p - m2;
        let rhs = 4.0 * (rot_conj * c).re;
        pol_worst = pol_worst.max((lhs.re - rhs).abs().max(lhs.im.abs()));
    }
    push_check(
        6.0,
        pol_worst / wp.max_abs(),
        1e-10,
        "polarization identity",
    );

    Ok((rows, failures))
}

// ---- chain-graph ----

fn run_chain_graph(cfg: &ResolvedConfig) -> Result<(Vec<RunRow>, Vec<String>)> {
    let tau = TauParam::new(cfg.tau)?;
    let mut failures = Vec::new();
    let mut violation_count = 0usize;

    for family in 0..cfg.draws {
        let trajectories = synthetic_family(cfg.seed.wrapping_add(family as u64), tau);
        match surviving_pair_graph(&trajectories, tau, 1.0) {
            Ok(graph) => {
                let degree_ok =
                    (0..graph.nodes).all(|j| graph.in_degree(j) <= 1 && graph.out_degree(j) <= 1);
                let structure_ok = if (tau.value() - 0.5).abs() < 1e-12 {
                    graph.is_symmetric()
                } else {
                    graph.is_acyclic()
                };
                if !degree_ok || !structure_ok {
                    violation_count += 1;
                }
            }
            Err(PhaseLabError::PairGraphViolation(_)) => violation_count += 1,
            Err(e) => return Err(e),
        }
    }

    let mut rows = vec![RunRow::new(0.0, violation_count as f64, 0.0)];
    if violation_count > 0 {
        failures.push(format!(
            "{violation_count} of {} families violated the chain invariants",
            cfg.draws
        ));
    }

    // Canonical examples: the antipodal pair matches at tau = 1/2 and loses
    // the edge at the configured tau != 1/2.
    let antipodal: Vec<CenterTrajectory> = vec![
        CenterTrajectory::new(
            (1..=12)
                .map(|k| PhasePoint::new(20.0 * k as f64, 0.0))
                .collect(),
            50.0,
        )?,
        CenterTrajectory::new(
            (1..=12)
                .map(|k| PhasePoint::new(-20.0 * k as f64, 0.0))
                .collect(),
            50.0,
        )?,
    ];
    let half = TauParam::new(0.5)?;
    let matched = surviving_pair_graph(&antipodal, half, 1.0)?;
    rows.push(RunRow::new(1.0, matched.edges.len() as f64, 2.0));
    if matched.edges.len() != 2 || !matched.is_symmetric() {
        failures.push("antipodal pair did not form an undirected edge at tau = 1/2".into());
    }
    if (tau.value() - 0.5).abs() > 1e-12 {
        let unmatched = surviving_pair_graph(&antipodal, tau, 1.0)?;
        rows.push(RunRow::new(2.0, unmatched.edges.len() as f64, 0.0));
        if !unmatched.edges.is_empty() {
            failures.push("antipodal pair kept a surviving edge at tau != 1/2".into());
        }
    }
    Ok((rows, failures))
}

/// Seeded family generator: a mix of escaping singles, ratio-matched pairs
/// and chains built from the covariance-center formula.
///
/// Each group draws its speeds from a magnitude band separated from the
/// other groups by a factor large against the chain inflation ratio, so a
/// covariance center across groups can never stay bounded and the intended
/// structure is exactly the surviving-edge set.
fn synthetic_family(seed: u64, tau: TauParam) -> Vec<CenterTrajectory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = |lo: f64, hi: f64| {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0);
        lo + (hi - lo) * u
    };
    let len = 12usize;
    let t = tau.value();
    let ratio = ((1.0 - t) / t).max(t / (1.0 - t));
    let band_step = 1000.0 * ratio * ratio;
    let mut trajectories: Vec<Vec<PhasePoint>> = Vec::new();

    let groups = 2 + (uniform(0.0, 3.0) as usize);
    for group in 0..groups {
        let band = band_step.powi(group as i32);
        let speed_x = band * uniform(20.0, 80.0) * if uniform(0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
        let speed_xi =
            band * uniform(20.0, 80.0) * if uniform(0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
        let kind = uniform(0.0, 3.0) as usize;
        let head: Vec<PhasePoint> = (1..=len)
            .map(|k| PhasePoint::new(speed_x * k as f64, speed_xi * k as f64))
            .collect();
        match kind {
            // A single escaping profile.
            0 => trajectories.push(head),
            // A surviving pair: solve c_tau(z, w) = c0 for w.
            1 => {
                let c0 = PhasePoint::new(uniform(-0.4, 0.4), uniform(-0.4, 0.4));
                let partner: Vec<PhasePoint> = head
                    .iter()
                    .map(|z| {
                        PhasePoint::new(
                            (c0.x - (1.0 - t) * z.x) / t,
                            (c0.xi - t * z.xi) / (1.0 - t),
                        )
                    })
                    .collect();
                trajectories.push(head);
                trajectories.push(partner);
            }
            // A three-link chain (degenerates to a matched pair at tau = 1/2,
            // where the third member would coincide with the first).
            _ => {
                let next =
                    |z: &PhasePoint| PhasePoint::new(-(1.0 - t) / t * z.x, -t / (1.0 - t) * z.xi);
                let second: Vec<PhasePoint> = head.iter().map(next).collect();
                let third: Vec<PhasePoint> = second.iter().map(next).collect();
                trajectories.push(head);
                trajectories.push(second);
                if (t - 0.5).abs() > 1e-12 {
                    trajectories.push(third);
                }
            }
        }
    }

    trajectories
        .into_iter()
        .map(|points| CenterTrajectory {
            points,
            divergence_threshold: 10.0,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_catches_bad_p_and_tau() {
        let mut cfg = ScenarioConfig::new("maximize");
        cfg.p = Some(0.5);
        let violations = cfg.validate();
        assert!(violations.iter().any(|v| v.contains("p must be >= 1")));

        let mut cfg = ScenarioConfig::new("tau-sup");
        cfg.tau = Some(0.5);
        let violations = cfg.validate();
        assert!(violations.iter().any(|v| v.contains("tau != 1/2")));

        let cfg = ScenarioConfig::new("nonsense");
        assert!(!cfg.validate().is_empty());
    }

    #[test]
    fn well_formed_config_has_no_violations() {
        let cfg = ScenarioConfig::new("linfty");
        assert!(cfg.validate().is_empty());
    }

    #[test]
    fn config_json_round_trip() {
        let json = r#"{
            "scenario": "interference-limit",
            "grid": {"n": 1024, "dt": 0.0078125},
            "mask": {"shape": "disk", "radius": 1.0},
            "p": 2.0,
            "r_list": [2.0, 4.0],
            "seed": 7
        }"#;
        let cfg: ScenarioConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg.scenario, "interference-limit");
        assert_eq!(cfg.r_list.as_deref(), Some(&[2.0, 4.0][..]));
        let unknown = r#"{"scenario": "linfty", "bogus_field": 1}"#;
        assert!(serde_json::from_str::<ScenarioConfig>(unknown).is_err());
    }

    #[test]
    fn chain_graph_scenario_runs_clean() {
        let mut cfg = ScenarioConfig::new("chain-graph");
        cfg.draws = Some(50);
        let result = run(&cfg).unwrap();
        assert!(result.pass, "failures: {:?}", result.failures);
        assert_eq!(result.rows[0].measured, 0.0);
    }

    #[test]
    fn linfty_scenario_passes() {
        let cfg = ScenarioConfig::new("linfty");
        let result = run(&cfg).unwrap();
        assert!(result.pass, "failures: {:?}", result.failures);
        assert!((result.rows[0].measured - 2.0).abs() < 1e-6);
    }

    #[test]
    fn csv_deterministic_across_threads() {
        let mut cfg = ScenarioConfig::new("lieb-check");
        cfg.draws = Some(16);
        cfg.threads = Some(1);
        let a = run(&cfg).unwrap().csv_string();
        cfg.threads = Some(4);
        let b = run(&cfg).unwrap().csv_string();
        assert_eq!(a, b);
    }
}
