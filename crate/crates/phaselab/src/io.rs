//! File formats: CSV and binary signals, phase-space fields with JSON
//! sidecars, PBM-style domain masks and JSON ascent reports.
//!
//! CSV floats are written with Rust's shortest round-trip formatting and the
//! binary formats are raw little-endian `f64`, so both round-trip bit-exactly.

use crate::concentration::DomainMask;
use crate::error::{PhaseLabError, Result};
use crate::grid::Grid1D;
use crate::optimize::AscentReport;
use crate::phase_space::{Axis, FieldKind, PhaseGrid, PhaseSpaceField};
use crate::signal::Signal;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

// ---- signals ----

/// CSV with header `index,t,re,im`.
pub fn write_signal_csv(path: &Path, signal: &Signal) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "index,t,re,im")?;
    for (i, v) in signal.values().iter().enumerate() {
        writeln!(w, "{},{},{},{}", i, signal.grid().point(i), v.re, v.im)?;
    }
    Ok(())
}

pub fn read_signal_csv(path: &Path) -> Result<Signal> {
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut values = Vec::new();
    let mut dt = None;
    let mut first_t = None;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if lineno == 0 {
            if line.trim() != "index,t,re,im" {
                return Err(PhaseLabError::MalformedFile(format!(
                    "unexpected signal CSV header: {line}"
                )));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let mut field = |name: &str| -> Result<f64> {
            parts
                .next()
                .ok_or_else(|| PhaseLabError::MalformedFile(format!("missing {name} field")))?
                .trim()
                .parse::<f64>()
                .map_err(|e| PhaseLabError::MalformedFile(format!("bad {name}: {e}")))
        };
        let _index = field("index")?;
        let t = field("t")?;
        let re = field("re")?;
        let im = field("im")?;
        if let Some(prev) = first_t {
            if dt.is_none() {
                dt = Some(t - prev);
            }
        } else {
            first_t = Some(t);
        }
        values.push(Complex64::new(re, im));
    }
    let dt = dt.ok_or_else(|| PhaseLabError::MalformedFile("signal CSV too short".into()))?;
    let grid = Grid1D::new(values.len(), dt)?;
    Signal::new(grid, values)
}

/// Binary layout: u64 length, f64 spacing, then `n` (re, im) f64 pairs,
/// all little-endian.
pub fn write_signal_binary(path: &Path, signal: &Signal) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    w.write_all(&(signal.len() as u64).to_le_bytes())?;
    w.write_all(&signal.grid().dt().to_le_bytes())?;
    for v in signal.values() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_signal_binary(path: &Path) -> Result<Signal> {
    let mut r = BufReader::new(std::fs::File::open(path)?);
    let n = read_u64(&mut r)? as usize;
    let dt = read_f64(&mut r)?;
    let mut values = Vec::with_capacity(n);
    for _ in 0..n {
        let re = read_f64(&mut r)?;
        let im = read_f64(&mut r)?;
        values.push(Complex64::new(re, im));
    }
    Signal::new(Grid1D::new(n, dt)?, values)
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_f64(r: &mut impl Read) -> Result<f64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

// ---- phase-space fields ----

/// Sidecar describing a stored field.
#[derive(Debug, Serialize, Deserialize)]
pub struct FieldSidecar {
    pub kind: String,
    pub tau: Option<f64>,
    pub x: Axis,
    pub xi: Axis,
}

fn kind_label(kind: FieldKind) -> (String, Option<f64>) {
    match kind {
        FieldKind::Wigner => ("wigner".into(), None),
        FieldKind::CrossWigner => ("cross-wigner".into(), None),
        FieldKind::TauWigner(t) => ("tau-wigner".into(), Some(t)),
        FieldKind::Ambiguity => ("ambiguity".into(), None),
        FieldKind::BornJordan => ("born-jordan".into(), None),
    }
}

fn kind_from_label(label: &str, tau: Option<f64>) -> Result<FieldKind> {
    Ok(match (label, tau) {
        ("wigner", _) => FieldKind::Wigner,
        ("cross-wigner", _) => FieldKind::CrossWigner,
        ("tau-wigner", Some(t)) => FieldKind::TauWigner(t),
        ("ambiguity", _) => FieldKind::Ambiguity,
        ("born-jordan", _) => FieldKind::BornJordan,
        _ => {
            return Err(PhaseLabError::MalformedFile(format!(
                "unknown field kind {label}"
            )))
        }
    })
}

/// CSV `ix,ixi,x,xi,re,im` plus a `.json` sidecar next to it.
pub fn write_field_csv(path: &Path, field: &PhaseSpaceField) -> Result<()> {
    let grid = field.grid();
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "ix,ixi,x,xi,re,im")?;
    for ix in 0..grid.x.n {
        for ixi in 0..grid.xi.n {
            let v = field.value(ix, ixi);
            writeln!(
                w,
                "{},{},{},{},{},{}",
                ix,
                ixi,
                grid.x.point(ix),
                grid.xi.point(ixi),
                v.re,
                v.im
            )?;
        }
    }
    write_field_sidecar(path, field)
}

fn write_field_sidecar(path: &Path, field: &PhaseSpaceField) -> Result<()> {
    let (kind, tau) = kind_label(field.kind());
    let sidecar = FieldSidecar {
        kind,
        tau,
        x: field.grid().x,
        xi: field.grid().xi,
    };
    let json = serde_json::to_string_pretty(&sidecar)?;
    std::fs::write(path.with_extension("json"), json)?;
    Ok(())
}

/// Binary layout: u64 nx, u64 nxi, then row-major (re, im) f64 pairs; the
/// grid and kind live in the JSON sidecar.
pub fn write_field_binary(path: &Path, field: &PhaseSpaceField) -> Result<()> {
    let grid = field.grid();
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    w.write_all(&(grid.x.n as u64).to_le_bytes())?;
    w.write_all(&(grid.xi.n as u64).to_le_bytes())?;
    for v in field.values() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    write_field_sidecar(path, field)
}

pub fn read_field_binary(path: &Path) -> Result<PhaseSpaceField> {
    let sidecar: FieldSidecar =
        serde_json::from_str(&std::fs::read_to_string(path.with_extension("json"))?)?;
    let mut r = BufReader::new(std::fs::File::open(path)?);
    let nx = read_u64(&mut r)? as usize;
    let nxi = read_u64(&mut r)? as usize;
    if nx != sidecar.x.n || nxi != sidecar.xi.n {
        return Err(PhaseLabError::MalformedFile(
            "field dimensions disagree with sidecar".into(),
        ));
    }
    let mut values = Vec::with_capacity(nx * nxi);
    for _ in 0..nx * nxi {
        let re = read_f64(&mut r)?;
        let im = read_f64(&mut r)?;
        values.push(Complex64::new(re, im));
    }
    let grid = PhaseGrid {
        x: sidecar.x,
        xi: sidecar.xi,
    };
    PhaseSpaceField::new(grid, kind_from_label(&sidecar.kind, sidecar.tau)?, values)
}

// ---- domain masks ----

/// Sidecar for a stored mask.
#[derive(Debug, Serialize, Deserialize)]
pub struct MaskSidecar {
    pub x: Axis,
    pub xi: Axis,
    pub measure: f64,
}

/// PBM (P1) bitmap: one row per x index, plus a `.json` sidecar with the
/// grid spec and measure.
pub fn write_mask_pbm(path: &Path, mask: &DomainMask) -> Result<()> {
    let grid = mask.grid();
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "P1")?;
    writeln!(w, "{} {}", grid.xi.n, grid.x.n)?;
    for ix in 0..grid.x.n {
        let row: Vec<&str> = (0..grid.xi.n)
            .map(|ixi| {
                if mask.contains_cell(ix, ixi) {
                    "1"
                } else {
                    "0"
                }
            })
            .collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    let sidecar = MaskSidecar {
        x: grid.x,
        xi: grid.xi,
        measure: mask.measure(),
    };
    std::fs::write(
        path.with_extension("json"),
        serde_json::to_string_pretty(&sidecar)?,
    )?;
    Ok(())
}

pub fn read_mask_pbm(path: &Path) -> Result<DomainMask> {
    let sidecar: MaskSidecar =
        serde_json::from_str(&std::fs::read_to_string(path.with_extension("json"))?)?;
    let content = std::fs::read_to_string(path)?;
    let mut tokens = content.split_whitespace();
    if tokens.next() != Some("P1") {
        return Err(PhaseLabError::MalformedFile("not a P1 bitmap".into()));
    }
    let width: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| PhaseLabError::MalformedFile("bad bitmap width".into()))?;
    let height: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| PhaseLabError::MalformedFile("bad bitmap height".into()))?;
    if width != sidecar.xi.n || height != sidecar.x.n {
        return Err(PhaseLabError::MalformedFile(
            "bitmap dimensions disagree with sidecar".into(),
        ));
    }
    let mut cells = Vec::with_capacity(width * height);
    for token in tokens {
        match token {
            "1" => cells.push(true),
            "0" => cells.push(false),
            other => {
                return Err(PhaseLabError::MalformedFile(format!(
                    "unexpected bitmap token {other}"
                )))
            }
        }
    }
    if cells.len() != width * height {
        return Err(PhaseLabError::MalformedFile(
            "bitmap cell count mismatch".into(),
        ));
    }
    let grid = PhaseGrid {
        x: sidecar.x,
        xi: sidecar.xi,
    };
    DomainMask::from_cells(grid, cells)
}

// ---- ascent reports ----

/// Scalar echo of the ascent configuration stored with a report.
#[derive(Debug, Clone, Serialize)]
pub struct AscentEcho {
    pub p: f64,
    pub mask_measure: f64,
    pub restarts: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
struct AscentReportJson<'a> {
    config: &'a AscentEcho,
    best_value: f64,
    converged: bool,
    trace: &'a [f64],
    restart_values: &'a [f64],
}

/// JSON report (config echo, trace, best value) next to the best signal in
/// the binary signal format.
pub fn write_ascent_report(path: &Path, report: &AscentReport, echo: &AscentEcho) -> Result<()> {
    let json = serde_json::to_string_pretty(&AscentReportJson {
        config: echo,
        best_value: report.best_value,
        converged: report.converged,
        trace: &report.trace,
        restart_values: &report.restart_values,
    })?;
    std::fs::write(path, json)?;
    write_signal_binary(&path.with_extension("signal.bin"), &report.best_signal)
}
