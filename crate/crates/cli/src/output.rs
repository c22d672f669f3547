//! CSV and manifest files of a run directory.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use nbbl1::cs::SweepRow;
use nbbl1::IterationRecord;

use crate::manifest::RunManifest;

/// 16 significant digits in scientific notation.
pub fn num(v: f64) -> String {
    format!("{v:.15e}")
}

/// Creates `<parent>/<command>-<seed>-<stamp>`, adding `-1`, `-2`, ... when
/// that name is taken.
pub fn create_run_dir(parent: &Path, command: &str, seed: u64, stamp: &str) -> Result<PathBuf> {
    fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    let base = format!("{command}-{seed}-{stamp}");
    for attempt in 0.. {
        let name = if attempt == 0 { base.clone() } else { format!("{base}-{attempt}") };
        let dir = parent.join(name);
        match fs::create_dir(&dir) {
            Ok(()) => return Ok(dir),
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e).with_context(|| format!("creating {}", dir.display())),
        }
    }
    unreachable!()
}

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trace(path: &Path, records: &[IterationRecord], with_rel_err: bool) -> Result<()> {
    let mut header = vec!["k", "F", "norm_d", "alpha", "lambda", "backtracks", "nf", "elapsed"];
    if with_rel_err {
        header.push("rel_err");
    }
    let rows = records.iter().map(|r| {
        let mut row = vec![
            r.k.to_string(),
            num(r.objective),
            num(r.norm_d),
            num(r.alpha),
            num(r.lambda),
            r.backtracks.to_string(),
            r.nf.to_string(),
            num(r.elapsed),
        ];
        if with_rel_err {
            row.push(num(r.rel_err.unwrap_or(f64::NAN)));
        }
        row
    });
    write_csv(path, &header, rows)
}

/// One row in the layout of the test-problem result table.
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub problem: String,
    pub dim: usize,
    pub mu: f64,
    pub iterations: usize,
    pub nf: usize,
    pub time: f64,
    pub fun: f64,
    pub norm_g: f64,
    pub norm_d: f64,
    pub status: String,
}

pub fn write_summary(path: &Path, rows: &[SummaryRow], with_status: bool) -> Result<()> {
    let mut header = vec!["Problem", "Dim", "mu", "Iter", "Nf", "Time", "Fun", "Normg", "Normd"];
    if with_status {
        header.push("status");
    }
    let body = rows.iter().map(|r| {
        let mut row = vec![
            r.problem.clone(),
            r.dim.to_string(),
            num(r.mu),
            r.iterations.to_string(),
            r.nf.to_string(),
            num(r.time),
            num(r.fun),
            num(r.norm_g),
            num(r.norm_d),
        ];
        if with_status {
            row.push(r.status.clone());
        }
        row
    });
    write_csv(path, &header, body)
}

pub fn write_signals(path: &Path, x_bar: &[f64], x_star: &[f64]) -> Result<()> {
    let rows = x_bar
        .iter()
        .zip(x_star)
        .enumerate()
        .map(|(i, (b, s))| vec![i.to_string(), num(*b), num(*s)]);
    write_csv(path, &["index", "x_bar", "x_star"], rows)
}

pub fn write_sweep(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let body = rows.iter().map(|r| {
        vec![
            num(r.h),
            r.iterations.to_string(),
            r.nf.to_string(),
            num(r.elapsed),
            num(r.rel_err),
        ]
    });
    write_csv(path, &["h", "iterations", "nf", "elapsed", "rel_err"], body)
}

pub fn write_manifest(path: &Path, manifest: &RunManifest) -> Result<()> {
    fs::write(path, manifest.to_toml()?).with_context(|| format!("writing {}", path.display()))
}
