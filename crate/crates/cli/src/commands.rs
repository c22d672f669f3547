//! Runs a resolved invocation and writes its run directory.
//!
//! All solving happens before the directory is created, so a run that fails
//! validation leaves nothing behind.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Result;
use nbbl1::cs::{run_h_sweep, run_recovery, RecoveryReport, SweepRow};
use nbbl1::objectives::{cuter_problem, CuterName};
use nbbl1::{run, CompositeProblem, RegularizerSpec, SolveResult, SolverConfig, TerminationReason};

use crate::manifest::{Invocation, RunManifest};
use crate::output::{
    create_run_dir, num, write_manifest, write_signals, write_summary, write_sweep, write_trace, SummaryRow,
};

/// Result of one command, as seen by `main`.
#[derive(Debug)]
pub struct Outcome {
    pub dir: PathBuf,
    pub converged: bool,
    pub message: String,
}

enum Results {
    Solve(SummaryRow, SolveResult),
    Recover(RecoveryReport),
    Sweep(Vec<SweepRow>),
    Bench(Vec<SummaryRow>),
}

fn solve_problem(name: CuterName, n: usize, mu: f64, cfg: &SolverConfig) -> Result<(SummaryRow, SolveResult)> {
    let p = cuter_problem(name, n)?;
    let problem = CompositeProblem::new(p.objective, RegularizerSpec::l1(mu)?)?;
    let started = Instant::now();
    let out = run(&problem, &p.x0, cfg, None)?;
    let row = SummaryRow {
        problem: name.to_string(),
        dim: n,
        mu,
        iterations: out.iterations,
        nf: out.nf,
        time: started.elapsed().as_secs_f64(),
        fun: out.objective,
        norm_g: out.norm_grad,
        norm_d: out.norm_d,
        status: out.reason.to_string(),
    };
    Ok((row, out))
}

fn compute(inv: &Invocation) -> Result<Results> {
    Ok(match inv {
        Invocation::Solve { problem, n, mu, solver } => {
            let (row, out) = solve_problem(problem.parse()?, *n, *mu, &solver.to_config()?)?;
            Results::Solve(row, out)
        }
        Invocation::CsRecover { recovery, solver } => {
            Results::Recover(run_recovery(&recovery.to_params()?, &solver.to_config()?)?)
        }
        Invocation::HSweep { grid, recovery, solver } => {
            let mut grid = grid.clone();
            grid.sort_by(f64::total_cmp);
            Results::Sweep(run_h_sweep(&grid, &recovery.to_params()?, &solver.to_config()?)?)
        }
        Invocation::Bench { mu_values, solver } => {
            let cfg = solver.to_config()?;
            let mut rows = Vec::new();
            for name in CuterName::ALL {
                for &mu in mu_values {
                    let n = name.default_dim();
                    rows.push(match solve_problem(name, n, mu, &cfg) {
                        Ok((row, _)) => row,
                        Err(e) => SummaryRow {
                            problem: name.to_string(),
                            dim: n,
                            mu,
                            iterations: 0,
                            nf: 0,
                            time: 0.0,
                            fun: f64::NAN,
                            norm_g: f64::NAN,
                            norm_d: f64::NAN,
                            status: format!("error: {e}"),
                        },
                    });
                }
            }
            Results::Bench(rows)
        }
    })
}

fn failed(status: &str) -> bool {
    status != TerminationReason::DirectionSmall.to_string() && status != TerminationReason::MaxIterations.to_string()
}

/// Runs `inv`, then writes its outputs under `out_dir`.
pub fn execute(inv: &Invocation, seed: u64, out_dir: &Path) -> Result<Outcome> {
    let now = chrono::Utc::now();
    let results = compute(inv)?;
    let dir = create_run_dir(out_dir, inv.command(), seed, &now.format("%Y%m%dT%H%M%SZ").to_string())?;
    let manifest = RunManifest::new(inv.clone(), seed, now.to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    write_manifest(&dir.join("manifest.txt"), &manifest)?;

    let (converged, message) = match results {
        Results::Solve(row, out) => {
            write_trace(&dir.join("trace.csv"), &out.records, false)?;
            write_summary(&dir.join("summary.csv"), std::slice::from_ref(&row), false)?;
            let msg = format!(
                "{} n={} mu={}: F={} iter={} nf={} |g|={} |d|={} ({})",
                row.problem,
                row.dim,
                row.mu,
                num(row.fun),
                row.iterations,
                row.nf,
                num(row.norm_g),
                num(row.norm_d),
                out.reason
            );
            (out.reason.converged(), msg)
        }
        Results::Recover(report) => {
            write_trace(&dir.join("trace.csv"), &report.trace, true)?;
            write_signals(&dir.join("signals.csv"), &report.x_bar, &report.x_star)?;
            let Invocation::CsRecover { recovery, .. } = inv else { unreachable!() };
            let row = SummaryRow {
                problem: format!("cs-{}", recovery.encoder),
                dim: recovery.n,
                mu: recovery.mu,
                iterations: report.iterations,
                nf: report.nf,
                time: report.elapsed,
                fun: report.objective,
                norm_g: report.trace.last().map_or(f64::NAN, |r| r.norm_grad),
                norm_d: report.trace.last().map_or(f64::NAN, |r| r.norm_d),
                status: report.reason.to_string(),
            };
            write_summary(&dir.join("summary.csv"), &[row], false)?;
            let msg = format!(
                "rel_err={} support_recovered={} iter={} nf={} ({})",
                num(report.rel_err),
                report.support_recovered(),
                report.iterations,
                report.nf,
                report.reason
            );
            (report.reason.converged(), msg)
        }
        Results::Sweep(rows) => {
            write_sweep(&dir.join("sweep.csv"), &rows)?;
            let converged = rows.iter().all(|r| r.reason.converged());
            let best = rows.iter().min_by(|a, b| a.rel_err.total_cmp(&b.rel_err)).expect("nonempty grid");
            let msg = format!("{} step scales; lowest rel_err {} at h={}", rows.len(), num(best.rel_err), best.h);
            (converged, msg)
        }
        Results::Bench(rows) => {
            write_summary(&dir.join("summary.csv"), &rows, true)?;
            let bad = rows.iter().filter(|r| failed(&r.status)).count();
            (bad == 0, format!("{} runs, {bad} ended outside DirectionSmall/MaxIterations", rows.len()))
        }
    };
    Ok(Outcome { dir, converged, message })
}
