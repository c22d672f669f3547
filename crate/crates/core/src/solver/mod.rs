//! The nonmonotone Barzilai-Borwein iteration for composite objectives.
//!
//! Each iteration builds a direction from the shrinkage of a scaled gradient
//! step, backtracks from the trial step `h` until the objective drops below
//! the maximum of a short window of recent values, and refreshes the
//! curvature scalar from the new secant pair.

mod bb;
mod direction;
mod line_search;
mod window;

use std::time::Instant;

pub use bb::bb_lambda;
pub use direction::{compute_direction, DirectionResult};
pub use line_search::{line_search, LineSearchOutcome, LineSearchResult};
pub use window::{nonmonotone_reference, ObjectiveWindow};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{dist2, norm2};
use crate::model::{CompositeProblem, IterationRecord, SolverConfig, TerminationReason};

/// Outcome of a solve.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub x: Vec<f64>,
    pub reason: TerminationReason,
    /// One row per iterate; the last row describes the returned point and
    /// has `alpha = 0` unless the line search failed there.
    pub records: Vec<IterationRecord>,
    /// Accepted steps.
    pub iterations: usize,
    pub nf: usize,
    /// Smooth part at the returned point.
    pub f: f64,
    /// Composite objective at the returned point.
    pub objective: f64,
    /// `‖∇f‖₂` at the returned point.
    pub norm_grad: f64,
    /// Norm of the last direction stepped along (the one the stopping test
    /// saw).
    pub norm_d: f64,
    pub elapsed: f64,
    /// Iterations whose model decrease broke `Δ ≤ −(λ/2)‖d‖²`.
    pub descent_violations: usize,
}

/// Driver for one solve. Holds no state between runs.
#[derive(Debug, Clone)]
pub struct Solver<'a> {
    problem: &'a CompositeProblem,
    cfg: SolverConfig,
    ground_truth: Option<&'a [f64]>,
}

impl<'a> Solver<'a> {
    pub fn new(problem: &'a CompositeProblem, cfg: SolverConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            problem,
            cfg,
            ground_truth: None,
        })
    }

    /// Records `‖x_k − x̄‖/‖x̄‖` on every trace row.
    pub fn with_ground_truth(mut self, x_bar: &'a [f64]) -> Result<Self> {
        check_dim("ground truth", self.problem.dim(), x_bar.len())?;
        if norm2(x_bar) == 0.0 {
            return Err(Error::InvalidArgument(
                "relative error is undefined for a zero ground truth".into(),
            ));
        }
        self.ground_truth = Some(x_bar);
        Ok(self)
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn run(&self, x0: &[f64], mut sink: Option<&mut dyn FnMut(&IterationRecord)>) -> Result<SolveResult> {
        let cfg = &self.cfg;
        let problem = self.problem;
        let start = Instant::now();
        let truth_norm = self.ground_truth.map(norm2);

        let mut x = x0.to_vec();
        let mut grad = vec![0.0; problem.dim()];
        let (mut f, mut objective) = problem.evaluate_into(&x, &mut grad)?;
        let mut nf = 1;
        let mut lambda = cfg.clamp_lambda(cfg.lambda0);
        let mut window = ObjectiveWindow::new(cfg.m_tilde, objective);
        let mut last_rel_change: Option<f64> = None;
        let mut last_norm_d: Option<f64> = None;
        let mut records = Vec::new();
        let mut descent_violations = 0;
        let mut k = 0;

        let reason = loop {
            let dir = compute_direction(&x, &grad, lambda, &problem.reg, cfg.h)?;
            let norm_d = dir.norm();
            if norm_d > 0.0 && !dir.satisfies_descent(lambda) {
                descent_violations += 1;
            }
            debug_assert!(
                norm_d == 0.0 || dir.satisfies_descent(lambda),
                "descent certificate violated at k={k}: delta={} lambda={lambda} |d|={norm_d}",
                dir.delta
            );

            let mut record = IterationRecord {
                k,
                objective,
                norm_d,
                alpha: 0.0,
                lambda,
                backtracks: 0,
                nf,
                elapsed: 0.0,
                rel_err: self
                    .ground_truth
                    .zip(truth_norm)
                    .map(|(t, tn)| dist2(&x, t) / tn),
                model_decrease: dir.delta,
                reference: window.reference(),
                norm_grad: norm2(&grad),
            };

            // The direction test applies to the direction the last step was
            // taken along, so the final small step is still carried out.
            let stop = if last_norm_d.is_some_and(|nd| nd <= cfg.tol_d) {
                Some(TerminationReason::DirectionSmall)
            } else if last_rel_change.is_some_and(|r| r < cfg.tol_x) {
                Some(TerminationReason::RelativeChangeSmall)
            } else if k >= cfg.max_iter {
                Some(TerminationReason::MaxIterations)
            } else {
                None
            };
            if let Some(reason) = stop {
                record.elapsed = start.elapsed().as_secs_f64();
                emit(&mut records, &mut sink, record);
                break reason;
            }

            let step = match line_search(problem, &x, &window, &dir.d, dir.delta, cfg)? {
                LineSearchOutcome::Accepted(step) => step,
                LineSearchOutcome::Failed { evaluations } => {
                    nf += evaluations;
                    record.nf = nf;
                    record.backtracks = evaluations;
                    record.elapsed = start.elapsed().as_secs_f64();
                    emit(&mut records, &mut sink, record);
                    last_norm_d = Some(norm_d);
                    break TerminationReason::LineSearchFailure;
                }
            };
            nf += step.evaluations;
            record.alpha = step.alpha;
            record.backtracks = step.backtracks;
            record.nf = nf;
            record.elapsed = start.elapsed().as_secs_f64();
            emit(&mut records, &mut sink, record);
            last_norm_d = Some(norm_d);

            let s: Vec<f64> = step.x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
            let y: Vec<f64> = step.grad_new.iter().zip(&grad).map(|(a, b)| a - b).collect();
            lambda = bb_lambda(&s, &y, cfg.bb_variant, cfg.lambda_min, cfg.lambda_max);

            let prev_norm = norm2(&x);
            last_rel_change = (prev_norm > 0.0).then(|| norm2(&s) / prev_norm);

            x = step.x_new;
            grad = step.grad_new;
            f = step.f_new;
            objective = step.objective_new;
            window.push(objective);
            k += 1;
        };

        let last = records.last().expect("at least one record per run");
        Ok(SolveResult {
            reason,
            iterations: k,
            nf,
            f,
            objective,
            norm_grad: last.norm_grad,
            norm_d: last_norm_d.unwrap_or(last.norm_d),
            elapsed: start.elapsed().as_secs_f64(),
            descent_violations,
            x,
            records,
        })
    }
}

fn emit(
    records: &mut Vec<IterationRecord>,
    sink: &mut Option<&mut dyn FnMut(&IterationRecord)>,
    record: IterationRecord,
) {
    if let Some(sink) = sink.as_mut() {
        sink(&record);
    }
    records.push(record);
}

/// Runs the solver from `x0` with `cfg`, optionally streaming trace rows.
pub fn run(
    problem: &CompositeProblem,
    x0: &[f64],
    cfg: &SolverConfig,
    sink: Option<&mut dyn FnMut(&IterationRecord)>,
) -> Result<SolveResult> {
    check_dim("initial point", problem.dim(), x0.len())?;
    Solver::new(problem, cfg.clone())?.run(x0, sink)
}
