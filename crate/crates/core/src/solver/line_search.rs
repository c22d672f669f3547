use crate::error::{Error, Result};
use crate::model::{CompositeProblem, SolverConfig};

use super::window::ObjectiveWindow;

/// Accepted step of the nonmonotone backtracking search.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSearchResult {
    /// `h·rho^j`
    pub alpha: f64,
    pub x_new: Vec<f64>,
    /// Smooth part `f(x_new)`.
    pub f_new: f64,
    /// Composite value `F(x_new)`.
    pub objective_new: f64,
    pub grad_new: Vec<f64>,
    /// `j`, the number of step reductions.
    pub backtracks: usize,
    /// Objective evaluations performed, `j + 1`.
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LineSearchOutcome {
    Accepted(LineSearchResult),
    /// No trial step up to `max_backtracks` reductions was accepted.
    Failed { evaluations: usize },
}

/// Finds the smallest `j ≥ 0` with
/// `F(x + h·rho^j·d) ≤ max(window) + delta_const·h·rho^j·Δ`.
///
/// A trial point where the objective or gradient is not finite counts as
/// rejected and the step is reduced further.
pub fn line_search(
    problem: &CompositeProblem,
    x: &[f64],
    window: &ObjectiveWindow,
    d: &[f64],
    delta: f64,
    cfg: &SolverConfig,
) -> Result<LineSearchOutcome> {
    let reference = window.reference();
    let n = x.len();
    let mut x_trial = vec![0.0; n];
    let mut grad = vec![0.0; n];
    let mut alpha = cfg.h;
    for j in 0..=cfg.max_backtracks {
        for ((t, xi), di) in x_trial.iter_mut().zip(x).zip(d) {
            *t = xi + alpha * di;
        }
        match problem.evaluate_into(&x_trial, &mut grad) {
            Ok((f, objective)) => {
                if objective <= reference + cfg.delta * alpha * delta {
                    return Ok(LineSearchOutcome::Accepted(LineSearchResult {
                        alpha,
                        x_new: x_trial,
                        f_new: f,
                        objective_new: objective,
                        grad_new: grad,
                        backtracks: j,
                        evaluations: j + 1,
                    }));
                }
            }
            Err(Error::Evaluation { .. }) => {}
            Err(e) => return Err(e),
        }
        alpha *= cfg.rho;
    }
    Ok(LineSearchOutcome::Failed {
        evaluations: cfg.max_backtracks + 1,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::model::{RegularizerSpec, SmoothObjective};
    use crate::solver::compute_direction;

    /// `f(x) = ½x²` in one dimension.
    struct HalfSquare;

    impl SmoothObjective for HalfSquare {
        fn dim(&self) -> usize {
            1
        }
        fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
            grad[0] = x[0];
            0.5 * x[0] * x[0]
        }
    }

    /// Double well `(x² − 1)²`, nonconvex.
    struct DoubleWell;

    impl SmoothObjective for DoubleWell {
        fn dim(&self) -> usize {
            1
        }
        fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
            let q = x[0] * x[0] - 1.0;
            grad[0] = 4.0 * x[0] * q;
            q * q
        }
    }

    fn cfg(h: f64, delta: f64) -> SolverConfig {
        SolverConfig {
            h,
            delta,
            ..SolverConfig::cuter()
        }
    }

    #[test]
    fn full_step_accepted_on_quadratic() {
        let p = CompositeProblem::new(Arc::new(HalfSquare), RegularizerSpec::l1(0.0).unwrap()).unwrap();
        let dir = compute_direction(&[1.0], &[1.0], 1.0, &p.reg, 1.0).unwrap();
        assert_eq!((dir.d[0], dir.delta), (-1.0, -1.0));
        let w = ObjectiveWindow::new(5, 0.5);
        let out = line_search(&p, &[1.0], &w, &dir.d, dir.delta, &cfg(1.0, 1e-4)).unwrap();
        let LineSearchOutcome::Accepted(r) = out else { panic!("rejected") };
        assert_eq!((r.alpha, r.backtracks, r.evaluations), (1.0, 0, 1));
        assert_eq!(r.objective_new, 0.0);
    }

    #[test]
    fn nonmonotone_acceptance_above_current_value() {
        // window [10, 2]: the trial lands at F = 5, above the latest value
        // but below the window max
        let p = CompositeProblem::new(Arc::new(DoubleWell), RegularizerSpec::l1(0.0).unwrap()).unwrap();
        let x = [0.0];
        // trial x + h·d = −√(1+√5): (x² − 1)² = 5
        let target = -(1.0 + 5.0_f64.sqrt()).sqrt();
        let d = [target];
        let mut w = ObjectiveWindow::new(5, 10.0);
        w.push(2.0);
        let out = line_search(&p, &x, &w, &d, -1.0, &cfg(1.0, 1e-4)).unwrap();
        let LineSearchOutcome::Accepted(r) = out else { panic!("rejected") };
        assert_eq!(r.backtracks, 0);
        assert!((r.objective_new - 5.0).abs() < 1e-12);
        assert!(r.objective_new > w.latest());

        // the same trial is rejected against a monotone (Armijo) reference
        let w0 = ObjectiveWindow::new(0, 2.0);
        let LineSearchOutcome::Accepted(r) = line_search(&p, &x, &w0, &d, -1.0, &cfg(1.0, 1e-4)).unwrap() else {
            panic!("rejected")
        };
        assert!(r.backtracks > 0);
        assert!(r.objective_new <= 2.0);
    }

    #[test]
    fn exhausting_backtracks_reports_failure() {
        let p = CompositeProblem::new(Arc::new(HalfSquare), RegularizerSpec::l1(0.0).unwrap()).unwrap();
        // an ascent direction can never satisfy the test
        let w = ObjectiveWindow::new(0, 0.5);
        let c = SolverConfig {
            max_backtracks: 5,
            ..cfg(1.0, 1e-4)
        };
        let out = line_search(&p, &[1.0], &w, &[1.0], -1.0, &c).unwrap();
        assert_eq!(out, LineSearchOutcome::Failed { evaluations: 6 });
    }

    #[test]
    fn initial_trial_step_is_h() {
        let p = CompositeProblem::new(Arc::new(HalfSquare), RegularizerSpec::l1(0.0).unwrap()).unwrap();
        let w = ObjectiveWindow::new(5, 0.5);
        let LineSearchOutcome::Accepted(r) = line_search(&p, &[1.0], &w, &[-1.0], -1.0, &cfg(0.01, 1e-4)).unwrap() else {
            panic!("rejected")
        };
        assert_eq!(r.alpha, 0.01);
        assert!((r.x_new[0] - 0.99).abs() < 1e-15);
    }
}
