//! Nonmonotone Barzilai-Borwein gradient method for composite problems
//!
//! Minimizes `F(x) = f(x) + μ·R(x)` where `f` is smooth (possibly
//! nonconvex) and `R` is the ℓ1 norm, the ℓ2 norm, or the nuclear norm of
//! the iterate viewed as a matrix. Each step solves a separable quadratic
//! model in closed form by shrinkage, scales it with a Barzilai-Borwein
//! curvature estimate, and globalizes with a max-of-window backtracking
//! search.
//!
//! ```
//! use std::sync::Arc;
//! use nbbl1::{objectives, CompositeProblem, RegularizerSpec, SolverConfig, DenseMatrix};
//!
//! let a = objectives::dense_operator(DenseMatrix::identity(2));
//! let ls = objectives::least_squares(Arc::new(a), vec![1.0, 0.0]).unwrap();
//! let problem = CompositeProblem::new(Arc::new(ls), RegularizerSpec::l1(0.5).unwrap()).unwrap();
//! let out = nbbl1::run(&problem, &[0.0, 0.0], &SolverConfig::cuter(), None).unwrap();
//! assert!((out.x[0] - 0.5).abs() < 1e-6 && out.x[1].abs() < 1e-6);
//! ```

pub mod cs;
mod error;
pub mod linalg;
pub mod model;
pub mod objectives;
pub mod prox;
pub mod solver;

pub use error::{Error, Result};
pub use linalg::DenseMatrix;
pub use model::{
    regularizer_value, BbVariant, CompositeProblem, Evaluation, IterationRecord, RegularizerKind,
    RegularizerSpec, SmoothObjective, SolverConfig, TerminationReason,
};
pub use solver::{run, SolveResult, Solver};
