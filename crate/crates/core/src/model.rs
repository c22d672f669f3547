//! Problem, configuration and trace types shared by the solver, the
//! objectives and the experiment harness.

use std::fmt;
use std::sync::Arc;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{norm1, norm2, DenseMatrix};
use crate::prox::small_svd;

/// A smooth function with an analytic gradient.
///
/// Implementations must be deterministic: the same `x` always yields the
/// same value and gradient.
pub trait SmoothObjective: Send + Sync {
    fn dim(&self) -> usize;

    /// Writes `∇f(x)` into `grad` and returns `f(x)`.
    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64;

    fn value(&self, x: &[f64]) -> f64 {
        let mut grad = vec![0.0; self.dim()];
        self.value_and_gradient(x, &mut grad)
    }
}

/// Which nonsmooth norm is added to the smooth part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularizerKind {
    L1,
    L2Norm,
    /// Nuclear norm of the iterate reshaped column-major to `rows × cols`.
    Nuclear { rows: usize, cols: usize },
}

impl fmt::Display for RegularizerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegularizerKind::L1 => write!(f, "l1"),
            RegularizerKind::L2Norm => write!(f, "l2"),
            RegularizerKind::Nuclear { rows, cols } => write!(f, "nuclear:{rows}x{cols}"),
        }
    }
}

/// `mu·R(x)` with `R` chosen by `kind`.
///
/// The last `unpenalized_tail` coordinates of the iterate are left out of
/// the penalty (used for an intercept term); by default every coordinate
/// is penalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizerSpec {
    pub kind: RegularizerKind,
    pub mu: f64,
    pub unpenalized_tail: usize,
}

impl RegularizerSpec {
    pub fn new(kind: RegularizerKind, mu: f64) -> Result<Self> {
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "regularization weight must be finite and nonnegative, got {mu}"
            )));
        }
        Ok(Self {
            kind,
            mu,
            unpenalized_tail: 0,
        })
    }

    pub fn l1(mu: f64) -> Result<Self> {
        Self::new(RegularizerKind::L1, mu)
    }

    pub fn l2(mu: f64) -> Result<Self> {
        Self::new(RegularizerKind::L2Norm, mu)
    }

    pub fn nuclear(rows: usize, cols: usize, mu: f64) -> Result<Self> {
        Self::new(RegularizerKind::Nuclear { rows, cols }, mu)
    }

    pub fn with_unpenalized_tail(mut self, tail: usize) -> Self {
        self.unpenalized_tail = tail;
        self
    }

    /// Checks that an iterate of length `n` is compatible with this spec.
    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.unpenalized_tail > n {
            return Err(Error::Dimension {
                context: "unpenalized tail",
                expected: n,
                actual: self.unpenalized_tail,
            });
        }
        if let RegularizerKind::Nuclear { rows, cols } = self.kind {
            check_dim("nuclear-norm reshape", rows * cols, n - self.unpenalized_tail)?;
        }
        Ok(())
    }

    /// Length of the penalized prefix of an `n`-vector.
    pub fn penalized_len(&self, n: usize) -> usize {
        n - self.unpenalized_tail
    }

    /// `R(x)` without the weight.
    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        let head = &x[..self.penalized_len(x.len())];
        Ok(match self.kind {
            RegularizerKind::L1 => norm1(head),
            RegularizerKind::L2Norm => norm2(head),
            RegularizerKind::Nuclear { rows, cols } => {
                let m = DenseMatrix::from_col_major(rows, cols, head.to_vec())?;
                small_svd(&m)?.sigma.iter().sum()
            }
        })
    }
}

/// `mu·‖x‖₁`, `mu·‖x‖₂` or `mu·Σσᵢ(reshape(x))`.
pub fn regularizer_value(spec: &RegularizerSpec, x: &[f64]) -> Result<f64> {
    if spec.mu == 0.0 {
        spec.check_dim(x.len())?;
        return Ok(0.0);
    }
    Ok(spec.mu * spec.norm(x)?)
}

/// A smooth objective paired with a weighted regularizer,
/// `F(x) = f(x) + mu·R(x)`.
#[derive(Clone)]
pub struct CompositeProblem {
    pub smooth: Arc<dyn SmoothObjective>,
    pub reg: RegularizerSpec,
}

impl fmt::Debug for CompositeProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CompositeProblem")
            .field("dim", &self.smooth.dim())
            .field("reg", &self.reg)
            .finish()
    }
}

/// Value of the smooth part, its gradient, and the composite value.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub f: f64,
    pub grad: Vec<f64>,
    pub composite: f64,
}

impl CompositeProblem {
    pub fn new(smooth: Arc<dyn SmoothObjective>, reg: RegularizerSpec) -> Result<Self> {
        reg.check_dim(smooth.dim())?;
        Ok(Self { smooth, reg })
    }

    pub fn dim(&self) -> usize {
        self.smooth.dim()
    }

    /// Evaluates `f`, `∇f` and `F` at `x`. The regularizer is never
    /// differentiated.
    pub fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
        let mut grad = vec![0.0; self.dim()];
        let (f, composite) = self.evaluate_into(x, &mut grad)?;
        Ok(Evaluation { f, grad, composite })
    }

    /// Like [`evaluate`](Self::evaluate) but writes the gradient into a
    /// caller-owned buffer; returns `(f, F)`.
    pub fn evaluate_into(&self, x: &[f64], grad: &mut [f64]) -> Result<(f64, f64)> {
        check_dim("evaluate", self.dim(), x.len())?;
        let f = self.smooth.value_and_gradient(x, grad);
        if !f.is_finite() {
            return Err(Error::Evaluation {
                what: "objective value",
                index: 0,
            });
        }
        if let Some(index) = grad.iter().position(|g| !g.is_finite()) {
            return Err(Error::Evaluation {
                what: "gradient component",
                index,
            });
        }
        let composite = f + regularizer_value(&self.reg, x)?;
        Ok((f, composite))
    }
}

/// Which Barzilai-Borwein quotient estimates the curvature scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BbVariant {
    /// `sᵀy / sᵀs`
    #[default]
    Bb1,
    /// `yᵀy / sᵀy`
    Bb2,
}

impl fmt::Display for BbVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BbVariant::Bb1 => "bb1",
            BbVariant::Bb2 => "bb2",
        })
    }
}

impl std::str::FromStr for BbVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bb1" => Ok(BbVariant::Bb1),
            "bb2" => Ok(BbVariant::Bb2),
            other => Err(Error::InvalidArgument(format!("unknown BB variant {other:?}"))),
        }
    }
}

/// Solver tunables.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Scale of the linearized regularizer in the direction model; also the
    /// initial trial step of the line search.
    pub h: f64,
    /// Backtracking factor.
    pub rho: f64,
    /// Sufficient-decrease constant.
    pub delta: f64,
    /// Nonmonotone window: the reference value is the max over the last
    /// `m_tilde + 1` objective values.
    pub m_tilde: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Stop when `‖d_k‖₂ ≤ tol_d`.
    pub tol_d: f64,
    /// Stop when `‖x_k − x_{k−1}‖₂ / ‖x_{k−1}‖₂ < tol_x`.
    pub tol_x: f64,
    pub max_iter: usize,
    pub max_backtracks: usize,
    pub bb_variant: BbVariant,
    /// Curvature scalar used before the first secant pair exists.
    pub lambda0: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::cuter()
    }
}

impl SolverConfig {
    /// Smooth nonconvex test problems: direction-norm stopping, unit `h`.
    pub fn cuter() -> Self {
        Self {
            h: 1.0,
            rho: 0.35,
            delta: 1e-4,
            m_tilde: 5,
            lambda_min: 1e-20,
            lambda_max: 1e20,
            tol_d: 1e-8,
            tol_x: 0.0,
            max_iter: 10_000,
            max_backtracks: 50,
            bb_variant: BbVariant::Bb1,
            lambda0: 1.0,
        }
    }

    /// Sparse recovery with Gaussian encoders: relative-change stopping.
    pub fn cs() -> Self {
        Self {
            h: 1e-2,
            tol_d: 0.0,
            tol_x: 1e-4,
            lambda_min: 1e-30,
            lambda_max: 1e30,
            ..Self::cuter()
        }
    }

    /// Sparse recovery with partial DCT encoders.
    pub fn cs_dct() -> Self {
        Self {
            h: 0.8,
            delta: 1e-5,
            ..Self::cs()
        }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "cuter" => Ok(Self::cuter()),
            "cs" => Ok(Self::cs()),
            "cs-dct" => Ok(Self::cs_dct()),
            other => Err(Error::Config(format!(
                "unknown preset {other:?} (expected cuter, cs or cs-dct)"
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if !(self.h > 0.0 && self.h <= 1.0) {
            return fail(format!("h must lie in (0, 1], got {}", self.h));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return fail(format!("rho must lie in (0, 1), got {}", self.rho));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return fail(format!("delta must lie in (0, 1), got {}", self.delta));
        }
        if !(self.lambda_min > 0.0 && self.lambda_min < self.lambda_max && self.lambda_max.is_finite()) {
            return fail(format!(
                "lambda bounds must satisfy 0 < min < max < inf, got [{}, {}]",
                self.lambda_min, self.lambda_max
            ));
        }
        if !(self.lambda0 > 0.0 && self.lambda0.is_finite()) {
            return fail(format!("lambda0 must be positive, got {}", self.lambda0));
        }
        if !(self.tol_d >= 0.0 && self.tol_x >= 0.0) {
            return fail("tolerances must be nonnegative".into());
        }
        if self.max_iter == 0 {
            return fail("max_iter must be positive".into());
        }
        if self.max_backtracks == 0 {
            return fail("max_backtracks must be positive".into());
        }
        Ok(())
    }

    /// Clamps a curvature estimate into `[lambda_min, lambda_max]`.
    pub fn clamp_lambda(&self, lambda: f64) -> f64 {
        lambda.max(self.lambda_min).min(self.lambda_max)
    }
}

/// One row of the iteration trace.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    /// `F(x_k)`
    pub objective: f64,
    /// `‖d_k‖₂`
    pub norm_d: f64,
    /// Accepted step; zero on the terminating row.
    pub alpha: f64,
    /// `λ_k` used to build `d_k`.
    pub lambda: f64,
    pub backtracks: usize,
    /// Cumulative objective evaluations, including the one at `x_0`.
    pub nf: usize,
    /// Seconds since the solve started.
    pub elapsed: f64,
    pub rel_err: Option<f64>,
    /// Model decrease `Δ_k`.
    pub model_decrease: f64,
    /// Nonmonotone reference value (window max) used for `x_k`.
    pub reference: f64,
    /// `‖∇f(x_k)‖₂`
    pub norm_grad: f64,
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationReason {
    DirectionSmall,
    RelativeChangeSmall,
    MaxIterations,
    LineSearchFailure,
}

impl TerminationReason {
    pub fn converged(self) -> bool {
        matches!(
            self,
            TerminationReason::DirectionSmall | TerminationReason::RelativeChangeSmall
        )
    }
}

impl fmt::Display for TerminationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TerminationReason::DirectionSmall => "DirectionSmall",
            TerminationReason::RelativeChangeSmall => "RelativeChangeSmall",
            TerminationReason::MaxIterations => "MaxIterations",
            TerminationReason::LineSearchFailure => "LineSearchFailure",
        })
    }
}
