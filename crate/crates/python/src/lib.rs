use std::sync::Arc;

use nbbl1::cs::{self, AmplitudeMode, Encoder, RecoveryParams, StartPoint};
use nbbl1::objectives::{cuter_problem, dense_operator, least_squares, CuterName};
use nbbl1::{CompositeProblem, DenseMatrix, RegularizerSpec};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: nbbl1::Error) -> PyErr {
    match e {
        nbbl1::Error::InvalidArgument(_) | nbbl1::Error::Config(_) | nbbl1::Error::Dimension { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn matrix_from_rows(rows: &[Vec<f64>]) -> PyResult<DenseMatrix> {
    DenseMatrix::from_rows(rows).map_err(py_err)
}

/// Solver parameters. Construct from a preset name, then adjust attributes.
#[pyclass(name = "SolverConfig", from_py_object)]
#[derive(Clone)]
struct PySolverConfig {
    #[pyo3(get, set)]
    h: f64,
    #[pyo3(get, set)]
    rho: f64,
    #[pyo3(get, set)]
    delta: f64,
    #[pyo3(get, set)]
    m_tilde: usize,
    #[pyo3(get, set)]
    lambda_min: f64,
    #[pyo3(get, set)]
    lambda_max: f64,
    #[pyo3(get, set)]
    tol_d: f64,
    #[pyo3(get, set)]
    tol_x: f64,
    #[pyo3(get, set)]
    max_iter: usize,
    #[pyo3(get, set)]
    max_backtracks: usize,
    #[pyo3(get, set)]
    bb_variant: String,
    #[pyo3(get, set)]
    lambda0: f64,
}

impl From<nbbl1::SolverConfig> for PySolverConfig {
    fn from(c: nbbl1::SolverConfig) -> Self {
        Self {
            h: c.h,
            rho: c.rho,
            delta: c.delta,
            m_tilde: c.m_tilde,
            lambda_min: c.lambda_min,
            lambda_max: c.lambda_max,
            tol_d: c.tol_d,
            tol_x: c.tol_x,
            max_iter: c.max_iter,
            max_backtracks: c.max_backtracks,
            bb_variant: c.bb_variant.to_string(),
            lambda0: c.lambda0,
        }
    }
}

impl PySolverConfig {
    fn to_core(&self) -> PyResult<nbbl1::SolverConfig> {
        let c = nbbl1::SolverConfig {
            h: self.h,
            rho: self.rho,
            delta: self.delta,
            m_tilde: self.m_tilde,
            lambda_min: self.lambda_min,
            lambda_max: self.lambda_max,
            tol_d: self.tol_d,
            tol_x: self.tol_x,
            max_iter: self.max_iter,
            max_backtracks: self.max_backtracks,
            bb_variant: self.bb_variant.parse().map_err(py_err)?,
            lambda0: self.lambda0,
        };
        c.validate().map_err(py_err)?;
        Ok(c)
    }
}

fn resolve(config: Option<PySolverConfig>, preset: &str) -> PyResult<nbbl1::SolverConfig> {
    match config {
        Some(c) => c.to_core(),
        None => nbbl1::SolverConfig::preset(preset).map_err(py_err),
    }
}

#[pymethods]
impl PySolverConfig {
    #[new]
    #[pyo3(signature = (preset = "cuter"))]
    fn new(preset: &str) -> PyResult<Self> {
        Ok(nbbl1::SolverConfig::preset(preset).map_err(py_err)?.into())
    }

    fn __repr__(&self) -> String {
        format!(
            "SolverConfig(h={}, rho={}, delta={}, m_tilde={}, lambda_min={:e}, lambda_max={:e}, tol_d={:e}, tol_x={:e}, max_iter={}, max_backtracks={}, bb_variant={:?}, lambda0={})",
            self.h, self.rho, self.delta, self.m_tilde, self.lambda_min, self.lambda_max, self.tol_d, self.tol_x,
            self.max_iter, self.max_backtracks, self.bb_variant, self.lambda0
        )
    }
}

/// Outcome of a solve. `objective_trace` holds `F(x_k)` for every iterate.
#[pyclass(name = "SolveResult", get_all)]
struct PySolveResult {
    x: Vec<f64>,
    reason: String,
    converged: bool,
    iterations: usize,
    nf: usize,
    f: f64,
    objective: f64,
    norm_grad: f64,
    norm_d: f64,
    elapsed: f64,
    objective_trace: Vec<f64>,
}

impl From<nbbl1::SolveResult> for PySolveResult {
    fn from(r: nbbl1::SolveResult) -> Self {
        Self {
            objective_trace: r.records.iter().map(|rec| rec.objective).collect(),
            reason: r.reason.to_string(),
            converged: r.reason.converged(),
            iterations: r.iterations,
            nf: r.nf,
            f: r.f,
            objective: r.objective,
            norm_grad: r.norm_grad,
            norm_d: r.norm_d,
            elapsed: r.elapsed,
            x: r.x,
        }
    }
}

#[pymethods]
impl PySolveResult {
    fn __repr__(&self) -> String {
        format!(
            "SolveResult(objective={:e}, iterations={}, nf={}, reason={:?})",
            self.objective, self.iterations, self.nf, self.reason
        )
    }
}

/// Outcome of a sparse-recovery run.
#[pyclass(name = "RecoveryReport", get_all)]
struct PyRecoveryReport {
    rel_err: f64,
    support_recovered: bool,
    iterations: usize,
    nf: usize,
    elapsed: f64,
    reason: String,
    objective: f64,
    rel_err_trace: Vec<f64>,
    x_star: Vec<f64>,
    x_bar: Vec<f64>,
}

#[pymethods]
impl PyRecoveryReport {
    fn __repr__(&self) -> String {
        format!(
            "RecoveryReport(rel_err={:e}, support_recovered={}, iterations={}, reason={:?})",
            self.rel_err, self.support_recovered, self.iterations, self.reason
        )
    }
}

#[pyfunction]
fn soft_threshold(v: Vec<f64>, tau: f64) -> PyResult<Vec<f64>> {
    nbbl1::prox::soft_threshold(&v, tau).map_err(py_err)
}

#[pyfunction]
fn block_shrink_l2(v: Vec<f64>, tau: f64) -> PyResult<Vec<f64>> {
    nbbl1::prox::block_shrink_l2(&v, tau).map_err(py_err)
}

/// Singular value thresholding of a matrix given as a list of rows.
#[pyfunction]
fn svt(y: Vec<Vec<f64>>, tau: f64) -> PyResult<Vec<Vec<f64>>> {
    Ok(nbbl1::prox::svt(&matrix_from_rows(&y)?, tau).map_err(py_err)?.to_rows())
}

type Rows = Vec<Vec<f64>>;

/// Returns `(u, sigma, v)` with `y = u·diag(sigma)·vᵀ`; matrices as row lists.
#[pyfunction]
fn small_svd(y: Vec<Vec<f64>>) -> PyResult<(Rows, Vec<f64>, Rows)> {
    let s = nbbl1::prox::small_svd(&matrix_from_rows(&y)?).map_err(py_err)?;
    Ok((s.u.to_rows(), s.sigma, s.v.to_rows()))
}

#[pyfunction]
fn rel_err(x_star: Vec<f64>, x_bar: Vec<f64>) -> PyResult<f64> {
    cs::rel_err(&x_star, &x_bar).map_err(py_err)
}

/// Solves a named test problem plus `mu·‖x‖₁` from its standard start.
#[pyfunction]
#[pyo3(signature = (name, n = None, mu = 0.0, config = None))]
fn solve_cuter(
    py: Python<'_>,
    name: &str,
    n: Option<usize>,
    mu: f64,
    config: Option<PySolverConfig>,
) -> PyResult<PySolveResult> {
    let name: CuterName = name.parse().map_err(py_err)?;
    let cfg = resolve(config, "cuter")?;
    let p = cuter_problem(name, n.unwrap_or(name.default_dim())).map_err(py_err)?;
    let problem =
        CompositeProblem::new(p.objective, RegularizerSpec::l1(mu).map_err(py_err)?).map_err(py_err)?;
    let out = py.detach(|| nbbl1::run(&problem, &p.x0, &cfg, None)).map_err(py_err)?;
    Ok(out.into())
}

/// Minimizes `½‖Ax − b‖² + mu·R(x)` with `R` one of `l1`, `l2` or
/// `nuclear:ROWSxCOLS`.
#[pyfunction]
#[pyo3(signature = (a, b, mu, regularizer = "l1", x0 = None, config = None))]
fn solve_least_squares(
    py: Python<'_>,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    mu: f64,
    regularizer: &str,
    x0: Option<Vec<f64>>,
    config: Option<PySolverConfig>,
) -> PyResult<PySolveResult> {
    let op = Arc::new(dense_operator(matrix_from_rows(&a)?));
    let n = op.matrix().cols();
    let reg = match regularizer {
        "l1" => RegularizerSpec::l1(mu),
        "l2" => RegularizerSpec::l2(mu),
        other => match other.strip_prefix("nuclear:").and_then(|s| s.split_once('x')) {
            Some((r, c)) => {
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| PyValueError::new_err(format!("bad nuclear shape {other:?}")))
                };
                RegularizerSpec::nuclear(parse(r)?, parse(c)?, mu)
            }
            None => return Err(PyValueError::new_err(format!("unknown regularizer {other:?}"))),
        },
    }
    .map_err(py_err)?;
    let cfg = resolve(config, "cuter")?;
    let problem = CompositeProblem::new(Arc::new(least_squares(op, b).map_err(py_err)?), reg).map_err(py_err)?;
    let x0 = x0.unwrap_or_else(|| vec![0.0; n]);
    let out = py.detach(|| nbbl1::run(&problem, &x0, &cfg, None)).map_err(py_err)?;
    Ok(out.into())
}

/// Generates a sparse-recovery instance and solves it. Gaussian encoders use
/// `N(0, 1)/√m` entries.
#[pyfunction]
#[pyo3(signature = (
    n = 2048, m = 512, p = 64, sigma = 1e-3, mu = cs::DEFAULT_MU, encoder = "gaussian",
    amplitude = "unit", x0 = "zero", seed = 7, config = None
))]
#[allow(clippy::too_many_arguments)]
fn cs_recover(
    py: Python<'_>,
    n: usize,
    m: usize,
    p: usize,
    sigma: f64,
    mu: f64,
    encoder: &str,
    amplitude: &str,
    x0: &str,
    seed: u64,
    config: Option<PySolverConfig>,
) -> PyResult<PyRecoveryReport> {
    let encoder: Encoder = encoder.parse().map_err(py_err)?;
    let params = RecoveryParams {
        n,
        m,
        p,
        sigma,
        mu,
        encoder,
        amplitude: amplitude.parse::<AmplitudeMode>().map_err(py_err)?,
        start: x0.parse::<StartPoint>().map_err(py_err)?,
        seed,
    };
    let preset = if encoder == Encoder::Dct { "cs-dct" } else { "cs" };
    let cfg = resolve(config, preset)?;
    let r = py.detach(|| cs::run_recovery(&params, &cfg)).map_err(py_err)?;
    Ok(PyRecoveryReport {
        rel_err: r.rel_err,
        support_recovered: r.support_recovered(),
        iterations: r.iterations,
        nf: r.nf,
        elapsed: r.elapsed,
        reason: r.reason.to_string(),
        objective: r.objective,
        rel_err_trace: r.trace.iter().filter_map(|rec| rec.rel_err).collect(),
        x_star: r.x_star,
        x_bar: r.x_bar,
    })
}

#[pymodule]
fn pynbbl1(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySolverConfig>()?;
    m.add_class::<PySolveResult>()?;
    m.add_class::<PyRecoveryReport>()?;
    m.add_function(wrap_pyfunction!(soft_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(block_shrink_l2, m)?)?;
    m.add_function(wrap_pyfunction!(svt, m)?)?;
    m.add_function(wrap_pyfunction!(small_svd, m)?)?;
    m.add_function(wrap_pyfunction!(rel_err, m)?)?;
    m.add_function(wrap_pyfunction!(solve_cuter, m)?)?;
    m.add_function(wrap_pyfunction!(solve_least_squares, m)?)?;
    m.add_function(wrap_pyfunction!(cs_recover, m)?)?;
    Ok(())
}
