//! Sparse-recovery experiments: instance generation, the relative-error
//! metric and the recovery / step-scale sweep drivers.

mod dct;
mod rng;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;
use rand_distr::StandardNormal;

pub use dct::{Dct, PartialDct};
pub use rng::{stream_rng, Stream};

use crate::error::{Error, Result};
use crate::linalg::{dist2, norm2, DenseMatrix};
use crate::model::{CompositeProblem, IterationRecord, RegularizerSpec, SolverConfig, TerminationReason};
use crate::objectives::{dense_operator, least_squares, LinearOperator};
use crate::solver::Solver;

/// How the nonzero entries of the ground truth are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AmplitudeMode {
    /// Every nonzero is `+1`.
    #[default]
    PositiveUnit,
    /// Nonzeros are `|N(0, 1)|`.
    GaussianAmp,
}

/// Measurement operator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Encoder {
    /// Dense i.i.d. `N(0, 1/m)` entries.
    #[default]
    Gaussian,
    /// Random rows of the orthonormal DCT.
    Dct,
}

/// Starting point of a recovery run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartPoint {
    #[default]
    Zero,
    /// `x₀ = Aᵀb`
    AdjointObservations,
}

macro_rules! str_enum {
    ($ty:ty, $what:literal, $($variant:path => $name:literal),+ $(,)?) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($variant => $name),+ })
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_lowercase().as_str() {
                    $($name => Ok($variant),)+
                    other => Err(Error::InvalidArgument(format!(
                        concat!("unknown ", $what, " {:?}"), other
                    ))),
                }
            }
        }
    };
}

str_enum!(AmplitudeMode, "amplitude mode", AmplitudeMode::PositiveUnit => "unit", AmplitudeMode::GaussianAmp => "gaussian");
str_enum!(Encoder, "encoder", Encoder::Gaussian => "gaussian", Encoder::Dct => "dct");
str_enum!(StartPoint, "start point", StartPoint::Zero => "zero", StartPoint::AdjointObservations => "atb");

/// `p`-sparse vector of length `n` with uniformly chosen support.
pub fn gen_sparse_signal(n: usize, p: usize, mode: AmplitudeMode, seed: u64) -> Result<Vec<f64>> {
    if p == 0 || p > n {
        return Err(Error::InvalidArgument(format!(
            "sparsity must satisfy 0 < p <= n, got p = {p}, n = {n}"
        )));
    }
    let mut support = sample(&mut stream_rng(seed, Stream::Support), n, p).into_vec();
    support.sort_unstable();
    let mut amp_rng = stream_rng(seed, Stream::Amplitude);
    let mut x = vec![0.0; n];
    for i in support {
        x[i] = match mode {
            AmplitudeMode::PositiveUnit => 1.0,
            AmplitudeMode::GaussianAmp => loop {
                let a: f64 = amp_rng.sample::<f64, _>(StandardNormal).abs();
                if a > 0.0 {
                    break a;
                }
            },
        };
    }
    Ok(x)
}

/// Dense `m × n` matrix with i.i.d. `N(0, 1)/√m` entries.
pub fn gen_gaussian_matrix(m: usize, n: usize, seed: u64) -> Result<DenseMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "operator dimensions must be positive, got {m} x {n}"
        )));
    }
    let mut rng = stream_rng(seed, Stream::Matrix);
    let scale = 1.0 / (m as f64).sqrt();
    let data = (0..m * n)
        .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
        .collect();
    DenseMatrix::from_col_major(m, n, data)
}

pub fn gen_gaussian_operator(m: usize, n: usize, seed: u64) -> Result<Arc<dyn LinearOperator>> {
    Ok(Arc::new(dense_operator(gen_gaussian_matrix(m, n, seed)?)))
}

/// `m` distinct random rows of the `n × n` orthonormal DCT.
pub fn gen_partial_dct_operator(m: usize, n: usize, seed: u64) -> Result<PartialDct> {
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "partial DCT needs 0 < m <= n, got m = {m}, n = {n}"
        )));
    }
    let rows = sample(&mut stream_rng(seed, Stream::DctRows), n, m).into_vec();
    Ok(PartialDct::new(n, rows))
}

/// `‖x* − x̄‖₂ / ‖x̄‖₂`
pub fn rel_err(x_star: &[f64], x_bar: &[f64]) -> Result<f64> {
    crate::error::check_dim("rel_err", x_bar.len(), x_star.len())?;
    let denom = norm2(x_bar);
    if denom == 0.0 {
        return Err(Error::InvalidArgument(
            "relative error is undefined for a zero ground truth".into(),
        ));
    }
    Ok(dist2(x_star, x_bar) / denom)
}

/// Parameters of one sparse-recovery instance and solve.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryParams {
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub sigma: f64,
    pub mu: f64,
    pub encoder: Encoder,
    pub amplitude: AmplitudeMode,
    pub start: StartPoint,
    pub seed: u64,
}

impl RecoveryParams {
    /// Gaussian-encoder recovery defaults: `n = 2¹¹`, `m = 2⁹`, `p = 2⁶`,
    /// `σ = 10⁻³`, `μ = 2⁻⁸`, started from zero.
    pub fn gaussian_default(seed: u64) -> Self {
        Self {
            n: 2048,
            m: 512,
            p: 64,
            sigma: 1e-3,
            mu: DEFAULT_MU,
            encoder: Encoder::Gaussian,
            amplitude: AmplitudeMode::PositiveUnit,
            start: StartPoint::Zero,
            seed,
        }
    }

    /// Partial-DCT defaults: `n = 2¹²`, `m = n/4`, `p = m/6`, started at `Aᵀb`.
    pub fn dct_default(seed: u64) -> Self {
        let n = 4096;
        let m = n / 4;
        Self {
            n,
            m,
            p: m / 6,
            sigma: 1e-3,
            mu: DEFAULT_MU,
            encoder: Encoder::Dct,
            amplitude: AmplitudeMode::PositiveUnit,
            start: StartPoint::AdjointObservations,
            seed,
        }
    }
}

/// `2⁻⁸`
pub const DEFAULT_MU: f64 = 0.00390625;

/// A generated sparse-recovery problem `b = A x̄ + ω`.
#[derive(Clone)]
pub struct CsInstance {
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub op: Arc<dyn LinearOperator>,
    pub b: Vec<f64>,
    pub x_bar: Vec<f64>,
    pub sigma: f64,
    pub seed: u64,
}

impl fmt::Debug for CsInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CsInstance")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("p", &self.p)
            .field("sigma", &self.sigma)
            .field("seed", &self.seed)
            .finish()
    }
}

impl CsInstance {
    pub fn generate(params: &RecoveryParams) -> Result<Self> {
        let RecoveryParams {
            n, m, p, sigma, seed, ..
        } = *params;
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument("dimensions must be positive".into()));
        }
        if m > n {
            return Err(Error::InvalidArgument(format!(
                "measurements m = {m} exceed signal length n = {n}"
            )));
        }
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!("noise level must be nonnegative, got {sigma}")));
        }
        let x_bar = gen_sparse_signal(n, p, params.amplitude, seed)?;
        let op: Arc<dyn LinearOperator> = match params.encoder {
            Encoder::Gaussian => gen_gaussian_operator(m, n, seed)?,
            Encoder::Dct => Arc::new(gen_partial_dct_operator(m, n, seed)?),
        };
        let mut b = op.apply(&x_bar);
        let mut noise = stream_rng(seed, Stream::Noise);
        for bi in &mut b {
            *bi += sigma * noise.sample::<f64, _>(StandardNormal);
        }
        Ok(Self {
            n,
            m,
            p,
            op,
            b,
            x_bar,
            sigma,
            seed,
        })
    }

    pub fn problem(&self, mu: f64) -> Result<CompositeProblem> {
        let smooth = least_squares(self.op.clone(), self.b.clone())?;
        CompositeProblem::new(Arc::new(smooth), RegularizerSpec::l1(mu)?)
    }

    pub fn start_point(&self, start: StartPoint) -> Vec<f64> {
        match start {
            StartPoint::Zero => vec![0.0; self.n],
            StartPoint::AdjointObservations => self.op.apply_adjoint(&self.b),
        }
    }
}

/// Result of one recovery run.
#[derive(Debug, Clone)]
pub struct RecoveryReport {
    pub rel_err: f64,
    pub iterations: usize,
    pub nf: usize,
    pub elapsed: f64,
    pub reason: TerminationReason,
    pub objective: f64,
    pub trace: Vec<IterationRecord>,
    pub x_star: Vec<f64>,
    pub x_bar: Vec<f64>,
}

impl RecoveryReport {
    /// Whether the `p` largest-magnitude entries of `x*` are exactly the
    /// support of `x̄`.
    pub fn support_recovered(&self) -> bool {
        let support: Vec<usize> = (0..self.x_bar.len()).filter(|&i| self.x_bar[i] != 0.0).collect();
        let mut order: Vec<usize> = (0..self.x_star.len()).collect();
        order.sort_by(|&i, &j| self.x_star[j].abs().total_cmp(&self.x_star[i].abs()));
        let mut top = order[..support.len()].to_vec();
        top.sort_unstable();
        top == support
    }
}

/// Solves one instance from its configured start point.
pub fn solve_instance(
    instance: &CsInstance,
    mu: f64,
    start: StartPoint,
    cfg: &SolverConfig,
) -> Result<RecoveryReport> {
    let problem = instance.problem(mu)?;
    let x0 = instance.start_point(start);
    let solver = Solver::new(&problem, cfg.clone())?.with_ground_truth(&instance.x_bar)?;
    let out = solver.run(&x0, None)?;
    Ok(RecoveryReport {
        rel_err: rel_err(&out.x, &instance.x_bar)?,
        iterations: out.iterations,
        nf: out.nf,
        elapsed: out.elapsed,
        reason: out.reason,
        objective: out.objective,
        trace: out.records,
        x_star: out.x,
        x_bar: instance.x_bar.clone(),
    })
}

/// Generates the instance described by `params` and solves it.
pub fn run_recovery(params: &RecoveryParams, cfg: &SolverConfig) -> Result<RecoveryReport> {
    let instance = CsInstance::generate(params)?;
    solve_instance(&instance, params.mu, params.start, cfg)
}

/// One row of a step-scale sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub h: f64,
    pub iterations: usize,
    pub nf: usize,
    pub elapsed: f64,
    pub rel_err: f64,
    pub reason: TerminationReason,
}

/// Solves one shared instance once per `h`, using `h` as both the model
/// scale and the initial trial step. Rows follow the order of `h_values`.
pub fn run_h_sweep(h_values: &[f64], params: &RecoveryParams, cfg: &SolverConfig) -> Result<Vec<SweepRow>> {
    if let Some(bad) = h_values.iter().find(|&&h| !(h > 0.0 && h <= 1.0)) {
        return Err(Error::InvalidArgument(format!("h must lie in (0, 1], got {bad}")));
    }
    let instance = CsInstance::generate(params)?;
    h_values
        .iter()
        .map(|&h| {
            let cfg = SolverConfig { h, ..cfg.clone() };
            let r = solve_instance(&instance, params.mu, params.start, &cfg)?;
            Ok(SweepRow {
                h,
                iterations: r.iterations,
                nf: r.nf,
                elapsed: r.elapsed,
                rel_err: r.rel_err,
                reason: r.reason,
            })
        })
        .collect()
}

/// `count` points spaced evenly in log scale from `lo` to `hi` inclusive.
pub fn logspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..count)
                .map(|i| {
                    if i == 0 {
                        lo
                    } else if i == count - 1 {
                        hi
                    } else {
                        (a + (b - a) * i as f64 / (count - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}
