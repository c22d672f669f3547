use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use nbbl1::cs::{logspace, AmplitudeMode, Encoder, RecoveryParams, StartPoint, DEFAULT_MU};
use nbbl1::objectives::CuterName;
use nbbl1::{BbVariant, SolverConfig};

use crate::manifest::{Invocation, RecoverySettings, SolverSettings};

#[derive(Debug, Parser)]
#[command(
    name = "nbbl1",
    version,
    about = "Nonmonotone Barzilai-Borwein solver for l1-regularized problems",
    after_help = presets_help()
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one smooth test problem plus mu times the l1 norm.
    Solve(SolveArgs),
    /// Recover a sparse signal from noisy linear measurements.
    #[command(after_help = GAUSSIAN_NOTE)]
    CsRecover(RecoverArgs),
    /// Repeat one recovery instance over a grid of step scales h.
    #[command(after_help = GAUSSIAN_NOTE)]
    HSweep(SweepArgs),
    /// Run the five test problems at several mu values.
    Bench(BenchArgs),
    /// Re-run the invocation recorded in a manifest.
    Replay(ReplayArgs),
}

const GAUSSIAN_NOTE: &str = "Gaussian encoders draw entries from N(0, 1) scaled by 1/sqrt(m), so every row has unit expected norm.";

fn presets_help() -> String {
    let mut out = String::from("Presets (flags override individual values):\n");
    for name in ["cuter", "cs", "cs-dct"] {
        let c = SolverConfig::preset(name).expect("built-in preset");
        out.push_str(&format!(
            "  {name:<7} h={} rho={} delta={} m_tilde={} lambda=[{:e}, {:e}] tol_d={:e} tol_x={:e} max_iter={} max_backtracks={} bb={} lambda0={}\n",
            c.h, c.rho, c.delta, c.m_tilde, c.lambda_min, c.lambda_max, c.tol_d, c.tol_x, c.max_iter, c.max_backtracks, c.bb_variant, c.lambda0
        ));
    }
    out
}

#[derive(Debug, Clone, Args)]
pub struct SolverFlags {
    /// Parameter preset: cuter, cs or cs-dct.
    #[arg(long, value_parser = ["cuter", "cs", "cs-dct"])]
    pub preset: Option<String>,
    /// Model scale of the regularizer, also the initial trial step.
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Nonmonotone window length minus one.
    #[arg(long)]
    pub m_tilde: Option<usize>,
    #[arg(long)]
    pub lambda_min: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    /// Stop when the direction norm falls to this value.
    #[arg(long)]
    pub tol_d: Option<f64>,
    /// Stop when the relative change of successive iterates falls below this value.
    #[arg(long)]
    pub tol_x: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub max_backtracks: Option<usize>,
    /// Curvature quotient: bb1 or bb2.
    #[arg(long)]
    pub bb: Option<BbVariant>,
    #[arg(long)]
    pub lambda0: Option<f64>,
}

impl SolverFlags {
    /// Built-in defaults, then the preset, then individual flags.
    pub fn resolve(&self, default_preset: &str) -> Result<SolverConfig> {
        let mut c = SolverConfig::preset(self.preset.as_deref().unwrap_or(default_preset))?;
        macro_rules! apply {
            ($($field:ident <- $flag:ident),+) => {
                $(if let Some(v) = self.$flag { c.$field = v; })+
            };
        }
        apply!(h <- h, rho <- rho, delta <- delta, m_tilde <- m_tilde, lambda_min <- lambda_min,
            lambda_max <- lambda_max, tol_d <- tol_d, tol_x <- tol_x, max_iter <- max_iter,
            max_backtracks <- max_backtracks, bb_variant <- bb, lambda0 <- lambda0);
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputFlags {
    /// Parent directory of the run directory.
    #[arg(long, default_value = "runs")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// VARDIM, COSINE, GENROSE, WOODS or CHAINWOO.
    #[arg(long)]
    pub problem: CuterName,
    /// Dimension; defaults to the problem's standard size.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    pub mu: f64,
    /// Only names the run directory; the test problems are deterministic.
    #[arg(long, env = "NBBL1_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

impl SolveArgs {
    pub fn invocation(&self) -> Result<Invocation> {
        let cfg = self.solver.resolve("cuter")?;
        if self.mu.is_nan() || self.mu < 0.0 {
            bail!(nbbl1::Error::InvalidArgument(format!("mu must be nonnegative, got {}", self.mu)));
        }
        Ok(Invocation::Solve {
            problem: self.problem.to_string(),
            n: self.n.unwrap_or(self.problem.default_dim()),
            mu: self.mu,
            solver: SolverSettings::from(&cfg),
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct RecoveryFlags {
    /// Signal length [default: 2048 gaussian, 4096 dct; 1024 for h-sweep].
    #[arg(long)]
    pub n: Option<usize>,
    /// Measurements [default: 512 gaussian, n/4 dct].
    #[arg(long)]
    pub m: Option<usize>,
    /// Nonzeros in the signal [default: 64 gaussian, m/6 dct].
    #[arg(long)]
    pub p: Option<usize>,
    /// Standard deviation of the measurement noise.
    #[arg(long, default_value_t = 1e-3)]
    pub sigma: f64,
    #[arg(long, default_value_t = DEFAULT_MU)]
    pub mu: f64,
    /// gaussian or dct.
    #[arg(long, default_value_t = Encoder::Gaussian)]
    pub encoder: Encoder,
    /// Nonzero amplitudes: unit (+1) or gaussian (|N(0,1)|).
    #[arg(long, default_value_t = AmplitudeMode::PositiveUnit)]
    pub amplitude: AmplitudeMode,
    /// Starting point: zero or atb [default: zero gaussian, atb dct].
    #[arg(long)]
    pub x0: Option<StartPoint>,
    #[arg(long, env = "NBBL1_SEED", default_value_t = 7)]
    pub seed: u64,
}

impl RecoveryFlags {
    pub fn params(&self, default_gaussian_n: usize) -> Result<RecoveryParams> {
        let dct = self.encoder == Encoder::Dct;
        let n = self.n.unwrap_or(if dct { 4096 } else { default_gaussian_n });
        let m = self.m.unwrap_or(if dct { n / 4 } else { 512.min(n) });
        let p = self.p.unwrap_or(if dct { m / 6 } else { 64.min(n) });
        if m > n {
            bail!(nbbl1::Error::InvalidArgument(format!("m = {m} exceeds n = {n}")));
        }
        if self.mu.is_nan() || self.mu < 0.0 {
            bail!(nbbl1::Error::InvalidArgument(format!("mu must be nonnegative, got {}", self.mu)));
        }
        Ok(RecoveryParams {
            n,
            m,
            p,
            sigma: self.sigma,
            mu: self.mu,
            encoder: self.encoder,
            amplitude: self.amplitude,
            start: self.x0.unwrap_or(if dct { StartPoint::AdjointObservations } else { StartPoint::Zero }),
            seed: self.seed,
        })
    }

    fn default_preset(&self) -> &'static str {
        match self.encoder {
            Encoder::Gaussian => "cs",
            Encoder::Dct => "cs-dct",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RecoverArgs {
    #[command(flatten)]
    pub recovery: RecoveryFlags,
    #[command(flatten)]
    pub solver: SolverFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

impl RecoverArgs {
    pub fn invocation(&self) -> Result<Invocation> {
        let params = self.recovery.params(2048)?;
        let cfg = self.solver.resolve(self.recovery.default_preset())?;
        Ok(Invocation::CsRecover {
            recovery: RecoverySettings::from(&params),
            solver: SolverSettings::from(&cfg),
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Step scales: `log:LO:HI:COUNT`, `lin:LO:HI:COUNT` or a comma-separated list.
    #[arg(long, default_value = "log:0.01:1:20")]
    pub grid: String,
    #[command(flatten)]
    pub recovery: RecoveryFlags,
    #[command(flatten)]
    pub solver: SolverFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

impl SweepArgs {
    pub fn invocation(&self) -> Result<Invocation> {
        let params = self.recovery.params(1024)?;
        let cfg = self.solver.resolve(self.recovery.default_preset())?;
        Ok(Invocation::HSweep {
            grid: parse_grid(&self.grid)?,
            recovery: RecoverySettings::from(&params),
            solver: SolverSettings::from(&cfg),
        })
    }
}

/// Parses a grid spec into ascending, distinct values in `(0, 1]`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |why: String| nbbl1::Error::InvalidArgument(format!("grid {spec:?}: {why}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let mut values = match parts.as_slice() {
        [kind @ ("log" | "lin"), lo, hi, count] => {
            let lo: f64 = lo.trim().parse().map_err(|e| bad(format!("{e}")))?;
            let hi: f64 = hi.trim().parse().map_err(|e| bad(format!("{e}")))?;
            let count: usize = count.trim().parse().map_err(|e| bad(format!("{e}")))?;
            if *kind == "log" {
                if lo.is_nan() || lo <= 0.0 {
                    bail!(bad("log grids need a positive lower end".into()));
                }
                logspace(lo, hi, count)
            } else {
                match count {
                    0 => Vec::new(),
                    1 => vec![lo],
                    _ => (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect(),
                }
            }
        }
        [list] => list
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|e| bad(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?,
        _ => bail!(bad("expected log:LO:HI:COUNT, lin:LO:HI:COUNT or a list".into())),
    };
    if values.is_empty() {
        bail!(bad("grid is empty".into()));
    }
    if let Some(h) = values.iter().find(|&&h| !(h > 0.0 && h <= 1.0)) {
        bail!(bad(format!("h = {h} lies outside (0, 1]")));
    }
    values.sort_by(f64::total_cmp);
    values.dedup();
    Ok(values)
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Regularization weights to run for every problem.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.25, 0.5, 2.0])]
    pub mu: Vec<f64>,
    /// Only names the run directory.
    #[arg(long, env = "NBBL1_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

impl BenchArgs {
    pub fn invocation(&self) -> Result<Invocation> {
        if let Some(mu) = self.mu.iter().find(|&&mu| mu.is_nan() || mu < 0.0) {
            bail!(nbbl1::Error::InvalidArgument(format!("mu must be nonnegative, got {mu}")));
        }
        Ok(Invocation::Bench {
            mu_values: self.mu.clone(),
            solver: SolverSettings::from(&self.solver.resolve("cuter")?),
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// Path to a manifest.txt written by an earlier run.
    #[arg(long)]
    pub manifest: PathBuf,
    #[command(flatten)]
    pub output: OutputFlags,
}
