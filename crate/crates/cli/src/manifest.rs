//! Run manifests: the fully resolved configuration of one invocation,
//! stored as TOML next to its outputs so the run can be replayed.

use std::path::Path;

use anyhow::{Context, Result};
use nbbl1::cs::{AmplitudeMode, Encoder, RecoveryParams, StartPoint};
use nbbl1::SolverConfig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    pub h: f64,
    pub rho: f64,
    pub delta: f64,
    pub m_tilde: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub tol_d: f64,
    pub tol_x: f64,
    pub max_iter: usize,
    pub max_backtracks: usize,
    pub bb_variant: String,
    pub lambda0: f64,
}

impl From<&SolverConfig> for SolverSettings {
    fn from(c: &SolverConfig) -> Self {
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

impl SolverSettings {
    pub fn to_config(&self) -> Result<SolverConfig> {
        let cfg = SolverConfig {
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
            bb_variant: self.bb_variant.parse()?,
            lambda0: self.lambda0,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoverySettings {
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub sigma: f64,
    pub mu: f64,
    pub encoder: String,
    pub amplitude: String,
    pub x0: String,
    pub seed: u64,
}

impl From<&RecoveryParams> for RecoverySettings {
    fn from(p: &RecoveryParams) -> Self {
        Self {
            n: p.n,
            m: p.m,
            p: p.p,
            sigma: p.sigma,
            mu: p.mu,
            encoder: p.encoder.to_string(),
            amplitude: p.amplitude.to_string(),
            x0: p.start.to_string(),
            seed: p.seed,
        }
    }
}

impl RecoverySettings {
    pub fn to_params(&self) -> Result<RecoveryParams> {
        Ok(RecoveryParams {
            n: self.n,
            m: self.m,
            p: self.p,
            sigma: self.sigma,
            mu: self.mu,
            encoder: self.encoder.parse::<Encoder>()?,
            amplitude: self.amplitude.parse::<AmplitudeMode>()?,
            start: self.x0.parse::<StartPoint>()?,
            seed: self.seed,
        })
    }
}

/// What to run, with every parameter resolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Invocation {
    Solve {
        problem: String,
        n: usize,
        mu: f64,
        solver: SolverSettings,
    },
    CsRecover {
        recovery: RecoverySettings,
        solver: SolverSettings,
    },
    HSweep {
        grid: Vec<f64>,
        recovery: RecoverySettings,
        solver: SolverSettings,
    },
    Bench {
        mu_values: Vec<f64>,
        solver: SolverSettings,
    },
}

impl Invocation {
    pub fn command(&self) -> &'static str {
        match self {
            Invocation::Solve { .. } => "solve",
            Invocation::CsRecover { .. } => "cs-recover",
            Invocation::HSweep { .. } => "h-sweep",
            Invocation::Bench { .. } => "bench",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    pub timestamp: String,
    pub seed: u64,
    pub run: Invocation,
}

impl RunManifest {
    pub fn new(run: Invocation, seed: u64, timestamp: String) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
            seed,
            run,
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).context("serializing run manifest")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }
}
