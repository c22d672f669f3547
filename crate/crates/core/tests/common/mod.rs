//! Oracles shared by the integration tests. Nothing here calls the code
//! under test except where a test needs the library's own types.

#![allow(dead_code)]

use nbbl1::{DenseMatrix, IterationRecord, SmoothObjective};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> DenseMatrix {
    DenseMatrix::from_col_major(m, n, gaussian_vec(rng, m * n)).unwrap()
}

/// Coarse-to-fine grid search for the minimizer of a convex function on a
/// box around `center`. Each round samples `per_axis` points per coordinate
/// and recentres a box two cells wide on the best one.
pub fn grid_argmin(f: impl Fn(&[f64]) -> f64, center: &[f64], radius: f64, per_axis: usize, rounds: usize) -> Vec<f64> {
    let d = center.len();
    let mut best = center.to_vec();
    let mut r = radius;
    let mut point = vec![0.0; d];
    for _ in 0..rounds {
        let step = 2.0 * r / (per_axis - 1) as f64;
        let origin = best.clone();
        let mut best_val = f(&best);
        let total = per_axis.pow(d as u32);
        for flat in 0..total {
            let mut rest = flat;
            for (p, o) in point.iter_mut().zip(&origin) {
                *p = o - r + step * (rest % per_axis) as f64;
                rest /= per_axis;
            }
            let v = f(&point);
            if v < best_val {
                best_val = v;
                best.copy_from_slice(&point);
            }
        }
        r = 2.0 * step;
    }
    best
}

/// Central differences with step `1e-6·(1 + |x_i|)`.
pub fn fd_gradient(obj: &dyn SmoothObjective, x: &[f64]) -> Vec<f64> {
    let mut xp = x.to_vec();
    (0..x.len())
        .map(|i| {
            let step = 1e-6 * (1.0 + x[i].abs());
            xp[i] = x[i] + step;
            let up = obj.value(&xp);
            xp[i] = x[i] - step;
            let down = obj.value(&xp);
            xp[i] = x[i];
            (up - down) / (2.0 * step)
        })
        .collect()
}

/// Largest entrywise gap between an analytic and a finite-difference
/// gradient, relative to the gradient scale.
pub fn gradient_mismatch(obj: &dyn SmoothObjective, x: &[f64]) -> f64 {
    let mut g = vec![0.0; x.len()];
    obj.value_and_gradient(x, &mut g);
    let fd = fd_gradient(obj, x);
    let scale = g.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    g.iter().zip(&fd).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / scale
}

/// `σ₁ + σ₂ = √(‖Z‖_F² + 2|det Z|)` for a 2×2 matrix stored column-major.
pub fn nuclear_2x2(z: &[f64]) -> f64 {
    let fro2: f64 = z.iter().map(|v| v * v).sum();
    let det = z[0] * z[3] - z[1] * z[2];
    (fro2 + 2.0 * det.abs()).sqrt()
}

/// Violations found by re-reading a trace.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct TraceAudit {
    pub descent: usize,
    pub window_increases: usize,
}

/// Checks `Δ_k ≤ −(λ_k/2)‖d_k‖²` on every row that took a step and that the
/// window maximum never increases.
pub fn audit_trace(records: &[IterationRecord]) -> TraceAudit {
    let mut audit = TraceAudit::default();
    for r in records.iter().filter(|r| r.alpha > 0.0) {
        let bound = -0.5 * r.lambda * r.norm_d * r.norm_d;
        if r.model_decrease > bound + 1e-10 * bound.abs().max(r.model_decrease.abs()) {
            audit.descent += 1;
        }
    }
    audit.window_increases = records.windows(2).filter(|w| w[1].reference > w[0].reference).count();
    audit
}

/// Everything in a trace row except wall-clock time.
pub fn numeric_columns(r: &IterationRecord) -> (usize, f64, f64, f64, f64, usize, usize, Option<f64>) {
    (r.k, r.objective, r.norm_d, r.alpha, r.lambda, r.backtracks, r.nf, r.rel_err)
}
