use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, norm2};
use crate::model::{RegularizerKind, RegularizerSpec};
use crate::prox::shrink;

/// Search direction together with its model decrease.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionResult {
    pub d: Vec<f64>,
    /// `Δ = ∇f(x)ᵀd + mu·(R(x + h·d) − R(x))/h`
    pub delta: f64,
    /// `x + h·d`, the shrinkage point.
    pub prox_point: Vec<f64>,
    /// Magnitude of the terms summed into `delta`, for rounding-aware checks.
    pub delta_scale: f64,
}

impl DirectionResult {
    pub fn norm(&self) -> f64 {
        norm2(&self.d)
    }

    /// Whether `Δ ≤ −(λ/2)‖d‖²` holds up to the rounding error of the sums
    /// that produced `Δ`.
    pub fn satisfies_descent(&self, lambda: f64) -> bool {
        let bound = -0.5 * lambda * dot(&self.d, &self.d);
        self.delta <= bound + 64.0 * f64::EPSILON * self.delta_scale
    }
}

/// Minimizes the h-scaled quadratic model of `F` around `x`.
///
/// The shrinkage point is `shrink(x − (h/λ)∇f, mu·h/λ)` and the direction is
/// `d = −(x − shrink(..))/h`. With `mu = 0` this is exactly `−∇f/λ`.
pub fn compute_direction(
    x: &[f64],
    grad: &[f64],
    lambda: f64,
    spec: &RegularizerSpec,
    h: f64,
) -> Result<DirectionResult> {
    let n = x.len();
    check_dim("compute_direction gradient", n, grad.len())?;
    spec.check_dim(n)?;
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::InvalidArgument(format!("lambda must be positive, got {lambda}")));
    }
    if !(h > 0.0 && h <= 1.0) {
        return Err(Error::InvalidArgument(format!("h must lie in (0, 1], got {h}")));
    }

    if spec.mu == 0.0 {
        let d: Vec<f64> = grad.iter().map(|g| -g / lambda).collect();
        let prox_point = x.iter().zip(&d).map(|(xi, di)| xi + h * di).collect();
        let terms: Vec<f64> = grad.iter().zip(&d).map(|(g, di)| g * di).collect();
        return Ok(DirectionResult {
            delta: terms.iter().sum(),
            delta_scale: terms.iter().map(|t| t.abs()).sum(),
            d,
            prox_point,
        });
    }

    let step = h / lambda;
    let tau = spec.mu * step;
    let v: Vec<f64> = x.iter().zip(grad).map(|(xi, gi)| xi - step * gi).collect();
    let head = spec.penalized_len(n);
    let mut prox_point = v.clone();
    shrink(spec.kind, &v[..head], tau, &mut prox_point[..head])?;

    let d: Vec<f64> = x
        .iter()
        .zip(&prox_point)
        .map(|(xi, zi)| -(xi - zi) / h)
        .collect();

    let linear: Vec<f64> = grad.iter().zip(&d).map(|(g, di)| g * di).collect();
    let mut delta = linear.iter().sum::<f64>();
    let mut scale = linear.iter().map(|t| t.abs()).sum::<f64>();
    match spec.kind {
        RegularizerKind::L1 => {
            // per-coordinate differences keep the sum free of cancellation
            let (mut change, mut mag) = (0.0, 0.0);
            for (zi, xi) in prox_point[..head].iter().zip(&x[..head]) {
                let c = zi.abs() - xi.abs();
                change += c;
                mag += c.abs();
            }
            delta += spec.mu * change / h;
            scale += spec.mu * mag / h;
        }
        RegularizerKind::L2Norm | RegularizerKind::Nuclear { .. } => {
            let (rz, rx) = (spec.norm(&prox_point)?, spec.norm(x)?);
            delta += spec.mu * (rz - rx) / h;
            scale += spec.mu * (rz + rx) / h;
        }
    }
    Ok(DirectionResult {
        d,
        delta,
        prox_point,
        delta_scale: scale,
    })
}
