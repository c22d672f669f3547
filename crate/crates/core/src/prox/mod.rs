//! Closed-form shrinkage operators.
//!
//! Each operator returns the minimizer of `½‖z − v‖² + tau·R(z)` for its
//! norm `R`. Thresholds are compared exactly: a magnitude at or below
//! `tau` maps to zero, and a zero input is returned as zero (the `0·0/0 = 0`
//! convention for the sign factor).

mod svd;

pub use svd::{small_svd, Svd};

use crate::error::{Error, Result};
use crate::linalg::{norm2, DenseMatrix};
use crate::model::RegularizerKind;

fn check_tau(tau: f64) -> Result<()> {
    if tau >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "shrinkage threshold must be nonnegative, got {tau}"
        )))
    }
}

#[inline]
fn shrink_scalar(v: f64, tau: f64) -> f64 {
    let excess = v.abs() - tau;
    if excess > 0.0 {
        excess.copysign(v)
    } else {
        0.0
    }
}

/// Componentwise soft-thresholding, `sign(v)·max(|v| − tau, 0)`.
pub fn soft_threshold(v: &[f64], tau: f64) -> Result<Vec<f64>> {
    let mut out = vec![0.0; v.len()];
    soft_threshold_into(v, tau, &mut out)?;
    Ok(out)
}

pub fn soft_threshold_into(v: &[f64], tau: f64, out: &mut [f64]) -> Result<()> {
    check_tau(tau)?;
    for (o, &vi) in out.iter_mut().zip(v) {
        *o = shrink_scalar(vi, tau);
    }
    Ok(())
}

/// Block shrinkage for the Euclidean norm, `max(‖v‖ − tau, 0)·v/‖v‖`.
pub fn block_shrink_l2(v: &[f64], tau: f64) -> Result<Vec<f64>> {
    let mut out = vec![0.0; v.len()];
    block_shrink_l2_into(v, tau, &mut out)?;
    Ok(out)
}

pub fn block_shrink_l2_into(v: &[f64], tau: f64, out: &mut [f64]) -> Result<()> {
    check_tau(tau)?;
    let nrm = norm2(v);
    if nrm <= tau || nrm == 0.0 {
        out.fill(0.0);
        return Ok(());
    }
    let scale = (nrm - tau) / nrm;
    for (o, &vi) in out.iter_mut().zip(v) {
        *o = scale * vi;
    }
    Ok(())
}

/// Singular value thresholding: `U diag(max(σ − tau, 0)) Vᵀ`.
pub fn svt(y: &DenseMatrix, tau: f64) -> Result<DenseMatrix> {
    check_tau(tau)?;
    let svd = small_svd(y)?;
    let shrunk: Vec<f64> = svd.sigma.iter().map(|&s| (s - tau).max(0.0)).collect();
    Ok(svd.reconstruct_with(&shrunk))
}

/// Applies the shrinkage operator matching `kind` to a flat vector.
/// Nuclear-norm inputs are reshaped column-major to `rows × cols`.
pub fn shrink(kind: RegularizerKind, v: &[f64], tau: f64, out: &mut [f64]) -> Result<()> {
    match kind {
        RegularizerKind::L1 => soft_threshold_into(v, tau, out),
        RegularizerKind::L2Norm => block_shrink_l2_into(v, tau, out),
        RegularizerKind::Nuclear { rows, cols } => {
            let y = DenseMatrix::from_col_major(rows, cols, v.to_vec())?;
            out.copy_from_slice(svt(&y, tau)?.as_slice());
            Ok(())
        }
    }
}
