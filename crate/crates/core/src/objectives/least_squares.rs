use std::sync::Arc;

use crate::error::{check_dim, Result};
use crate::linalg::dot;
use crate::model::SmoothObjective;

use super::LinearOperator;

/// `f(x) = ½‖Ax − b‖²`, `∇f(x) = Aᵀ(Ax − b)`.
#[derive(Clone)]
pub struct LeastSquares {
    op: Arc<dyn LinearOperator>,
    b: Vec<f64>,
}

impl LeastSquares {
    pub fn operator(&self) -> &Arc<dyn LinearOperator> {
        &self.op
    }

    pub fn observations(&self) -> &[f64] {
        &self.b
    }

    fn residual(&self, x: &[f64]) -> Vec<f64> {
        let mut r = vec![0.0; self.op.rows()];
        self.op.forward(x, &mut r);
        for (ri, bi) in r.iter_mut().zip(&self.b) {
            *ri -= bi;
        }
        r
    }
}

pub fn least_squares(op: Arc<dyn LinearOperator>, b: Vec<f64>) -> Result<LeastSquares> {
    check_dim("least squares observations", op.rows(), b.len())?;
    Ok(LeastSquares { op, b })
}

impl SmoothObjective for LeastSquares {
    fn dim(&self) -> usize {
        self.op.cols()
    }

    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let r = self.residual(x);
        self.op.adjoint(&r, grad);
        0.5 * dot(&r, &r)
    }

    fn value(&self, x: &[f64]) -> f64 {
        let r = self.residual(x);
        0.5 * dot(&r, &r)
    }
}
