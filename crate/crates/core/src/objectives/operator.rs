use crate::linalg::DenseMatrix;

/// A linear map `A: ℝⁿ → ℝᵐ` applied through its action and adjoint.
pub trait LinearOperator: Send + Sync {
    /// Output dimension `m`.
    fn rows(&self) -> usize;
    /// Input dimension `n`.
    fn cols(&self) -> usize;
    /// `y = A x`
    fn forward(&self, x: &[f64], y: &mut [f64]);
    /// `x = Aᵀ y`
    fn adjoint(&self, y: &[f64], x: &mut [f64]);

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.rows()];
        self.forward(x, &mut y);
        y
    }

    fn apply_adjoint(&self, y: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.cols()];
        self.adjoint(y, &mut x);
        x
    }
}

/// Explicitly stored matrix.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    matrix: DenseMatrix,
}

impl DenseOperator {
    pub fn new(matrix: DenseMatrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }
}

impl LinearOperator for DenseOperator {
    fn rows(&self) -> usize {
        self.matrix.rows()
    }

    fn cols(&self) -> usize {
        self.matrix.cols()
    }

    fn forward(&self, x: &[f64], y: &mut [f64]) {
        self.matrix.mul_vec(x, y);
    }

    fn adjoint(&self, y: &[f64], x: &mut [f64]) {
        self.matrix.mul_transpose_vec(y, x);
    }
}

pub fn dense_operator(matrix: DenseMatrix) -> DenseOperator {
    DenseOperator::new(matrix)
}
