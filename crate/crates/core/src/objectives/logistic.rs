use crate::error::{check_dim, Error, Result};
use crate::linalg::DenseMatrix;
use crate::model::SmoothObjective;

/// Logistic loss `Σᵢ log(1 + exp(−yᵢ(aᵢᵀw + c)))` over the rows `aᵢ` of a
/// data matrix.
///
/// Without an intercept the iterate is `w` (length `n`); with one it is
/// `[w, c]` (length `n + 1`).
#[derive(Debug, Clone)]
pub struct LogisticLoss {
    data: DenseMatrix,
    labels: Vec<f64>,
    with_intercept: bool,
}

pub fn logistic_loss(data: DenseMatrix, labels: Vec<f64>, with_intercept: bool) -> Result<LogisticLoss> {
    check_dim("logistic labels", data.rows(), labels.len())?;
    if let Some((i, y)) = labels.iter().enumerate().find(|(_, &y)| y != 1.0 && y != -1.0) {
        return Err(Error::InvalidArgument(format!(
            "label {i} is {y}; logistic labels must be -1 or +1"
        )));
    }
    Ok(LogisticLoss {
        data,
        labels,
        with_intercept,
    })
}

/// `log(1 + eᶻ)` without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// `1 / (1 + e⁻ᶻ)` without overflow.
fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

impl LogisticLoss {
    pub fn with_intercept(&self) -> bool {
        self.with_intercept
    }

    fn margins(&self, x: &[f64]) -> Vec<f64> {
        let n = self.data.cols();
        let mut t = vec![0.0; self.data.rows()];
        self.data.mul_vec(&x[..n], &mut t);
        let c = if self.with_intercept { x[n] } else { 0.0 };
        t.iter().zip(&self.labels).map(|(ti, yi)| yi * (ti + c)).collect()
    }
}

impl SmoothObjective for LogisticLoss {
    fn dim(&self) -> usize {
        self.data.cols() + usize::from(self.with_intercept)
    }

    fn value_and_gradient(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let n = self.data.cols();
        let margins = self.margins(x);
        // d/dt log(1 + e^{−y t}) = −y·σ(−y t)
        let weights: Vec<f64> = margins
            .iter()
            .zip(&self.labels)
            .map(|(mi, yi)| -yi * sigmoid(-mi))
            .collect();
        self.data.mul_transpose_vec(&weights, &mut grad[..n]);
        if self.with_intercept {
            grad[n] = weights.iter().sum();
        }
        margins.iter().map(|&mi| softplus(-mi)).sum()
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.margins(x).iter().map(|&mi| softplus(-mi)).sum()
    }
}

/// Mean agreement between `sign(aᵢᵀw + c)` and the labels.
pub fn logistic_accuracy(loss: &LogisticLoss, x: &[f64]) -> f64 {
    let m = loss.labels.len();
    let correct = loss.margins(x).iter().filter(|&&t| t > 0.0).count();
    correct as f64 / m as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> LogisticLoss {
        let data = DenseMatrix::from_rows(&[
            vec![1.0, 2.0],
            vec![-1.0, 0.5],
            vec![0.3, -2.0],
            vec![2.0, 1.0],
        ])
        .unwrap();
        logistic_loss(data, vec![1.0, -1.0, -1.0, 1.0], true).unwrap()
    }

    #[test]
    fn zero_margins_give_log_two() {
        let loss = sample();
        let v = loss.value(&[0.0, 0.0, 0.0]);
        assert!((v - 4.0 * 2.0_f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn large_margins_vanish() {
        let data = DenseMatrix::from_rows(&[vec![1.0], vec![-1.0]]).unwrap();
        let loss = logistic_loss(data, vec![1.0, -1.0], false).unwrap();
        let mut g = [0.0];
        let v = loss.value_and_gradient(&[50.0], &mut g);
        assert!(v > 0.0 && v < 1e-20);
        assert!(g[0].is_finite());
        let v_big = loss.value(&[1e5]);
        assert!(v_big == 0.0 || v_big < v);
        assert_eq!(logistic_accuracy(&loss, &[1.0]), 1.0);
    }

    #[test]
    fn bad_label_rejected() {
        let data = DenseMatrix::from_rows(&[vec![1.0]]).unwrap();
        assert!(logistic_loss(data, vec![0.0], false).is_err());
    }

    #[test]
    fn stable_helpers() {
        assert!((softplus(800.0) - 800.0).abs() < 1e-12);
        assert_eq!(softplus(-800.0), 0.0);
        assert_eq!(sigmoid(-800.0), 0.0);
        assert_eq!(sigmoid(800.0), 1.0);
    }
}
