//! Smooth objectives with analytic gradients.

mod cuter;
mod least_squares;
mod logistic;
mod operator;

pub use cuter::{cuter_problem, CuterName, TestProblem};
pub use least_squares::{least_squares, LeastSquares};
pub use logistic::{logistic_accuracy, logistic_loss, LogisticLoss};
pub use operator::{dense_operator, DenseOperator, LinearOperator};
