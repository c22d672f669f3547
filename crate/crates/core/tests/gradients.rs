mod common;

use std::sync::Arc;

use nbbl1::cs::gen_partial_dct_operator;
use nbbl1::objectives::{cuter_problem, dense_operator, least_squares, logistic_loss, CuterName};
use nbbl1::{DenseMatrix, SmoothObjective};

use common::{gaussian_matrix, gaussian_vec, gradient_mismatch, rng, uniform_vec};

const TOL: f64 = 1e-5;

fn check_at_random_points(name: &str, obj: &dyn SmoothObjective, center: &[f64], spread: f64, seed: u64) {
    let mut r = rng(seed);
    for point in 0..10 {
        let x: Vec<f64> = center
            .iter()
            .zip(uniform_vec(&mut r, center.len(), -spread, spread))
            .map(|(c, e)| c + e)
            .collect();
        let gap = gradient_mismatch(obj, &x);
        assert!(gap <= TOL, "{name}: point {point} mismatch {gap:e}");
    }
}

#[test]
fn cuter_gradients() {
    for (name, n) in [
        (CuterName::Vardim, 10),
        (CuterName::Cosine, 10),
        (CuterName::Genrose, 10),
        (CuterName::Woods, 12),
        (CuterName::Chainwoo, 12),
    ] {
        let p = cuter_problem(name, n).unwrap();
        check_at_random_points(name.as_str(), p.objective.as_ref(), &p.x0, 0.5, n as u64);
    }
}

#[test]
fn least_squares_gradients() {
    let mut r = rng(21);
    let a = gaussian_matrix(&mut r, 5, 8);
    let b = gaussian_vec(&mut r, 5);
    let ls = least_squares(Arc::new(dense_operator(a)), b).unwrap();
    check_at_random_points("least squares 5x8", &ls, &[0.0; 8], 2.0, 22);

    let dct = gen_partial_dct_operator(16, 64, 3).unwrap();
    let b = gaussian_vec(&mut r, 16);
    let ls = least_squares(Arc::new(dct), b).unwrap();
    check_at_random_points("partial dct least squares", &ls, &[0.0; 64], 1.0, 23);
}

#[test]
fn logistic_gradients() {
    let mut r = rng(31);
    let data = gaussian_matrix(&mut r, 20, 6);
    let labels: Vec<f64> = gaussian_vec(&mut r, 20).iter().map(|v| v.signum()).collect();
    let plain = logistic_loss(data.clone(), labels.clone(), false).unwrap();
    check_at_random_points("logistic", &plain, &[0.0; 6], 1.5, 32);
    let with_c = logistic_loss(data, labels, true).unwrap();
    check_at_random_points("logistic with intercept", &with_c, &[0.0; 7], 1.5, 33);

    let one_row = logistic_loss(DenseMatrix::from_rows(&[vec![1.0, -2.0]]).unwrap(), vec![1.0], true).unwrap();
    check_at_random_points("logistic single sample", &one_row, &[0.0; 3], 3.0, 34);
}
