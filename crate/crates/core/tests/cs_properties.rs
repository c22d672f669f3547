mod common;

use std::f64::consts::PI;

use nbbl1::cs::{
    gen_gaussian_matrix, gen_partial_dct_operator, logspace, rel_err, run_h_sweep, run_recovery, CsInstance,
    Encoder, RecoveryParams, StartPoint,
};
use nbbl1::linalg::dist2;
use nbbl1::objectives::LinearOperator;
use nbbl1::SolverConfig;

use common::{gaussian_vec, numeric_columns, rng};

#[test]
fn partial_dct_rows_are_orthonormal() {
    let op = gen_partial_dct_operator(24, 96, 4).unwrap();
    for j in 0..op.rows() {
        let mut e = vec![0.0; op.rows()];
        e[j] = 1.0;
        let back = op.apply(&op.apply_adjoint(&e));
        assert!(dist2(&back, &e) < 1e-12, "row {j}");
    }
}

#[test]
fn full_dct_is_inverted_by_its_adjoint() {
    let op = gen_partial_dct_operator(50, 50, 9).unwrap();
    let x = gaussian_vec(&mut rng(1), 50);
    assert!(dist2(&op.apply_adjoint(&op.apply(&x)), &x) < 1e-12);
}

#[test]
fn partial_dct_matches_cosine_sums() {
    let n = 40;
    let op = gen_partial_dct_operator(10, n, 2).unwrap();
    let x = gaussian_vec(&mut rng(2), n);
    let y = op.apply(&x);
    for (yi, &k) in y.iter().zip(op.selected_rows()) {
        let c = if k == 0 { (1.0 / n as f64).sqrt() } else { (2.0 / n as f64).sqrt() };
        let direct: f64 = (0..n)
            .map(|j| c * (PI * (2 * j + 1) as f64 * k as f64 / (2 * n) as f64).cos() * x[j])
            .sum();
        assert!((yi - direct).abs() < 1e-12);
    }
}

#[test]
fn gaussian_entries_have_the_stated_law() {
    let (m, n) = (250, 400);
    let a = gen_gaussian_matrix(m, n, 3).unwrap();
    let entries = a.as_slice();
    let count = entries.len() as f64;
    let sd = (1.0 / m as f64).sqrt();
    let mean = entries.iter().sum::<f64>() / count;
    assert!(mean.abs() <= 4.0 * sd / count.sqrt(), "mean {mean}");
    let var = entries.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1.0);
    assert!((var.sqrt() / sd - 1.0).abs() < 0.02);
}

#[test]
fn residual_noise_matches_sigma() {
    let params = RecoveryParams::gaussian_default(5);
    let inst = CsInstance::generate(&params).unwrap();
    let ax = inst.op.apply(&inst.x_bar);
    let resid: Vec<f64> = inst.b.iter().zip(&ax).map(|(b, a)| b - a).collect();
    let mean = resid.iter().sum::<f64>() / resid.len() as f64;
    let sd = (resid.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (resid.len() - 1) as f64).sqrt();
    assert!((sd / params.sigma - 1.0).abs() < 0.2, "sample sd {sd}");
}

#[test]
fn orthonormal_noiseless_instance_is_solved_exactly() {
    let params = RecoveryParams {
        n: 64,
        m: 64,
        p: 1,
        sigma: 0.0,
        mu: 1e-9,
        encoder: Encoder::Dct,
        start: StartPoint::Zero,
        ..RecoveryParams::gaussian_default(6)
    };
    let cfg = SolverConfig { h: 1.0, ..SolverConfig::cs() };
    let report = run_recovery(&params, &cfg).unwrap();
    assert!(report.rel_err <= 1e-6, "rel_err {}", report.rel_err);
}

#[test]
fn trace_error_is_finite_and_ends_at_the_report() {
    let params = RecoveryParams {
        n: 512,
        m: 128,
        p: 8,
        ..RecoveryParams::gaussian_default(7)
    };
    let report = run_recovery(&params, &SolverConfig { h: 0.5, ..SolverConfig::cs() }).unwrap();
    let errs: Vec<f64> = report.trace.iter().map(|r| r.rel_err.unwrap()).collect();
    assert!(errs.iter().all(|e| e.is_finite()));
    assert_eq!(*errs.last().unwrap(), report.rel_err);
    assert_eq!(report.rel_err, rel_err(&report.x_star, &report.x_bar).unwrap());
}

#[test]
fn dct_defaults_recover_the_support() {
    let report = run_recovery(&RecoveryParams::dct_default(1), &SolverConfig::cs_dct()).unwrap();
    assert!(report.reason.converged());
    assert!(report.support_recovered());
    assert!(report.rel_err < 5e-2, "rel_err {}", report.rel_err);
}

#[test]
fn recovery_is_deterministic() {
    let params = RecoveryParams {
        n: 256,
        m: 96,
        p: 6,
        ..RecoveryParams::gaussian_default(8)
    };
    let cfg = SolverConfig { h: 0.3, ..SolverConfig::cs() };
    let a = run_recovery(&params, &cfg).unwrap();
    let b = run_recovery(&params, &cfg).unwrap();
    assert_eq!(a.x_star, b.x_star);
    assert_eq!(
        a.trace.iter().map(numeric_columns).collect::<Vec<_>>(),
        b.trace.iter().map(numeric_columns).collect::<Vec<_>>()
    );
}

#[test]
fn single_point_sweep_equals_a_recovery_run() {
    let params = RecoveryParams {
        n: 256,
        m: 96,
        p: 6,
        ..RecoveryParams::gaussian_default(9)
    };
    let cfg = SolverConfig::cs();
    let rows = run_h_sweep(&[1.0], &params, &cfg).unwrap();
    let direct = run_recovery(&params, &SolverConfig { h: 1.0, ..cfg }).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0].iterations, rows[0].nf, rows[0].rel_err), (direct.iterations, direct.nf, direct.rel_err));
}

#[test]
fn sweep_grid_has_twenty_points() {
    let grid = logspace(0.01, 1.0, 20);
    assert_eq!(grid.len(), 20);
    assert_eq!((grid[0], grid[19]), (0.01, 1.0));
    assert!(grid.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn invalid_instances_are_rejected() {
    let too_many = RecoveryParams {
        m: 4096,
        ..RecoveryParams::gaussian_default(1)
    };
    assert!(CsInstance::generate(&too_many).is_err());
    assert!(rel_err(&[1.0], &[0.0]).is_err());
    assert!(run_h_sweep(&[1.5], &RecoveryParams::gaussian_default(1), &SolverConfig::cs()).is_err());
}
