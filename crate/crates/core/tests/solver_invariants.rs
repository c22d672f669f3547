mod common;

use std::sync::Arc;

use nbbl1::linalg::dist2;
use nbbl1::objectives::{cuter_problem, dense_operator, least_squares, logistic_loss, CuterName};
use nbbl1::prox::{block_shrink_l2, soft_threshold, svt};
use nbbl1::solver::{bb_lambda, compute_direction};
use nbbl1::{
    run, BbVariant, CompositeProblem, DenseMatrix, RegularizerSpec, SolverConfig, TerminationReason,
};

use common::{audit_trace, gaussian_matrix, gaussian_vec, numeric_columns, rng, TraceAudit};

fn identity_problem(b: Vec<f64>, reg: RegularizerSpec) -> CompositeProblem {
    let n = b.len();
    let ls = least_squares(Arc::new(dense_operator(DenseMatrix::identity(n))), b).unwrap();
    CompositeProblem::new(Arc::new(ls), reg).unwrap()
}

fn random_ls(seed: u64, m: usize, n: usize, mu: f64) -> CompositeProblem {
    let mut r = rng(seed);
    let a = gaussian_matrix(&mut r, m, n);
    let b = gaussian_vec(&mut r, m);
    let ls = least_squares(Arc::new(dense_operator(a)), b).unwrap();
    CompositeProblem::new(Arc::new(ls), RegularizerSpec::l1(mu).unwrap()).unwrap()
}

#[test]
fn random_least_squares_keep_descent_and_window() {
    for i in 0..20u64 {
        let n = 16 + 12 * i as usize;
        let problem = random_ls(100 + i, n / 2 + 1, n, 0.1 + 0.05 * i as f64);
        let out = run(&problem, &vec![0.0; n], &SolverConfig::cuter(), None).unwrap();
        assert_eq!(out.descent_violations, 0, "instance {i}");
        assert_eq!(audit_trace(&out.records), TraceAudit::default(), "instance {i}");
    }
}

#[test]
fn identity_least_squares_lands_on_closed_forms() {
    let b = vec![1.5, -0.2, 0.7, -3.0, 0.0];
    let cfg = SolverConfig::cuter();

    let out = run(&identity_problem(b.clone(), RegularizerSpec::l1(0.5).unwrap()), &[0.0; 5], &cfg, None).unwrap();
    assert!(dist2(&out.x, &soft_threshold(&b, 0.5).unwrap()) < 1e-6);

    let out = run(&identity_problem(b.clone(), RegularizerSpec::l2(1.0).unwrap()), &[0.0; 5], &cfg, None).unwrap();
    assert!(dist2(&out.x, &block_shrink_l2(&b, 1.0).unwrap()) < 1e-6);

    let bm = vec![3.0, 1.0, -2.0, 0.5, 1.0, 4.0];
    let reg = RegularizerSpec::nuclear(2, 3, 0.8).unwrap();
    let out = run(&identity_problem(bm.clone(), reg), &[0.0; 6], &cfg, None).unwrap();
    let want = svt(&DenseMatrix::from_col_major(2, 3, bm).unwrap(), 0.8).unwrap();
    assert!(dist2(&out.x, want.as_slice()) < 1e-6);
}

#[test]
fn smooth_direction_is_scaled_negative_gradient() {
    let mut r = rng(5);
    for _ in 0..50 {
        let x = gaussian_vec(&mut r, 7);
        let g = gaussian_vec(&mut r, 7);
        let lambda = 0.1 + gaussian_vec(&mut r, 1)[0].abs() * 10.0;
        for h in [1.0, 0.3, 1e-2] {
            let dir = compute_direction(&x, &g, lambda, &RegularizerSpec::l1(0.0).unwrap(), h).unwrap();
            for (d, gi) in dir.d.iter().zip(&g) {
                assert_eq!(d.to_bits(), (-gi / lambda).to_bits());
            }
        }
    }
}

#[test]
fn curvature_estimates_stay_in_bounds() {
    assert_eq!(bb_lambda(&[1.0, 0.0], &[-1.0, 0.0], BbVariant::Bb1, 1e-3, 1e3), 1e-3);
    assert_eq!(bb_lambda(&[0.0, 0.0], &[1.0, 0.0], BbVariant::Bb2, 1e-3, 1e3), 1e-3);
    assert_eq!(bb_lambda(&[1e-6, 0.0], &[1.0, 0.0], BbVariant::Bb1, 1e-3, 1e3), 1e3);

    let cfg = SolverConfig {
        lambda_min: 0.5,
        lambda_max: 2.0,
        ..SolverConfig::cuter()
    };
    let p = cuter_problem(CuterName::Genrose, 20).unwrap();
    let problem = CompositeProblem::new(p.objective, RegularizerSpec::l1(0.0).unwrap()).unwrap();
    let out = run(&problem, &p.x0, &cfg, None).unwrap();
    assert!(out.records.iter().all(|r| (0.5..=2.0).contains(&r.lambda)));
}

#[test]
fn empty_window_gives_monotone_descent() {
    let cfg = SolverConfig {
        m_tilde: 0,
        ..SolverConfig::cuter()
    };
    for name in CuterName::ALL {
        let p = cuter_problem(name, 40).unwrap();
        let problem = CompositeProblem::new(p.objective, RegularizerSpec::l1(0.5).unwrap()).unwrap();
        let out = run(&problem, &p.x0, &cfg, None).unwrap();
        assert!(
            out.records.windows(2).all(|w| w[1].objective <= w[0].objective),
            "{name}: objective rose with a one-element window"
        );
    }
}

#[test]
fn repeated_runs_are_identical() {
    let problem = random_ls(7, 30, 60, 0.2);
    let cfg = SolverConfig::cuter();
    let a = run(&problem, &vec![0.0; 60], &cfg, None).unwrap();
    let b = run(&problem, &vec![0.0; 60], &cfg, None).unwrap();
    assert_eq!(a.x, b.x);
    let cols = |r: &nbbl1::SolveResult| r.records.iter().map(numeric_columns).collect::<Vec<_>>();
    assert_eq!(cols(&a), cols(&b));
}

#[test]
fn sink_sees_every_record() {
    let problem = random_ls(8, 10, 20, 0.1);
    let mut seen = Vec::new();
    let mut sink = |r: &nbbl1::IterationRecord| seen.push(r.k);
    let out = run(&problem, &[0.0; 20], &SolverConfig::cuter(), Some(&mut sink)).unwrap();
    assert_eq!(seen, out.records.iter().map(|r| r.k).collect::<Vec<_>>());
    assert_eq!(out.records.last().unwrap().alpha, 0.0);
}

#[test]
fn iteration_cap_is_reported() {
    let p = cuter_problem(CuterName::Genrose, 50).unwrap();
    let problem = CompositeProblem::new(p.objective, RegularizerSpec::l1(0.0).unwrap()).unwrap();
    let cfg = SolverConfig {
        max_iter: 5,
        ..SolverConfig::cuter()
    };
    let out = run(&problem, &p.x0, &cfg, None).unwrap();
    assert_eq!(out.reason, TerminationReason::MaxIterations);
    assert_eq!(out.iterations, 5);
}

#[test]
fn logistic_with_free_intercept() {
    // Separable only through the offset: labels follow the sign of t − 3.
    let rows: Vec<Vec<f64>> = (0..12).map(|i| vec![i as f64 * 0.5]).collect();
    let labels: Vec<f64> = (0..12).map(|i| if i as f64 * 0.5 > 3.0 { 1.0 } else { -1.0 }).collect();
    let loss = logistic_loss(DenseMatrix::from_rows(&rows).unwrap(), labels, true).unwrap();
    let reg = RegularizerSpec::l1(0.05).unwrap().with_unpenalized_tail(1);
    let problem = CompositeProblem::new(Arc::new(loss), reg).unwrap();
    let cfg = SolverConfig {
        max_iter: 2000,
        ..SolverConfig::cuter()
    };
    let out = run(&problem, &[0.0, 0.0], &cfg, None).unwrap();
    assert!(out.x[0] > 0.0 && out.x[1] < 0.0, "x = {:?}", out.x);
    assert_eq!(audit_trace(&out.records), TraceAudit::default());
}
