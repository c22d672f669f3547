//! Orthonormal DCT-II / DCT-III through a zero-padded FFT, and the
//! row-subsampled operator built on it.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::objectives::LinearOperator;

/// Orthonormal DCT of length `n`:
/// `X_k = c_k Σ_j x_j cos(π(2j+1)k / 2n)`, `c_0 = √(1/n)`, `c_k = √(2/n)`.
///
/// Both directions use one complex FFT of length `2n`.
pub struct Dct {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    /// `c_k·e^{−iπk/2n}`
    twiddle: Vec<Complex<f64>>,
}

impl std::fmt::Debug for Dct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dct").field("n", &self.n).finish()
    }
}

impl Dct {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "DCT length must be positive");
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(2 * n);
        let inverse = planner.plan_fft_inverse(2 * n);
        let c0 = (1.0 / n as f64).sqrt();
        let ck = (2.0 / n as f64).sqrt();
        let twiddle = (0..n)
            .map(|k| {
                let c = if k == 0 { c0 } else { ck };
                Complex::from_polar(c, -PI * k as f64 / (2 * n) as f64)
            })
            .collect();
        Self {
            n,
            forward,
            inverse,
            twiddle,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// DCT-II, `out = C x`.
    pub fn transform(&self, x: &[f64], out: &mut [f64]) {
        let mut buf = vec![Complex::new(0.0, 0.0); 2 * self.n];
        for (b, &xi) in buf.iter_mut().zip(x) {
            b.re = xi;
        }
        self.forward.process(&mut buf);
        for ((o, b), t) in out.iter_mut().zip(&buf).zip(&self.twiddle) {
            *o = (b * t).re;
        }
    }

    /// DCT-III, `out = Cᵀ y`, the inverse of [`transform`](Self::transform).
    pub fn inverse(&self, y: &[f64], out: &mut [f64]) {
        let mut buf = vec![Complex::new(0.0, 0.0); 2 * self.n];
        for ((b, &yi), t) in buf.iter_mut().zip(y).zip(&self.twiddle) {
            *b = t.conj() * yi;
        }
        self.inverse.process(&mut buf);
        for (o, b) in out.iter_mut().zip(&buf) {
            *o = b.re;
        }
    }
}

/// `m` rows of the `n × n` orthonormal DCT, applied without storing them.
#[derive(Debug)]
pub struct PartialDct {
    dct: Dct,
    rows: Vec<usize>,
}

impl PartialDct {
    /// `rows` must be distinct indices below `n`.
    pub fn new(n: usize, mut rows: Vec<usize>) -> Self {
        rows.sort_unstable();
        rows.dedup();
        assert!(rows.last().is_none_or(|&r| r < n), "row index out of range");
        Self {
            dct: Dct::new(n),
            rows,
        }
    }

    pub fn selected_rows(&self) -> &[usize] {
        &self.rows
    }
}

impl LinearOperator for PartialDct {
    fn rows(&self) -> usize {
        self.rows.len()
    }

    fn cols(&self) -> usize {
        self.dct.len()
    }

    fn forward(&self, x: &[f64], y: &mut [f64]) {
        let mut full = vec![0.0; self.dct.len()];
        self.dct.transform(x, &mut full);
        for (yi, &r) in y.iter_mut().zip(&self.rows) {
            *yi = full[r];
        }
    }

    fn adjoint(&self, y: &[f64], x: &mut [f64]) {
        let mut full = vec![0.0; self.dct.len()];
        for (&yi, &r) in y.iter().zip(&self.rows) {
            full[r] = yi;
        }
        self.dct.inverse(&full, x);
    }
}
