//! One-sided Jacobi SVD for small dense matrices.

use crate::error::{Error, Result};
use crate::linalg::{axpy, dot, norm2, DenseMatrix};

/// Off-diagonal Gram terms below this (relative) size count as converged.
const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 60;

/// Thin SVD `Y = U diag(sigma) Vᵀ` with `r = min(rows, cols)`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows × r`, orthonormal columns.
    pub u: DenseMatrix,
    /// Nonincreasing, nonnegative.
    pub sigma: Vec<f64>,
    /// `cols × r`, orthonormal columns.
    pub v: DenseMatrix,
}

impl Svd {
    /// Rebuilds `U diag(s) Vᵀ` for an arbitrary replacement spectrum `s`.
    pub fn reconstruct_with(&self, s: &[f64]) -> DenseMatrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut out = DenseMatrix::zeros(m, n);
        for (k, &sk) in s.iter().enumerate() {
            if sk == 0.0 {
                continue;
            }
            let (uk, vk) = (self.u.col(k), self.v.col(k));
            for (j, &v) in vk.iter().enumerate().take(n) {
                let w = sk * v;
                if w != 0.0 {
                    axpy(w, uk, out.col_mut(j));
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> DenseMatrix {
        self.reconstruct_with(&self.sigma)
    }
}

/// Singular value decomposition by cyclic one-sided Jacobi rotations.
///
/// Columns of a working copy are rotated pairwise until every pair is
/// orthogonal to `1e-12` relative; singular values are the resulting
/// column norms. Wide matrices are handled through their transpose.
pub fn small_svd(y: &DenseMatrix) -> Result<Svd> {
    if let Some(index) = y.as_slice().iter().position(|v| !v.is_finite()) {
        return Err(Error::Evaluation {
            what: "matrix entry",
            index,
        });
    }
    if y.rows() < y.cols() {
        let t = small_svd(&y.transpose())?;
        return Ok(Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        });
    }

    let (m, n) = (y.rows(), y.cols());
    let mut a = y.clone();
    let mut v = DenseMatrix::identity(n);

    let mut converged = n < 2;
    let mut worst = 0.0;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        worst = 0.0_f64;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let alpha = dot(a.col(p), a.col(p));
                let beta = dot(a.col(q), a.col(q));
                let gamma = dot(a.col(p), a.col(q));
                if gamma == 0.0 {
                    continue;
                }
                let off = gamma.abs() / (alpha * beta).sqrt();
                worst = worst.max(off);
                if off < JACOBI_TOL {
                    continue;
                }
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut a, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        converged = worst < JACOBI_TOL;
    }
    if !converged {
        return Err(Error::Numerical {
            method: "one-sided Jacobi SVD",
            iterations: sweeps,
            residual: worst,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n).map(|j| norm2(a.col(j))).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let mut u = DenseMatrix::zeros(m, n);
    let mut v_sorted = DenseMatrix::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    let mut rank_deficient = Vec::new();
    for (k, &j) in order.iter().enumerate() {
        let s = norms[j];
        sigma.push(s);
        v_sorted.col_mut(k).copy_from_slice(v.col(j));
        if s > 0.0 {
            for (dst, src) in u.col_mut(k).iter_mut().zip(a.col(j)) {
                *dst = src / s;
            }
        } else {
            rank_deficient.push(k);
        }
    }
    complete_basis(&mut u, &rank_deficient);

    Ok(Svd {
        u,
        sigma,
        v: v_sorted,
    })
}

fn rotate(m: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    for i in 0..m.rows() {
        let (xp, xq) = (m[(i, p)], m[(i, q)]);
        m[(i, p)] = c * xp - s * xq;
        m[(i, q)] = s * xp + c * xq;
    }
}

/// Fills the listed (zero) columns of `u` with unit vectors orthogonal to
/// every other column, by Gram-Schmidt over the standard basis.
fn complete_basis(u: &mut DenseMatrix, missing: &[usize]) {
    let m = u.rows();
    let mut filled: Vec<usize> = (0..u.cols()).filter(|k| !missing.contains(k)).collect();
    let mut candidate = 0;
    for &k in missing {
        while candidate < m {
            let mut e = vec![0.0; m];
            e[candidate] = 1.0;
            candidate += 1;
            // two passes of Gram-Schmidt for stability
            for _ in 0..2 {
                for &j in &filled {
                    let proj = dot(u.col(j), &e);
                    axpy(-proj, u.col(j), &mut e);
                }
            }
            let nrm = norm2(&e);
            if nrm > 1e-8 {
                for (dst, src) in u.col_mut(k).iter_mut().zip(&e) {
                    *dst = src / nrm;
                }
                filled.push(k);
                break;
            }
        }
    }
}
