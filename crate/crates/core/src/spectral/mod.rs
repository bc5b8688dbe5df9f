//! Dense symmetric eigendecomposition, eigenpair selection and spectral gaps.

mod jacobi;
mod tql;

pub use jacobi::Jacobi;
pub use tql::HouseholderQl;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::default_tau;
use crate::registry::{Named, Registry};

/// A symmetric eigensolver. Implementations return eigenvalues in any order
/// with eigenvectors as the matching columns; sorting and validation happen
/// in [`eigendecompose_with`].
pub trait EigenSolver: Named + Send + Sync {
    fn solve(&self, a: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)>;
}

pub const DEFAULT_SOLVER: &str = "jacobi";

pub fn solvers() -> Registry<dyn EigenSolver> {
    let mut reg: Registry<dyn EigenSolver> = Registry::new("eigensolver");
    reg.register(Box::new(Jacobi::default()));
    reg.register(Box::new(HouseholderQl::default()));
    reg
}

/// Ascending eigenvalues with orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
    /// `max_i ||A v_i - lambda_i v_i||_2`.
    pub residual: f64,
}

impl SpectralDecomposition {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i).iter().copied().collect()
    }

    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn reconstruct(&self) -> DMatrix<f64> {
        let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.values));
        &self.vectors * diag * self.vectors.transpose()
    }

    /// Number of eigenvalues at most `tol` in absolute value.
    pub fn null_count(&self, tol: f64) -> usize {
        self.values.iter().filter(|v| v.abs() <= tol).count()
    }
}

fn max_asymmetry(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..i {
            worst = worst.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    worst
}

pub fn eigendecompose(a: &DMatrix<f64>) -> Result<SpectralDecomposition> {
    eigendecompose_with(&Jacobi::default(), a)
}

pub fn eigendecompose_with(solver: &dyn EigenSolver, a: &DMatrix<f64>) -> Result<SpectralDecomposition> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSymmetric(f64::INFINITY));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NotSymmetric(f64::NAN));
    }
    let scale = a.amax().max(1.0);
    let asym = max_asymmetry(a);
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym));
    }
    let n = a.nrows();
    let (raw, vecs) = solver.solve(a)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[i].total_cmp(&raw[j]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| vecs[(r, order[c])]);

    let mut residual = 0.0f64;
    for (c, &lam) in values.iter().enumerate() {
        let v = vectors.column(c);
        let r = a * v - v * lam;
        residual = residual.max(r.norm());
    }
    let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if residual > 1e-8 * (1.0 + max_abs) {
        return Err(Error::NoConvergence { residual });
    }
    Ok(SpectralDecomposition { values, vectors, residual })
}

/// The k-th eigenpair (1-based, ascending) with a canonical sign.
#[derive(Debug, Clone)]
pub struct EigenpairSelection {
    pub k: usize,
    pub lambda_k: f64,
    pub y: Vec<f64>,
    pub tau: f64,
    /// Set when a neighbouring eigenvalue is within `1e-8 * (1 + |lambda_k|)`.
    pub multiplicity_flag: bool,
}

pub fn degeneracy_tol(lambda: f64) -> f64 {
    1e-8 * (1.0 + lambda.abs())
}

/// Selects eigenpair `k`. `tau` defaults to `1e-9 * max|y_i|`.
pub fn select_eigenpair(d: &SpectralDecomposition, k: usize, tau: Option<f64>) -> Result<EigenpairSelection> {
    let n = d.len();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { k, max: n });
    }
    let lambda_k = d.values[k - 1];
    let mut y = d.vector(k - 1);
    let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        y.iter_mut().for_each(|v| *v /= norm);
    }
    let tau = tau.unwrap_or_else(|| default_tau(&y));
    if let Some(first) = y.iter().find(|v| v.abs() > tau) {
        if *first < 0.0 {
            y.iter_mut().for_each(|v| *v = -*v);
        }
    }
    let mut min_gap = f64::INFINITY;
    if k > 1 {
        min_gap = min_gap.min(lambda_k - d.values[k - 2]);
    }
    if k < n {
        min_gap = min_gap.min(d.values[k] - lambda_k);
    }
    Ok(EigenpairSelection { k, lambda_k, y, tau, multiplicity_flag: min_gap < degeneracy_tol(lambda_k) })
}

/// Half the gap above `lambda_k`: `(lambda_{k+1} - lambda_k) / 2`.
pub fn spectral_gap_c(d: &SpectralDecomposition, k: usize) -> Result<f64> {
    let n = d.len();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { k, max: n.saturating_sub(1) });
    }
    Ok(((d.values[k] - d.values[k - 1]) / 2.0).max(0.0))
}
