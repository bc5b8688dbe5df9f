use nalgebra::DMatrix;

use super::EigenSolver;
use crate::error::{Error, Result};
use crate::registry::Named;

/// Cyclic Jacobi rotations. Slow (O(n^3) per sweep) but very accurate on
/// eigenvectors, which the proof checks lean on.
#[derive(Debug, Clone)]
pub struct Jacobi {
    pub max_sweeps: usize,
}

impl Default for Jacobi {
    fn default() -> Self {
        Self { max_sweeps: 100 }
    }
}

impl Named for Jacobi {
    fn name(&self) -> &'static str {
        "jacobi"
    }
}

fn off_diagonal_sq(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for j in 0..n {
        for i in 0..j {
            s += a[(i, j)] * a[(i, j)];
        }
    }
    s
}

impl EigenSolver for Jacobi {
    fn solve(&self, input: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
        let n = input.nrows();
        let mut a = input.clone();
        let mut v = DMatrix::identity(n, n);
        let scale = input.iter().map(|x| x * x).sum::<f64>();
        let target = (f64::EPSILON * f64::EPSILON) * scale;

        let mut converged = false;
        for _ in 0..self.max_sweeps {
            if off_diagonal_sq(&a) <= target {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[(k, p)], a[(k, q)]);
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    for k in 0..n {
                        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                        v[(k, p)] = c * vkp - s * vkq;
                        v[(k, q)] = s * vkp + c * vkq;
                    }
                }
            }
        }
        if !converged && off_diagonal_sq(&a) > target {
            return Err(Error::NoConvergence { residual: off_diagonal_sq(&a).sqrt() });
        }
        Ok(((0..n).map(|i| a[(i, i)]).collect(), v))
    }
}
