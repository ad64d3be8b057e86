//! Cyclic Jacobi eigensolver for small dense symmetric matrices.
//!
//! Plain threshold-free cyclic sweeps with the textbook stable rotation; for
//! the matrix sizes this crate handles (n well under 100) convergence takes a
//! handful of sweeps. The iteration cap exists to surface pathological input
//! rather than hang.

use crate::error::{Error, Result};
use crate::spectral::matrix::IntSymMatrix;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a dense symmetric matrix, ascending.
pub fn jacobi_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = a
        .iter()
        .fold(0.0f64, |acc, &x| acc.max(x.abs()))
        .max(1e-300);
    let tol = 1e-15 * scale;
    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].abs());
            }
        }
        if off <= tol {
            let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
            eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
            return Ok(eigs);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // rotate rows/columns p and q
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[p * n + k] = a[k * n + p];
                    a[k * n + q] = s * akp + c * akq;
                    a[q * n + k] = a[k * n + q];
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    Err(Error::NoConvergence)
}

/// Floating eigenvalues of an exact symmetric matrix, ascending. Fast
/// screening path; accuracy is far inside `1e-10 * ||m||`.
pub fn eig_double(m: &IntSymMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut a: Vec<f64> = m.entries().iter().map(|&e| e as f64).collect();
    jacobi_eigenvalues(&mut a, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::spectral::matrix::laplacian;

    #[test]
    fn worked_example_eigenvalues() {
        let p3 = Graph::from_edge_list(3, &[(1, 2), (1, 3)]).unwrap();
        let e = eig_double(&laplacian(&p3)).unwrap();
        let want = [0.0, 1.0, 3.0];
        for (a, b) in e.iter().zip(want.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn one_by_one() {
        let m = IntSymMatrix::from_rows(&[vec![5]]).unwrap();
        assert_eq!(eig_double(&m).unwrap(), vec![5.0]);
    }

    #[test]
    fn agrees_with_exact_spectrum_on_p4() {
        let p4 = Graph::from_edge_list(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let e = eig_double(&laplacian(&p4)).unwrap();
        let want = [0.0, 2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (a, b) in e.iter().zip(want.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
