//! Dense real linear algebra used by the operator modules: cyclic Jacobi
//! eigendecomposition, eigenvalue clustering, norms and ranks.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a real symmetric matrix, ascending eigenvalues,
/// eigenvectors in the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Cyclic Jacobi rotations until the off-diagonal mass falls to roundoff.
///
/// The input is symmetrized as `(A + Aᵀ)/2` first.
pub fn jacobi_eigen(a: &DMatrix<f64>) -> Result<SymmetricEigen> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::Shape(format!("{}x{} matrix is not square", n, a.ncols())));
    }
    let mut m = (a + a.transpose()) * 0.5;
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = m.norm();
    let threshold = (f64::EPSILON * scale).powi(2);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| m[(p, q)] * m[(p, q)])
            .sum();
        if off <= threshold || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    let nkp = c * akp - s * akq;
                    let nkq = s * akp + c * akq;
                    m[(k, p)] = nkp;
                    m[(p, k)] = nkp;
                    m[(k, q)] = nkq;
                    m[(q, k)] = nkq;
                }
                m[(p, p)] = app - t * apq;
                m[(q, q)] = aqq + t * apq;
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymmetricEigen { values, vectors })
}

/// A group of numerically equal eigenvalues.
#[derive(Clone, Debug)]
pub struct EigenCluster {
    pub value: f64,
    /// Column indices into the eigenvector matrix.
    pub columns: Vec<usize>,
}

/// Groups ascending eigenvalues whose consecutive gaps are at most `gap`.
pub fn cluster_eigenvalues(values: &[f64], gap: f64) -> Vec<EigenCluster> {
    let mut clusters: Vec<EigenCluster> = Vec::new();
    for (i, &val) in values.iter().enumerate() {
        match clusters.last_mut() {
            Some(c) if val - values[*c.columns.last().unwrap()] <= gap => c.columns.push(i),
            _ => clusters.push(EigenCluster { value: val, columns: vec![i] }),
        }
    }
    for c in &mut clusters {
        c.value = c.columns.iter().map(|&i| values[i]).sum::<f64>() / c.columns.len() as f64;
    }
    clusters
}

/// Orthogonal projection `V_S V_Sᵀ` onto the span of the given eigenvector columns.
pub fn projection_onto(vectors: &DMatrix<f64>, columns: &[usize]) -> DMatrix<f64> {
    let n = vectors.nrows();
    let mut p = DMatrix::zeros(n, n);
    for &c in columns {
        let col = vectors.column(c);
        p += col * col.transpose();
    }
    p
}

/// Largest singular value by power iteration on `AᵀA`.
pub fn operator_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.ncols();
    if n == 0 || a.nrows() == 0 {
        return 0.0;
    }
    let ata = a.transpose() * a;
    // deterministic start with no special alignment
    let mut x = DVector::from_fn(n, |i, _| 1.0 + 0.37 * ((i as f64) * 1.618).sin());
    x /= x.norm();
    let mut lambda = 0.0;
    for _ in 0..5000 {
        let y = &ata * &x;
        let ny = y.norm();
        if ny == 0.0 {
            return 0.0;
        }
        let next = x.dot(&y);
        x = y / ny;
        if (next - lambda).abs() <= 1e-16 * next.abs() {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda.max(0.0).sqrt()
}

/// Singular values, descending.
pub fn singular_values(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(Vec::new());
    }
    let svd = a.clone().try_svd(false, false, f64::EPSILON, 10_000).ok_or(Error::NoConvergence(10_000))?;
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}

/// Numerical rank with relative threshold `tol · σ_max`.
pub fn rank(a: &DMatrix<f64>, tol: f64) -> Result<usize> {
    let s = singular_values(a)?;
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(s.iter().filter(|&&x| x > tol * smax.max(1.0)).count())
}

pub fn frobenius_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).norm()
}
