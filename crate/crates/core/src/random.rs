//! Seeded generators for algebra elements, vectors and operators.
//!
//! Operators with prescribed spectra are built as `U D U*` from a unitary
//! matrix `U` whose columns come from Gram-Schmidt. Above the quaternions the
//! unitary factor is real, because left multiplications by octonion matrices
//! do not have full adjoints in general.

use nalgebra::DMatrix;
use rand::Rng;

use crate::cdnum::CdNumber;
use crate::error::{Error, Result};
use crate::hmodule::ModuleVector;
use crate::qlop::{CdMatrixOperator, QlOperator};

/// Coefficients uniform in `[-1, 1)`.
pub fn cd_number<R: Rng>(rng: &mut R, level: u32) -> CdNumber {
    let w = 1usize << level;
    CdNumber::new(level, (0..w).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("valid level")
}

pub fn module_vector<R: Rng>(rng: &mut R, level: u32, n: usize) -> ModuleVector {
    let dim = n << level;
    ModuleVector::new(level, n, (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("valid shape")
}

pub fn cd_matrix<R: Rng>(rng: &mut R, level: u32, n: usize) -> CdMatrixOperator {
    let entries = (0..n * n).map(|_| cd_number(rng, level)).collect();
    CdMatrixOperator::new(level, n, entries).expect("valid shape")
}

/// `a_lk = ã_kl`, real diagonal.
pub fn hermitian_cd_matrix<R: Rng>(rng: &mut R, level: u32, n: usize) -> CdMatrixOperator {
    let mut entries = vec![CdNumber::zero(level); n * n];
    for k in 0..n {
        entries[k * n + k] = CdNumber::real(level, rng.gen_range(-1.0..1.0));
        for l in (k + 1)..n {
            let a = cd_number(rng, level);
            entries[l * n + k] = a.conj();
            entries[k * n + l] = a;
        }
    }
    CdMatrixOperator::new(level, n, entries).expect("valid shape")
}

/// Columns `u_j` with `Σ_k ũ_kj u_kl = δ_jl`. Entries are real above level 2.
pub fn unitary_cd_matrix<R: Rng>(rng: &mut R, level: u32, n: usize) -> CdMatrixOperator {
    if level > 2 {
        let raw: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let q = orthonormal_columns(&raw);
        let entries = (0..n * n).map(|i| CdNumber::real(level, q[i % n][i / n])).collect();
        return CdMatrixOperator::new(level, n, entries).expect("valid shape");
    }
    let mut cols: Vec<Vec<CdNumber>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut w: Vec<CdNumber> = (0..n).map(|_| cd_number(rng, level)).collect();
        for u in &cols {
            // w ← w − u·⟨w;u⟩
            let mut c = CdNumber::zero(level);
            for k in 0..n {
                c = &c + &(&u[k].conj() * &w[k]);
            }
            for k in 0..n {
                w[k] = &w[k] - &(&u[k] * &c);
            }
        }
        let norm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            cols.push(w.iter().map(|x| x.scale(1.0 / norm)).collect());
        }
    }
    let entries = (0..n * n).map(|i| cols[i % n][i / n].clone()).collect();
    CdMatrixOperator::new(level, n, entries).expect("valid shape")
}

fn orthonormal_columns(raw: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for a in raw {
        let mut w = a.clone();
        for u in &out {
            let d: f64 = w.iter().zip(u).map(|(x, y)| x * y).sum();
            w.iter_mut().zip(u).for_each(|(x, y)| *x -= d * y);
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        w.iter_mut().for_each(|x| *x /= norm);
        out.push(w);
    }
    out
}

/// `U diag(d) U*` for a random unitary `U`. At level above 2 the entries of
/// `d` must be real.
pub fn diagonalized_cd_matrix<R: Rng>(rng: &mut R, level: u32, diag: &[CdNumber]) -> Result<CdMatrixOperator> {
    let n = diag.len();
    if let Some(d) = diag.iter().find(|d| d.level() != level) {
        return Err(Error::LevelMismatch(level, d.level()));
    }
    if level > 2 && diag.iter().any(|d| !d.is_real(0.0)) {
        return Err(Error::InvalidArgument("non-real diagonal requires level <= 2".into()));
    }
    let u = unitary_cd_matrix(rng, level, n);
    let mut entries = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            let mut acc = CdNumber::zero(level);
            for (m, d) in diag.iter().enumerate() {
                acc = &acc + &(&(u.entry(k, m) * d) * &u.entry(l, m).conj());
            }
            entries.push(acc);
        }
    }
    CdMatrixOperator::new(level, n, entries)
}

/// Self-adjoint operator with full adjoint and the given real eigenvalues.
pub fn self_adjoint_with_spectrum<R: Rng>(rng: &mut R, level: u32, eigenvalues: &[f64]) -> Result<QlOperator> {
    let diag: Vec<CdNumber> = eigenvalues.iter().map(|&x| CdNumber::real(level, x)).collect();
    diagonalized_cd_matrix(rng, level, &diag)?.to_operator()
}

/// Self-adjoint operator with full adjoint and eigenvalues uniform in `[-1, 1)`.
pub fn self_adjoint<R: Rng>(rng: &mut R, level: u32, n: usize) -> QlOperator {
    let values: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    self_adjoint_with_spectrum(rng, level, &values).expect("valid shape")
}

/// Normal operator with full adjoint; `diag` lists one representative per
/// eigenvalue class. Requires level ≤ 2.
pub fn normal_with_spectrum<R: Rng>(rng: &mut R, level: u32, diag: &[CdNumber]) -> Result<QlOperator> {
    if level > 2 {
        return Err(Error::InvalidArgument("normal operators with non-real spectrum need level <= 2".into()));
    }
    diagonalized_cd_matrix(rng, level, diag)?.to_operator()
}

/// Real symmetric `n × n` matrix with entries uniform in `[-1, 1)`.
pub fn real_symmetric<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    (&a + a.transpose()) * 0.5
}
