//! Oracles shared by the integration tests. None of them call the library's
//! multiplication table or eigensolver.

#![allow(dead_code)]

use nalgebra::DMatrix;
use octspec::spectral::GradedResolution;
use octspec::QlOperator;
use rand::Rng;

/// `(a, b)(c, d) = (ac − d̃b, da + bc̃)` on coefficient slices.
pub fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    let w = x.len();
    if w == 1 {
        return vec![x[0] * y[0]];
    }
    let h = w / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    ac.iter().zip(&db).map(|(p, q)| p - q).chain(da.iter().zip(&bc).map(|(p, q)| p + q)).collect()
}

pub fn cd_conj(x: &[f64]) -> Vec<f64> {
    x.iter().enumerate().map(|(j, &c)| if j == 0 { c } else { -c }).collect()
}

/// Integer version of [`cd_mul`].
pub fn cd_mul_int(x: &[i64], y: &[i64]) -> Vec<i64> {
    let w = x.len();
    if w == 1 {
        return vec![x[0] * y[0]];
    }
    let h = w / 2;
    let conj = |v: &[i64]| -> Vec<i64> { v.iter().enumerate().map(|(j, &c)| if j == 0 { c } else { -c }).collect() };
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul_int(a, c);
    let db = cd_mul_int(&conj(d), b);
    let da = cd_mul_int(d, a);
    let bc = cd_mul_int(b, &conj(c));
    ac.iter().zip(&db).map(|(p, q)| p - q).chain(da.iter().zip(&bc).map(|(p, q)| p + q)).collect()
}

pub fn unit_int(w: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; w];
    v[j] = 1;
    v
}

/// Real matrix of `x ↦ (Σ_l a_kl x_l)_k`, entries row-major, coordinates
/// `k·2^v + i`.
pub fn left_matrix(w: usize, n: usize, entries: &[Vec<f64>]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n * w, n * w);
    for k in 0..n {
        for l in 0..n {
            for col in 0..w {
                let mut e = vec![0.0; w];
                e[col] = 1.0;
                let p = cd_mul(&entries[k * n + l], &e);
                for (row, v) in p.into_iter().enumerate() {
                    m[(k * w + row, l * w + col)] = v;
                }
            }
        }
    }
    m
}

pub fn random_coeffs<R: Rng>(rng: &mut R, w: usize) -> Vec<f64> {
    (0..w).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Modified Gram-Schmidt, applied twice.
fn orthonormalize(x: &mut DMatrix<f64>) {
    for _ in 0..2 {
        for j in 0..x.ncols() {
            for i in 0..j {
                let d = x.column(i).dot(&x.column(j));
                let ci = x.column(i).clone_owned();
                x.column_mut(j).axpy(-d, &ci, 1.0);
            }
            let nrm = x.column(j).norm();
            x.column_mut(j).scale_mut(1.0 / nrm);
        }
    }
}

/// Eigenspace of `A` near `shift` with dimension `m`, by block inverse
/// iteration on `(A − σI)^{-1}` followed by a Rayleigh quotient.
pub fn inverse_iteration<R: Rng>(a: &DMatrix<f64>, shift: f64, m: usize, rng: &mut R) -> (f64, DMatrix<f64>) {
    let d = a.nrows();
    let sigma = shift + 1e-7 * shift.abs().max(1.0);
    let lu = (a - DMatrix::<f64>::identity(d, d) * sigma).lu();
    let mut x = DMatrix::from_fn(d, m, |_, _| rng.gen_range(-1.0..1.0));
    orthonormalize(&mut x);
    for _ in 0..6 {
        x = lu.solve(&x).expect("shift is not an exact eigenvalue");
        orthonormalize(&mut x);
    }
    let rq = (x.transpose() * a * &x).trace() / m as f64;
    (rq, x)
}

/// Resolution of the identity from eigenspaces found one at a time.
/// `spectrum` lists each distinct eigenvalue with its multiplicity over `A_v`.
pub fn oracle_resolution<R: Rng>(t: &QlOperator, spectrum: &[(f64, usize)], rng: &mut R) -> GradedResolution {
    let w = 1usize << t.level();
    let mut sorted = spectrum.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let d = t.real_dim();
    let mut acc = DMatrix::zeros(d, d);
    let mut breakpoints = Vec::new();
    let mut projections = Vec::new();
    for (lambda, mult) in sorted {
        let (rq, q) = inverse_iteration(t.matrix(), lambda, mult * w, rng);
        acc += &q * q.transpose();
        breakpoints.push(rq);
        projections.push(QlOperator::from_matrix(t.level(), t.n(), acc.clone()).unwrap());
    }
    GradedResolution::new(breakpoints, projections).unwrap()
}

/// `Σ_{n ≤ N} n^{−3/2}` with Kahan summation.
pub fn p_series_three_halves(n_max: u64) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for n in 1..=n_max {
        let y = (n as f64).powf(-1.5) - c;
        let t = s + y;
        c = (t - s) - y;
        s = t;
    }
    s
}

/// `ζ(3/2)` from a 30-digit evaluation.
pub const ZETA_THREE_HALVES: f64 = 2.612_375_348_685_488;

/// Random eigenvalues in `[lo, hi)` with pairwise gap at least `gap`.
pub fn separated<R: Rng>(rng: &mut R, count: usize, lo: f64, hi: f64, gap: f64) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..count).map(|_| rng.gen_range(lo..hi)).collect();
        v.sort_by(f64::total_cmp);
        if v.windows(2).all(|w| w[1] - w[0] >= gap) {
            return v;
        }
    }
}
