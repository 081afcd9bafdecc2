//! Quasi-linear operators on `A_v^n`: ℝ-linear maps stored as real
//! `(2^v n) × (2^v n)` matrices over the flat layout of [`ModuleVector`].
//!
//! The adjoint `T†` is the transpose, i.e. the adjoint for `Re⟨·;·⟩`. Whether
//! it is also an adjoint for the full algebra-valued product is a separate,
//! verified property ([`QlOperator::has_full_adjoint`]); spectral operations
//! require it.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cdnum::{check_level, mul_into, CdNumber};
use crate::error::{Error, Result};
use crate::hmodule::ModuleVector;
use crate::linalg;

/// Tolerance for structural identities (idempotence, symmetry, commutation).
pub const STRUCTURAL_TOL: f64 = 1e-10;
/// Tolerance for arithmetic identities.
pub const ARITHMETIC_TOL: f64 = 1e-12;
/// Tolerance for reconstructions through an eigendecomposition.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// Cached structural properties, computed at construction with
/// [`STRUCTURAL_TOL`] scaled by `max(1, ‖T‖_F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorFlags {
    pub has_full_adjoint: bool,
    pub is_symmetric: bool,
    pub is_graded_projection: bool,
    pub is_unitary: bool,
}

#[derive(Clone, Debug)]
pub struct QlOperator {
    level: u32,
    n: usize,
    matrix: DMatrix<f64>,
    flags: OperatorFlags,
}

impl PartialEq for QlOperator {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.n == other.n && self.matrix == other.matrix
    }
}

/// `w × w` real matrix of `z ↦ c·z` (left) or `z ↦ z·c` (right).
pub fn multiplication_block(c: &CdNumber, left: bool) -> DMatrix<f64> {
    let w = c.dim();
    let mut block = DMatrix::zeros(w, w);
    let mut unit = vec![0.0; w];
    let mut out = vec![0.0; w];
    for q in 0..w {
        unit.iter_mut().for_each(|u| *u = 0.0);
        unit[q] = 1.0;
        if left {
            mul_into(c.coeffs(), &unit, &mut out);
        } else {
            mul_into(&unit, c.coeffs(), &mut out);
        }
        for (r, &o) in out.iter().enumerate() {
            block[(r, q)] = o;
        }
    }
    block
}

fn block_diagonal(n: usize, block: &DMatrix<f64>) -> DMatrix<f64> {
    let w = block.nrows();
    let mut m = DMatrix::zeros(n * w, n * w);
    for k in 0..n {
        m.view_mut((k * w, k * w), (w, w)).copy_from(block);
    }
    m
}

impl QlOperator {
    pub fn from_matrix(level: u32, n: usize, matrix: DMatrix<f64>) -> Result<Self> {
        check_level(level)?;
        let dim = n << level;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Shape(format!(
                "{}x{} matrix for v={level}, n={n} (expected {dim}x{dim})",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("operator matrix has non-finite entries".into()));
        }
        let mut op = QlOperator {
            level,
            n,
            matrix,
            flags: OperatorFlags {
                has_full_adjoint: false,
                is_symmetric: false,
                is_graded_projection: false,
                is_unitary: false,
            },
        };
        let tol = op.scaled_tol(STRUCTURAL_TOL);
        op.flags = OperatorFlags {
            has_full_adjoint: op.full_adjoint_residual() <= tol,
            is_symmetric: op.symmetry_residual() <= tol,
            is_graded_projection: op.check_graded_projection(STRUCTURAL_TOL),
            is_unitary: op.unitary_residual() <= STRUCTURAL_TOL * (op.real_dim() as f64).sqrt().max(1.0),
        };
        Ok(op)
    }

    pub fn identity(level: u32, n: usize) -> Result<Self> {
        QlOperator::from_matrix(level, n, DMatrix::identity(n << level, n << level))
    }

    pub fn zero(level: u32, n: usize) -> Result<Self> {
        QlOperator::from_matrix(level, n, DMatrix::zeros(n << level, n << level))
    }

    /// Entrywise left multiplication `x_k ↦ c·x_k`.
    pub fn left_scalar(n: usize, c: &CdNumber) -> Result<Self> {
        QlOperator::from_matrix(c.level(), n, block_diagonal(n, &multiplication_block(c, true)))
    }

    /// Entrywise right multiplication `x_k ↦ x_k·c`.
    pub fn right_scalar(n: usize, c: &CdNumber) -> Result<Self> {
        QlOperator::from_matrix(c.level(), n, block_diagonal(n, &multiplication_block(c, false)))
    }

    /// `S ⊗ I`: a real `n × n` matrix acting on entries, identically on every coefficient.
    pub fn from_real_scalar(level: u32, s: &DMatrix<f64>) -> Result<Self> {
        let n = s.nrows();
        if s.ncols() != n {
            return Err(Error::Shape("real scalar matrix must be square".into()));
        }
        let w = 1usize << level;
        let m = DMatrix::from_fn(n * w, n * w, |r, c| if r % w == c % w { s[(r / w, c / w)] } else { 0.0 });
        QlOperator::from_matrix(level, n, m)
    }

    /// Real diagonal operator `diag(d_1, ..., d_n)` acting on entries.
    pub fn real_diagonal(level: u32, diag: &[f64]) -> Result<Self> {
        let s = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(diag));
        QlOperator::from_real_scalar(level, &s)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn real_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn flags(&self) -> OperatorFlags {
        self.flags
    }

    pub fn has_full_adjoint(&self) -> bool {
        self.flags.has_full_adjoint
    }

    pub fn is_symmetric(&self) -> bool {
        self.flags.is_symmetric
    }

    pub fn is_unitary(&self) -> bool {
        self.flags.is_unitary
    }

    /// Symmetric with a full adjoint.
    pub fn is_self_adjoint(&self) -> bool {
        self.flags.is_symmetric && self.flags.has_full_adjoint
    }

    /// `tol · max(1, ‖T‖_F)`.
    pub fn scaled_tol(&self, tol: f64) -> f64 {
        tol * self.matrix.norm().max(1.0)
    }

    pub fn apply(&self, x: &ModuleVector) -> Result<ModuleVector> {
        if x.level() != self.level || x.n() != self.n {
            return Err(Error::Shape(format!(
                "operator on (v={}, n={}) applied to vector (v={}, n={})",
                self.level,
                self.n,
                x.level(),
                x.n()
            )));
        }
        let y = &self.matrix * nalgebra::DVector::from_column_slice(x.flat());
        ModuleVector::new(self.level, self.n, y.as_slice().to_vec())
    }

    /// `T†`, the transpose in the flat layout.
    pub fn real_adjoint(&self) -> QlOperator {
        let mut adj = self.clone();
        adj.matrix = self.matrix.transpose();
        adj.flags.has_full_adjoint = self.flags.has_full_adjoint && adj.full_adjoint_residual() <= adj.scaled_tol(STRUCTURAL_TOL);
        adj
    }

    fn same_shape(&self, other: &QlOperator) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        if self.n != other.n {
            return Err(Error::Shape(format!("operator dimension {} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &QlOperator) -> Result<QlOperator> {
        self.same_shape(other)?;
        QlOperator::from_matrix(self.level, self.n, &self.matrix * &other.matrix)
    }

    pub fn add(&self, other: &QlOperator) -> Result<QlOperator> {
        self.same_shape(other)?;
        QlOperator::from_matrix(self.level, self.n, &self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &QlOperator) -> Result<QlOperator> {
        self.same_shape(other)?;
        QlOperator::from_matrix(self.level, self.n, &self.matrix - &other.matrix)
    }

    pub fn scale(&self, s: f64) -> Result<QlOperator> {
        QlOperator::from_matrix(self.level, self.n, &self.matrix * s)
    }

    pub fn powi(&self, k: u32) -> Result<QlOperator> {
        let mut acc = QlOperator::identity(self.level, self.n)?;
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    pub fn distance(&self, other: &QlOperator) -> Result<f64> {
        self.same_shape(other)?;
        Ok(linalg::frobenius_distance(&self.matrix, &other.matrix))
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        linalg::operator_norm(&self.matrix)
    }

    fn symmetry_residual(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).norm()
    }

    fn unitary_residual(&self) -> f64 {
        let d = self.real_dim();
        (self.matrix.transpose() * &self.matrix - DMatrix::<f64>::identity(d, d)).norm()
    }

    /// Largest deviation `|⟨Te_a;e_b⟩ − ⟨e_a;T†e_b⟩|` over all real unit vectors.
    /// Both sides are ℝ-bilinear, so this decides the full adjoint relation.
    fn full_adjoint_residual(&self) -> f64 {
        let w = 1usize << self.level;
        let dim = self.real_dim();
        let mut worst: f64 = 0.0;
        let mut lhs = vec![0.0; w];
        let mut rhs = vec![0.0; w];
        let mut gen = vec![0.0; w];
        let mut slice = vec![0.0; w];
        for a in 0..dim {
            let (k, p) = (a / w, a % w);
            for b in 0..dim {
                let (l, q) = (b / w, b % w);
                // ⟨T e_a; e_b⟩ = ĩ_q · (T e_a)_l
                gen.iter_mut().for_each(|g| *g = 0.0);
                gen[q] = if q == 0 { 1.0 } else { -1.0 };
                for r in 0..w {
                    slice[r] = self.matrix[(l * w + r, a)];
                }
                mul_into(&gen, &slice, &mut lhs);
                // ⟨e_a; T† e_b⟩ = conj((T† e_b)_k) · i_p, (T† e_b)_k = row b of T restricted to entry k
                for r in 0..w {
                    let val = self.matrix[(b, k * w + r)];
                    slice[r] = if r == 0 { val } else { -val };
                }
                gen.iter_mut().for_each(|g| *g = 0.0);
                gen[p] = 1.0;
                mul_into(&slice, &gen, &mut rhs);
                let d = lhs.iter().zip(&rhs).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Randomized form of the full adjoint test: `trials` Gaussian-free uniform
    /// pairs `(x, y)` with `|⟨Tx;y⟩ − ⟨x;T†y⟩| ≤ tol·‖x‖‖y‖`.
    pub fn has_full_adjoint_sampled<R: Rng>(&self, trials: usize, tol: f64, rng: &mut R) -> bool {
        let adj = self.real_adjoint();
        let dim = self.real_dim();
        (0..trials).all(|_| {
            let x = ModuleVector::new(self.level, self.n, (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .expect("shape");
            let y = ModuleVector::new(self.level, self.n, (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .expect("shape");
            let lhs = self.apply(&x).and_then(|tx| tx.inner(&y)).expect("shape");
            let rhs = adj.apply(&y).and_then(|ty| x.inner(&ty)).expect("shape");
            lhs.distance(&rhs) <= tol * x.norm() * y.norm() * self.matrix.norm().max(1.0)
        })
    }

    fn check_graded_projection(&self, tol: f64) -> bool {
        let t = self.scaled_tol(tol);
        let sq = &self.matrix * &self.matrix;
        if (&sq - &self.matrix).norm() > t || self.symmetry_residual() > t {
            return false;
        }
        let d = self.real_dim();
        let reflection = &self.matrix * 2.0 - DMatrix::<f64>::identity(d, d);
        if (reflection.transpose() * &reflection - DMatrix::<f64>::identity(d, d)).norm() > t {
            return false;
        }
        self.commutes_with_right_generators(t)
    }

    /// `‖[T, R_{i_j}]‖_F ≤ tol` for every generator `j ≥ 1`.
    pub fn commutes_with_right_generators(&self, tol: f64) -> bool {
        let w = 1usize << self.level;
        (1..w).all(|j| {
            let g = CdNumber::basis(self.level, j).expect("generator in range");
            let r = block_diagonal(self.n, &multiplication_block(&g, false));
            (&self.matrix * &r - &r * &self.matrix).norm() <= tol
        })
    }

    /// `E² = E`, `E† = E`, `2E − I` unitary, and `E` commutes with the right
    /// generator actions that define the module structure.
    pub fn is_graded_projection(&self, tol: f64) -> bool {
        if (tol - STRUCTURAL_TOL).abs() < f64::EPSILON {
            return self.flags.is_graded_projection;
        }
        self.check_graded_projection(tol)
    }

    /// `‖T†T − TT†‖_F ≤ tol`. Requires a full adjoint.
    pub fn is_normal(&self, tol: f64) -> Result<bool> {
        if !self.has_full_adjoint() {
            return Err(Error::NoFullAdjoint);
        }
        let t = &self.matrix;
        let tt = t.transpose();
        Ok((&tt * t - t * &tt).norm() <= tol)
    }

    /// `U†TU = T` within `tol`, for a unitary `U`.
    pub fn commutant_check(&self, u: &QlOperator, tol: f64) -> Result<bool> {
        self.same_shape(u)?;
        let res = u.unitary_residual();
        if res > tol.max(STRUCTURAL_TOL) {
            return Err(Error::NotUnitary(res));
        }
        let conj = u.matrix.transpose() * &self.matrix * &u.matrix;
        Ok((conj - &self.matrix).norm() <= tol)
    }

    /// `π̂^j(A)` from generator sandwiches:
    ///
    /// ```text
    /// π̂^j(A) = (−i_j(A i_j) − (2^v−2)^{-1}{−A + Σ_{k≥1} i_k(A i_k*)})/2,  j ≥ 1
    /// π̂^0(A) = ( A        + (2^v−2)^{-1}{−A + Σ_{k≥1} i_k(A i_k*)})/2
    /// ```
    ///
    /// with generators acting as entrywise left multiplications.
    pub fn component_project(&self, j: usize) -> Result<QlOperator> {
        let w = 1usize << self.level;
        if self.level < 2 {
            return Err(Error::InvalidArgument("component projections need level >= 2".into()));
        }
        if j >= w {
            return Err(Error::IndexOutOfRange { index: j, level: self.level });
        }
        let left = |k: usize, conj: bool| -> DMatrix<f64> {
            let g = CdNumber::basis(self.level, k).expect("generator in range");
            let g = if conj { g.conj() } else { g };
            block_diagonal(self.n, &multiplication_block(&g, true))
        };
        let a = &self.matrix;
        let mut sandwich_sum = DMatrix::zeros(a.nrows(), a.ncols());
        for k in 1..w {
            sandwich_sum += left(k, false) * a * left(k, true);
        }
        let correction = (sandwich_sum - a) / ((w - 2) as f64);
        let out = if j == 0 {
            (a + correction) * 0.5
        } else {
            let lj = left(j, false);
            (-(&lj * a * &lj) - correction) * 0.5
        };
        QlOperator::from_matrix(self.level, self.n, out)
    }

    /// The four equivalent self-adjointness statements for `T` symmetric with a
    /// full adjoint, tested with `M = i_m` acting by right multiplication.
    pub fn check_selfadjoint_criteria(&self, m: usize) -> Result<SelfAdjointReport> {
        let tol = self.scaled_tol(STRUCTURAL_TOL);
        let res = self.symmetry_residual();
        if res > tol {
            return Err(Error::NotSymmetric(res));
        }
        if !self.has_full_adjoint() {
            return Err(Error::NoFullAdjoint);
        }
        let w = 1usize << self.level;
        if m == 0 || m >= w {
            return Err(Error::IndexOutOfRange { index: m, level: self.level });
        }
        let g = CdNumber::basis(self.level, m)?;
        let rm = QlOperator::right_scalar(self.n, &g)?;
        let adj = self.real_adjoint();
        let dim = self.real_dim();
        let mut adjoint_nullity = [0usize; 2];
        let mut range_rank = [0usize; 2];
        let mut min_singular = [0.0f64; 2];
        for (i, s) in [1.0, -1.0].into_iter().enumerate() {
            let shifted_adj = &adj.matrix + &rm.matrix * s;
            adjoint_nullity[i] = dim - linalg::rank(&shifted_adj, 1e-12)?;
            let shifted = &self.matrix + &rm.matrix * s;
            let sv = linalg::singular_values(&shifted)?;
            range_rank[i] = sv.iter().filter(|&&x| x > 1e-12 * sv[0].max(1.0)).count();
            min_singular[i] = sv.last().copied().unwrap_or(0.0);
        }
        let trivial_kernels = adjoint_nullity == [0, 0];
        let full_ranges = range_rank == [dim, dim];
        // in finite dimension a dense range is the whole space
        let dense_ranges = full_ranges;
        let self_adjoint = self.is_self_adjoint();
        Ok(SelfAdjointReport {
            generator: m,
            real_dim: dim,
            adjoint_nullity,
            range_rank,
            min_singular,
            self_adjoint,
            trivial_kernels,
            full_ranges,
            dense_ranges,
            agree: self_adjoint == trivial_kernels && trivial_kernels == full_ranges && full_ranges == dense_ranges,
        })
    }
}

/// Outcome of [`QlOperator::check_selfadjoint_criteria`]; index 0 is `+M`, index 1 is `−M`.
#[derive(Clone, Debug, Serialize)]
pub struct SelfAdjointReport {
    pub generator: usize,
    pub real_dim: usize,
    pub adjoint_nullity: [usize; 2],
    pub range_rank: [usize; 2],
    /// Smallest singular value of `T ± M`; at least 1 for self-adjoint `T`.
    pub min_singular: [f64; 2],
    pub self_adjoint: bool,
    pub trivial_kernels: bool,
    pub full_ranges: bool,
    pub dense_ranges: bool,
    pub agree: bool,
}

/// An `n × n` matrix of algebra entries acting by `(Ax)_k = Σ_l a_kl·x_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct CdMatrixOperator {
    level: u32,
    n: usize,
    entries: Vec<CdNumber>,
}

impl CdMatrixOperator {
    /// Row-major entries.
    pub fn new(level: u32, n: usize, entries: Vec<CdNumber>) -> Result<Self> {
        check_level(level)?;
        if entries.len() != n * n {
            return Err(Error::Shape(format!("{} entries for an {n}x{n} matrix", entries.len())));
        }
        if let Some(e) = entries.iter().find(|e| e.level() != level) {
            return Err(Error::LevelMismatch(level, e.level()));
        }
        Ok(CdMatrixOperator { level, n, entries })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, k: usize, l: usize) -> &CdNumber {
        &self.entries[k * self.n + l]
    }

    pub fn entries(&self) -> &[CdNumber] {
        &self.entries
    }

    /// `(A*)_{kl} = ã_{lk}`.
    pub fn conjugate_transpose(&self) -> CdMatrixOperator {
        let n = self.n;
        let entries = (0..n * n).map(|i| self.entry(i % n, i / n).conj()).collect();
        CdMatrixOperator { level: self.level, n, entries }
    }

    /// Entrywise coefficient extraction: `(a_kl)_j i_j`.
    pub fn component(&self, j: usize) -> Result<CdMatrixOperator> {
        if j >= 1 << self.level {
            return Err(Error::IndexOutOfRange { index: j, level: self.level });
        }
        let entries = self.entries.iter().map(|e| e.component(j)).collect();
        Ok(CdMatrixOperator { level: self.level, n: self.n, entries })
    }

    /// Real matrix with blocks `L_{a_kl}`.
    pub fn to_operator(&self) -> Result<QlOperator> {
        let w = 1usize << self.level;
        let mut m = DMatrix::zeros(self.n * w, self.n * w);
        for k in 0..self.n {
            for l in 0..self.n {
                let block = multiplication_block(self.entry(k, l), true);
                m.view_mut((k * w, l * w), (w, w)).copy_from(&block);
            }
        }
        QlOperator::from_matrix(self.level, self.n, m)
    }
}

/// On-disk operator description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OperatorFile {
    Real { v: u32, n: usize, matrix: Vec<Vec<f64>> },
    Cdmatrix { v: u32, n: usize, entries: Vec<Vec<Vec<f64>>> },
}

impl OperatorFile {
    pub fn into_operator(self) -> Result<QlOperator> {
        match self {
            OperatorFile::Real { v, n, matrix } => {
                let dim = n << v;
                if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
                    return Err(Error::Shape(format!("real operator matrix must be {dim}x{dim}")));
                }
                let m = DMatrix::from_fn(dim, dim, |r, c| matrix[r][c]);
                QlOperator::from_matrix(v, n, m)
            }
            OperatorFile::Cdmatrix { v, n, entries } => {
                if entries.len() != n || entries.iter().any(|r| r.len() != n) {
                    return Err(Error::Shape(format!("cd matrix must be {n}x{n}")));
                }
                let flat = entries
                    .into_iter()
                    .flatten()
                    .map(|c| CdNumber::new(v, c))
                    .collect::<Result<Vec<_>>>()?;
                CdMatrixOperator::new(v, n, flat)?.to_operator()
            }
        }
    }
}

impl From<&QlOperator> for OperatorFile {
    fn from(op: &QlOperator) -> Self {
        let m = &op.matrix;
        OperatorFile::Real {
            v: op.level,
            n: op.n,
            matrix: (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect(),
        }
    }
}

impl From<&CdMatrixOperator> for OperatorFile {
    fn from(op: &CdMatrixOperator) -> Self {
        OperatorFile::Cdmatrix {
            v: op.level,
            n: op.n,
            entries: (0..op.n)
                .map(|k| (0..op.n).map(|l| op.entry(k, l).coeffs().to_vec()).collect())
                .collect(),
        }
    }
}

impl Serialize for QlOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QlOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        OperatorFile::deserialize(d)?.into_operator().map_err(serde::de::Error::custom)
    }
}
