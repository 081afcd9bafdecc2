//! Resolutions of the identity, resolvents, spectra and positivity for
//! finite-dimensional self-adjoint and normal operators.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cdnum::CdNumber;
use crate::error::{Error, Result};
use crate::hmodule::ModuleVector;
use crate::linalg::{self, SymmetricEigen};
use crate::qlop::{OperatorFile, QlOperator, SPECTRAL_TOL, STRUCTURAL_TOL};

/// Relative gap below which eigenvalues are merged into one breakpoint.
pub const CLUSTER_GAP: f64 = 1e-8;

fn require_self_adjoint(t: &QlOperator) -> Result<()> {
    if !t.is_symmetric() {
        let r = (t.matrix() - t.matrix().transpose()).norm();
        return Err(Error::NotSymmetric(r));
    }
    if !t.has_full_adjoint() {
        return Err(Error::NoFullAdjoint);
    }
    Ok(())
}

fn cluster_gap(values: &[f64]) -> f64 {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    CLUSTER_GAP * scale.max(f64::MIN_POSITIVE)
}

/// Real matrix of `T` acting on `Y = X ⊕ X𝐢`, where `𝐢` is a new imaginary
/// unit commuting with every algebra action.
#[derive(Clone, Debug)]
pub struct ComplexifiedOperator {
    level: u32,
    n: usize,
    matrix: DMatrix<f64>,
}

impl ComplexifiedOperator {
    /// `T ⊕ T`.
    pub fn lift(t: &QlOperator) -> Self {
        let d = t.real_dim();
        let mut m = DMatrix::zeros(2 * d, 2 * d);
        m.view_mut((0, 0), (d, d)).copy_from(t.matrix());
        m.view_mut((d, d), (d, d)).copy_from(t.matrix());
        ComplexifiedOperator { level: t.level(), n: t.n(), matrix: m }
    }

    /// `𝐢 = [[0, −I], [I, 0]]`.
    pub fn imaginary_unit(level: u32, n: usize) -> Self {
        let d = n << level;
        let mut m = DMatrix::zeros(2 * d, 2 * d);
        for k in 0..d {
            m[(k, d + k)] = -1.0;
            m[(d + k, k)] = 1.0;
        }
        ComplexifiedOperator { level, n, matrix: m }
    }

    /// `T + s𝐢I`.
    pub fn shifted(t: &QlOperator, s: f64) -> Self {
        let mut lifted = ComplexifiedOperator::lift(t);
        lifted.matrix += ComplexifiedOperator::imaginary_unit(t.level(), t.n()).matrix * s;
        lifted
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// `B_± = (T ± 𝐢I)^{-1}` on the complexification.
#[derive(Clone, Debug)]
pub struct Resolvents {
    pub plus: DMatrix<f64>,
    pub minus: DMatrix<f64>,
}

/// Residuals of the resolvent identities, Frobenius norms.
#[derive(Clone, Debug, Serialize)]
pub struct ResolventReport {
    /// `‖2𝐢B_+B_− − (B_− − B_+)‖`
    pub difference_identity: f64,
    /// `‖TB_+B_− − (B_+ + B_−)/2‖`
    pub sum_identity: f64,
    pub norm_plus: f64,
    pub norm_minus: f64,
    /// `‖B_− − B_+ᵀ‖`
    pub adjoint_residual: f64,
    /// `‖B_+ᵀB_+ − B_+B_+ᵀ‖`
    pub normal_residual: f64,
}

pub fn resolvents(t: &QlOperator) -> Result<Resolvents> {
    require_self_adjoint(t)?;
    let invert = |s: f64| -> Result<DMatrix<f64>> {
        ComplexifiedOperator::shifted(t, s)
            .matrix
            .lu()
            .try_inverse()
            .ok_or(Error::ResolventSingular)
    };
    Ok(Resolvents { plus: invert(1.0)?, minus: invert(-1.0)? })
}

impl Resolvents {
    pub fn report(&self, t: &QlOperator) -> ResolventReport {
        let i = ComplexifiedOperator::imaginary_unit(t.level(), t.n()).matrix;
        let lifted = ComplexifiedOperator::lift(t).matrix;
        let prod = &self.plus * &self.minus;
        ResolventReport {
            difference_identity: (&i * &prod * 2.0 - (&self.minus - &self.plus)).norm(),
            sum_identity: (&lifted * &prod - (&self.plus + &self.minus) * 0.5).norm(),
            norm_plus: linalg::operator_norm(&self.plus),
            norm_minus: linalg::operator_norm(&self.minus),
            adjoint_residual: (&self.minus - self.plus.transpose()).norm(),
            normal_residual: (self.plus.transpose() * &self.plus - &self.plus * self.plus.transpose()).norm(),
        }
    }
}

/// Increasing right-continuous family `b_k ↦ E_k` with `E_m = I`.
#[derive(Clone, Debug)]
pub struct GradedResolution {
    level: u32,
    n: usize,
    breakpoints: Vec<f64>,
    projections: Vec<QlOperator>,
}

impl GradedResolution {
    /// Validates ordering, monotonicity, `E_m = I` and gradedness.
    pub fn new(breakpoints: Vec<f64>, projections: Vec<QlOperator>) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != projections.len() {
            return Err(Error::InvalidArgument(format!(
                "{} breakpoints for {} projections",
                breakpoints.len(),
                projections.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) || breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidArgument("breakpoints must be finite and strictly increasing".into()));
        }
        let (level, n) = (projections[0].level(), projections[0].n());
        for (b, e) in breakpoints.iter().zip(&projections) {
            if e.level() != level || e.n() != n {
                return Err(Error::Shape("projections of different shapes".into()));
            }
            if !e.is_graded_projection(SPECTRAL_TOL) {
                return Err(Error::UngradedProjection(*b));
            }
        }
        for (k, w) in projections.windows(2).enumerate() {
            let lower = w[0].compose(&w[1])?;
            if lower.distance(&w[0])? > SPECTRAL_TOL * (1.0 + w[0].matrix().norm()) {
                return Err(Error::InvalidArgument(format!(
                    "projections at {} and {} are not nested",
                    breakpoints[k],
                    breakpoints[k + 1]
                )));
            }
        }
        let last = projections.last().expect("nonempty");
        let id = QlOperator::identity(level, n)?;
        if last.distance(&id)? > SPECTRAL_TOL * (last.real_dim() as f64).sqrt() {
            return Err(Error::InvalidArgument("last projection is not the identity".into()));
        }
        Ok(GradedResolution { level, n, breakpoints, projections })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn projections(&self) -> &[QlOperator] {
        &self.projections
    }

    /// Real ranks of the `E_k`, read off the traces.
    pub fn ranks(&self) -> Vec<usize> {
        self.projections.iter().map(|e| e.matrix().trace().round().max(0.0) as usize).collect()
    }

    /// `E(b)`: the projection of the largest breakpoint `≤ b + tol`, or 0 below `b_1`.
    pub fn at(&self, b: f64, tol: f64) -> Result<QlOperator> {
        let slack = tol * b.abs().max(1.0);
        match self.breakpoints.iter().rposition(|&bk| bk <= b + slack) {
            Some(k) => Ok(self.projections[k].clone()),
            None => QlOperator::zero(self.level, self.n),
        }
    }

    /// Eigenprojections `E_k − E_{k−1}` paired with `b_k`.
    pub fn increments(&self) -> Vec<(f64, DMatrix<f64>)> {
        let d = self.n << self.level;
        let mut prev = DMatrix::zeros(d, d);
        let mut out = Vec::with_capacity(self.breakpoints.len());
        for (b, e) in self.breakpoints.iter().zip(&self.projections) {
            out.push((*b, e.matrix() - &prev));
            prev = e.matrix().clone();
        }
        out
    }

    /// `Σ_k b_k (E_k − E_{k−1})`.
    pub fn reconstruct_operator(&self) -> Result<QlOperator> {
        let d = self.n << self.level;
        let mut m = DMatrix::zeros(d, d);
        for (b, p) in self.increments() {
            m += p * b;
        }
        QlOperator::from_matrix(self.level, self.n, m)
    }

    /// Same step family with an extra breakpoint carrying a duplicate projection.
    pub fn with_breakpoint(&self, b: f64) -> Result<GradedResolution> {
        if self.breakpoints.contains(&b) {
            return Ok(self.clone());
        }
        let e = self.at(b, 0.0)?;
        let pos = self.breakpoints.partition_point(|&x| x < b);
        let mut breakpoints = self.breakpoints.clone();
        let mut projections = self.projections.clone();
        breakpoints.insert(pos, b);
        projections.insert(pos, e);
        GradedResolution::new(breakpoints, projections)
    }

    /// `max_k ‖E_k T − T E_k‖_F`.
    pub fn commutation_residual(&self, t: &QlOperator) -> f64 {
        self.projections
            .iter()
            .map(|e| (e.matrix() * t.matrix() - t.matrix() * e.matrix()).norm())
            .fold(0.0, f64::max)
    }

    /// `(b, rank E_b)` rows.
    pub fn csv_rows(&self) -> Vec<(f64, usize)> {
        self.breakpoints.iter().copied().zip(self.ranks()).collect()
    }

    pub fn to_json(&self, full: bool) -> ResolutionJson {
        ResolutionJson {
            v: self.level,
            n: self.n,
            breakpoints: self.breakpoints.clone(),
            ranks: self.ranks(),
            projections: full.then(|| self.projections.iter().map(OperatorFile::from).collect()),
        }
    }
}

/// Exported form of a [`GradedResolution`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResolutionJson {
    pub v: u32,
    pub n: usize,
    pub breakpoints: Vec<f64>,
    pub ranks: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub projections: Option<Vec<OperatorFile>>,
}

impl ResolutionJson {
    /// Rebuilds the resolution; requires the full projection matrices.
    pub fn into_resolution(self) -> Result<GradedResolution> {
        let projections = self
            .projections
            .ok_or_else(|| Error::InvalidArgument("resolution JSON lacks projection matrices".into()))?
            .into_iter()
            .map(OperatorFile::into_operator)
            .collect::<Result<Vec<_>>>()?;
        GradedResolution::new(self.breakpoints, projections)
    }
}

/// Eigen-clusters of the symmetric matrix of `T`.
fn eigen_clusters(t: &QlOperator) -> Result<(SymmetricEigen, Vec<linalg::EigenCluster>)> {
    let eig = linalg::jacobi_eigen(t.matrix())?;
    let clusters = linalg::cluster_eigenvalues(&eig.values, cluster_gap(&eig.values));
    Ok((eig, clusters))
}

/// Breakpoints are the distinct eigenvalues; `E_k` projects onto eigenvectors
/// with eigenvalue `≤ b_k`.
pub fn resolution_of_identity(t: &QlOperator) -> Result<GradedResolution> {
    require_self_adjoint(t)?;
    let (eig, clusters) = eigen_clusters(t)?;
    let mut breakpoints = Vec::with_capacity(clusters.len());
    let mut projections = Vec::with_capacity(clusters.len());
    let mut columns: Vec<usize> = Vec::new();
    for c in &clusters {
        columns.extend_from_slice(&c.columns);
        let e = QlOperator::from_matrix(t.level(), t.n(), linalg::projection_onto(&eig.vectors, &columns))?;
        breakpoints.push(c.value);
        projections.push(e);
    }
    GradedResolution::new(breakpoints, projections)
}

/// Smallest power-of-two partition of `[b_1 − 1, b_m]` with mesh at most `mesh`.
fn dyadic_partition(r: &GradedResolution, mesh: f64) -> Result<(f64, f64, u64)> {
    if !(mesh > 0.0) || !mesh.is_finite() {
        return Err(Error::InvalidArgument(format!("mesh must be positive, got {mesh}")));
    }
    let a = r.breakpoints[0] - 1.0;
    let len = r.breakpoints[r.breakpoints.len() - 1] - a;
    let mut cells: u64 = 1;
    while len / cells as f64 > mesh && cells < 1 << 60 {
        cells <<= 1;
    }
    Ok((a, len / cells as f64, cells))
}

/// `Σ_i (E(s_i) − E(s_{i−1})) s_i x` over the dyadic partition of
/// `[b_1 − 1, b_m]` with mesh `≤ mesh`, tags at right endpoints.
pub fn riemann_reconstruct(r: &GradedResolution, x: &ModuleVector, mesh: f64) -> Result<ModuleVector> {
    let (a, h, cells) = dyadic_partition(r, mesh)?;
    let tags = r
        .breakpoints
        .iter()
        .map(|&b| {
            let i = ((b - a) / h).ceil().clamp(1.0, cells as f64);
            a + i * h
        })
        .collect::<Vec<_>>();
    weighted_sum(r, x, &tags)
}

/// Same sum over an explicit increasing partition covering `(p_0, p_last]`
/// with `p_0 < b_1` and `p_last ≥ b_m`.
pub fn riemann_reconstruct_with_partition(r: &GradedResolution, x: &ModuleVector, points: &[f64]) -> Result<ModuleVector> {
    if points.len() < 2 || points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("partition must be strictly increasing with at least two points".into()));
    }
    let (first, last) = (points[0], points[points.len() - 1]);
    if first >= r.breakpoints[0] || last < r.breakpoints[r.breakpoints.len() - 1] {
        return Err(Error::InvalidArgument("partition does not cover the breakpoints".into()));
    }
    let tags = r
        .breakpoints
        .iter()
        .map(|&b| points[points.partition_point(|&p| p < b)])
        .collect::<Vec<_>>();
    weighted_sum(r, x, &tags)
}

fn weighted_sum(r: &GradedResolution, x: &ModuleVector, tags: &[f64]) -> Result<ModuleVector> {
    if x.level() != r.level || x.n() != r.n {
        return Err(Error::Shape("vector does not match the resolution".into()));
    }
    let xv = nalgebra::DVector::from_column_slice(x.flat());
    let mut acc = nalgebra::DVector::zeros(xv.len());
    for ((_, p), &tag) in r.increments().into_iter().zip(tags) {
        acc += (p * &xv) * tag;
    }
    ModuleVector::new(r.level, r.n, acc.as_slice().to_vec())
}

/// One similarity class `{λ + μu : u unit imaginary}` of the spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralPoint {
    /// Representative `λ + μ·i_1` (or `λ − μ·i_1`, whichever is verified).
    pub value: CdNumber,
    pub real_part: f64,
    /// `μ ≥ 0`.
    pub imag_modulus: f64,
    /// Real dimension of the eigenspace.
    pub multiplicity: usize,
    /// Smallest singular value of `T − R_z` at the representative.
    pub singular_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub self_adjoint: bool,
    pub points: Vec<SpectralPoint>,
}

impl Spectrum {
    pub fn values(&self) -> Vec<CdNumber> {
        self.points.iter().map(|p| p.value.clone()).collect()
    }

    /// True if `z` lies within `tol` of one of the classes.
    pub fn contains(&self, z: &CdNumber, tol: f64) -> bool {
        self.class_distance(z) <= tol
    }

    /// Distance from `z` to the nearest class `{λ + μu}`.
    pub fn class_distance(&self, z: &CdNumber) -> f64 {
        let (a, b) = (z.real_part(), z.imag().norm());
        self.points
            .iter()
            .map(|p| ((a - p.real_part).powi(2) + (b - p.imag_modulus).powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min)
    }

    /// Samples `z` at class distance `≥ margin` and records the smallest
    /// singular value of `T − R_z` seen.
    pub fn verify<R: Rng>(&self, t: &QlOperator, samples: usize, margin: f64, rng: &mut R) -> Result<SpectrumVerification> {
        let max_reported = self.points.iter().map(|p| p.singular_residual).fold(0.0, f64::max);
        let radius = self.points.iter().map(|p| p.value.norm()).fold(1.0, f64::max) * 2.0;
        let w = 1usize << t.level();
        let mut min_off = f64::INFINITY;
        let mut taken = 0;
        while taken < samples {
            let z = CdNumber::new(t.level(), (0..w).map(|_| rng.gen_range(-radius..radius)).collect())?;
            if self.class_distance(&z) < margin {
                continue;
            }
            taken += 1;
            min_off = min_off.min(min_singular_shifted(t, &z)?);
        }
        let tol = SPECTRAL_TOL * t.matrix().norm().max(1.0);
        Ok(SpectrumVerification {
            max_reported_residual: max_reported,
            min_offset_singular: min_off,
            reported_singular: max_reported <= tol,
            offset_nonsingular: min_off > tol,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumVerification {
    pub max_reported_residual: f64,
    pub min_offset_singular: f64,
    pub reported_singular: bool,
    pub offset_nonsingular: bool,
}

/// Smallest singular value of `T − R_z`.
pub fn min_singular_shifted(t: &QlOperator, z: &CdNumber) -> Result<f64> {
    let rz = QlOperator::right_scalar(t.n(), z)?;
    let sv = linalg::singular_values(&(t.matrix() - rz.matrix()))?;
    Ok(sv.last().copied().unwrap_or(0.0))
}

/// Spectrum of a normal operator with full adjoint.
///
/// The symmetric part `S` and the square `K²` of the skew part commute; their
/// joint eigenspaces carry `T = λ + K` with `K² = −μ²`.
pub fn spectrum(t: &QlOperator) -> Result<Spectrum> {
    if !t.has_full_adjoint() {
        return Err(Error::NoFullAdjoint);
    }
    let m = t.matrix();
    let mt = m.transpose();
    let normal_res = (&mt * m - m * &mt).norm();
    if normal_res > t.scaled_tol(STRUCTURAL_TOL) {
        return Err(Error::NotNormal(normal_res));
    }
    let s = (m + &mt) * 0.5;
    let k = (m - &mt) * 0.5;
    let self_adjoint = t.is_symmetric();
    let k2 = &k * &k;
    let eig = linalg::jacobi_eigen(&s)?;
    let scale = t.operator_norm().max(f64::MIN_POSITIVE);
    let clusters = linalg::cluster_eigenvalues(&eig.values, CLUSTER_GAP * scale);
    let mut points = Vec::new();
    for c in clusters {
        let v = DMatrix::from_fn(m.nrows(), c.columns.len(), |r, j| eig.vectors[(r, c.columns[j])]);
        let restricted = v.transpose() * &k2 * &v;
        let sub = linalg::jacobi_eigen(&restricted)?;
        // K² ≤ 0, so −eigenvalues are μ² in ascending μ after reversal
        let mut mu2: Vec<f64> = sub.values.iter().map(|x| (-x).max(0.0)).collect();
        mu2.reverse();
        let mus: Vec<f64> = mu2.iter().map(|x| x.sqrt()).collect();
        for group in linalg::cluster_eigenvalues(&mus, CLUSTER_GAP.sqrt() * scale) {
            let mu = if group.value < CLUSTER_GAP.sqrt() * scale { 0.0 } else { group.value };
            points.push(spectral_point(t, c.value, mu, group.columns.len())?);
        }
    }
    points.sort_by(|a, b| a.real_part.total_cmp(&b.real_part).then(a.imag_modulus.total_cmp(&b.imag_modulus)));
    Ok(Spectrum { self_adjoint, points })
}

fn spectral_point(t: &QlOperator, lambda: f64, mu: f64, multiplicity: usize) -> Result<SpectralPoint> {
    let level = t.level();
    let candidates: Vec<CdNumber> = if mu == 0.0 {
        vec![CdNumber::real(level, lambda)]
    } else if level == 0 {
        return Err(Error::InvalidArgument(format!(
            "non-real spectral value {lambda} ± {mu}i has no representative in the reals"
        )));
    } else {
        let i1 = CdNumber::basis(level, 1)?;
        vec![
            &CdNumber::real(level, lambda) + &i1.scale(mu),
            &CdNumber::real(level, lambda) - &i1.scale(mu),
        ]
    };
    let mut best: Option<(CdNumber, f64)> = None;
    for z in candidates {
        let r = min_singular_shifted(t, &z)?;
        if best.as_ref().map_or(true, |(_, br)| r < *br) {
            best = Some((z, r));
        }
    }
    let (value, singular_residual) = best.expect("at least one candidate");
    Ok(SpectralPoint { value, real_part: lambda, imag_modulus: mu, multiplicity, singular_residual })
}

/// Both positivity criteria with their evidence.
#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub min_eigenvalue: f64,
    /// `min eigenvalue ≥ −tol`.
    pub spectral: bool,
    /// `T + tol·I` admits a Cholesky factorization, i.e. `Re⟨Tx;x⟩ > −tol‖x‖²` for all `x`.
    pub cholesky: bool,
    /// Smallest `Re⟨Tx;x⟩/‖x‖²` over the random probes.
    pub probe_min: f64,
    /// Quadratic-form verdict: Cholesky succeeds and no probe falls below `−tol`.
    pub quadratic_form: bool,
    pub agree: bool,
}

pub fn positivity_report<R: Rng>(t: &QlOperator, tol: f64, probes: usize, rng: &mut R) -> Result<PositivityReport> {
    require_self_adjoint(t)?;
    let m = t.matrix();
    let eig = linalg::jacobi_eigen(m)?;
    let min_eigenvalue = eig.values.first().copied().unwrap_or(0.0);
    let spectral = min_eigenvalue >= -tol;
    let d = t.real_dim();
    let sym = (m + m.transpose()) * 0.5;
    let cholesky = (&sym + DMatrix::<f64>::identity(d, d) * tol).cholesky().is_some();
    let mut probe_min = f64::INFINITY;
    for _ in 0..probes {
        let x = crate::random::module_vector(rng, t.level(), t.n());
        let tx = t.apply(&x)?;
        probe_min = probe_min.min(tx.inner(&x)?.real_part() / x.norm_sqr());
    }
    let quadratic_form = cholesky && probe_min >= -tol;
    Ok(PositivityReport {
        min_eigenvalue,
        spectral,
        cholesky,
        probe_min,
        quadratic_form,
        agree: spectral == quadratic_form,
    })
}

/// Positivity at tolerance `1e-10·max(1, ‖T‖_F)`, cross-checked by the quadratic form.
pub fn is_positive(t: &QlOperator) -> Result<bool> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let report = positivity_report(t, t.scaled_tol(STRUCTURAL_TOL), 32, &mut rng)?;
    if !report.agree {
        return Err(Error::PositivityDisagreement);
    }
    Ok(report.spectral)
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessReport {
    pub agree: bool,
    pub max_residual: f64,
    /// First merged breakpoint where the projections differ.
    pub offending: Option<f64>,
}

/// Compares `E_1(b)` and `E_2(b)` at every breakpoint of either resolution.
pub fn resolution_uniqueness_check(r1: &GradedResolution, r2: &GradedResolution, tol: f64) -> Result<UniquenessReport> {
    if r1.level != r2.level || r1.n != r2.n {
        return Err(Error::Shape("resolutions of different shapes".into()));
    }
    let mut merged: Vec<f64> = r1.breakpoints.iter().chain(&r2.breakpoints).copied().collect();
    merged.sort_by(f64::total_cmp);
    merged.dedup_by(|a, b| (*a - *b).abs() <= tol * b.abs().max(1.0));
    let mut max_residual: f64 = 0.0;
    let mut offending = None;
    for &b in &merged {
        let d = r1.at(b, tol)?.distance(&r2.at(b, tol)?)?;
        max_residual = max_residual.max(d);
        if d > tol && offending.is_none() {
            offending = Some(b);
        }
    }
    Ok(UniquenessReport { agree: offending.is_none(), max_residual, offending })
}
