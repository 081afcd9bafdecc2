//! Functional calculus `f ↦ f(T)` for finite-dimensional self-adjoint
//! operators, spectral measures, and polynomials with explicit bracketing.
//!
//! `f(T) = Σ_k P_k L_{f(b_k)} P_k` where `P_k` are the eigenprojections of `T`
//! and `L_c` is entrywise left multiplication. For real-valued `f` this is the
//! usual `Σ_k f(b_k) P_k`.

mod poly;
mod step;

pub use poly::{Factor, Polynomial, Term};
pub use step::{real_fn, Builtin, BuiltinFunction, Cell, FnFunction, FunctionFile, SpectralFunction, StepFunction, SNAP_TOL};

use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;

use crate::cdnum::CdNumber;
use crate::error::{Error, Result};
use crate::hmodule::ModuleVector;
use crate::linalg;
use crate::qlop::{QlOperator, ARITHMETIC_TOL};
use crate::spectral::{self, GradedResolution};

fn values_on_spectrum<F: SpectralFunction + ?Sized>(f: &F, r: &GradedResolution) -> Result<Vec<CdNumber>> {
    if f.level() != r.level() {
        return Err(Error::LevelMismatch(r.level(), f.level()));
    }
    r.breakpoints()
        .iter()
        .map(|&b| f.eval(b).ok_or(Error::FunctionUndefined(b)))
        .collect()
}

fn sandwich(p: &DMatrix<f64>, c: &CdNumber, n: usize) -> Result<DMatrix<f64>> {
    if c.is_real(0.0) {
        return Ok(p * c.real_part());
    }
    let l = QlOperator::left_scalar(n, c)?;
    Ok(p * l.matrix() * p)
}

/// `f(T)` from a precomputed resolution.
pub fn apply_with_resolution<F: SpectralFunction + ?Sized>(f: &F, r: &GradedResolution) -> Result<QlOperator> {
    let values = values_on_spectrum(f, r)?;
    let d = r.n() << r.level();
    let mut m = DMatrix::zeros(d, d);
    for ((_, p), c) in r.increments().into_iter().zip(&values) {
        m += sandwich(&p, c, r.n())?;
    }
    QlOperator::from_matrix(r.level(), r.n(), m)
}

/// `f(T)` for self-adjoint `T`.
pub fn apply<F: SpectralFunction + ?Sized>(f: &F, t: &QlOperator) -> Result<QlOperator> {
    apply_with_resolution(f, &spectral::resolution_of_identity(t)?)
}

/// `‖f(T)‖` against `max_{sp(T)} |f|`.
#[derive(Clone, Debug, Serialize)]
pub struct NormBound {
    pub norm: f64,
    pub sup: f64,
    pub holds: bool,
}

pub fn norm_bound<F: SpectralFunction + ?Sized>(f: &F, t: &QlOperator) -> Result<NormBound> {
    let r = spectral::resolution_of_identity(t)?;
    let sup = values_on_spectrum(f, &r)?.iter().map(CdNumber::norm).fold(0.0, f64::max);
    let norm = apply_with_resolution(f, &r)?.operator_norm();
    Ok(NormBound { norm, sup, holds: norm <= sup + 1e-10 })
}

/// `E(V) = χ_V(T)`.
pub fn spectral_measure(t: &QlOperator, cell: Cell) -> Result<QlOperator> {
    apply(&StepFunction::indicator(t.level(), cell), t)
}

/// `⟨E(V) h(T) x; x⟩ = Σ_{b_k ∈ V} ⟨P_k L_{h(b_k)} P_k x; x⟩`.
pub fn scalar_measure<F: SpectralFunction + ?Sized>(t: &QlOperator, x: &ModuleVector, cell: Cell, h: &F) -> Result<CdNumber> {
    let r = spectral::resolution_of_identity(t)?;
    let values = values_on_spectrum(h, &r)?;
    if x.level() != t.level() || x.n() != t.n() {
        return Err(Error::Shape("vector does not match the operator".into()));
    }
    let xv = nalgebra::DVector::from_column_slice(x.flat());
    let mut acc = CdNumber::zero(t.level());
    for ((b, p), c) in r.increments().into_iter().zip(&values) {
        if !cell.contains(b) {
            continue;
        }
        let y = sandwich(&p, c, t.n())? * &xv;
        let y = ModuleVector::new(t.level(), t.n(), y.as_slice().to_vec())?;
        acc = &acc + &y.inner(x)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComposeReport {
    pub residual: f64,
    pub holds: bool,
}

/// `(f∘g)(T)` against `f(g(T))`; `g` must be real on `sp(T)`.
pub fn compose_check<F, G>(f: &F, g: &G, t: &QlOperator, tol: f64) -> Result<ComposeReport>
where
    F: SpectralFunction + ?Sized,
    G: SpectralFunction + ?Sized,
{
    let r = spectral::resolution_of_identity(t)?;
    for (&b, gb) in r.breakpoints().iter().zip(values_on_spectrum(g, &r)?) {
        if !gb.is_real(ARITHMETIC_TOL * gb.norm().max(1.0)) {
            return Err(Error::NotComposable(b));
        }
    }
    let fg = FnFunction::new(t.level(), |s| g.eval(s).and_then(|y| f.eval(y.real_part())));
    let lhs = apply_with_resolution(&fg, &r)?;
    let gt = apply_with_resolution(g, &r)?;
    let rhs = apply(f, &gt)?;
    let residual = lhs.distance(&rhs)?;
    Ok(ComposeReport { residual, holds: residual <= tol })
}

/// The positive square root.
pub fn positive_sqrt(t: &QlOperator) -> Result<QlOperator> {
    if !spectral::is_positive(t)? {
        let min = linalg::jacobi_eigen(t.matrix())?.values[0];
        return Err(Error::NotPositive(min));
    }
    apply(&BuiltinFunction { kind: Builtin::Sqrt, level: t.level() }, t)
}

/// `P(T)` with constants acting as `L_a` and `z^m` as `T^m`, composed in the
/// term's bracketing order.
pub fn polynomial_apply(p: &Polynomial, t: &QlOperator) -> Result<QlOperator> {
    p.validate()?;
    if p.level() != t.level() {
        return Err(Error::LevelMismatch(t.level(), p.level()));
    }
    p.fold(
        |c| QlOperator::left_scalar(t.n(), c),
        |m| t.powi(m),
        |a, b| a.compose(b),
        |a, b| a.add(b),
    )
}

/// Empirical constants in `c|z|^n ≤ |P(z)|` for `|z| ∈ (R, 10R]`.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub degree: u32,
    pub radius: f64,
    pub samples: usize,
    /// Minimum of `|P_top(z)| / |z|^n` with `P_top` the top-degree terms.
    pub c_top: f64,
    /// Minimum of `|P(z)| / |z|^n`.
    pub c_full: f64,
}

impl GrowthReport {
    pub fn holds(&self, c_min: f64) -> bool {
        self.c_top >= c_min && self.c_full >= c_min
    }
}

pub fn growth_check<R: Rng>(p: &Polynomial, radius: f64, samples: usize, rng: &mut R) -> Result<GrowthReport> {
    p.validate()?;
    if !(radius > 0.0) || samples == 0 {
        return Err(Error::InvalidArgument("growth check needs a positive radius and samples".into()));
    }
    let top = p.top_degree();
    let degree = p.degree();
    let w = 1usize << p.level();
    let (mut c_top, mut c_full) = (f64::INFINITY, f64::INFINITY);
    for _ in 0..samples {
        let mut dir: Vec<f64> = (0..w).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let modulus = radius * rng.gen_range(1.0f64..10.0).max(1.0 + f64::EPSILON);
        dir.iter_mut().for_each(|x| *x *= modulus / norm);
        let z = CdNumber::new(p.level(), dir)?;
        let scale = z.norm().powi(degree as i32);
        c_top = c_top.min(top.eval(&z)?.norm() / scale);
        c_full = c_full.min(p.eval(&z)?.norm() / scale);
    }
    Ok(GrowthReport { degree, radius, samples, c_top, c_full })
}

/// Orthonormal real basis of `range(E)` as matrix columns.
pub fn range_basis(e: &QlOperator) -> Result<DMatrix<f64>> {
    let eig = linalg::jacobi_eigen(e.matrix())?;
    let cols: Vec<usize> = (0..eig.values.len()).filter(|&i| eig.values[i] > 0.5).collect();
    Ok(DMatrix::from_fn(e.real_dim(), cols.len(), |r, c| eig.vectors[(r, cols[c])]))
}

/// `Bᵀ A B` for a basis `B` of `range(E)`.
pub fn restrict_to_range(a: &DMatrix<f64>, basis: &DMatrix<f64>) -> DMatrix<f64> {
    basis.transpose() * a * basis
}

/// `f(M)` for a real symmetric matrix and real-valued `f`.
pub fn apply_real_symmetric<F: SpectralFunction + ?Sized>(f: &F, m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = linalg::jacobi_eigen(m)?;
    let d = m.nrows();
    let mut out = DMatrix::zeros(d, d);
    for (i, &lambda) in eig.values.iter().enumerate() {
        let y = f.eval(lambda).ok_or(Error::FunctionUndefined(lambda))?;
        if !y.is_real(ARITHMETIC_TOL * y.norm().max(1.0)) {
            return Err(Error::NotComposable(lambda));
        }
        let col = eig.vectors.column(i);
        out += col * col.transpose() * y.real_part();
    }
    Ok(out)
}

/// Outcome of feeding an increasing chain `f_1 ≤ … ≤ f_m` through the calculus.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    /// `f_i ≤ f_{i+1}` on `sp(T)`.
    pub pointwise_monotone: bool,
    /// `f_{i+1}(T) − f_i(T)` positive for every `i`.
    pub operator_monotone: bool,
    /// `sup_i f_i = f` on `sp(T)`.
    pub supremum_matches: bool,
    /// `‖f_i(T) − f(T)‖_F` for each `i`.
    pub residuals: Vec<f64>,
    /// First index (0-based) with `f_i(T) = f(T)` within tolerance.
    pub attained_at: Option<usize>,
}

pub fn monotone_chain_check<F, G>(chain: &[F], sup: &G, t: &QlOperator, tol: f64) -> Result<ChainReport>
where
    F: SpectralFunction,
    G: SpectralFunction,
{
    let r = spectral::resolution_of_identity(t)?;
    let real_values = |f: &dyn SpectralFunction| -> Result<Vec<f64>> {
        values_on_spectrum(f, &r)?
            .into_iter()
            .zip(r.breakpoints())
            .map(|(y, &b)| if y.is_real(ARITHMETIC_TOL) { Ok(y.real_part()) } else { Err(Error::NotComposable(b)) })
            .collect()
    };
    let chain_values = chain.iter().map(|f| real_values(f)).collect::<Result<Vec<_>>>()?;
    let sup_values = real_values(sup)?;
    let pointwise_monotone = chain_values.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| a <= b));
    let supremum_matches = (0..sup_values.len()).all(|k| {
        let s = chain_values.iter().map(|v| v[k]).fold(f64::NEG_INFINITY, f64::max);
        (s - sup_values[k]).abs() <= tol
    });
    let ops = chain.iter().map(|f| apply_with_resolution(f, &r)).collect::<Result<Vec<_>>>()?;
    let target = apply_with_resolution(sup, &r)?;
    let mut operator_monotone = true;
    for w in ops.windows(2) {
        let diff = w[1].matrix() - w[0].matrix();
        if linalg::jacobi_eigen(&diff)?.values.first().copied().unwrap_or(0.0) < -tol {
            operator_monotone = false;
        }
    }
    let residuals = ops.iter().map(|o| o.distance(&target)).collect::<Result<Vec<_>>>()?;
    let attained_at = residuals.iter().position(|&x| x <= tol);
    Ok(ChainReport { pointwise_monotone, operator_monotone, supremum_matches, residuals, attained_at })
}
