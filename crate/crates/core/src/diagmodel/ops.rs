//! Symbol-level operations on diagonal operators.

use serde::Serialize;

use super::domain::{domain_contains_with, DiagSymbol, PowerVector};
use super::seq::{PowerSeq, ResidueProfile, ALPHA_TOL};
use crate::cdnum::{kappa, CdNumber};
use crate::error::{Error, Result};
use crate::funcalc::Polynomial;

/// Largest index scanned explicitly when resolving a threshold.
pub const SCAN_CAP: u64 = 10_000_000;
const SEARCH_CAP: u64 = 1 << 50;

/// Symbol of the closure of `T + B`.
pub fn hat_add(t: &DiagSymbol, b: &DiagSymbol) -> Result<DiagSymbol> {
    Ok(DiagSymbol::new(t.seq().add(b.seq())?))
}

/// Symbol of the closure of `TB`: `t_n · b_n`.
pub fn hat_mul(t: &DiagSymbol, b: &DiagSymbol) -> Result<DiagSymbol> {
    Ok(DiagSymbol::new(t.seq().mul(b.seq())?))
}

/// Pointwise conjugate symbol.
pub fn adjoint_symbol(t: &DiagSymbol) -> DiagSymbol {
    DiagSymbol::new(t.seq().conj())
}

/// Constant symbol `c`, the operator `cI`.
pub fn scalar_symbol(c: CdNumber) -> DiagSymbol {
    DiagSymbol::new(PowerSeq::constant(c))
}

fn max_pointwise_residual(a: &DiagSymbol, b: &DiagSymbol, horizon: u64) -> f64 {
    (1..=horizon).map(|n| a.value(n).distance(&b.value(n))).fold(0.0, f64::max)
}

fn symbolically_equal(a: &DiagSymbol, b: &DiagSymbol) -> Result<bool> {
    a.seq().approx_eq(b.seq())
}

#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub max_residual: f64,
    pub symbolic: bool,
    pub exponents_match: bool,
    pub holds: bool,
}

fn law_check(lhs: &DiagSymbol, rhs: &DiagSymbol, horizon: u64) -> Result<LawCheck> {
    let max_residual = max_pointwise_residual(lhs, rhs, horizon);
    let symbolic = symbolically_equal(lhs, rhs)?;
    let (el, er) = (lhs.seq().leading_exponent(), rhs.seq().leading_exponent());
    let exponents_match = el == er || (el - er).abs() <= ALPHA_TOL;
    let scale = (1..=horizon.min(1000)).map(|n| lhs.value(n).norm()).fold(1.0, f64::max);
    let holds = max_residual <= 1e-12 * scale && symbolic && exponents_match;
    Ok(LawCheck { max_residual, symbolic, exponents_match, holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointLawsReport {
    /// `((bI)B +̂ T)* = B*(b*I) +̂ T*`
    pub sum_law: LawCheck,
    /// `(B ·̂ T)* = T* ·̂ B*`
    pub product_law: LawCheck,
    /// `T** = T` exactly.
    pub involution: bool,
    pub holds: bool,
}

pub fn adjoint_laws_check(t: &DiagSymbol, b_op: &DiagSymbol, b: &CdNumber, horizon: u64) -> Result<AdjointLawsReport> {
    let bi = scalar_symbol(b.clone());
    let lhs = adjoint_symbol(&hat_add(&hat_mul(&bi, b_op)?, t)?);
    let rhs = hat_add(&hat_mul(&adjoint_symbol(b_op), &adjoint_symbol(&bi))?, &adjoint_symbol(t))?;
    let sum_law = law_check(&lhs, &rhs, horizon)?;
    let lhs = adjoint_symbol(&hat_mul(b_op, t)?);
    let rhs = hat_mul(&adjoint_symbol(t), &adjoint_symbol(b_op))?;
    let product_law = law_check(&lhs, &rhs, horizon)?;
    let involution = adjoint_symbol(&adjoint_symbol(t)) == *t;
    let holds = sum_law.holds && product_law.holds && involution;
    Ok(AdjointLawsReport { sum_law, product_law, involution, holds })
}

/// The single grade `j` with every value in `ℝ·i_j`, if any.
pub fn symbol_grade(t: &DiagSymbol) -> Option<usize> {
    let seq = t.seq();
    let mut grade = None;
    let values = seq.head().iter().chain(seq.tail().iter().flat_map(|term| &term.values));
    for v in values {
        for (j, &c) in v.coeffs().iter().enumerate() {
            if c != 0.0 {
                match grade {
                    None => grade = Some(j),
                    Some(g) if g == j => {}
                    Some(_) => return None,
                }
            }
        }
    }
    Some(grade.unwrap_or(0))
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiCommutationReport {
    pub grade_b: usize,
    pub grade_t: usize,
    pub sign: i8,
    pub max_residual: f64,
    pub symbolic: bool,
    pub holds: bool,
}

/// `B ·̂ T = (−1)^{κ(j,k)} T ·̂ B` for symbols of single grades `j`, `k`.
pub fn quasi_commutation_check(b: &DiagSymbol, t: &DiagSymbol, horizon: u64) -> Result<QuasiCommutationReport> {
    let grade_b = symbol_grade(b).ok_or_else(|| Error::InvalidArgument("first symbol mixes grades".into()))?;
    let grade_t = symbol_grade(t).ok_or_else(|| Error::InvalidArgument("second symbol mixes grades".into()))?;
    let sign: i8 = if kappa(grade_b, grade_t) == 0 { 1 } else { -1 };
    let bt = hat_mul(b, t)?;
    let tb = hat_mul(t, b)?;
    let signed = if sign == 1 { tb } else { DiagSymbol::new(tb.seq().neg()) };
    let check = law_check(&bt, &signed, horizon)?;
    Ok(QuasiCommutationReport {
        grade_b,
        grade_t,
        sign,
        max_residual: check.max_residual,
        symbolic: check.symbolic,
        holds: check.holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AffiliationReport {
    /// `T* ·̂ T = T ·̂ T*`.
    pub normal: bool,
    pub max_residual: f64,
    pub symbolic: bool,
    /// `T* ·̂ T` is real and nonnegative on the horizon.
    pub modulus_nonnegative: bool,
    /// Bounding projections commute with `T` on the horizon.
    pub bounding_commutes: bool,
}

pub fn is_affiliated_normal(t: &DiagSymbol, horizon: u64) -> Result<AffiliationReport> {
    let ts = adjoint_symbol(t);
    let left = hat_mul(&ts, t)?;
    let right = hat_mul(t, &ts)?;
    let check = law_check(&left, &right, horizon)?;
    let modulus_nonnegative = (1..=horizon).all(|n| {
        let v = left.value(n);
        v.is_real(1e-12 * v.norm().max(1.0)) && v.real_part() >= -1e-12
    });
    // F_m is multiplication by the indicator of |t_n| ≤ m
    let m = t.value(1).norm();
    let bounding_commutes = (1..=horizon).all(|n| {
        let tn = t.value(n);
        let f = CdNumber::real(tn.level(), if tn.norm() <= m { 1.0 } else { 0.0 });
        (&f * &tn).distance(&(&tn * &f)) == 0.0
    });
    Ok(AffiliationReport {
        normal: check.holds,
        max_residual: check.max_residual,
        symbolic: check.symbolic,
        modulus_nonnegative,
        bounding_commutes,
    })
}

/// First `n` in `[lo, SEARCH_CAP]` with `pred(n)`, for `pred` monotone false → true.
fn first_true(lo: u64, pred: impl Fn(u64) -> bool) -> Result<u64> {
    if pred(lo) {
        return Ok(lo);
    }
    let mut hi = lo.max(1);
    while !pred(hi) {
        if hi >= SEARCH_CAP {
            return Err(Error::InvalidArgument("threshold is not resolved below 2^50".into()));
        }
        hi = hi.saturating_mul(2).min(SEARCH_CAP);
    }
    let mut lo = lo;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Support of `_mF` on the indices past `scanned_to` in one residue class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResidueTail {
    None,
    All,
    UpTo(u64),
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionSupport {
    pub scanned_to: u64,
    /// Indices `≤ scanned_to` in the support.
    pub explicit: Vec<u64>,
    pub period: usize,
    /// Indexed by `(n − 1) mod period`, for `n > scanned_to`.
    pub tails: Vec<ResidueTail>,
}

impl ProjectionSupport {
    pub fn contains(&self, n: u64) -> bool {
        if n <= self.scanned_to {
            return self.explicit.binary_search(&n).is_ok();
        }
        match self.tails[((n - 1) % self.period as u64) as usize] {
            ResidueTail::None => false,
            ResidueTail::All => true,
            ResidueTail::UpTo(k) => n <= k,
        }
    }

    /// Number of indices, `None` if infinite.
    pub fn size(&self) -> Option<u64> {
        let mut total = self.explicit.len() as u64;
        for (r, tail) in self.tails.iter().enumerate() {
            match tail {
                ResidueTail::None => {}
                ResidueTail::All => return None,
                ResidueTail::UpTo(k) => total += count_in_class(self.scanned_to + 1, *k, r, self.period),
            }
        }
        Some(total)
    }

    /// True if every index is in the support.
    pub fn is_everything(&self) -> bool {
        self.explicit.len() as u64 == self.scanned_to && self.tails.iter().all(|t| *t == ResidueTail::All)
    }
}

/// Count of `n ∈ [a, b]` with `(n − 1) mod p = r`.
fn count_in_class(a: u64, b: u64, r: usize, p: usize) -> u64 {
    if b < a {
        return 0;
    }
    let below = |x: u64| if x == 0 { 0 } else { (x - 1) / p as u64 + u64::from(((x - 1) % p as u64) >= r as u64) };
    below(b) - below(a - 1)
}

/// Largest `n ≤ k` in class `r`.
fn last_in_class(k: u64, r: usize, p: usize) -> Option<u64> {
    if k == 0 {
        return None;
    }
    let cls = (k - 1) % p as u64;
    let back = (cls + p as u64 - r as u64) % p as u64;
    (k > back).then(|| k - back)
}

/// First `n > after` in class `r`.
fn first_in_class_after(after: u64, r: usize, p: usize) -> u64 {
    let n = after + 1;
    let cls = (n - 1) % p as u64;
    n + (r as u64 + p as u64 - cls) % p as u64
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundingProjection {
    pub threshold: f64,
    pub support: ProjectionSupport,
    /// `‖T·_mF‖ = sup |t_n|` over the support.
    pub norm: f64,
    pub norm_within_threshold: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundingSequence {
    pub thresholds: Vec<f64>,
    pub projections: Vec<BoundingProjection>,
}

impl BoundingSequence {
    /// Position of the first projection whose support contains `n`.
    pub fn first_containing(&self, n: u64) -> Option<usize> {
        self.projections.iter().position(|p| p.support.contains(n))
    }
}

struct ResidueRule {
    tail: ResidueTail,
    /// Indices up to here must be scanned explicitly.
    scan: u64,
    /// Supremum of `|t_n|` past the scan in this class.
    tail_sup: Box<dyn Fn(u64) -> f64>,
}

fn residue_rule(p: &ResidueProfile, m: f64) -> Result<ResidueRule> {
    let zero_sup: Box<dyn Fn(u64) -> f64> = Box::new(|_| 0.0);
    if p.groups.is_empty() {
        return Ok(ResidueRule { tail: ResidueTail::All, scan: 0, tail_sup: zero_sup });
    }
    let (gamma, a) = (p.groups[0].0, p.groups[0].1.norm());
    let rest: Vec<(f64, f64)> = p.groups[1..].iter().map(|(b, c)| (*b, c.norm())).collect();
    let rest_at = move |n: u64| rest.iter().map(|(b, c)| c * (n as f64).powf(*b)).sum::<f64>();
    let single = p.groups.len() == 1;
    let tol = 1e-12 * m.max(1.0);

    if gamma > ALPHA_TOL {
        if single {
            let raw = (m / a).powf(1.0 / gamma);
            if raw > SEARCH_CAP as f64 {
                return Err(Error::InvalidArgument(format!("threshold {m} reaches past index 2^50")));
            }
            let mut k = raw.floor() as u64;
            while a * ((k + 1) as f64).powf(gamma) <= m {
                k += 1;
            }
            while k >= 1 && a * (k as f64).powf(gamma) > m {
                k -= 1;
            }
            let sup: Box<dyn Fn(u64) -> f64> = Box::new(move |n| a * (n as f64).powf(gamma));
            return Ok(ResidueRule { tail: ResidueTail::UpTo(k), scan: 0, tail_sup: sup });
        }
        let rest_ratio = {
            let r = rest_at.clone();
            move |n: u64| r(n) / (n as f64).powf(gamma)
        };
        let n_a = first_true(1, |n| a - rest_ratio(n) > 0.0)?;
        let n_env = first_true(n_a, |n| (n as f64).powf(gamma) * a - rest_at(n) > m)?;
        return Ok(ResidueRule { tail: ResidueTail::None, scan: n_env - 1, tail_sup: zero_sup });
    }

    if gamma.abs() <= ALPHA_TOL {
        if single {
            let tail = if a <= m + tol { ResidueTail::All } else { ResidueTail::None };
            let sup: Box<dyn Fn(u64) -> f64> = Box::new(move |_| a);
            return Ok(ResidueRule { tail, scan: 0, tail_sup: sup });
        }
        if (a - m).abs() <= tol {
            return Err(Error::BorderlineThreshold(m));
        }
        if a < m {
            let n_env = first_true(1, |n| a + rest_at(n) <= m)?;
            let sup: Box<dyn Fn(u64) -> f64> = Box::new(move |n| a + rest_at(n));
            return Ok(ResidueRule { tail: ResidueTail::All, scan: n_env - 1, tail_sup: sup });
        }
        let n_env = first_true(1, |n| a - rest_at(n) > m)?;
        return Ok(ResidueRule { tail: ResidueTail::None, scan: n_env - 1, tail_sup: zero_sup });
    }

    // γ < 0: the class decays to 0
    if m <= 0.0 {
        return Ok(ResidueRule { tail: ResidueTail::None, scan: 0, tail_sup: zero_sup });
    }
    let n_env = if single {
        let raw = (a / m).powf(1.0 / -gamma);
        if raw > SEARCH_CAP as f64 {
            return Err(Error::InvalidArgument(format!("threshold {m} is resolved only past index 2^50")));
        }
        first_true((raw.floor() as u64).max(1), |n| a * (n as f64).powf(gamma) <= m)?
    } else {
        first_true(1, |n| a * (n as f64).powf(gamma) + rest_at(n) <= m)?
    };
    let sup: Box<dyn Fn(u64) -> f64> = Box::new(move |n| a * (n as f64).powf(gamma) + rest_at(n));
    Ok(ResidueRule { tail: ResidueTail::All, scan: n_env - 1, tail_sup: sup })
}

fn bounding_projection(t: &DiagSymbol, m: f64) -> Result<BoundingProjection> {
    if !(m >= 0.0) || !m.is_finite() {
        return Err(Error::InvalidArgument(format!("threshold must be finite and nonnegative, got {m}")));
    }
    let seq = t.seq();
    let period = seq.period();
    let rules = seq.residue_profiles().iter().map(|p| residue_rule(p, m)).collect::<Result<Vec<_>>>()?;
    let scanned_to = rules.iter().map(|r| r.scan).max().unwrap_or(0).max(seq.head_len());
    if scanned_to > SCAN_CAP {
        return Err(Error::InvalidArgument(format!("threshold {m} needs {scanned_to} explicit indices")));
    }
    let mut buf = vec![0.0; 1usize << seq.level()];
    let mut explicit = Vec::new();
    let mut norm: f64 = 0.0;
    for n in 1..=scanned_to {
        let v = seq.norm_sqr_at(n, &mut buf).sqrt();
        if v <= m {
            explicit.push(n);
            norm = norm.max(v);
        }
    }
    let tails: Vec<ResidueTail> = rules.iter().map(|r| r.tail).collect();
    for (r, rule) in rules.iter().enumerate() {
        let probe = match rule.tail {
            ResidueTail::None => None,
            ResidueTail::All => Some(first_in_class_after(scanned_to, r, period)),
            ResidueTail::UpTo(k) => last_in_class(k, r, period).filter(|&n| n > scanned_to),
        };
        if let Some(n) = probe {
            norm = norm.max((rule.tail_sup)(n));
        }
    }
    let support = ProjectionSupport { scanned_to, explicit, period, tails };
    Ok(BoundingProjection { threshold: m, support, norm, norm_within_threshold: norm <= m * (1.0 + 1e-12) })
}

/// Projections `_mF` onto `{e_n : |t_n| ≤ m}` for increasing thresholds.
pub fn bounding_sequence(t: &DiagSymbol, thresholds: &[f64]) -> Result<BoundingSequence> {
    if thresholds.is_empty() || thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("thresholds must be nonempty and strictly increasing".into()));
    }
    let projections = thresholds.iter().map(|&m| bounding_projection(t, m)).collect::<Result<Vec<_>>>()?;
    Ok(BoundingSequence { thresholds: thresholds.to_vec(), projections })
}

/// Closure of `{t_n}`: head values, tail curves, limit points, and the
/// point at infinity when some class grows.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumClosure {
    pub symbol: DiagSymbol,
    pub head: Vec<CdNumber>,
    pub limit_points: Vec<CdNumber>,
    pub unbounded: bool,
}

/// Explicit scan length for classes with several exponents.
const CLOSURE_SCAN: u64 = 1_000_000;

impl SpectrumClosure {
    /// Distance from `z` to the closure.
    pub fn distance(&self, z: &CdNumber) -> f64 {
        let seq = self.symbol.seq();
        let mut best = self
            .head
            .iter()
            .chain(&self.limit_points)
            .map(|v| v.distance(z))
            .fold(f64::INFINITY, f64::min);
        let period = seq.period();
        let start = seq.head_len();
        for p in seq.residue_profiles() {
            let r = p.residue;
            let first = first_in_class_after(start, r, period);
            best = best.min(seq.value(first).distance(z));
            match p.groups.as_slice() {
                [] => {}
                [(gamma, c)] if gamma.abs() > ALPHA_TOL => {
                    // nearest point of n ↦ c n^γ to z along the ray through c
                    let proj = z.coeffs().iter().zip(c.coeffs()).map(|(a, b)| a * b).sum::<f64>() / c.norm_sqr();
                    if proj > 0.0 {
                        let n_star = proj.powf(1.0 / gamma);
                        if n_star.is_finite() && n_star < SEARCH_CAP as f64 {
                            let center = (n_star as u64).max(first);
                            let lo = center.saturating_sub(2 * period as u64).max(first);
                            let mut n = first_in_class_after(lo.saturating_sub(1), r, period);
                            while n <= center + 2 * period as u64 {
                                best = best.min(seq.value(n).distance(z));
                                n += period as u64;
                            }
                        }
                    }
                }
                [_] => {}
                _ => {
                    let mut n = first;
                    while n <= CLOSURE_SCAN {
                        best = best.min(seq.value(n).distance(z));
                        n += period as u64;
                    }
                }
            }
        }
        best
    }

    pub fn contains(&self, z: &CdNumber, tol: f64) -> bool {
        self.distance(z) <= tol
    }
}

pub fn spectrum_closure(t: &DiagSymbol) -> SpectrumClosure {
    let seq = t.seq();
    let mut limit_points: Vec<CdNumber> = Vec::new();
    let mut unbounded = false;
    for p in seq.residue_profiles() {
        let lead = p.leading();
        let limit = if lead > ALPHA_TOL {
            unbounded = true;
            None
        } else if lead.abs() <= ALPHA_TOL {
            p.leading_coefficient().cloned()
        } else {
            Some(CdNumber::zero(seq.level()))
        };
        if let Some(l) = limit {
            if !limit_points.contains(&l) {
                limit_points.push(l);
            }
        }
    }
    SpectrumClosure { symbol: t.clone(), head: seq.head().to_vec(), limit_points, unbounded }
}

fn require_nonnegative(t: &DiagSymbol, name: &str) -> Result<()> {
    let seq = t.seq();
    let bad_head = seq.head().iter().any(|c| !c.is_real(0.0) || c.real_part() < 0.0);
    let bad_tail = seq.tail().iter().flat_map(|term| &term.values).any(|c| !c.is_real(0.0) || c.real_part() < 0.0);
    if bad_head || bad_tail {
        return Err(Error::NegativeSymbol(format!("{name} has a non-real or negative coefficient")));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct PositiveSumReport {
    pub checked: usize,
    /// Vectors in `D(T +̂ Q)` of which the sum domain was decided.
    pub in_sum_domain: usize,
    pub violations: usize,
}

/// `x ∈ D(T +̂ Q) ⇒ x ∈ D(T) ∩ D(Q)` for nonnegative real symbols.
pub fn positive_sum_check(t: &DiagSymbol, q: &DiagSymbol, samples: &[PowerVector], horizon: u64) -> Result<PositiveSumReport> {
    require_nonnegative(t, "first symbol")?;
    require_nonnegative(q, "second symbol")?;
    let sum = hat_add(t, q)?;
    let mut in_sum_domain = 0;
    let mut violations = 0;
    for x in samples {
        if domain_contains_with(&sum, x, horizon)?.member {
            in_sum_domain += 1;
            let both = domain_contains_with(t, x, horizon)?.member && domain_contains_with(q, x, horizon)?.member;
            if !both {
                violations += 1;
            }
        }
    }
    Ok(PositiveSumReport { checked: samples.len(), in_sum_domain, violations })
}

/// `P∘t`: constants as constant symbols, `z^m` as `t^m`, products in the
/// term's bracketing order.
pub fn symbol_polynomial(p: &Polynomial, t: &DiagSymbol) -> Result<DiagSymbol> {
    p.validate()?;
    if p.level() != t.level() {
        return Err(Error::LevelMismatch(t.level(), p.level()));
    }
    let seq = p.fold(
        |c| Ok(PowerSeq::constant(c.clone())),
        |m| {
            let mut acc = PowerSeq::constant(CdNumber::one(t.level()));
            for _ in 0..m {
                acc = acc.mul(t.seq())?;
            }
            Ok(acc)
        },
        |a, b| a.mul(b),
        |a, b| a.add(b),
    )?;
    Ok(DiagSymbol::new(seq))
}
