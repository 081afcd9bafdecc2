//! Diagonal symbols, power-law vectors and domain membership verdicts.

use serde::{Deserialize, Serialize};

use super::seq::{PowerSeq, ALPHA_TOL};
use crate::error::{Error, Result};

/// Largest partial-sum checkpoint used by default.
pub const DEFAULT_HORIZON: u64 = 1_000_000;
/// Bound whose crossing is reported for divergent sums.
pub const CROSSING_BOUND: f64 = 1e3;
/// Relative margin a partial sum must clear to count as exceeding a bound.
const EXCEED_TOL: f64 = 1e-12;

/// Symbol `t_n` of the diagonal operator `T e_n = t_n e_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiagSymbol(PowerSeq);

impl DiagSymbol {
    pub fn new(seq: PowerSeq) -> Self {
        DiagSymbol(seq)
    }

    pub fn seq(&self) -> &PowerSeq {
        &self.0
    }

    pub fn into_seq(self) -> PowerSeq {
        self.0
    }

    pub fn level(&self) -> u32 {
        self.0.level()
    }

    pub fn value(&self, n: u64) -> crate::cdnum::CdNumber {
        self.0.value(n)
    }
}

/// Square-summable vector `x = Σ e_n x_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PowerSeq", into = "PowerSeq")]
pub struct PowerVector(PowerSeq);

impl TryFrom<PowerSeq> for PowerVector {
    type Error = Error;

    fn try_from(seq: PowerSeq) -> Result<Self> {
        PowerVector::new(seq)
    }
}

impl From<PowerVector> for PowerSeq {
    fn from(v: PowerVector) -> Self {
        v.0
    }
}

impl PowerVector {
    /// Rejects tails with `2β ≥ −1`.
    pub fn new(seq: PowerSeq) -> Result<Self> {
        let beta = seq.leading_exponent();
        if 2.0 * beta >= -1.0 - ALPHA_TOL {
            return Err(Error::NotSquareSummable(beta));
        }
        Ok(PowerVector(seq))
    }

    pub fn seq(&self) -> &PowerSeq {
        &self.0
    }

    pub fn level(&self) -> u32 {
        self.0.level()
    }

    pub fn value(&self, n: u64) -> crate::cdnum::CdNumber {
        self.0.value(n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PartialSum {
    pub n: u64,
    pub value: f64,
}

/// First index where the partial sums exceed `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub bound: f64,
    pub n: f64,
    /// False when extrapolated from the leading power law past the horizon.
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DomainVerdict {
    pub member: bool,
    /// `2γ` where `|t_n x_n| ≍ n^γ`; `−∞` when the product vanishes eventually.
    pub exponent: f64,
    /// `2γ = −1`: harmonic, decided divergent.
    pub borderline: bool,
    pub partial_sums: Vec<PartialSum>,
    /// Rigorous enclosure of the full sum, for members.
    pub tail_bracket: Option<[f64; 2]>,
    /// Consecutive partial sums differ by at most the tail bound.
    pub cauchy: Option<bool>,
    pub crossing: Option<Crossing>,
}

fn checkpoints(horizon: u64) -> Vec<u64> {
    let mut cps = Vec::new();
    let mut c = 1000u64;
    while c <= horizon {
        cps.push(c);
        c = c.saturating_mul(10);
    }
    if cps.last() != Some(&horizon) {
        cps.push(horizon);
    }
    cps
}

/// `∫_a^∞ n^e dn` for `e < −1`.
fn tail_integral(a: f64, e: f64) -> f64 {
    a.powf(e + 1.0) / (-e - 1.0)
}

/// Upper bound on `Σ_{n>N} |y_n|²` from per-exponent coefficient maxima.
fn upper_tail(y: &PowerSeq, n: u64) -> f64 {
    let profiles = y.residue_profiles();
    let a = n as f64;
    let single = profiles.iter().all(|p| p.groups.len() <= 1);
    let mut by_alpha: Vec<(f64, f64)> = Vec::new();
    for p in &profiles {
        for (alpha, c) in &p.groups {
            match by_alpha.iter_mut().find(|(x, _)| (x - alpha).abs() <= ALPHA_TOL) {
                Some(slot) => slot.1 = slot.1.max(c.norm()),
                None => by_alpha.push((*alpha, c.norm())),
            }
        }
    }
    if single {
        // |y_n|² = |c_r|² n^{2α_r} on each residue class
        by_alpha.iter().map(|&(alpha, c)| c * c * tail_integral(a, 2.0 * alpha)).sum()
    } else {
        let mut total = 0.0;
        for &(x, cx) in &by_alpha {
            for &(y, cy) in &by_alpha {
                total += cx * cy * tail_integral(a, x + y);
            }
        }
        total
    }
}

/// Lower bound on `Σ_{n>N} |y_n|²`; nonzero only for a single exponent on every class.
fn lower_tail(y: &PowerSeq, n: u64) -> f64 {
    let profiles = y.residue_profiles();
    if profiles.iter().any(|p| p.groups.len() != 1) {
        return 0.0;
    }
    let alpha = profiles[0].groups[0].0;
    if profiles.iter().any(|p| (p.groups[0].0 - alpha).abs() > ALPHA_TOL) {
        return 0.0;
    }
    let kmin = profiles.iter().map(|p| p.groups[0].1.norm_sqr()).fold(f64::INFINITY, f64::min);
    kmin * tail_integral(n as f64 + 1.0, 2.0 * alpha)
}

/// Verdict on `Σ_n |y_n|² < ∞`, with partial sums up to `horizon`.
pub fn square_sum_verdict(y: &PowerSeq, horizon: u64) -> Result<DomainVerdict> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be positive".into()));
    }
    let gamma = y.leading_exponent();
    let exponent = 2.0 * gamma;
    let borderline = (exponent + 1.0).abs() <= ALPHA_TOL;
    let member = exponent < -1.0 && !borderline;

    let cps = checkpoints(horizon);
    let w = 1usize << y.level();
    let mut buf = vec![0.0; w];
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut partial_sums = Vec::with_capacity(cps.len());
    let mut crossing = None;
    let mut next = 0;
    for n in 1..=horizon {
        // Neumaier summation, fixed order
        let term = y.norm_sqr_at(n, &mut buf);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if crossing.is_none() && sum + comp > CROSSING_BOUND * (1.0 + EXCEED_TOL) {
            crossing = Some(Crossing { bound: CROSSING_BOUND, n: n as f64, exact: true });
        }
        if n == cps[next] {
            partial_sums.push(PartialSum { n, value: sum + comp });
            next += 1;
        }
    }
    let last = *partial_sums.last().expect("at least one checkpoint");

    let (tail_bracket, cauchy) = if member && last.n >= y.head_len() {
        let bracket = [last.value + lower_tail(y, last.n), last.value + upper_tail(y, last.n)];
        let cauchy = partial_sums
            .windows(2)
            .filter(|w| w[0].n >= y.head_len())
            .all(|w| w[1].value - w[0].value <= upper_tail(y, w[0].n) * (1.0 + 1e-9) + 1e-15);
        (Some(bracket), Some(cauchy))
    } else {
        (None, None)
    };

    if !member && crossing.is_none() {
        crossing = estimate_crossing(y, exponent, last);
    }
    Ok(DomainVerdict { member, exponent, borderline, partial_sums, tail_bracket, cauchy, crossing })
}

/// Extrapolates `S_N ≈ S_H + K ∫_H^N n^e` with `K` the class-averaged
/// leading coefficient.
fn estimate_crossing(y: &PowerSeq, e: f64, last: PartialSum) -> Option<Crossing> {
    let profiles = y.residue_profiles();
    let gamma = e / 2.0;
    let k: f64 = profiles
        .iter()
        .filter(|p| (p.leading() - gamma).abs() <= ALPHA_TOL)
        .filter_map(|p| p.leading_coefficient().map(|c| c.norm_sqr()))
        .sum::<f64>()
        / profiles.len() as f64;
    if !(k > 0.0) {
        return None;
    }
    let h = last.n as f64;
    let need = (CROSSING_BOUND - last.value) / k;
    let n = if (e + 1.0).abs() <= ALPHA_TOL {
        h * need.exp()
    } else {
        (need * (e + 1.0) + h.powf(e + 1.0)).powf(1.0 / (e + 1.0))
    };
    Some(Crossing { bound: CROSSING_BOUND, n, exact: false })
}

/// `x ∈ D(T)`: decided by the exponent of `t_n x_n`, partial sums up to `horizon`.
pub fn domain_contains_with(t: &DiagSymbol, x: &PowerVector, horizon: u64) -> Result<DomainVerdict> {
    square_sum_verdict(&t.seq().mul(x.seq())?, horizon)
}

/// [`domain_contains_with`] at [`DEFAULT_HORIZON`].
pub fn domain_contains(t: &DiagSymbol, x: &PowerVector) -> Result<DomainVerdict> {
    domain_contains_with(t, x, DEFAULT_HORIZON)
}

/// Membership in an intersection or a composed domain.
#[derive(Clone, Debug, Serialize)]
pub struct CompositeVerdict {
    pub member: bool,
    pub components: Vec<DomainVerdict>,
}

/// `x ∈ D(T) ∩ D(B) = D(T + B)`.
pub fn naive_add_domain(t: &DiagSymbol, b: &DiagSymbol, x: &PowerVector, horizon: u64) -> Result<CompositeVerdict> {
    let vt = domain_contains_with(t, x, horizon)?;
    let vb = domain_contains_with(b, x, horizon)?;
    Ok(CompositeVerdict { member: vt.member && vb.member, components: vec![vt, vb] })
}

/// `x ∈ D(TB) = {x ∈ D(B) : Bx ∈ D(T)}`.
pub fn naive_mul_domain(t: &DiagSymbol, b: &DiagSymbol, x: &PowerVector, horizon: u64) -> Result<CompositeVerdict> {
    let vb = domain_contains_with(b, x, horizon)?;
    if !vb.member {
        return Ok(CompositeVerdict { member: false, components: vec![vb] });
    }
    let bx = PowerVector::new(b.seq().mul(x.seq())?)?;
    let vt = domain_contains_with(t, &bx, horizon)?;
    Ok(CompositeVerdict { member: vt.member, components: vec![vb, vt] })
}
