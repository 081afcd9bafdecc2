//! Eventually power-law sequences `n ↦ A_v`.
//!
//! A sequence has an explicit head `s_1..s_N` and for `n > N` the tail
//! `s_n = Σ_terms n^α · v_{(n−1) mod p}` with a periodic value list per term.
//! Sums and pointwise products stay in this class.

use serde::{Deserialize, Serialize};

use crate::cdnum::{check_level, mul_into, CdNumber};
use crate::error::{Error, Result};

/// Exponents closer than this are the same power.
pub const ALPHA_TOL: f64 = 1e-12;
/// Relative size below which a combined coefficient counts as cancelled.
pub const CANCEL_TOL: f64 = 1e-12;
/// Largest period a combined phase family may reach.
pub const MAX_PERIOD: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
pub struct PowerTerm {
    pub alpha: f64,
    /// Periodic coefficients, indexed by `(n − 1) mod len`.
    pub values: Vec<CdNumber>,
}

impl PowerTerm {
    pub fn period(&self) -> usize {
        self.values.len()
    }

    fn value_at(&self, n: u64) -> &CdNumber {
        &self.values[((n - 1) % self.values.len() as u64) as usize]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeq {
    level: u32,
    head: Vec<CdNumber>,
    tail: Vec<PowerTerm>,
}

/// Combined coefficients of one residue class, by decreasing exponent.
#[derive(Clone, Debug)]
pub struct ResidueProfile {
    /// 0-based: the class of indices `n` with `(n − 1) mod period = residue`.
    pub residue: usize,
    pub groups: Vec<(f64, CdNumber)>,
}

impl ResidueProfile {
    /// Leading exponent, `−∞` if the class vanishes.
    pub fn leading(&self) -> f64 {
        self.groups.first().map_or(f64::NEG_INFINITY, |g| g.0)
    }

    pub fn leading_coefficient(&self) -> Option<&CdNumber> {
        self.groups.first().map(|g| &g.1)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> Result<usize> {
    let l = a / gcd(a, b) * b;
    if l > MAX_PERIOD {
        return Err(Error::PhaseClosure(format!("combined period {l} exceeds {MAX_PERIOD}")));
    }
    Ok(l)
}

fn extend(values: &[CdNumber], period: usize) -> Vec<CdNumber> {
    (0..period).map(|i| values[i % values.len()].clone()).collect()
}

/// Shortest period of a cyclic list.
fn minimal_period(values: &[CdNumber]) -> usize {
    let p = values.len();
    (1..=p)
        .filter(|d| p.is_multiple_of(*d))
        .find(|&d| (d..p).all(|i| values[i] == values[i - d]))
        .unwrap_or(p)
}

impl PowerSeq {
    pub fn new(level: u32, head: Vec<CdNumber>, tail: Vec<PowerTerm>) -> Result<Self> {
        check_level(level)?;
        for c in head.iter().chain(tail.iter().flat_map(|t| &t.values)) {
            if c.level() != level {
                return Err(Error::PhaseClosure(format!("level {} value in a level {level} sequence", c.level())));
            }
        }
        for t in &tail {
            if t.values.is_empty() || !t.alpha.is_finite() {
                return Err(Error::InvalidArgument("tail term needs a finite exponent and values".into()));
            }
            if t.values.len() > MAX_PERIOD {
                return Err(Error::PhaseClosure(format!("period {} exceeds {MAX_PERIOD}", t.values.len())));
            }
        }
        let mut s = PowerSeq { level, head, tail };
        s.normalize()?;
        Ok(s)
    }

    pub fn zero(level: u32) -> Self {
        PowerSeq { level, head: Vec::new(), tail: Vec::new() }
    }

    /// `s_n = c` for every `n`.
    pub fn constant(c: CdNumber) -> Self {
        let level = c.level();
        let mut s = PowerSeq { level, head: Vec::new(), tail: vec![PowerTerm { alpha: 0.0, values: vec![c] }] };
        s.normalize().expect("single term");
        s
    }

    /// `s_n = n^α · values[(n−1) mod p]`.
    pub fn power(level: u32, alpha: f64, values: Vec<CdNumber>) -> Result<Self> {
        PowerSeq::new(level, Vec::new(), vec![PowerTerm { alpha, values }])
    }

    /// `s_n = c · n^α` with a real coefficient.
    pub fn real_power(level: u32, c: f64, alpha: f64) -> Result<Self> {
        PowerSeq::power(level, alpha, vec![CdNumber::real(level, c)])
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn head(&self) -> &[CdNumber] {
        &self.head
    }

    pub fn tail(&self) -> &[PowerTerm] {
        &self.tail
    }

    pub fn head_len(&self) -> u64 {
        self.head.len() as u64
    }

    /// Period of the tail coefficients (1 without tail).
    pub fn period(&self) -> usize {
        self.tail.iter().fold(1, |p, t| p / gcd(p, t.period()) * t.period())
    }

    /// Sorts terms by decreasing exponent, merges equal exponents, drops
    /// cancelled coefficients and reduces periods.
    fn normalize(&mut self) -> Result<()> {
        let mut terms = std::mem::take(&mut self.tail);
        terms.sort_by(|a, b| b.alpha.total_cmp(&a.alpha));
        let mut merged: Vec<PowerTerm> = Vec::new();
        let mut scales: Vec<f64> = Vec::new();
        for t in terms {
            let scale = t.values.iter().map(CdNumber::norm).fold(0.0, f64::max);
            match merged.last_mut() {
                Some(m) if (m.alpha - t.alpha).abs() <= ALPHA_TOL => {
                    let p = lcm(m.period(), t.period())?;
                    let a = extend(&m.values, p);
                    let b = extend(&t.values, p);
                    m.values = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                    let s = scales.last_mut().expect("paired with merged");
                    *s = s.max(scale);
                }
                _ => {
                    merged.push(t);
                    scales.push(scale);
                }
            }
        }
        let level = self.level;
        self.tail = merged
            .into_iter()
            .zip(scales)
            .filter_map(|(mut t, scale)| {
                for v in &mut t.values {
                    if v.norm() <= CANCEL_TOL * scale {
                        *v = CdNumber::zero(level);
                    }
                }
                if t.values.iter().all(CdNumber::is_zero) {
                    return None;
                }
                let p = minimal_period(&t.values);
                t.values.truncate(p);
                Some(t)
            })
            .collect();
        Ok(())
    }

    /// `s_n`, `n ≥ 1`.
    pub fn value(&self, n: u64) -> CdNumber {
        assert!(n >= 1, "sequences are indexed from 1");
        if n <= self.head_len() {
            return self.head[(n - 1) as usize].clone();
        }
        let w = 1usize << self.level;
        let mut out = vec![0.0; w];
        let nf = n as f64;
        for t in &self.tail {
            let s = nf.powf(t.alpha);
            for (o, c) in out.iter_mut().zip(t.value_at(n).coeffs()) {
                *o += s * c;
            }
        }
        CdNumber::new(self.level, out).expect("valid level")
    }

    /// `|s_n|²` without allocating.
    pub(crate) fn norm_sqr_at(&self, n: u64, buf: &mut [f64]) -> f64 {
        if n <= self.head_len() {
            return self.head[(n - 1) as usize].norm_sqr();
        }
        buf.iter_mut().for_each(|b| *b = 0.0);
        let nf = n as f64;
        for t in &self.tail {
            let s = nf.powf(t.alpha);
            for (o, c) in buf.iter_mut().zip(t.value_at(n).coeffs()) {
                *o += s * c;
            }
        }
        buf.iter().map(|x| x * x).sum()
    }

    fn check_level_with(&self, other: &PowerSeq) -> Result<()> {
        if self.level != other.level {
            return Err(Error::PhaseClosure(format!("levels {} and {} do not combine", self.level, other.level)));
        }
        Ok(())
    }

    fn combined_head(&self, other: &PowerSeq, op: impl Fn(&CdNumber, &CdNumber) -> CdNumber) -> Vec<CdNumber> {
        let len = self.head_len().max(other.head_len());
        (1..=len).map(|n| op(&self.value(n), &other.value(n))).collect()
    }

    /// Pointwise sum.
    pub fn add(&self, other: &PowerSeq) -> Result<PowerSeq> {
        self.check_level_with(other)?;
        let head = self.combined_head(other, |a, b| a + b);
        let tail = self.tail.iter().chain(&other.tail).cloned().collect();
        PowerSeq::new(self.level, head, tail)
    }

    pub fn neg(&self) -> PowerSeq {
        PowerSeq {
            level: self.level,
            head: self.head.iter().map(|c| -c).collect(),
            tail: self
                .tail
                .iter()
                .map(|t| PowerTerm { alpha: t.alpha, values: t.values.iter().map(|c| -c).collect() })
                .collect(),
        }
    }

    pub fn sub(&self, other: &PowerSeq) -> Result<PowerSeq> {
        self.add(&other.neg())
    }

    /// Pointwise product `s_n · r_n` in this order.
    pub fn mul(&self, other: &PowerSeq) -> Result<PowerSeq> {
        self.check_level_with(other)?;
        let head = self.combined_head(other, |a, b| a * b);
        let w = 1usize << self.level;
        let mut tail = Vec::with_capacity(self.tail.len() * other.tail.len());
        let mut buf = vec![0.0; w];
        for a in &self.tail {
            for b in &other.tail {
                let p = lcm(a.period(), b.period())?;
                let values = (0..p)
                    .map(|i| {
                        mul_into(a.values[i % a.period()].coeffs(), b.values[i % b.period()].coeffs(), &mut buf);
                        CdNumber::new(self.level, buf.clone()).expect("valid level")
                    })
                    .collect();
                tail.push(PowerTerm { alpha: a.alpha + b.alpha, values });
            }
        }
        PowerSeq::new(self.level, head, tail)
    }

    /// Pointwise conjugate.
    pub fn conj(&self) -> PowerSeq {
        PowerSeq {
            level: self.level,
            head: self.head.iter().map(CdNumber::conj).collect(),
            tail: self
                .tail
                .iter()
                .map(|t| PowerTerm { alpha: t.alpha, values: t.values.iter().map(CdNumber::conj).collect() })
                .collect(),
        }
    }

    /// Combined coefficients per residue class.
    pub fn residue_profiles(&self) -> Vec<ResidueProfile> {
        let p = self.period();
        (0..p)
            .map(|r| ResidueProfile {
                residue: r,
                groups: self
                    .tail
                    .iter()
                    .map(|t| (t.alpha, t.values[r % t.period()].clone()))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            })
            .collect()
    }

    /// `γ` with `|s_n| ≍ n^γ` along the slowest-decaying residue class.
    pub fn leading_exponent(&self) -> f64 {
        self.residue_profiles().iter().map(ResidueProfile::leading).fold(f64::NEG_INFINITY, f64::max)
    }

    /// True if every value is zero.
    pub fn is_identically_zero(&self) -> bool {
        self.tail.is_empty() && self.head.iter().all(CdNumber::is_zero)
    }

    /// Equal up to relative roundoff `CANCEL_TOL`: heads compared entrywise,
    /// tails through cancellation in the difference.
    pub fn approx_eq(&self, other: &PowerSeq) -> Result<bool> {
        self.check_level_with(other)?;
        let len = self.head_len().max(other.head_len());
        let heads = (1..=len).all(|n| {
            let (a, b) = (self.value(n), other.value(n));
            a.distance(&b) <= CANCEL_TOL * a.norm().max(b.norm())
        });
        let tails = PowerSeq::new(self.level, Vec::new(), self.sub(other)?.tail)?.tail.is_empty();
        Ok(heads && tails)
    }

    /// True if the head and every tail coefficient are real.
    pub fn is_real(&self) -> bool {
        self.head.iter().chain(self.tail.iter().flat_map(|t| &t.values)).all(|c| c.is_real(0.0))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum PhaseJson {
    Rule(String),
    Periodic { periodic: Vec<Vec<f64>> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum TermJson {
    Values { alpha: f64, values: Vec<Vec<f64>> },
    Phase { c: f64, alpha: f64, phase: PhaseJson },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum TailJson {
    One(TermJson),
    Many(Vec<TermJson>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SeqJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<u32>,
    #[serde(default)]
    head: Vec<Vec<f64>>,
    #[serde(default = "empty_tail")]
    tail: TailJson,
}

fn empty_tail() -> TailJson {
    TailJson::Many(Vec::new())
}

fn infer_level(raw: &SeqJson) -> Result<u32> {
    if let Some(v) = raw.v {
        return Ok(v);
    }
    let mut lens = raw.head.iter().map(Vec::len);
    let terms: Vec<&TermJson> = match &raw.tail {
        TailJson::One(t) => vec![t],
        TailJson::Many(ts) => ts.iter().collect(),
    };
    let from_terms = terms.iter().find_map(|t| match t {
        TermJson::Values { values, .. } => values.first().map(Vec::len),
        TermJson::Phase { phase: PhaseJson::Periodic { periodic }, .. } => periodic.first().map(Vec::len),
        TermJson::Phase { .. } => None,
    });
    let len = lens
        .next()
        .or(from_terms)
        .ok_or_else(|| Error::InvalidArgument("cannot infer the level; add \"v\"".into()))?;
    if !len.is_power_of_two() {
        return Err(Error::CoefficientCount { expected: len.next_power_of_two(), got: len });
    }
    Ok(len.trailing_zeros())
}

impl TryFrom<SeqJson> for PowerSeq {
    type Error = Error;

    fn try_from(raw: SeqJson) -> Result<Self> {
        let level = infer_level(&raw)?;
        let cd = |c: Vec<f64>| CdNumber::new(level, c);
        let head = raw.head.into_iter().map(cd).collect::<Result<Vec<_>>>()?;
        let terms = match raw.tail {
            TailJson::One(t) => vec![t],
            TailJson::Many(ts) => ts,
        };
        let mut tail = Vec::with_capacity(terms.len());
        for t in terms {
            tail.push(match t {
                TermJson::Values { alpha, values } => {
                    PowerTerm { alpha, values: values.into_iter().map(cd).collect::<Result<Vec<_>>>()? }
                }
                TermJson::Phase { c, alpha, phase } => {
                    if !(c >= 0.0) {
                        return Err(Error::InvalidArgument(format!("tail modulus must be nonnegative, got {c}")));
                    }
                    let phases = match phase {
                        PhaseJson::Rule(r) if r == "one" => vec![CdNumber::one(level)],
                        PhaseJson::Rule(r) => return Err(Error::InvalidArgument(format!("unknown phase rule {r:?}"))),
                        PhaseJson::Periodic { periodic } => periodic.into_iter().map(cd).collect::<Result<Vec<_>>>()?,
                    };
                    if let Some(p) = phases.iter().find(|p| (p.norm() - 1.0).abs() > 1e-12) {
                        return Err(Error::InvalidArgument(format!("phase {p} is not of unit modulus")));
                    }
                    PowerTerm { alpha, values: phases.iter().map(|p| p.scale(c)).collect() }
                }
            });
        }
        PowerSeq::new(level, head, tail)
    }
}

impl From<&PowerSeq> for SeqJson {
    fn from(s: &PowerSeq) -> Self {
        SeqJson {
            v: Some(s.level),
            head: s.head.iter().map(|c| c.coeffs().to_vec()).collect(),
            tail: TailJson::Many(
                s.tail
                    .iter()
                    .map(|t| TermJson::Values {
                        alpha: t.alpha,
                        values: t.values.iter().map(|c| c.coeffs().to_vec()).collect(),
                    })
                    .collect(),
            ),
        }
    }
}

impl Serialize for PowerSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeqJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PowerSeq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PowerSeq::try_from(SeqJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
