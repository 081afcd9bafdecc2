//! Diagonal operators `Q`, `B`, `C` and a vector `x` for which the naive sum
//! and product have strictly smaller domains than the closed ones.

use std::fmt;

use serde::Serialize;

use super::domain::{domain_contains_with, naive_add_domain, naive_mul_domain, CompositeVerdict, DiagSymbol, DomainVerdict, PowerVector};
use super::ops::{hat_add, hat_mul};
use super::seq::{PowerSeq, PowerTerm};
use crate::cdnum::CdNumber;
use crate::error::{Error, Result};

pub const MIN_HORIZON: u64 = 1_000;

const LEVEL: u32 = 3;

fn octonion(parts: &[(usize, f64)]) -> CdNumber {
    let mut c = vec![0.0; 8];
    for &(j, x) in parts {
        c[j] = x;
    }
    CdNumber::new(LEVEL, c).expect("level 3")
}

/// Unit octonions `ξ_1..ξ_4`, repeated with period 4.
pub fn example52_phases() -> Vec<CdNumber> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        octonion(&[(0, h), (1, h)]),
        octonion(&[(2, h), (4, h)]),
        octonion(&[(0, 0.5), (3, 0.5), (5, 0.5), (6, 0.5)]),
        octonion(&[(7, 1.0)]),
    ]
}

/// `z_n` cycles through `1, −1, ξ_n, −ξ_n, ξ̃_n, −ξ̃_n`.
fn z_values(xi: &[CdNumber]) -> Vec<CdNumber> {
    let one = CdNumber::one(LEVEL);
    (0..12)
        .map(|i| {
            let x = &xi[i % xi.len()];
            match i % 6 {
                0 => one.clone(),
                1 => one.scale(-1.0),
                2 => x.clone(),
                3 => x.scale(-1.0),
                4 => x.conj(),
                _ => x.conj().scale(-1.0),
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    pub domain: String,
    pub member: bool,
    pub expected: bool,
}

impl Membership {
    pub fn matches(&self) -> bool {
        self.member == self.expected
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Example52Report {
    pub horizon: u64,
    pub q: PowerSeq,
    pub b: PowerSeq,
    pub c: PowerSeq,
    pub x: PowerSeq,
    pub q_hat_plus_b: PowerSeq,
    pub c_hat_q: PowerSeq,
    /// `∫|f|²` with `f = t_n` against `ν_x`.
    pub q_verdict: DomainVerdict,
    /// `∫|f + g|²`.
    pub q_hat_plus_b_verdict: DomainVerdict,
    pub c_hat_q_verdict: DomainVerdict,
    pub naive_q_plus_b: CompositeVerdict,
    pub naive_cq: CompositeVerdict,
    pub naive_qc: CompositeVerdict,
    pub q_hat_c_verdict: DomainVerdict,
    pub memberships: Vec<Membership>,
    /// `x ∈ D(Q +̂ B) \ D(Q + B)`.
    pub sum_differs: bool,
    /// `x ∈ D(C ·̂ Q) \ D(CQ)`.
    pub product_differs: bool,
    /// `D(QC)` and `D(Q ·̂ C)` agree at `x`.
    pub reverse_consistent: bool,
    pub all_match: bool,
}

pub fn example52_report(horizon: u64) -> Result<Example52Report> {
    if horizon < MIN_HORIZON {
        return Err(Error::InvalidArgument(format!("horizon must be at least {MIN_HORIZON}")));
    }
    let xi = example52_phases();
    let neg_xi: Vec<CdNumber> = xi.iter().map(|p| p.scale(-1.0)).collect();
    let q = DiagSymbol::new(PowerSeq::power(LEVEL, 1.0, xi.clone())?);
    let b = DiagSymbol::new(PowerSeq::new(
        LEVEL,
        Vec::new(),
        vec![PowerTerm { alpha: 0.25, values: xi.clone() }, PowerTerm { alpha: 1.0, values: neg_xi }],
    )?);
    let c = DiagSymbol::new(PowerSeq::power(LEVEL, -0.75, xi.clone())?);
    let x = PowerVector::new(PowerSeq::power(LEVEL, -1.0, z_values(&xi))?)?;

    let q_hat_plus_b = hat_add(&q, &b)?;
    let c_hat_q = hat_mul(&c, &q)?;
    let q_hat_c = hat_mul(&q, &c)?;

    let q_verdict = domain_contains_with(&q, &x, horizon)?;
    let q_hat_plus_b_verdict = domain_contains_with(&q_hat_plus_b, &x, horizon)?;
    let c_hat_q_verdict = domain_contains_with(&c_hat_q, &x, horizon)?;
    let q_hat_c_verdict = domain_contains_with(&q_hat_c, &x, horizon)?;
    let naive_q_plus_b = naive_add_domain(&q, &b, &x, horizon)?;
    let naive_cq = naive_mul_domain(&c, &q, &x, horizon)?;
    let naive_qc = naive_mul_domain(&q, &c, &x, horizon)?;

    let memberships = vec![
        Membership { domain: "D(Q)".into(), member: q_verdict.member, expected: false },
        Membership { domain: "D(Q+^B)".into(), member: q_hat_plus_b_verdict.member, expected: true },
        Membership { domain: "D(C.^Q)".into(), member: c_hat_q_verdict.member, expected: true },
        Membership { domain: "D(CQ)".into(), member: naive_cq.member, expected: false },
    ];
    let sum_differs = q_hat_plus_b_verdict.member && !naive_q_plus_b.member;
    let product_differs = c_hat_q_verdict.member && !naive_cq.member;
    let reverse_consistent = naive_qc.member == q_hat_c_verdict.member;
    let all_match = memberships.iter().all(Membership::matches) && sum_differs && product_differs && reverse_consistent;

    Ok(Example52Report {
        horizon,
        q: q.into_seq(),
        b: b.into_seq(),
        c: c.into_seq(),
        x: x.seq().clone(),
        q_hat_plus_b: q_hat_plus_b.into_seq(),
        c_hat_q: c_hat_q.into_seq(),
        q_verdict,
        q_hat_plus_b_verdict,
        c_hat_q_verdict,
        naive_q_plus_b,
        naive_cq,
        naive_qc,
        q_hat_c_verdict,
        memberships,
        sum_differs,
        product_differs,
        reverse_consistent,
        all_match,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for Example52Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Q e_n = n xi_n e_n, B e_n = (n^(1/4) - n) xi_n e_n, C e_n = n^(-3/4) xi_n e_n")?;
        writeln!(f, "x = sum n^(-1) z_n e_n, z_n in {{1, -1, xi_n, -xi_n, xi_n*, -xi_n*}}")?;
        writeln!(f, "horizon N = {}", self.horizon)?;
        writeln!(f)?;
        writeln!(f, "{:<12} {:>9} {:>11} {:>20}", "integral", "exponent", "verdict", "S_N")?;
        for (name, v) in [("|f|^2", &self.q_verdict), ("|f+g|^2", &self.q_hat_plus_b_verdict), ("|hf|^2", &self.c_hat_q_verdict)] {
            let s = v.partial_sums.last().map_or(f64::NAN, |p| p.value);
            let verdict = if v.member { "convergent" } else { "divergent" };
            writeln!(f, "{name:<12} {:>9.4} {verdict:>11} {s:>20.12}", v.exponent)?;
        }
        if let Some([lo, hi]) = self.q_hat_plus_b_verdict.tail_bracket {
            writeln!(f, "sum n^(-3/2) in [{lo:.12}, {hi:.12}]")?;
        }
        if let Some(c) = self.q_verdict.crossing {
            let how = if c.exact { "observed" } else { "extrapolated" };
            writeln!(f, "sum |f|^2 exceeds {} at N = {} ({how})", c.bound, c.n)?;
        }
        writeln!(f)?;
        writeln!(f, "{:<10} {:>7} {:>9} {:>6}", "domain", "x in", "expected", "match")?;
        for m in &self.memberships {
            writeln!(f, "{:<10} {:>7} {:>9} {:>6}", m.domain, yes(m.member), yes(m.expected), yes(m.matches()))?;
        }
        writeln!(f)?;
        writeln!(f, "Q+B != Q+^B: {}", yes(self.sum_differs))?;
        writeln!(f, "CQ != C.^Q: {}", yes(self.product_differs))?;
        writeln!(f, "D(QC) agrees with D(Q.^C) at x: {}", yes(self.reverse_consistent))?;
        write!(f, "all verdicts match: {}", yes(self.all_match))
    }
}
