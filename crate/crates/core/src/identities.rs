//! Randomized checks of the algebraic identities each level satisfies.

use rand::Rng;
use serde::Serialize;

use crate::cdnum::check_level;
use crate::error::Result;
use crate::qlop::ARITHMETIC_TOL;
use crate::random;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub max_residual: f64,
    /// Whether the identity holds at this level.
    pub expected: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub level: u32,
    pub trials: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    /// Every identity expected at this level holds within tolerance.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().filter(|c| c.expected).all(|c| c.passed)
    }
}

/// Max residuals of associativity, alternativity, trace associativity,
/// conjugation reversal and norm multiplicativity over random triples.
pub fn identity_report<R: Rng>(level: u32, trials: usize, rng: &mut R) -> Result<IdentityReport> {
    check_level(level)?;
    let mut res = [0.0f64; 6];
    for _ in 0..trials {
        let a = random::cd_number(rng, level);
        let b = random::cd_number(rng, level);
        let c = random::cd_number(rng, level);
        let ab = &a * &b;
        let bc = &b * &c;
        let r = [
            (&ab * &c).distance(&(&a * &bc)),
            (&(&a * &a) * &b).distance(&(&a * &ab)),
            (&ab * &b).distance(&(&a * &(&b * &b))),
            ((&ab * &c).real_part() - (&a * &bc).real_part()).abs(),
            ab.conj().distance(&(&b.conj() * &a.conj())),
            (ab.norm() - a.norm() * b.norm()).abs(),
        ];
        for (m, x) in res.iter_mut().zip(r) {
            *m = m.max(x);
        }
    }
    let names = [
        ("associativity", level <= 2),
        ("left alternativity", level <= 3),
        ("right alternativity", level <= 3),
        ("trace associativity", true),
        ("conjugation reversal", true),
        ("norm multiplicativity", level <= 3),
    ];
    let checks = names
        .into_iter()
        .zip(res)
        .map(|((name, expected), max_residual)| IdentityCheck {
            name,
            max_residual,
            expected,
            passed: max_residual <= ARITHMETIC_TOL,
        })
        .collect();
    Ok(IdentityReport { level, trials, checks })
}
