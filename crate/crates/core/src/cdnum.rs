//! Cayley-Dickson algebras `A_v` of dimension `2^v`.
//!
//! Elements are stored as `2^v` real coefficients over the generators
//! `i_0 = 1, i_1, ..., i_{2^v - 1}`. The doubling rule is
//!
//! ```text
//! (a, b) · (c, d) = (ac − d̃b, da + bc̃),   i_{2^{v-1}} = (0, 1)
//! ```
//!
//! Generator products are integer data and are tabulated once for the
//! maximal level; a table for level `v` is the top-left `2^v × 2^v` corner
//! of the table for any larger level.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default maximal level (64 generators).
pub const DEFAULT_VMAX: u32 = 6;

/// Hard ceiling on `OCTSPEC_VMAX`; the table has `4^vmax` entries.
const VMAX_CEILING: u32 = 10;

/// Maximal supported level, read once from `OCTSPEC_VMAX` (default 6, minimum 4).
pub fn vmax() -> u32 {
    static VMAX: OnceLock<u32> = OnceLock::new();
    *VMAX.get_or_init(|| {
        std::env::var("OCTSPEC_VMAX")
            .ok()
            .and_then(|s| s.trim().parse::<u32>().ok())
            .map(|v| v.clamp(4, VMAX_CEILING))
            .unwrap_or(DEFAULT_VMAX)
    })
}

pub(crate) fn check_level(level: u32) -> Result<()> {
    let vmax = vmax();
    if level > vmax {
        return Err(Error::LevelOutOfRange { level, vmax });
    }
    Ok(())
}

/// Signed generator: `i_j · i_k = sign · i_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisProduct {
    pub sign: i8,
    pub index: usize,
}

/// Product of generators by direct recursion on the doubling rule.
fn basis_mul_rec(j: usize, k: usize, v: u32) -> (i8, usize) {
    if v == 0 {
        return (1, 0);
    }
    let half = 1usize << (v - 1);
    // conj(i_m) = +i_0 for m = 0, −i_m otherwise
    let conj_sign = |m: usize| if m == 0 { 1i8 } else { -1i8 };
    match (j >= half, k >= half) {
        (false, false) => basis_mul_rec(j, k, v - 1),
        // (a,0)(0,d) = (0, d a)
        (false, true) => {
            let (s, i) = basis_mul_rec(k - half, j, v - 1);
            (s, i + half)
        }
        // (0,b)(c,0) = (0, b c̃)
        (true, false) => {
            let (s, i) = basis_mul_rec(j - half, k, v - 1);
            (s * conj_sign(k), i + half)
        }
        // (0,b)(0,d) = (−d̃ b, 0)
        (true, true) => {
            let (s, i) = basis_mul_rec(k - half, j - half, v - 1);
            (-s * conj_sign(k - half), i)
        }
    }
}

struct MulTable {
    stride: usize,
    entries: Vec<(i8, u16)>,
}

fn table() -> &'static MulTable {
    static TABLE: OnceLock<MulTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let v = vmax();
        let stride = 1usize << v;
        let mut entries = Vec::with_capacity(stride * stride);
        for j in 0..stride {
            for k in 0..stride {
                let (s, i) = basis_mul_rec(j, k, v);
                entries.push((s, i as u16));
            }
        }
        MulTable { stride, entries }
    })
}

#[inline]
fn table_entry(j: usize, k: usize) -> (i8, usize) {
    let t = table();
    let (s, i) = t.entries[j * t.stride + k];
    (s, i as usize)
}

/// Product of generators `i_j · i_k` in `A_v`.
pub fn basis_mul(j: usize, k: usize, v: u32) -> Result<BasisProduct> {
    check_level(v)?;
    let dim = 1usize << v;
    for idx in [j, k] {
        if idx >= dim {
            return Err(Error::IndexOutOfRange { index: idx, level: v });
        }
    }
    let (sign, index) = table_entry(j, k);
    Ok(BasisProduct { sign, index })
}

/// Sign exponent of generator commutation: `i_j i_k = (−1)^κ(j,k) i_k i_j`.
pub fn kappa(j: usize, k: usize) -> u8 {
    if j == 0 || k == 0 || j == k {
        0
    } else {
        1
    }
}

/// An element of the Cayley-Dickson algebra `A_v`.
#[derive(Clone, PartialEq)]
pub struct CdNumber {
    level: u32,
    coeffs: Vec<f64>,
}

impl fmt::Debug for CdNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CdNumber(v={}, {:?})", self.level, self.coeffs)
    }
}

impl fmt::Display for CdNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let sign = if c < 0.0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if first {
                write!(f, "{sign}")?;
            } else {
                write!(f, " {sign} ")?;
            }
            if j == 0 {
                write!(f, "{mag}")?;
            } else if mag == 1.0 {
                write!(f, "i{j}")?;
            } else {
                write!(f, "{mag}·i{j}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CdNumber {
    pub fn new(level: u32, coeffs: Vec<f64>) -> Result<Self> {
        check_level(level)?;
        let expected = 1usize << level;
        if coeffs.len() != expected {
            return Err(Error::CoefficientCount { expected, got: coeffs.len() });
        }
        Ok(CdNumber { level, coeffs })
    }

    /// Infers the level from the coefficient count, which must be a power of two.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Result<Self> {
        let len = coeffs.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "coefficient count {len} is not a power of two"
            )));
        }
        CdNumber::new(len.trailing_zeros(), coeffs)
    }

    pub fn zero(level: u32) -> Self {
        CdNumber { level, coeffs: vec![0.0; 1 << level] }
    }

    pub fn real(level: u32, r: f64) -> Self {
        let mut z = CdNumber::zero(level);
        z.coeffs[0] = r;
        z
    }

    pub fn one(level: u32) -> Self {
        CdNumber::real(level, 1.0)
    }

    /// The generator `i_j` of `A_level`.
    pub fn basis(level: u32, j: usize) -> Result<Self> {
        check_level(level)?;
        if j >= 1 << level {
            return Err(Error::IndexOutOfRange { index: j, level });
        }
        let mut z = CdNumber::zero(level);
        z.coeffs[j] = 1.0;
        Ok(z)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs[j]
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn real_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn imag(&self) -> CdNumber {
        let mut z = self.clone();
        z.coeffs[0] = 0.0;
        z
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs[1..].iter().all(|c| c.abs() <= tol)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn conj(&self) -> CdNumber {
        let mut z = self.clone();
        for c in &mut z.coeffs[1..] {
            *c = -*c;
        }
        z
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: f64) -> CdNumber {
        CdNumber { level: self.level, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Keeps only the `i_j` component.
    pub fn component(&self, j: usize) -> CdNumber {
        let mut z = CdNumber::zero(self.level);
        z.coeffs[j] = self.coeffs[j];
        z
    }

    /// Re-embeds into a higher level (zero-padded coefficients).
    pub fn lift(&self, level: u32) -> Result<CdNumber> {
        check_level(level)?;
        if level < self.level {
            return Err(Error::LevelMismatch(self.level, level));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(1 << level, 0.0);
        Ok(CdNumber { level, coeffs })
    }

    pub fn checked_add(&self, other: &CdNumber) -> Result<CdNumber> {
        self.same_level(other)?;
        Ok(CdNumber {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &CdNumber) -> Result<CdNumber> {
        self.same_level(other)?;
        Ok(CdNumber {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Bilinear extension of the generator table.
    pub fn checked_mul(&self, other: &CdNumber) -> Result<CdNumber> {
        self.same_level(other)?;
        let mut out = vec![0.0; self.dim()];
        mul_into(&self.coeffs, &other.coeffs, &mut out);
        Ok(CdNumber { level: self.level, coeffs: out })
    }

    /// `ã / |a|²`. For levels ≥ 4 the candidate is verified to be a two-sided inverse.
    pub fn inverse(&self) -> Result<CdNumber> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let inv = self.conj().scale(1.0 / n2);
        if self.level >= 4 {
            let one = CdNumber::one(self.level);
            let left = self.checked_mul(&inv)?;
            let right = inv.checked_mul(self)?;
            if left.distance(&one) > 1e-12 || right.distance(&one) > 1e-12 {
                return Err(Error::NotInvertible(self.level));
            }
        }
        Ok(inv)
    }

    pub fn distance(&self, other: &CdNumber) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    fn same_level(&self, other: &CdNumber) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }
}

/// `out = a · b` on raw coefficient slices of equal power-of-two length.
pub(crate) fn mul_into(a: &[f64], b: &[f64], out: &mut [f64]) {
    let t = table();
    out.iter_mut().for_each(|o| *o = 0.0);
    for (j, &aj) in a.iter().enumerate() {
        if aj == 0.0 {
            continue;
        }
        let row = &t.entries[j * t.stride..j * t.stride + b.len()];
        for (&bk, &(s, i)) in b.iter().zip(row) {
            if bk != 0.0 {
                out[i as usize] += f64::from(s) * aj * bk;
            }
        }
    }
}

impl Add for &CdNumber {
    type Output = CdNumber;
    fn add(self, rhs: &CdNumber) -> CdNumber {
        self.checked_add(rhs).expect("CdNumber addition across levels")
    }
}

impl Sub for &CdNumber {
    type Output = CdNumber;
    fn sub(self, rhs: &CdNumber) -> CdNumber {
        self.checked_sub(rhs).expect("CdNumber subtraction across levels")
    }
}

impl Mul for &CdNumber {
    type Output = CdNumber;
    fn mul(self, rhs: &CdNumber) -> CdNumber {
        self.checked_mul(rhs).expect("CdNumber multiplication across levels")
    }
}

impl Neg for &CdNumber {
    type Output = CdNumber;
    fn neg(self) -> CdNumber {
        self.scale(-1.0)
    }
}

#[derive(Serialize, Deserialize)]
struct CdNumberJson {
    v: u32,
    c: Vec<f64>,
}

impl Serialize for CdNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CdNumberJson { v: self.level, c: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CdNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CdNumberJson::deserialize(d)?;
        CdNumber::new(raw.v, raw.c).map_err(serde::de::Error::custom)
    }
}

/// Searches two-term generator combinations `i_p ± i_q` for a pair with
/// `a · b = 0`. Integer arithmetic only; the first hit in lexicographic
/// order `(p, q, s, r, t, u)` is returned.
pub fn find_zero_divisor(v: u32) -> Result<Option<(CdNumber, CdNumber)>> {
    check_level(v)?;
    if v < 4 {
        return Err(Error::DivisionAlgebra(v));
    }
    let dim = 1usize << v;
    let mut acc: Vec<i32> = vec![0; dim];
    for p in 0..dim {
        for q in (p + 1)..dim {
            for s in [1i32, -1] {
                for r in 0..dim {
                    for t in (r + 1)..dim {
                        for u in [1i32, -1] {
                            let terms = [(p, r, 1), (p, t, u), (q, r, s), (q, t, s * u)];
                            for &(j, k, sign) in &terms {
                                let (bs, idx) = table_entry(j, k);
                                acc[idx] += sign * i32::from(bs);
                            }
                            let zero = terms.iter().all(|&(j, k, _)| acc[table_entry(j, k).1] == 0);
                            for &(j, k, _) in &terms {
                                acc[table_entry(j, k).1] = 0;
                            }
                            if zero {
                                let mut a = CdNumber::zero(v);
                                a.coeffs[p] = 1.0;
                                a.coeffs[q] = f64::from(s);
                                let mut b = CdNumber::zero(v);
                                b.coeffs[r] = 1.0;
                                b.coeffs[t] = f64::from(u);
                                return Ok(Some((a, b)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Signed multiplication table of `A_v` (row `j`, column `k` holds `i_j i_k`).
pub fn multiplication_table(v: u32) -> Result<Vec<Vec<BasisProduct>>> {
    check_level(v)?;
    let dim = 1usize << v;
    Ok((0..dim)
        .map(|j| {
            (0..dim)
                .map(|k| {
                    let (sign, index) = table_entry(j, k);
                    BasisProduct { sign, index }
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Doubling-rule product on raw halves, independent of the generator table.
    fn doubling_oracle(a: &[f64], b: &[f64]) -> Vec<f64> {
        let n = a.len();
        if n == 1 {
            return vec![a[0] * b[0]];
        }
        let h = n / 2;
        let conj = |x: &[f64]| -> Vec<f64> {
            x.iter().enumerate().map(|(i, &c)| if i == 0 { c } else { -c }).collect()
        };
        // (a, b) · (c, d) = (ac − d̃b, da + bc̃)
        let (a0, a1) = a.split_at(h);
        let (c0, c1) = b.split_at(h);
        let ac = doubling_oracle(a0, c0);
        let dtb = doubling_oracle(&conj(c1), a1);
        let da = doubling_oracle(c1, a0);
        let bc = doubling_oracle(a1, &conj(c0));
        let mut out = Vec::with_capacity(n);
        out.extend(ac.iter().zip(&dtb).map(|(x, y)| x - y));
        out.extend(da.iter().zip(&bc).map(|(x, y)| x + y));
        out
    }

    fn rand_cd(rng: &mut ChaCha8Rng, v: u32) -> CdNumber {
        CdNumber::new(v, (0..1 << v).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(basis_mul(0, 5, 3).unwrap(), BasisProduct { sign: 1, index: 5 });
        assert_eq!(basis_mul(1, 1, 2).unwrap(), BasisProduct { sign: -1, index: 0 });
        assert_eq!(basis_mul(1, 2, 2).unwrap(), BasisProduct { sign: 1, index: 3 });
        assert!(basis_mul(4, 0, 2).is_err());
    }

    #[test]
    fn table_matches_doubling_oracle() {
        for v in 0..=5u32 {
            let dim = 1usize << v;
            for j in 0..dim {
                for k in 0..dim {
                    let mut a = vec![0.0; dim];
                    let mut b = vec![0.0; dim];
                    a[j] = 1.0;
                    b[k] = 1.0;
                    let prod = doubling_oracle(&a, &b);
                    let bp = basis_mul(j, k, v).unwrap();
                    let mut expect = vec![0.0; dim];
                    expect[bp.index] = f64::from(bp.sign);
                    assert_eq!(prod, expect, "v={v} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn generator_squares() {
        for j in 1..64 {
            assert_eq!(basis_mul(j, j, 6).unwrap(), BasisProduct { sign: -1, index: 0 });
            assert_eq!(basis_mul(0, j, 6).unwrap(), BasisProduct { sign: 1, index: j });
        }
    }

    #[test]
    fn kappa_rule() {
        assert_eq!(kappa(0, 3), 0);
        assert_eq!(kappa(2, 2), 0);
        assert_eq!(kappa(1, 2), 1);
    }

    #[test]
    fn mul_examples() {
        let one_plus = CdNumber::new(2, vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        let one_minus = CdNumber::new(2, vec![1.0, -1.0, 0.0, 0.0]).unwrap();
        assert_eq!(&one_plus * &one_minus, CdNumber::real(2, 2.0));
        let i1 = CdNumber::basis(2, 1).unwrap();
        let i2 = CdNumber::basis(2, 2).unwrap();
        assert_eq!(&i1 * &i2, CdNumber::basis(2, 3).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = rand_cd(&mut rng, 3);
            let p = &a * &a.inverse().unwrap();
            assert!(p.distance(&CdNumber::one(3)) < 1e-12);
        }
    }

    #[test]
    fn mul_matches_oracle_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for v in 1..=5 {
            for _ in 0..20 {
                let a = rand_cd(&mut rng, v);
                let b = rand_cd(&mut rng, v);
                let expect = doubling_oracle(a.coeffs(), b.coeffs());
                let got = &a * &b;
                for (x, y) in got.coeffs().iter().zip(&expect) {
                    assert!((x - y).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn level_mismatch_rejected() {
        let a = CdNumber::one(2);
        let b = CdNumber::one(3);
        assert!(matches!(a.checked_mul(&b), Err(Error::LevelMismatch(2, 3))));
    }

    #[test]
    fn conj_norm_inverse_examples() {
        let i2 = CdNumber::basis(3, 2).unwrap();
        assert_eq!(i2.conj(), i2.scale(-1.0));
        let q = CdNumber::new(2, vec![1.0; 4]).unwrap();
        assert_eq!(q.norm(), 2.0);
        let two_i1 = CdNumber::basis(2, 1).unwrap().scale(2.0);
        assert_eq!(two_i1.inverse().unwrap(), CdNumber::basis(2, 1).unwrap().scale(-0.5));
        assert!(matches!(CdNumber::zero(2).inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn zero_divisor_search() {
        assert!(matches!(find_zero_divisor(3), Err(Error::DivisionAlgebra(3))));
        let (a, b) = find_zero_divisor(4).unwrap().expect("sedenions have zero divisors");
        assert!(a.norm() > 0.0 && b.norm() > 0.0);
        assert!((&a * &b).is_zero());
        assert_eq!(a.coeffs().iter().filter(|c| **c != 0.0).count(), 2);
    }

    #[test]
    fn json_shape() {
        let z = CdNumber::new(1, vec![0.5, -2.0]).unwrap();
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"v":1,"c":[0.5,-2.0]}"#);
        let back: CdNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<CdNumber>(r#"{"v":2,"c":[1.0]}"#).is_err());
    }

    #[test]
    fn display() {
        let z = CdNumber::new(2, vec![1.0, 0.0, -1.0, 2.5]).unwrap();
        assert_eq!(z.to_string(), "1 - i2 + 2.5·i3");
        assert_eq!(CdNumber::zero(1).to_string(), "0");
    }
}
