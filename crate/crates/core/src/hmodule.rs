//! The finite-dimensional Hilbert module `A_v^n`.
//!
//! Vectors are stored flat, entry-major: entry `k` occupies the real slots
//! `[k·2^v, (k+1)·2^v)`. Every operator matrix in the crate acts on this layout.
//!
//! The algebra-valued scalar product is `⟨x;y⟩ = Σ_k ỹ_k x_k`. It is
//! conjugate-linear in the second argument and compatible with right scalar
//! multiplication, `⟨xa;y⟩ = ⟨x;y⟩a` over the quaternions; its real part is the
//! Euclidean product of the flat layouts. This ordering is what makes
//! `⟨Ax;y⟩ = ⟨x;A*y⟩` for matrices acting on entries from the left.

use serde::{Deserialize, Serialize};

use crate::cdnum::{check_level, mul_into, CdNumber};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector {
    level: u32,
    n: usize,
    data: Vec<f64>,
}

impl ModuleVector {
    pub fn new(level: u32, n: usize, data: Vec<f64>) -> Result<Self> {
        check_level(level)?;
        let expected = n << level;
        if data.len() != expected {
            return Err(Error::Shape(format!(
                "flat vector of length {} for v={level}, n={n} (expected {expected})",
                data.len()
            )));
        }
        Ok(ModuleVector { level, n, data })
    }

    pub fn zeros(level: u32, n: usize) -> Self {
        ModuleVector { level, n, data: vec![0.0; n << level] }
    }

    /// The unit vector `e_k` (real 1 in entry `k`).
    pub fn unit(level: u32, n: usize, k: usize) -> Self {
        let mut x = ModuleVector::zeros(level, n);
        x.data[k << level] = 1.0;
        x
    }

    pub fn from_entries(entries: &[CdNumber]) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::Shape("empty module vector".into()))?;
        let level = first.level();
        let mut data = Vec::with_capacity(entries.len() << level);
        for e in entries {
            if e.level() != level {
                return Err(Error::LevelMismatch(level, e.level()));
            }
            data.extend_from_slice(e.coeffs());
        }
        Ok(ModuleVector { level, n: entries.len(), data })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Real dimension `2^v · n`.
    pub fn real_dim(&self) -> usize {
        self.data.len()
    }

    pub fn flat(&self) -> &[f64] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<f64> {
        self.data
    }

    pub fn entry(&self, k: usize) -> CdNumber {
        let w = 1usize << self.level;
        CdNumber::new(self.level, self.data[k * w..(k + 1) * w].to_vec())
            .expect("entry width matches level")
    }

    pub fn entries(&self) -> Vec<CdNumber> {
        (0..self.n).map(|k| self.entry(k)).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean product of the flat layouts, `Re⟨x;y⟩`.
    pub fn real_dot(&self, other: &ModuleVector) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    /// `⟨x;y⟩ = Σ_k ỹ_k x_k`.
    pub fn inner(&self, other: &ModuleVector) -> Result<CdNumber> {
        self.same_shape(other)?;
        let w = 1usize << self.level;
        let mut acc = vec![0.0; w];
        let mut tmp = vec![0.0; w];
        let mut yc = vec![0.0; w];
        for k in 0..self.n {
            let xs = &self.data[k * w..(k + 1) * w];
            let ys = &other.data[k * w..(k + 1) * w];
            yc.copy_from_slice(ys);
            for c in &mut yc[1..] {
                *c = -*c;
            }
            mul_into(&yc, xs, &mut tmp);
            acc.iter_mut().zip(&tmp).for_each(|(a, t)| *a += t);
        }
        CdNumber::new(self.level, acc)
    }

    /// `π^j(x)`: keeps the `i_j`-coefficient of every entry.
    pub fn grade_project(&self, j: usize) -> Result<ModuleVector> {
        let w = 1usize << self.level;
        if j >= w {
            return Err(Error::IndexOutOfRange { index: j, level: self.level });
        }
        let mut out = ModuleVector::zeros(self.level, self.n);
        for k in 0..self.n {
            out.data[k * w + j] = self.data[k * w + j];
        }
        Ok(out)
    }

    /// Entrywise `x_k ↦ c · x_k`.
    pub fn left_mul(&self, c: &CdNumber) -> Result<ModuleVector> {
        self.entrywise(c, true)
    }

    /// Entrywise `x_k ↦ x_k · c`.
    pub fn right_mul(&self, c: &CdNumber) -> Result<ModuleVector> {
        self.entrywise(c, false)
    }

    fn entrywise(&self, c: &CdNumber, left: bool) -> Result<ModuleVector> {
        if c.level() != self.level {
            return Err(Error::LevelMismatch(self.level, c.level()));
        }
        let w = 1usize << self.level;
        let mut out = ModuleVector::zeros(self.level, self.n);
        for k in 0..self.n {
            let x = &self.data[k * w..(k + 1) * w];
            let o = &mut out.data[k * w..(k + 1) * w];
            if left {
                mul_into(c.coeffs(), x, o);
            } else {
                mul_into(x, c.coeffs(), o);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> ModuleVector {
        ModuleVector { level: self.level, n: self.n, data: self.data.iter().map(|c| c * s).collect() }
    }

    pub fn checked_add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ModuleVector { level: self.level, n: self.n, data })
    }

    pub fn checked_sub(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(ModuleVector { level: self.level, n: self.n, data })
    }

    pub fn distance(&self, other: &ModuleVector) -> Result<f64> {
        Ok(self.checked_sub(other)?.norm())
    }

    fn same_shape(&self, other: &ModuleVector) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        if self.n != other.n {
            return Err(Error::Shape(format!("dimension {} vs {}", self.n, other.n)));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleVectorJson {
    v: u32,
    n: usize,
    entries: Vec<Vec<f64>>,
}

impl Serialize for ModuleVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let w = 1usize << self.level;
        ModuleVectorJson {
            v: self.level,
            n: self.n,
            entries: self.data.chunks(w).map(<[f64]>::to_vec).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModuleVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ModuleVectorJson::deserialize(d)?;
        if raw.entries.len() != raw.n {
            return Err(D::Error::custom(format!(
                "n = {} but {} entries given",
                raw.n,
                raw.entries.len()
            )));
        }
        let w = 1usize << raw.v.min(31);
        if let Some(bad) = raw.entries.iter().find(|e| e.len() != w) {
            return Err(D::Error::custom(format!("entry of length {} at level {}", bad.len(), raw.v)));
        }
        let data = raw.entries.into_iter().flatten().collect();
        ModuleVector::new(raw.v, raw.n, data).map_err(D::Error::custom)
    }
}
