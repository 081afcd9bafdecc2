//! Real-argument functions with algebra values: step functions on half-open
//! cells, closures and named builtins.

use serde::{Deserialize, Serialize};

use crate::cdnum::CdNumber;
use crate::error::{Error, Result};

/// Distance within which a spectral point snaps onto a cell boundary.
pub const SNAP_TOL: f64 = 1e-9;

/// A function `ℝ → A_v`, possibly partial.
pub trait SpectralFunction {
    fn level(&self) -> u32;
    /// `None` where the function is undefined.
    fn eval(&self, t: f64) -> Option<CdNumber>;
}

impl<F: SpectralFunction + ?Sized> SpectralFunction for &F {
    fn level(&self) -> u32 {
        (**self).level()
    }
    fn eval(&self, t: f64) -> Option<CdNumber> {
        (**self).eval(t)
    }
}

/// Half-open cell `[lo, hi)`; `lo = −∞` and `hi = +∞` are allowed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub lo: f64,
    pub hi: f64,
}

impl Cell {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::StepFunction(format!("empty or malformed cell [{lo}, {hi})")));
        }
        Ok(Cell { lo, hi })
    }

    pub fn everything() -> Self {
        Cell { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    /// Membership after snapping `t` onto a boundary within [`SNAP_TOL`].
    pub fn contains(&self, t: f64) -> bool {
        let t = snap(t, &[self.lo, self.hi]);
        self.lo <= t && t < self.hi
    }
}

fn snap(t: f64, boundaries: &[f64]) -> f64 {
    boundaries
        .iter()
        .copied()
        .filter(|b| b.is_finite() && (t - b).abs() <= SNAP_TOL * b.abs().max(1.0))
        .min_by(|a, b| (t - a).abs().total_cmp(&(t - b).abs()))
        .unwrap_or(t)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction {
    level: u32,
    cells: Vec<(Cell, CdNumber)>,
    default: Option<CdNumber>,
}

impl StepFunction {
    /// Cells must be pairwise disjoint; `default` covers the complement
    /// (undefined there if `None`).
    pub fn new(level: u32, cells: Vec<(Cell, CdNumber)>, default: Option<CdNumber>) -> Result<Self> {
        crate::cdnum::check_level(level)?;
        for v in cells.iter().map(|(_, v)| v).chain(default.as_ref()) {
            if v.level() != level {
                return Err(Error::LevelMismatch(level, v.level()));
            }
        }
        let mut sorted: Vec<Cell> = cells.iter().map(|(c, _)| *c).collect();
        sorted.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        if let Some(w) = sorted.windows(2).find(|w| w[0].hi > w[1].lo) {
            return Err(Error::StepFunction(format!(
                "cells [{}, {}) and [{}, {}) overlap",
                w[0].lo, w[0].hi, w[1].lo, w[1].hi
            )));
        }
        Ok(StepFunction { level, cells, default })
    }

    pub fn constant(c: CdNumber) -> Self {
        StepFunction { level: c.level(), cells: Vec::new(), default: Some(c) }
    }

    /// `χ_{[lo, hi)}`.
    pub fn indicator(level: u32, cell: Cell) -> Self {
        StepFunction {
            level,
            cells: vec![(cell, CdNumber::one(level))],
            default: Some(CdNumber::zero(level)),
        }
    }

    /// Real-valued step function from `(lo, hi, value)` triples, default 0.
    pub fn real(level: u32, cells: &[(f64, f64, f64)]) -> Result<Self> {
        let cells = cells
            .iter()
            .map(|&(lo, hi, v)| Ok((Cell::new(lo, hi)?, CdNumber::real(level, v))))
            .collect::<Result<Vec<_>>>()?;
        StepFunction::new(level, cells, Some(CdNumber::zero(level)))
    }

    pub fn cells(&self) -> &[(Cell, CdNumber)] {
        &self.cells
    }

    pub fn default_value(&self) -> Option<&CdNumber> {
        self.default.as_ref()
    }

    fn boundaries(&self) -> Vec<f64> {
        self.cells.iter().flat_map(|(c, _)| [c.lo, c.hi]).collect()
    }
}

impl SpectralFunction for StepFunction {
    fn level(&self) -> u32 {
        self.level
    }

    fn eval(&self, t: f64) -> Option<CdNumber> {
        let t = snap(t, &self.boundaries());
        self.cells
            .iter()
            .find(|(c, _)| c.lo <= t && t < c.hi)
            .map(|(_, v)| v.clone())
            .or_else(|| self.default.clone())
    }
}

/// A closure `f64 → Option<CdNumber>` at a fixed level.
pub struct FnFunction<F> {
    level: u32,
    f: F,
}

impl<F: Fn(f64) -> Option<CdNumber>> FnFunction<F> {
    pub fn new(level: u32, f: F) -> Self {
        FnFunction { level, f }
    }
}

impl<F: Fn(f64) -> Option<CdNumber>> SpectralFunction for FnFunction<F> {
    fn level(&self) -> u32 {
        self.level
    }
    fn eval(&self, t: f64) -> Option<CdNumber> {
        (self.f)(t)
    }
}

/// Real-valued closure, undefined where it returns a non-finite value.
pub fn real_fn<F: Fn(f64) -> f64>(level: u32, f: F) -> FnFunction<impl Fn(f64) -> Option<CdNumber>> {
    FnFunction::new(level, move |t| {
        let y = f(t);
        y.is_finite().then(|| CdNumber::real(level, y))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    Id,
    Sqrt,
    Square,
    Cube,
    Cbrt,
    Abs,
    Exp,
}

/// A [`Builtin`] evaluated at a given level. `sqrt` is undefined below 0.
#[derive(Clone, Copy, Debug)]
pub struct BuiltinFunction {
    pub kind: Builtin,
    pub level: u32,
}

impl SpectralFunction for BuiltinFunction {
    fn level(&self) -> u32 {
        self.level
    }
    fn eval(&self, t: f64) -> Option<CdNumber> {
        let y = match self.kind {
            Builtin::Id => t,
            // tiny negative eigenvalues of positive operators count as 0
            Builtin::Sqrt if t < -SNAP_TOL => return None,
            Builtin::Sqrt => t.max(0.0).sqrt(),
            Builtin::Square => t * t,
            Builtin::Cube => t * t * t,
            Builtin::Cbrt => t.cbrt(),
            Builtin::Abs => t.abs(),
            Builtin::Exp => t.exp(),
        };
        Some(CdNumber::real(self.level, y))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Bound {
    Finite(f64),
    NegInf,
    PosInf,
}

impl Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(x) => s.serialize_f64(*x),
            Bound::NegInf => s.serialize_str("-inf"),
            Bound::PosInf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Bound::Finite(x)),
            Raw::Str(s) if s == "-inf" => Ok(Bound::NegInf),
            Raw::Str(s) if s == "inf" || s == "+inf" => Ok(Bound::PosInf),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad cell bound {s:?}"))),
        }
    }
}

impl Bound {
    fn value(&self) -> f64 {
        match self {
            Bound::Finite(x) => *x,
            Bound::NegInf => f64::NEG_INFINITY,
            Bound::PosInf => f64::INFINITY,
        }
    }

    fn from_value(x: f64) -> Self {
        if x == f64::NEG_INFINITY {
            Bound::NegInf
        } else if x == f64::INFINITY {
            Bound::PosInf
        } else {
            Bound::Finite(x)
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CellJson {
    lo: Bound,
    hi: Bound,
    value: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct StepJson {
    cells: Vec<CellJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    default: Option<Vec<f64>>,
}

impl Serialize for StepFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StepJson {
            cells: self
                .cells
                .iter()
                .map(|(c, v)| CellJson {
                    lo: Bound::from_value(c.lo),
                    hi: Bound::from_value(c.hi),
                    value: v.coeffs().to_vec(),
                })
                .collect(),
            default: self.default.as_ref().map(|d| d.coeffs().to_vec()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StepFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = StepJson::deserialize(d)?;
        let to_cd = |c: Vec<f64>| CdNumber::from_coeffs(c).map_err(D::Error::custom);
        let mut cells = Vec::with_capacity(raw.cells.len());
        for c in raw.cells {
            let cell = Cell::new(c.lo.value(), c.hi.value()).map_err(D::Error::custom)?;
            cells.push((cell, to_cd(c.value)?));
        }
        let default = raw.default.map(to_cd).transpose()?;
        let level = cells
            .first()
            .map(|(_, v)| v.level())
            .or(default.as_ref().map(|d| d.level()))
            .ok_or_else(|| D::Error::custom("step function has neither cells nor default"))?;
        StepFunction::new(level, cells, default).map_err(D::Error::custom)
    }
}

/// On-disk function description: a step function or a named builtin.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionFile {
    Builtin { builtin: Builtin },
    Step(StepFunction),
}

impl FunctionFile {
    /// The function at the operator's level. Step functions must match it.
    pub fn at_level(&self, level: u32) -> Result<Box<dyn SpectralFunction + '_>> {
        match self {
            FunctionFile::Builtin { builtin } => Ok(Box::new(BuiltinFunction { kind: *builtin, level })),
            FunctionFile::Step(s) if s.level() == level => Ok(Box::new(s)),
            FunctionFile::Step(s) => Err(Error::LevelMismatch(level, s.level())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_open_cells_with_snapping() {
        let f = StepFunction::real(2, &[(0.0, 1.0, 5.0), (1.0, 2.0, 7.0)]).unwrap();
        assert_eq!(f.eval(0.0).unwrap().real_part(), 5.0);
        assert_eq!(f.eval(1.0).unwrap().real_part(), 7.0);
        assert_eq!(f.eval(1.0 - 1e-12).unwrap().real_part(), 7.0);
        assert_eq!(f.eval(0.999).unwrap().real_part(), 5.0);
        assert_eq!(f.eval(2.0 - 1e-12).unwrap().real_part(), 0.0);
        assert_eq!(f.eval(-1e-12).unwrap().real_part(), 5.0);
    }

    #[test]
    fn overlap_and_undefined() {
        assert!(StepFunction::real(2, &[(0.0, 2.0, 1.0), (1.0, 3.0, 1.0)]).is_err());
        assert!(Cell::new(1.0, 1.0).is_err());
        let partial = StepFunction::new(1, vec![(Cell::new(0.0, 1.0).unwrap(), CdNumber::one(1))], None).unwrap();
        assert!(partial.eval(2.0).is_none());
        let sqrt = BuiltinFunction { kind: Builtin::Sqrt, level: 2 };
        assert!(sqrt.eval(-1.0).is_none());
        assert_eq!(sqrt.eval(-1e-12).unwrap().real_part(), 0.0);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"cells":[{"lo":"-inf","hi":0.0,"value":[0,0]},{"lo":0.0,"hi":"inf","value":[1,2]}],"default":[0,0]}"#;
        let f: StepFunction = serde_json::from_str(text).unwrap();
        assert_eq!(f.level(), 1);
        assert_eq!(f.eval(3.0).unwrap().coeffs(), &[1.0, 2.0]);
        let back: StepFunction = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        let b: FunctionFile = serde_json::from_str(r#"{"builtin":"sqrt"}"#).unwrap();
        assert_eq!(b.at_level(2).unwrap().eval(9.0).unwrap().real_part(), 3.0);
        assert!(serde_json::from_str::<StepFunction>(r#"{"cells":[]}"#).is_err());
        assert!(serde_json::from_str::<StepFunction>(r#"{"cells":[{"lo":"x","hi":1,"value":[1]}]}"#).is_err());
    }
}
