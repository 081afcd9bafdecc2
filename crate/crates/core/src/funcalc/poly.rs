//! Non-commutative polynomials with explicit bracketing.
//!
//! A term is a word of factors, each an algebra constant `a` or a power
//! `z^m`. The term's `order` lists merge positions: each entry `p` replaces
//! the adjacent pair at `p, p+1` of the current word by its product. Without
//! an order the word is merged left to right.

use serde::{Deserialize, Serialize};

use crate::cdnum::CdNumber;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Factor {
    Coef(CdNumber),
    Pow(u32),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub factors: Vec<Factor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
}

impl Term {
    pub fn new(factors: Vec<Factor>, order: Option<Vec<usize>>) -> Result<Self> {
        let t = Term { factors, order };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::Bracketing("term has no factors".into()));
        }
        if let Some(order) = &self.order {
            if order.len() + 1 != self.factors.len() {
                return Err(Error::Bracketing(format!(
                    "{} merges for {} factors",
                    order.len(),
                    self.factors.len()
                )));
            }
            for (step, &p) in order.iter().enumerate() {
                let len = self.factors.len() - step;
                if p + 1 >= len {
                    return Err(Error::Bracketing(format!("merge position {p} out of range at step {step}")));
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| if let Factor::Pow(m) = f { *m } else { 0 }).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub v: u32,
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn new(level: u32, terms: Vec<Term>) -> Result<Self> {
        let p = Polynomial { v: level, terms };
        p.validate()?;
        Ok(p)
    }

    /// Checks bracketing vectors and coefficient levels; call after deserializing.
    pub fn validate(&self) -> Result<()> {
        crate::cdnum::check_level(self.v)?;
        if self.terms.is_empty() {
            return Err(Error::Bracketing("polynomial has no terms".into()));
        }
        for t in &self.terms {
            t.validate()?;
            for f in &t.factors {
                if let Factor::Coef(c) = f {
                    if c.level() != self.v {
                        return Err(Error::LevelMismatch(self.v, c.level()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn level(&self) -> u32 {
        self.v
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Term::degree).max().unwrap_or(0)
    }

    /// The terms of maximal degree.
    pub fn top_degree(&self) -> Polynomial {
        let d = self.degree();
        Polynomial { v: self.v, terms: self.terms.iter().filter(|t| t.degree() == d).cloned().collect() }
    }

    /// Evaluates in any structure given how to embed constants and powers,
    /// multiply and add. Merges follow each term's order.
    pub fn fold<V>(
        &self,
        coef: impl Fn(&CdNumber) -> Result<V>,
        pow: impl Fn(u32) -> Result<V>,
        mul: impl Fn(&V, &V) -> Result<V>,
        add: impl Fn(&V, &V) -> Result<V>,
    ) -> Result<V> {
        let mut total: Option<V> = None;
        for t in &self.terms {
            let mut word = t
                .factors
                .iter()
                .map(|f| match f {
                    Factor::Coef(c) => coef(c),
                    Factor::Pow(m) => pow(*m),
                })
                .collect::<Result<Vec<V>>>()?;
            let merges = t.order.clone().unwrap_or_else(|| vec![0; word.len() - 1]);
            for p in merges {
                let right = word.remove(p + 1);
                word[p] = mul(&word[p], &right)?;
            }
            let value = word.pop().expect("one factor left");
            total = Some(match total {
                None => value,
                Some(acc) => add(&acc, &value)?,
            });
        }
        total.ok_or_else(|| Error::Bracketing("polynomial has no terms".into()))
    }

    /// `P(z)` in the algebra.
    pub fn eval(&self, z: &CdNumber) -> Result<CdNumber> {
        if z.level() != self.v {
            return Err(Error::LevelMismatch(self.v, z.level()));
        }
        self.fold(
            |c| Ok(c.clone()),
            |m| {
                let mut acc = CdNumber::one(self.v);
                for _ in 0..m {
                    acc = &acc * z;
                }
                Ok(acc)
            },
            |a, b| a.checked_mul(b),
            |a, b| a.checked_add(b),
        )
    }
}
