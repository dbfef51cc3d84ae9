use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// A function on the integers that agrees with `constituents[r]` on every
/// argument congruent to `r` modulo `period`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawQuasipolynomial")]
pub struct Quasipolynomial {
    period: usize,
    degree: usize,
    constituents: Vec<Polynomial>,
}

#[derive(Deserialize)]
struct RawQuasipolynomial {
    period: usize,
    degree: usize,
    constituents: Vec<Polynomial>,
}

impl TryFrom<RawQuasipolynomial> for Quasipolynomial {
    type Error = Error;
    fn try_from(raw: RawQuasipolynomial) -> Result<Self> {
        Self::new(raw.period, raw.degree, raw.constituents)
    }
}

impl Quasipolynomial {
    pub fn new(period: usize, degree: usize, constituents: Vec<Polynomial>) -> Result<Self> {
        if period == 0 || constituents.len() != period {
            return Err(Error::InvalidArgument(format!(
                "period {period} needs exactly {period} constituents, got {}",
                constituents.len()
            )));
        }
        if let Some(bad) = constituents
            .iter()
            .position(|c| c.degree().is_some_and(|d| d > degree))
        {
            return Err(Error::InvalidArgument(format!(
                "constituent {bad} exceeds degree {degree}"
            )));
        }
        Ok(Self {
            period,
            degree,
            constituents,
        })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        let degree = p.degree().unwrap_or(0);
        Self {
            period: 1,
            degree,
            constituents: vec![p],
        }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn constituents(&self) -> &[Polynomial] {
        &self.constituents
    }

    pub fn residue(&self, m: i64) -> usize {
        m.rem_euclid(self.period as i64) as usize
    }

    pub fn constituent_for(&self, m: i64) -> &Polynomial {
        &self.constituents[self.residue(m)]
    }

    pub fn eval(&self, m: i64) -> Rational {
        self.constituent_for(m).eval_int(m)
    }

    /// Values at `1..=len`, the coefficient sequence of `sum_{m>=1} f(m) z^m`.
    pub fn values_from_one(&self, len: usize) -> Vec<Rational> {
        (1..=len as i64).map(|m| self.eval(m)).collect()
    }
}

/// `f(m)`, using residue `((m mod p) + p) mod p` for negative `m`.
pub fn quasi_eval(f: &Quasipolynomial, m: i64) -> Rational {
    f.eval(m)
}

/// One line per residue class.
impl fmt::Display for Quasipolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (self.period - 1).to_string().len();
        for (r, c) in self.constituents.iter().enumerate() {
            writeln!(f, "m = {r:>width$} (mod {}): {}", self.period, c.in_variable("m"))?;
        }
        Ok(())
    }
}
