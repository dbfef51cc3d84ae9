//! Exact arithmetic: rationals, dense univariate polynomials, quasipolynomials
//! and rational generating functions over products of `(1 - z^k)`.
//!
//! Nothing here touches floating point. Rationals are `num_rational::BigRational`
//! and are always kept in lowest terms with a positive denominator.

mod gf;
mod linalg;
mod poly;
mod quasi;

pub use gf::{gf_from_counts, reduce_gf, RationalGeneratingFunction};
pub use linalg::{determinant, rank, rref};
pub use poly::{interpolate, Polynomial};
pub use quasi::{quasi_eval, Quasipolynomial};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Wire form used in every JSON document: always `"num/den"`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

/// The integer value of `q`, if it has one.
pub fn to_integer(q: &Rational) -> Option<BigInt> {
    q.denom().is_one().then(|| q.numer().clone())
}

/// Serde adapter writing a `BigInt` as a decimal string.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("not an integer: {s}")))
    }
}
