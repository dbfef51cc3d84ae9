//! Recovering the counting quasipolynomial from exact samples.
//!
//! For a candidate period `p` and degree `n` the samples `m = 1..=p(n+3)` give
//! `n + 3` values per residue class: the first `n + 1` determine the
//! constituent, the last two are held out. The first candidate whose held-out
//! values all match is accepted.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    determinant, format_rational, from_bigint, gf_from_counts, interpolate, rational,
    to_integer, Polynomial, Quasipolynomial, Rational, RationalGeneratingFunction,
};
use crate::enumerate::{chromatic_count, count_nowhere_harmonic, Budget};
use crate::error::{Error, Result};
use crate::exclusion::{count_by_exclusion, MAX_VERTICES};
use crate::graph::{laplacian, Graph};
use crate::starfast::count_star;

type Counter = dyn Fn(u64) -> Result<BigInt> + Send + Sync;

/// A deterministic exact counting function `m ↦ count(m)` for `m >= 1`, plus
/// what is known about the graph behind it.
pub struct CountOracle {
    counter: Box<Counter>,
    pub degree: usize,
    pub vertices: usize,
    pub connected: bool,
    pub source: String,
}

impl fmt::Debug for CountOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CountOracle")
            .field("source", &self.source)
            .field("degree", &self.degree)
            .field("vertices", &self.vertices)
            .field("connected", &self.connected)
            .finish()
    }
}

impl CountOracle {
    pub fn new(
        source: impl Into<String>,
        vertices: usize,
        connected: bool,
        counter: impl Fn(u64) -> Result<BigInt> + Send + Sync + 'static,
    ) -> Self {
        Self {
            counter: Box::new(counter),
            degree: vertices,
            vertices,
            connected,
            source: source.into(),
        }
    }

    /// `ℏ_G` by exhaustive enumeration.
    pub fn brute_force(g: &Graph, budget: Budget) -> Self {
        let graph = g.clone();
        Self::new("brute force", g.n(), g.is_connected(), move |m| {
            count_nowhere_harmonic(&graph, m, budget)
        })
    }

    /// `ℏ` of the star on `n` vertices via the leaf-sum dynamic program.
    pub fn star(n: usize) -> Self {
        Self::new("star dynamic program", n, true, move |m| count_star(n, m))
    }

    /// `ℏ_G` by inclusion–exclusion over forced-harmonic vertex sets.
    pub fn exclusion(g: &Graph, budget: Budget) -> Self {
        let graph = g.clone();
        Self::new("inclusion-exclusion", g.n(), g.is_connected(), move |m| {
            count_by_exclusion(&graph, m, budget)
        })
    }

    /// Stars (in any labelling) go to the dynamic program, other small graphs
    /// to inclusion–exclusion, the rest to brute force.
    pub fn for_graph(g: &Graph, budget: Budget) -> Self {
        if g.n() >= 2 && g.star_center().is_some() {
            Self::star(g.n())
        } else if g.n() <= MAX_VERTICES {
            Self::exclusion(g, budget)
        } else {
            Self::brute_force(g, budget)
        }
    }

    /// The chromatic polynomial `χ_G` by exhaustion.
    pub fn chromatic(g: &Graph, budget: Budget) -> Self {
        let graph = g.clone();
        Self::new("proper colorings", g.n(), g.is_connected(), move |m| {
            chromatic_count(&graph, m, budget)
        })
    }

    pub fn count(&self, m: u64) -> Result<BigInt> {
        (self.counter)(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedPeriod {
    pub period: usize,
    /// Largest `|predicted - observed|` over the held-out samples, or the
    /// reason the otherwise consistent fit was refused.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitReport {
    pub quasipolynomial: Quasipolynomial,
    pub period_tested: Vec<RejectedPeriod>,
    pub samples_used: usize,
    pub holdout_verified: bool,
    /// Whether every divisor of the accepted period was tried and rejected.
    /// When false the reported period is only the smallest candidate that fits.
    pub period_minimal_among_divisors: bool,
}

impl FitReport {
    pub fn period(&self) -> usize {
        self.quasipolynomial.period()
    }

    pub fn degree(&self) -> usize {
        self.quasipolynomial.degree()
    }

    pub fn eval(&self, m: i64) -> Rational {
        self.quasipolynomial.eval(m)
    }

    /// `sum_{m>=1} f(m) z^m` over `(1 - z^p)^(n+1)` for the fitted period `p`.
    pub fn generating_function(&self) -> Result<RationalGeneratingFunction> {
        let p = self.period();
        let n = self.degree();
        let values = self.quasipolynomial.values_from_one(p * (n + 3));
        gf_from_counts(&values, p, n)
    }
}

/// `p(n + 3)`, the number of samples a candidate period needs.
pub fn samples_needed(period: usize, degree: usize) -> usize {
    period * (degree + 3)
}

pub fn fit_quasipolynomial(
    oracle: &CountOracle,
    degree: usize,
    period_candidates: &[usize],
) -> Result<FitReport> {
    if period_candidates.is_empty() {
        return Err(Error::InvalidArgument("no candidate periods".into()));
    }
    let mut samples: BTreeMap<u64, BigInt> = BTreeMap::new();
    let mut rejected: Vec<RejectedPeriod> = Vec::new();

    for &p in period_candidates {
        if p == 0 {
            return Err(Error::InvalidArgument("period 0".into()));
        }
        let top = samples_needed(p, degree) as u64;
        let missing: Vec<u64> = (1..=top).filter(|m| !samples.contains_key(m)).collect();
        let fetched: Vec<(u64, BigInt)> = missing
            .into_par_iter()
            .map(|m| oracle.count(m).map(|c| (m, c)))
            .collect::<Result<_>>()?;
        samples.extend(fetched);

        match fit_period(&samples, p, degree)? {
            Ok(constituents) => {
                let quasi = Quasipolynomial::new(p, degree, constituents)?;
                if oracle.connected {
                    if let Some(reason) = leading_term_defect(&quasi) {
                        rejected.push(RejectedPeriod {
                            period: p,
                            residual: reason,
                        });
                        continue;
                    }
                }
                let minimal = divisors(p)
                    .into_iter()
                    .filter(|&d| d < p)
                    .all(|d| rejected.iter().any(|r| r.period == d));
                return Ok(FitReport {
                    quasipolynomial: quasi,
                    period_tested: rejected,
                    samples_used: samples.len(),
                    holdout_verified: true,
                    period_minimal_among_divisors: minimal,
                });
            }
            Err(residual) => rejected.push(RejectedPeriod {
                period: p,
                residual: format_rational(&residual),
            }),
        }
    }
    let summary = rejected
        .iter()
        .map(|r| format!("p={}: {}", r.period, r.residual))
        .collect::<Vec<_>>()
        .join(", ");
    Err(Error::PeriodNotFound(summary))
}

/// Constituents for period `p`, or the largest held-out residual.
fn fit_period(
    samples: &BTreeMap<u64, BigInt>,
    p: usize,
    degree: usize,
) -> Result<std::result::Result<Vec<Polynomial>, Rational>> {
    let top = samples_needed(p, degree) as u64;
    let mut constituents = Vec::with_capacity(p);
    let mut worst = Rational::zero();
    for r in 0..p as u64 {
        let class: Vec<(i64, Rational)> = (1..=top)
            .filter(|m| m % p as u64 == r)
            .map(|m| (m as i64, from_bigint(&samples[&m])))
            .collect();
        let (fit_nodes, holdout) = class.split_at(degree + 1);
        let poly = interpolate(fit_nodes)?;
        for (m, observed) in holdout {
            let residual = (poly.eval_int(*m) - observed).abs();
            if residual > worst {
                worst = residual;
            }
        }
        constituents.push(poly);
    }
    Ok(if worst.is_zero() {
        Ok(constituents)
    } else {
        Err(worst)
    })
}

fn leading_term_defect(q: &Quasipolynomial) -> Option<String> {
    q.constituents().iter().enumerate().find_map(|(r, c)| {
        (c.degree() != Some(q.degree()) || !c.leading().is_some_and(One::is_one))
            .then(|| format!("constituent {r} is not monic of degree {}", q.degree()))
    })
}

fn divisors(k: usize) -> Vec<usize> {
    (1..=k).filter(|d| k.is_multiple_of(*d)).collect()
}

/// Divisors of `lcm(1..n-1)` ascending, then multiples of that lcm up to `cap`.
pub fn period_candidates(n: usize, cap: usize) -> Vec<usize> {
    let base = (1..n.max(2)).fold(1usize, |acc, k| acc.lcm(&k));
    let mut out = divisors(base);
    out.extend((2..).map(|k| k * base).take_while(|&p| p <= cap));
    out
}

/// Candidates with the cap at twice `lcm(1..n-1)`.
pub fn default_period_candidates(n: usize) -> Vec<usize> {
    let base = (1..n.max(2)).fold(1usize, |acc, k| acc.lcm(&k));
    period_candidates(n, 2 * base)
}

/// Largest vertex count for which [`laplacian_minor_lcm`] enumerates minors.
pub const MINOR_LIMIT: usize = 8;

/// The lcm of all nonzero minors of the Laplacian, if it fits in a `u64`.
///
/// Every vertex of a closed region solves a square system built from
/// Laplacian rows and unit vectors, so its denominators divide such a minor,
/// and the period of `ℏ_G` divides this lcm.
pub fn laplacian_minor_lcm(g: &Graph) -> Option<u64> {
    let n = g.n();
    if n > MINOR_LIMIT {
        return None;
    }
    let lap = laplacian(g).to_i64_rows();
    let subsets: Vec<Vec<usize>> = (1u32..1 << n)
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    let mut acc = BigInt::one();
    for rows in &subsets {
        for cols in subsets.iter().filter(|c| c.len() == rows.len()) {
            let sub: Vec<Vec<Rational>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| rational(lap[r][c])).collect())
                .collect();
            if let Some(d) = to_integer(&determinant(&sub)) {
                if !d.is_zero() {
                    acc = acc.lcm(&d.abs());
                }
            }
        }
    }
    u64::try_from(&acc).ok()
}

/// Divisors of [`laplacian_minor_lcm`] in increasing order: a candidate list
/// guaranteed to contain the period.
pub fn complete_period_candidates(g: &Graph) -> Option<Vec<usize>> {
    let bound = laplacian_minor_lcm(g)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= bound {
        if bound % d == 0 {
            small.push(d as usize);
            if d * d != bound {
                large.push((bound / d) as usize);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// `(-1)^n f(-m)`, which must be an integer.
pub fn evaluate_negative(report: &FitReport, m: u64) -> Result<BigInt> {
    if !report.holdout_verified {
        return Err(Error::UnverifiedFit);
    }
    let mut v = report.eval(-(m as i64));
    if report.degree() % 2 == 1 {
        v = -v;
    }
    to_integer(&v).ok_or_else(|| Error::NonIntegral(format_rational(&v), m))
}

/// Structural facts every fit of a connected graph on `n` vertices must obey.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCheck {
    pub monic_of_degree_n: bool,
    /// `(-1)^n f(-1)`
    #[serde(with = "crate::algebra::decimal")]
    pub closed_count_at_zero: BigInt,
    /// `2^n - 2`
    #[serde(with = "crate::algebra::decimal")]
    pub region_count: BigInt,
    /// The unreduced numerator has the factor `2 z^2`.
    pub numerator_divisible_by_2z2: bool,
}

impl StructureCheck {
    pub fn holds(&self) -> bool {
        self.monic_of_degree_n
            && self.closed_count_at_zero == self.region_count
            && self.numerator_divisible_by_2z2
    }
}

pub fn structure_check(report: &FitReport) -> Result<StructureCheck> {
    let n = report.degree();
    let gf = report.generating_function()?;
    let num = &gf.numerator;
    let two = BigInt::from(2);
    let divisible = num.valuation().is_none_or(|v| v >= 2)
        && num
            .coeffs()
            .iter()
            .all(|c| to_integer(c).is_some_and(|i| i.is_multiple_of(&two)));
    Ok(StructureCheck {
        monic_of_degree_n: leading_term_defect(&report.quasipolynomial).is_none(),
        closed_count_at_zero: evaluate_negative(report, 1)?,
        region_count: (BigInt::one() << n) - 2,
        numerator_divisible_by_2z2: divisible,
    })
}
