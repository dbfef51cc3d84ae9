//! Regions of the Laplacian arrangement inside the unit cube.
//!
//! Each nonconstant vertex orientation `ε` selects the open region
//! `{x in (0,1)^n : ε_v (L x)_v < 0 for every v}`. Its points at dilation `t`
//! are the `x = c / t` with `c` in `{1..t-1}^n`, so the regions together hold
//! exactly the nowhere-harmonic colorings with `t - 1` colors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{format_rational, parse_rational, rank, ratio, rational, Rational};
use crate::enumerate::Budget;
use crate::error::{Error, Result};
use crate::graph::{family, laplacian, Family, Graph, VertexOrientation};
use crate::starfast::count_star;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    /// `c / t`
    pub fn from_scaled(c: &[i64], t: i64) -> Self {
        Self::new(c.iter().map(|&v| ratio(v, t)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|q| q.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
            .map_err(serde::de::Error::custom)
    }
}

/// The strict system `D(ε) L x < 0`, `0 < x < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSystem {
    orientation: VertexOrientation,
    rows: Vec<Vec<i64>>,
}

impl RegionSystem {
    pub fn orientation(&self) -> &VertexOrientation {
        &self.orientation
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// `D(ε) L`, row by row.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn rational_matrix(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&v| rational(v)).collect())
            .collect()
    }

    /// All `3n` constraints as `(a, b)` meaning `a·x < b` (or `<=` when
    /// closed): the `n` region rows, then `x_i < 1`, then `-x_i < 0`.
    pub fn constraint_rows(&self) -> Vec<(Vec<i64>, i64)> {
        let n = self.dimension();
        let unit = |i: usize, s: i64| (0..n).map(|k| if k == i { s } else { 0 }).collect();
        let mut out: Vec<(Vec<i64>, i64)> = self.rows.iter().map(|r| (r.clone(), 0)).collect();
        out.extend((0..n).map(|i| (unit(i, 1), 1)));
        out.extend((0..n).map(|i| (unit(i, -1), 0)));
        out
    }

    pub fn negated(&self) -> Self {
        Self {
            orientation: self.orientation.negated(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|v| -v).collect())
                .collect(),
        }
    }

    fn slacks(&self, p: &RationalPoint) -> Vec<Rational> {
        self.constraint_rows()
            .iter()
            .map(|(a, b)| {
                let lhs: Rational = a
                    .iter()
                    .zip(p.coords())
                    .filter(|(&ai, _)| ai != 0)
                    .map(|(&ai, x)| rational(ai) * x)
                    .sum();
                rational(*b) - lhs
            })
            .collect()
    }

    /// Whether `p` lies in the open region.
    pub fn contains(&self, p: &RationalPoint) -> bool {
        p.len() == self.dimension() && self.slacks(p).iter().all(Signed::is_positive)
    }

    /// Whether `c / t` lies in the open region, for integer `c`.
    fn contains_scaled(&self, c: &[i64], t: i64) -> bool {
        c.iter().all(|&v| 0 < v && v < t)
            && self
                .rows
                .iter()
                .all(|r| r.iter().zip(c).map(|(a, b)| a * b).sum::<i64>() < 0)
    }
}

pub fn region_system(g: &Graph, eps: &VertexOrientation) -> Result<RegionSystem> {
    if eps.len() != g.n() {
        return Err(Error::OrientationLength {
            got: eps.len(),
            expected: g.n(),
        });
    }
    if !eps.is_nonconstant() {
        return Err(Error::ConstantOrientation);
    }
    let rows = laplacian(g)
        .to_i64_rows()
        .into_iter()
        .zip(eps.signs())
        .map(|(row, &s)| row.into_iter().map(|v| v * i64::from(s)).collect())
        .collect();
    Ok(RegionSystem {
        orientation: eps.clone(),
        rows,
    })
}

/// Calls `visit` on every `c` in `{1..=k}^n`, in lexicographic order.
fn for_each_grid_point(n: usize, k: i64, mut visit: impl FnMut(&[i64])) {
    if k < 1 {
        return;
    }
    let mut c = vec![1i64; n];
    loop {
        visit(&c);
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if c[pos] < k {
                c[pos] += 1;
                break;
            }
            c[pos] = 1;
        }
    }
}

/// Points of `t^{-1} Z^n` in the region.
pub fn count_region_points(sys: &RegionSystem, t: u64, budget: Budget) -> Result<BigInt> {
    if t == 0 {
        return Err(Error::InvalidArgument("dilation must be positive".into()));
    }
    let n = sys.dimension();
    budget.check_power(t - 1, n)?;
    let t = t as i64;
    if n == 0 || t < 2 {
        return Ok(BigInt::zero());
    }
    let total: u64 = (1..t)
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            for_each_grid_point(n - 1, t - 1, |rest| {
                let mut c = Vec::with_capacity(n);
                c.push(first);
                c.extend_from_slice(rest);
                if sys.contains_scaled(&c, t) {
                    count += 1;
                }
            });
            count
        })
        .sum();
    Ok(BigInt::from(total))
}

/// One grid pass at dilation `t`, bucketing every point by the region it
/// lies in. Points on a hyperplane are dropped.
pub fn region_point_counts(
    g: &Graph,
    t: u64,
    budget: Budget,
) -> Result<BTreeMap<VertexOrientation, BigInt>> {
    let n = g.n();
    budget.check_power(t.saturating_sub(1), n)?;
    let lap = laplacian(g).to_i64_rows();
    let mut buckets: BTreeMap<Vec<i8>, u64> = BTreeMap::new();
    for_each_grid_point(n, t as i64 - 1, |c| {
        if let Some(signs) = region_of(&lap, c) {
            *buckets.entry(signs).or_default() += 1;
        }
    });
    buckets
        .into_iter()
        .map(|(s, k)| Ok((VertexOrientation::new(s)?, BigInt::from(k))))
        .collect()
}

/// `-sign(L c)`, or `None` when some entry of `L c` vanishes.
fn region_of(lap: &[Vec<i64>], c: &[i64]) -> Option<Vec<i8>> {
    lap.iter()
        .map(|row| {
            let d: i64 = row.iter().zip(c).map(|(a, b)| a * b).sum();
            match d.signum() {
                0 => None,
                s => Some(-s as i8),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionWitness {
    pub orientation: VertexOrientation,
    pub dilation: u64,
    pub point: RationalPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionCensus {
    pub found: usize,
    pub max_dilation: u64,
    pub witnesses: Vec<RegionWitness>,
    /// Orientations with no witness up to `max_dilation`; not known to be empty.
    pub unresolved: Vec<VertexOrientation>,
}

pub fn default_max_dilation(n: usize) -> u64 {
    4 * n as u64
}

/// Searches `t = 2..=max_dilation` for an interior point of every region.
///
/// The search stops early once every orientation has a witness, or when the
/// next dilation would exceed the budget; orientations still missing are then
/// reported as unresolved.
pub fn count_nonempty_regions(g: &Graph, max_dilation: u64, budget: Budget) -> Result<RegionCensus> {
    let n = g.n();
    if n > 63 {
        return Err(Error::InvalidArgument(format!("{n} vertices is too many orientations")));
    }
    let lap = laplacian(g).to_i64_rows();
    let mut witnesses: BTreeMap<Vec<i8>, (u64, Vec<i64>)> = BTreeMap::new();
    let wanted = (1usize << n).saturating_sub(2);
    for t in 2..=max_dilation {
        if witnesses.len() == wanted || budget.check_power(t - 1, n).is_err() {
            break;
        }
        for_each_grid_point(n, t as i64 - 1, |c| {
            if let Some(signs) = region_of(&lap, c) {
                witnesses.entry(signs).or_insert_with(|| (t, c.to_vec()));
            }
        });
    }
    // a nonconstant orientation's region is where the witness must sit
    let mut verified = Vec::new();
    for (signs, (t, c)) in witnesses {
        let w = RegionWitness {
            orientation: VertexOrientation::new(signs)?,
            dilation: t,
            point: RationalPoint::from_scaled(&c, t as i64),
        };
        if !w.orientation.is_nonconstant() {
            continue;
        }
        let sys = region_system(g, &w.orientation)?;
        if !sys.contains(&w.point) {
            return Err(Error::InvalidArgument(format!(
                "witness {} misses region {}",
                w.point, w.orientation
            )));
        }
        verified.push(w);
    }
    let unresolved = VertexOrientation::all_nonconstant(n)
        .filter(|e| !verified.iter().any(|w| &w.orientation == e))
        .collect();
    Ok(RegionCensus {
        found: verified.len(),
        max_dilation,
        witnesses: verified,
        unresolved,
    })
}

/// The region of the star on `n` vertices whose orientation is `-1` on the
/// center and the first `j - 1` leaves, `+1` elsewhere.
pub fn star_region(n: usize, j: usize) -> Result<RegionSystem> {
    if !(1..n).contains(&j) {
        return Err(Error::InvalidArgument(format!(
            "star region index {j} outside 1..{}",
            n.saturating_sub(1)
        )));
    }
    let g = family(Family::Star, n)?;
    let signs = (0..n).map(|v| if v < j { -1 } else { 1 }).collect();
    region_system(&g, &VertexOrientation::new(signs)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub dilation: u64,
    /// `2 Σ_j C(n-1, j-1) · #(region j at dilation t)`
    #[serde(with = "crate::algebra::decimal")]
    pub orbit_sum: BigInt,
    /// `ℏ(t - 1)`
    #[serde(with = "crate::algebra::decimal")]
    pub count_previous: BigInt,
    /// `ℏ(t)`
    #[serde(with = "crate::algebra::decimal")]
    pub count_same: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub n: usize,
    pub rows: Vec<OrbitRow>,
    /// `δ` such that the orbit sum at `t` equals `ℏ(t - 1 + δ)` for every
    /// tested `t`.
    pub offset: u8,
}

/// Compares the weighted sum of one region per leaf-permutation orbit with
/// the star count, for `t = 1..=t_max`.
pub fn star_orbit_identity(n: usize, t_max: u64, budget: Budget) -> Result<OrbitReport> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("orbit identity needs n >= 3, got {n}")));
    }
    let regions: Vec<RegionSystem> = (1..n).map(|j| star_region(n, j)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for t in 1..=t_max {
        let mut sum = BigInt::zero();
        for (idx, sys) in regions.iter().enumerate() {
            let j = idx + 1;
            sum += binomial(BigInt::from(n - 1), BigInt::from(j - 1))
                * count_region_points(sys, t, budget)?;
        }
        rows.push(OrbitRow {
            dilation: t,
            orbit_sum: sum * 2,
            count_previous: count_star(n, t - 1)?,
            count_same: count_star(n, t)?,
        });
    }
    let offset = if rows.iter().all(|r| r.orbit_sum == r.count_previous) {
        0
    } else if rows.iter().all(|r| r.orbit_sum == r.count_same) {
        1
    } else {
        return Err(Error::OrbitIdentityViolated);
    };
    Ok(OrbitReport { n, rows, offset })
}

/// The points `v_i`, `i = 0..=n-2`, with `d = n - 1 - i`:
/// `(1/d, 1, 1/d (i times), 0, ..., 0)`. The last one is all ones.
pub fn star_square_vertices(n: usize) -> Vec<RationalPoint> {
    (0..n.saturating_sub(1))
        .map(|i| {
            let d = (n - 1 - i) as i64;
            let mut coords = vec![Rational::zero(); n];
            coords[0] = ratio(1, d);
            coords[1] = Rational::one();
            for x in coords.iter_mut().skip(2).take(i) {
                *x = ratio(1, d);
            }
            RationalPoint::new(coords)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Vertex,
    FeasibleNotVertex,
    Infeasible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Vertex => "vertex",
            Verdict::FeasibleNotVertex => "feasible-not-vertex",
            Verdict::Infeasible => "infeasible",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCheck {
    pub point: RationalPoint,
    pub verdict: Verdict,
    /// Indices into [`RegionSystem::constraint_rows`] holding with equality.
    pub active: Vec<usize>,
    pub active_rank: usize,
}

/// Vertex test for the closure of the region: feasible for every weak
/// constraint, and the tight constraints have full rank.
pub fn verify_vertex(sys: &RegionSystem, p: &RationalPoint) -> VertexCheck {
    let n = sys.dimension();
    let rows = sys.constraint_rows();
    let (verdict, active, active_rank) = if p.len() != n {
        (Verdict::Infeasible, Vec::new(), 0)
    } else {
        let slacks = sys.slacks(p);
        let active: Vec<usize> = (0..rows.len()).filter(|&i| slacks[i].is_zero()).collect();
        let tight: Vec<Vec<Rational>> = active
            .iter()
            .map(|&i| rows[i].0.iter().map(|&v| rational(v)).collect())
            .collect();
        let r = rank(&tight);
        let verdict = if slacks.iter().any(Signed::is_negative) {
            Verdict::Infeasible
        } else if r == n {
            Verdict::Vertex
        } else {
            Verdict::FeasibleNotVertex
        };
        (verdict, active, r)
    };
    VertexCheck {
        point: p.clone(),
        verdict,
        active,
        active_rank,
    }
}
