//! Exhaustive enumeration over the coloring space `{1..m}^n`.
//!
//! The odometer changes one coordinate at a time and patches the Laplacian
//! defect `L c` in place (the changed vertex and its neighbors only), keeping a
//! running count of zero entries. Blocks with a fixed label on the first
//! vertex are independent and are processed in parallel.

use std::collections::VecDeque;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeOrientation, Graph};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Upper bound on the number of elementary objects (colorings, orientations,
/// lattice points) a single brute-force call may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }

    /// Refuses unless `base^exp` fits in the budget.
    pub fn check_power(&self, base: u64, exp: usize) -> Result<()> {
        let within = u32::try_from(exp)
            .ok()
            .and_then(|e| (base as u128).checked_pow(e))
            .is_some_and(|w| w <= self.0 as u128);
        if within {
            Ok(())
        } else {
            Err(Error::TooLarge {
                work: format!("{base}^{exp}"),
                budget: self.0,
            })
        }
    }
}

/// A labelling of the vertices with values in `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    values: Vec<i64>,
    m: u64,
}

impl Coloring {
    pub fn new(values: Vec<i64>, m: u64) -> Result<Self> {
        if let Some(bad) = values.iter().find(|&&v| v < 1 || v as u64 > m) {
            return Err(Error::InvalidArgument(format!(
                "label {bad} outside palette 1..{m}"
            )));
        }
        Ok(Self { values, m })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn palette(&self) -> u64 {
        self.m
    }
}

/// `L c`: entry `v` is `d_v c(v) - sum of neighbor labels`, zero exactly when
/// `c` is harmonic at `v`.
pub fn harmonic_defect(g: &Graph, c: &Coloring) -> Vec<i64> {
    defect_of(g, c.values())
}

fn defect_of(g: &Graph, values: &[i64]) -> Vec<i64> {
    assert_eq!(values.len(), g.n(), "one label per vertex");
    (0..g.n())
        .map(|v| {
            g.degree(v) as i64 * values[v] - g.neighbors(v).iter().map(|&w| values[w]).sum::<i64>()
        })
        .collect()
}

pub fn is_nowhere_harmonic(g: &Graph, c: &Coloring) -> bool {
    harmonic_defect(g, c).iter().all(|&d| d != 0)
}

/// Odometer over one block of the coloring space with `c[0]` fixed.
struct DefectWalker<'g> {
    g: &'g Graph,
    m: i64,
    values: Vec<i64>,
    defect: Vec<i64>,
    zeros: usize,
}

impl<'g> DefectWalker<'g> {
    fn new(g: &'g Graph, m: i64, first: i64) -> Self {
        let mut values = vec![1; g.n()];
        values[0] = first;
        let defect = defect_of(g, &values);
        let zeros = defect.iter().filter(|&&d| d == 0).count();
        Self {
            g,
            m,
            values,
            defect,
            zeros,
        }
    }

    #[inline]
    fn bump(&mut self, v: usize, delta: i64) {
        self.values[v] += delta;
        let d = self.g.degree(v) as i64 * delta;
        Self::patch(&mut self.defect[v], &mut self.zeros, d);
        for &w in self.g.neighbors(v) {
            Self::patch(&mut self.defect[w], &mut self.zeros, -delta);
        }
    }

    #[inline]
    fn patch(entry: &mut i64, zeros: &mut usize, delta: i64) {
        let was_zero = *entry == 0;
        *entry += delta;
        match (was_zero, *entry == 0) {
            (true, false) => *zeros -= 1,
            (false, true) => *zeros += 1,
            _ => {}
        }
    }

    /// Advances to the next coloring of the block; false once exhausted.
    #[inline]
    fn advance(&mut self) -> bool {
        let mut pos = self.values.len() - 1;
        loop {
            if pos == 0 {
                return false;
            }
            if self.values[pos] < self.m {
                self.bump(pos, 1);
                return true;
            }
            self.bump(pos, 1 - self.m);
            pos -= 1;
        }
    }

    fn run(mut self, mut visit: impl FnMut(&[i64], &[i64], usize)) {
        loop {
            visit(&self.values, &self.defect, self.zeros);
            if !self.advance() {
                break;
            }
        }
    }
}

/// Sums `score` over every coloring in `{1..m}^n`, block-parallel on `c[0]`.
fn sum_over_colorings<F>(g: &Graph, m: u64, budget: Budget, score: F) -> Result<u128>
where
    F: Fn(&[i64], &[i64], usize) -> u128 + Sync,
{
    budget.check_power(m, g.n())?;
    if g.n() == 0 {
        return Ok(score(&[], &[], 0));
    }
    if m == 0 {
        return Ok(0);
    }
    let m = m as i64;
    Ok((1..=m)
        .into_par_iter()
        .map(|first| {
            let mut acc = 0u128;
            DefectWalker::new(g, m, first).run(|c, d, z| acc += score(c, d, z));
            acc
        })
        .sum())
}

/// `ℏ_G(m)`: colorings in `{1..m}^n` whose defect has no zero entry.
///
/// A vertex of degree 0 has a zero Laplacian row, so it is harmonic under
/// every coloring and forces the count to 0.
pub fn count_nowhere_harmonic(g: &Graph, m: u64, budget: Budget) -> Result<BigInt> {
    sum_over_colorings(g, m, budget, |_, _, zeros| u128::from(zeros == 0)).map(BigInt::from)
}

pub fn nowhere_harmonic_colorings(g: &Graph, m: u64, budget: Budget) -> Result<Vec<Coloring>> {
    budget.check_power(m, g.n())?;
    let mut out = Vec::new();
    if m == 0 || g.n() == 0 {
        return Ok(out);
    }
    for first in 1..=m as i64 {
        DefectWalker::new(g, m as i64, first).run(|c, _, zeros| {
            if zeros == 0 {
                out.push(Coloring {
                    values: c.to_vec(),
                    m,
                });
            }
        });
    }
    Ok(out)
}

fn beta_from_defect(defect: &[i64], zeros: usize) -> u128 {
    let product = 1u128 << zeros;
    let sub_everywhere = defect.iter().all(|&d| d <= 0);
    let super_everywhere = defect.iter().all(|&d| d >= 0);
    product - u128::from(sub_everywhere) - u128::from(super_everywhere)
}

/// Number of nonconstant vertex orientations compatible with `c`.
///
/// A vertex with nonzero defect admits exactly one sign (`+1` when strictly
/// subharmonic, `-1` when strictly superharmonic); a harmonic vertex admits
/// both. The constant orientations are compatible exactly when `c` is sub-
/// (resp. super-) harmonic everywhere.
pub fn beta(g: &Graph, c: &Coloring) -> Result<BigInt> {
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(Error::IsolatedVertex(v + 1));
    }
    let defect = harmonic_defect(g, c);
    let zeros = defect.iter().filter(|&&d| d == 0).count();
    Ok(BigInt::from(beta_from_defect(&defect, zeros)))
}

/// `sum_c β(c)` over all `m`-colorings, the combinatorial side of the
/// reciprocity law for `ℏ_G(-m)`.
pub fn reciprocity_rhs(g: &Graph, m: u64, budget: Budget) -> Result<BigInt> {
    require_connected(g)?;
    sum_over_colorings(g, m, budget, |_, defect, zeros| {
        beta_from_defect(defect, zeros)
    })
    .map(BigInt::from)
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::InvalidGraph("graph must be connected".into()))
    }
}

/// Calls `visit` on every tuple in `{1..m}^n`.
fn for_each_tuple(n: usize, m: i64, mut visit: impl FnMut(&[i64])) {
    if n == 0 {
        visit(&[]);
        return;
    }
    if m < 1 {
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
            if c[pos] < m {
                c[pos] += 1;
                break;
            }
            c[pos] = 1;
        }
    }
}

/// `χ_G(m)`, the number of proper `m`-colorings, by exhaustion.
pub fn chromatic_count(g: &Graph, m: u64, budget: Budget) -> Result<BigInt> {
    budget.check_power(m, g.n())?;
    let mut count = 0u64;
    for_each_tuple(g.n(), m as i64, |c| {
        if g.edges().iter().all(|&(i, j)| c[i - 1] != c[j - 1]) {
            count += 1;
        }
    });
    Ok(BigInt::from(count))
}

/// Every acyclic edge orientation, as a reversal mask over `g.edges()`.
pub fn acyclic_orientations(g: &Graph, budget: Budget) -> Result<Vec<u64>> {
    let e = g.edge_count();
    if e >= 64 {
        return Err(Error::TooLarge {
            work: format!("2^{e}"),
            budget: budget.0,
        });
    }
    budget.check_power(2, e)?;
    Ok((0..1u64 << e)
        .filter(|&mask| EdgeOrientation::from_mask(e, mask).is_acyclic(g))
        .collect())
}

pub fn count_acyclic_orientations(g: &Graph, budget: Budget) -> Result<BigInt> {
    acyclic_orientations(g, budget).map(|v| BigInt::from(v.len()))
}

/// `sum_c α(c)`: for each `m`-coloring, the acyclic orientations compatible
/// with it. An edge `{i < j}` with `c(j) > c(i)` must keep the standard
/// direction, with `c(j) < c(i)` must be reversed, and is free when equal.
pub fn acyclic_reciprocity_rhs(g: &Graph, m: u64, budget: Budget) -> Result<BigInt> {
    let acyclic = acyclic_orientations(g, budget)?;
    budget.check_power(m, g.n())?;
    let mut total = 0u128;
    for_each_tuple(g.n(), m as i64, |c| {
        let mut fixed = 0u64;
        let mut reversed = 0u64;
        for (e, &(i, j)) in g.edges().iter().enumerate() {
            let diff = c[j - 1] - c[i - 1];
            if diff != 0 {
                fixed |= 1 << e;
                if diff < 0 {
                    reversed |= 1 << e;
                }
            }
        }
        total += acyclic
            .iter()
            .filter(|&&mask| mask & fixed == reversed)
            .count() as u128;
    });
    Ok(BigInt::from(total))
}

/// Nowhere-harmonic 2-coloring: in each component, breadth-first from its
/// smallest vertex, label by depth parity (root 1, its children 2, ...).
/// Every vertex then differs from its tree parent or child.
pub fn construct_two_coloring(g: &Graph) -> Result<Coloring> {
    let mut values = vec![0i64; g.n()];
    for comp in g.components() {
        let root = comp[0];
        if comp.len() == 1 {
            return Err(Error::SingletonComponent(root + 1));
        }
        values[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if values[w] == 0 {
                    values[w] = 3 - values[v];
                    queue.push_back(w);
                }
            }
        }
    }
    let c = Coloring { values, m: 2 };
    debug_assert!(is_nowhere_harmonic(g, &c));
    Ok(c)
}

/// `c ↦ (m + 1) - c`, the palette form of `x ↦ -x + (1, ..., 1)`.
pub fn involute(c: &Coloring) -> Coloring {
    let top = c.m as i64 + 1;
    Coloring {
        values: c.values.iter().map(|v| top - v).collect(),
        m: c.m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, Family, VertexOrientation};

    fn path3() -> Graph {
        family(Family::Path, 3).unwrap()
    }

    fn col(v: &[i64], m: u64) -> Coloring {
        Coloring::new(v.to_vec(), m).unwrap()
    }

    /// Independent oracle: test every nonconstant orientation directly
    /// against the averaging inequalities in rational form.
    fn beta_brute(g: &Graph, c: &Coloring) -> u64 {
        let vals = c.values();
        VertexOrientation::all_nonconstant(g.n())
            .filter(|eps| {
                (0..g.n()).all(|v| {
                    let d = g.degree(v) as i64;
                    let sum: i64 = g.neighbors(v).iter().map(|&w| vals[w]).sum();
                    // c(v) <= sum/d  <=>  d c(v) <= sum (d > 0)
                    if eps.signs()[v] > 0 {
                        d * vals[v] <= sum
                    } else {
                        d * vals[v] >= sum
                    }
                })
            })
            .count() as u64
    }

    #[test]
    fn defects() {
        let g = path3();
        assert_eq!(harmonic_defect(&g, &col(&[1, 2, 1], 2)), vec![-1, 2, -1]);
        assert_eq!(harmonic_defect(&g, &col(&[3, 3, 3], 3)), vec![0, 0, 0]);
        let with_isolated = Graph::new(3, [(1, 2)]).unwrap();
        for c in [[1, 2, 1], [2, 1, 2], [1, 1, 2]] {
            assert_eq!(harmonic_defect(&with_isolated, &col(&c, 2))[2], 0);
        }
        assert!(Coloring::new(vec![0, 1], 2).is_err());
        assert!(Coloring::new(vec![3, 1], 2).is_err());
    }

    #[test]
    fn small_counts() {
        let b = Budget::default();
        assert_eq!(count_nowhere_harmonic(&path3(), 2, b).unwrap(), BigInt::from(2));
        let p4 = family(Family::Path, 4).unwrap();
        assert_eq!(count_nowhere_harmonic(&p4, 2, b).unwrap(), BigInt::from(4));
        assert_eq!(count_nowhere_harmonic(&p4, 3, b).unwrap(), BigInt::from(28));
        let k4 = family(Family::Complete, 4).unwrap();
        assert_eq!(count_nowhere_harmonic(&k4, 2, b).unwrap(), BigInt::from(14));
        let isolated = Graph::new(3, [(1, 2)]).unwrap();
        for m in 1..5 {
            assert_eq!(count_nowhere_harmonic(&isolated, m, b).unwrap(), BigInt::from(0));
        }
        assert_eq!(count_nowhere_harmonic(&p4, 0, b).unwrap(), BigInt::from(0));
    }

    #[test]
    fn count_matches_naive_filter() {
        let g = family(Family::Cycle, 4).unwrap();
        for m in 1..6u64 {
            let mut naive = 0u64;
            for_each_tuple(4, m as i64, |c| {
                if defect_of(&g, c).iter().all(|&d| d != 0) {
                    naive += 1;
                }
            });
            assert_eq!(
                count_nowhere_harmonic(&g, m, Budget::default()).unwrap(),
                BigInt::from(naive)
            );
            assert_eq!(
                nowhere_harmonic_colorings(&g, m, Budget::default()).unwrap().len() as u64,
                naive
            );
        }
    }

    #[test]
    fn budget_guard() {
        let g = family(Family::Complete, 5).unwrap();
        let err = count_nowhere_harmonic(&g, 10, Budget(1000)).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
        assert!(err.to_string().contains("too large for brute force"));
        assert!(count_nowhere_harmonic(&g, 3, Budget(243)).is_ok());
    }

    #[test]
    fn beta_examples() {
        let k2 = family(Family::Complete, 2).unwrap();
        assert_eq!(beta(&k2, &col(&[1, 1], 1)).unwrap(), BigInt::from(2));
        assert_eq!(beta_brute(&k2, &col(&[1, 1], 1)), 2);
        assert_eq!(beta(&k2, &col(&[1, 2], 2)).unwrap(), BigInt::from(1));
        assert_eq!(beta_brute(&k2, &col(&[1, 2], 2)), 1);
        assert_eq!(beta(&path3(), &col(&[1, 2, 1], 2)).unwrap(), BigInt::from(1));
        assert_eq!(beta_brute(&path3(), &col(&[1, 2, 1], 2)), 1);
        let isolated = Graph::new(3, [(1, 2)]).unwrap();
        assert_eq!(
            beta(&isolated, &col(&[1, 1, 1], 1)).unwrap_err(),
            Error::IsolatedVertex(3)
        );
    }

    #[test]
    fn beta_closed_form_exhaustive_small() {
        for kind in Family::ALL {
            for n in kind.min_vertices()..=4 {
                let g = family(kind, n).unwrap();
                for_each_tuple(n, 3, |c| {
                    let c = col(c, 3);
                    assert_eq!(beta(&g, &c).unwrap(), BigInt::from(beta_brute(&g, &c)));
                });
            }
        }
    }

    #[test]
    fn reciprocity_sums() {
        let b = Budget::default();
        let k2 = family(Family::Complete, 2).unwrap();
        assert_eq!(reciprocity_rhs(&k2, 1, b).unwrap(), BigInt::from(2));
        // ℏ_{K2}(m) = m^2 - m, so (-1)^2 ℏ(-3) = 12
        assert_eq!(reciprocity_rhs(&k2, 3, b).unwrap(), BigInt::from(12));
        assert_eq!(reciprocity_rhs(&path3(), 1, b).unwrap(), BigInt::from(6));
        assert!(reciprocity_rhs(&Graph::new(3, [(1, 2)]).unwrap(), 1, b).is_err());
    }

    #[test]
    fn chromatic_and_acyclic() {
        let b = Budget::default();
        let k3 = family(Family::Complete, 3).unwrap();
        assert_eq!(chromatic_count(&k3, 3, b).unwrap(), BigInt::from(6));
        assert_eq!(chromatic_count(&k3, 2, b).unwrap(), BigInt::from(0));
        assert_eq!(chromatic_count(&path3(), 2, b).unwrap(), BigInt::from(2));
        assert_eq!(chromatic_count(&k3, 0, b).unwrap(), BigInt::from(0));
        assert_eq!(acyclic_reciprocity_rhs(&k3, 1, b).unwrap(), BigInt::from(6));
        let k2 = family(Family::Complete, 2).unwrap();
        assert_eq!(acyclic_reciprocity_rhs(&k2, 1, b).unwrap(), BigInt::from(2));
        assert_eq!(acyclic_reciprocity_rhs(&path3(), 1, b).unwrap(), BigInt::from(4));
        assert_eq!(count_acyclic_orientations(&k3, b).unwrap(), BigInt::from(6));
        assert_eq!(
            count_acyclic_orientations(&family(Family::Cycle, 4).unwrap(), b).unwrap(),
            BigInt::from(14)
        );
    }

    #[test]
    fn two_colorings() {
        assert_eq!(construct_two_coloring(&path3()).unwrap().values(), &[1, 2, 1]);
        let k3 = family(Family::Complete, 3).unwrap();
        let c = construct_two_coloring(&k3).unwrap();
        assert_eq!(c.values(), &[1, 2, 2]);
        assert_eq!(harmonic_defect(&k3, &c), vec![-2, 1, 1]);
        let s4 = family(Family::Star, 4).unwrap();
        assert_eq!(construct_two_coloring(&s4).unwrap().values(), &[1, 2, 2, 2]);
        let split = family(Family::Path, 2)
            .unwrap()
            .disjoint_union(&family(Family::Path, 3).unwrap());
        let c = construct_two_coloring(&split).unwrap();
        assert_eq!(c.values(), &[1, 2, 1, 2, 1]);
        assert!(is_nowhere_harmonic(&split, &c));
        assert_eq!(
            construct_two_coloring(&Graph::new(3, [(1, 2)]).unwrap()).unwrap_err(),
            Error::SingletonComponent(3)
        );
    }

    #[test]
    fn involution() {
        assert_eq!(involute(&col(&[1, 2, 1], 2)).values(), &[2, 1, 2]);
        let fixed = col(&[3, 3, 3], 5);
        assert_eq!(involute(&fixed), fixed);
        let g = path3();
        let c = col(&[1, 3, 1], 3);
        let t = involute(&c);
        assert_eq!(t.values(), &[3, 1, 3]);
        assert!(is_nowhere_harmonic(&g, &c) && is_nowhere_harmonic(&g, &t));
        assert_eq!(involute(&t), c);
    }
}
