//! Counting nowhere-harmonic colorings of the star `K_{1,n-1}` without
//! enumerating the coloring space.
//!
//! A leaf is harmonic exactly when it repeats the center label `a`, and the
//! center is harmonic exactly when the leaf labels sum to `(n-1)a`. So
//!
//! ```text
//! ℏ(m) = sum over a in 1..=m of [ (m-1)^(n-1) - N(a) ]
//! ```
//!
//! where `N(a)` counts `(n-1)`-tuples from `{1..m} \ {a}` summing to `(n-1)a`.
//! `N(a)` comes from a dynamic program over partial sums, one leaf at a time.

use std::ops::{Add, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarCountRequest {
    pub n: usize,
    pub m: u64,
}

impl StarCountRequest {
    pub fn new(n: usize, m: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "a star needs at least 2 vertices, got {n}"
            )));
        }
        Ok(Self { n, m })
    }

    pub fn count(&self) -> BigInt {
        count_star_unchecked(self.n, self.m)
    }
}

/// `ℏ(m)` for the star on `n` vertices (center plus `n - 1` leaves).
pub fn count_star(n: usize, m: u64) -> Result<BigInt> {
    StarCountRequest::new(n, m).map(|r| r.count())
}

fn count_star_unchecked(n: usize, m: u64) -> BigInt {
    if m == 0 {
        return BigInt::zero();
    }
    let leaves = n - 1;
    let free = BigInt::from(m - 1).pow(leaves as u32);
    let forced: BigInt = (1..=m)
        .into_par_iter()
        .map(|a| leaf_sum_count(n, m, a))
        .sum();
    BigInt::from(m) * free - forced
}

/// `N(a)`: leaf labelings avoiding `a` whose sum equals `(n-1) a`.
///
/// Reflecting every label `l ↦ m + 1 - l` maps the tuples for `a` onto those
/// for `m + 1 - a`, so the smaller of the two targets is always used.
pub fn leaf_sum_count(n: usize, m: u64, a: u64) -> BigInt {
    assert!(n >= 2 && (1..=m).contains(&a), "center label outside palette");
    let a = a.min(m + 1 - a) as usize;
    let leaves = n - 1;
    let m = m as usize;
    let target = leaves * a;
    // every entry is at most (m-1)^(n-1), and so is every prefix sum
    let fits_u128 = u32::try_from(leaves)
        .ok()
        .and_then(|e| (m as u128).checked_pow(e))
        .is_some_and(|bound| bound < u128::MAX / 2);
    if fits_u128 {
        BigInt::from(restricted_sum_ways::<u128>(leaves, m, a, target))
    } else {
        BigInt::from(restricted_sum_ways::<BigUint>(leaves, m, a, target))
    }
}

/// Number of `parts`-tuples from `{1..m} \ {excluded}` with sum `target`.
///
/// Each layer convolves with the indicator of `{1..m}` through prefix sums and
/// then removes the excluded label, so one layer costs `O(target)`.
fn restricted_sum_ways<T>(parts: usize, m: usize, excluded: usize, target: usize) -> T
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T>,
{
    let mut ways = vec![T::zero(); target + 1];
    ways[0] = T::one();
    let mut prefix = vec![T::zero(); target + 2];
    for layer in 1..=parts {
        // prefix[s] = sum of ways[0..s]
        for s in 0..=target {
            prefix[s + 1] = prefix[s].clone() + ways[s].clone();
        }
        let mut next = vec![T::zero(); target + 1];
        for (s, slot) in next.iter_mut().enumerate().skip(layer) {
            // labels l in 1..=m with s - l >= 0: ways[s-m ..= s-1]
            let lo = s.saturating_sub(m);
            let mut v = prefix[s].clone() - prefix[lo].clone();
            if s >= excluded {
                v = v - ways[s - excluded].clone();
            }
            *slot = v;
        }
        ways = next;
    }
    ways.swap_remove(target)
}
