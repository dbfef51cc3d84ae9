//! Shared inputs for the benchmarks.

use harmonium_core::{family, Family, Graph};

/// The four standard families on `n` vertices, labelled for reporting.
pub fn families(n: usize) -> Vec<(String, Graph)> {
    Family::ALL
        .iter()
        .filter(|k| n >= k.min_vertices())
        .map(|&k| (format!("{k}{n}"), family(k, n).expect("valid family size")))
        .collect()
}
