//! Exact enumeration of nowhere-harmonic graph colorings.
//!
//! A coloring `c: V -> {1..m}` is nowhere-harmonic when no vertex carries the
//! average of its neighbors' labels, i.e. when `L c` has no zero entry for the
//! Laplacian `L = D - A`. For a connected graph on `n` vertices the count
//! `ℏ_G(m)` is a quasipolynomial of degree `n` with leading coefficient 1, and
//! its values at negative arguments count colorings weighted by compatible
//! vertex orientations.
//!
//! Modules:
//! - [`algebra`]: exact rationals, polynomials, quasipolynomials, rational
//!   generating functions.
//! - [`graph`]: graphs, standard families, boundary map and Laplacian.
//! - [`enumerate`]: brute-force counters and the reciprocity/orientation sums.
//! - [`exclusion`]: inclusion–exclusion counter for small general graphs.
//! - [`starfast`]: a polynomial-time counter for star graphs.
//! - [`fit`]: period detection and quasipolynomial fitting.
//! - [`regions`]: region systems of the Laplacian arrangement in the unit cube.
//! - [`golden`]: reference generating functions for the standard families.

pub mod algebra;
pub mod enumerate;
pub mod error;
pub mod exclusion;
pub mod fit;
pub mod golden;
pub mod graph;
pub mod regions;
pub mod starfast;

pub use algebra::{
    gf_from_counts, interpolate, quasi_eval, reduce_gf, Polynomial, Quasipolynomial, Rational,
    RationalGeneratingFunction,
};
pub use enumerate::{Budget, Coloring};
pub use error::{Error, Result};
pub use fit::{CountOracle, FitReport};
pub use regions::{RationalPoint, RegionSystem};
pub use graph::{family, Family, Graph, VertexOrientation};

