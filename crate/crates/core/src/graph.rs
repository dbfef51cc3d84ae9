//! Simple graphs on the ordered vertex set `1..=n`, their boundary map and
//! Laplacian, and edge/vertex orientations.
//!
//! Edges are stored by their 1-based endpoint labels with `i < j` (the standard
//! orientation). Methods that take or return a single vertex use its 0-based
//! position, so vertex label `v` lives at position `v - 1`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{rank, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from 1-based edges in any orientation. Repeated edges are
    /// collapsed; loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{a}, {b}}} has an endpoint outside 1..{n}"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in &edges {
            adjacency[i - 1].push(j - 1);
            adjacency[j - 1].push(i - 1);
        }
        Ok(Self {
            n,
            edges,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("no edges")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 0).collect()
    }

    /// Connected components as lists of vertex positions, each in BFS order
    /// from its smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Position of the center if the graph is a star `K_{1,n-1}` (any labelling).
    pub fn star_center(&self) -> Option<usize> {
        if self.n < 2 || self.edges.len() != self.n - 1 {
            return None;
        }
        (0..self.n).find(|&v| self.degree(v) == self.n - 1)
    }

    /// Vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        Graph::new(
            self.n + other.n,
            self.edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(i, j)| (i + shift, j + shift))),
        )
        .expect("union of valid graphs")
    }
}

/// Edge-list text: vertex count on the first line, then one edge per line.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (i, j) in &self.edges {
            writeln!(f, "{i} {j}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Path, Family::Cycle, Family::Complete, Family::Star];

    pub fn min_vertices(self) -> usize {
        match self {
            Family::Cycle => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "complete" => Ok(Family::Complete),
            "star" => Ok(Family::Star),
            other => Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
        }
    }
}

/// The standard families: path `{j, j+1}`, cycle adds `{1, n}`, complete
/// graph, and star `{1, j}` with center 1.
pub fn family(kind: Family, n: usize) -> Result<Graph> {
    if n < kind.min_vertices() {
        return Err(Error::InvalidGraph(format!(
            "{kind} needs at least {} vertices, got {n}",
            kind.min_vertices()
        )));
    }
    let edges: Vec<(usize, usize)> = match kind {
        Family::Path => (1..n).map(|j| (j, j + 1)).collect(),
        Family::Cycle => (1..n).map(|j| (j, j + 1)).chain([(1, n)]).collect(),
        Family::Complete => (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect(),
        Family::Star => (2..=n).map(|j| (1, j)).collect(),
    };
    Graph::new(n, edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * rhs.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[i64]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, &b)| a * b).sum())
            .collect()
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| self.row(r).iter().cloned().map(Rational::from_integer).collect())
            .collect();
        rank(&rows)
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|x| i64::try_from(x).expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }
}

/// `L = D - A`.
pub fn laplacian(g: &Graph) -> IntegerMatrix {
    let mut l = IntegerMatrix::zeros(g.n(), g.n());
    for v in 0..g.n() {
        l.set(v, v, BigInt::from(g.degree(v)));
    }
    for &(i, j) in g.edges() {
        l.set(i - 1, j - 1, BigInt::from(-1));
        l.set(j - 1, i - 1, BigInt::from(-1));
    }
    l
}

/// Signed incidence matrix: the column of edge `{i < j}` is `e_j - e_i`.
pub fn boundary_map(g: &Graph) -> IntegerMatrix {
    let mut d = IntegerMatrix::zeros(g.n(), g.edge_count());
    for (col, &(i, j)) in g.edges().iter().enumerate() {
        d.set(i - 1, col, BigInt::from(-1));
        d.set(j - 1, col, BigInt::from(1));
    }
    d
}

/// One sign per edge, relative to the standard orientation `i -> j` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeOrientation {
    signs: Vec<i8>,
}

impl EdgeOrientation {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        validate_signs(&signs)?;
        Ok(Self { signs })
    }

    /// Bit `e` of `mask` set reverses edge `e`.
    pub fn from_mask(edges: usize, mask: u64) -> Self {
        Self {
            signs: (0..edges)
                .map(|e| if mask >> e & 1 == 1 { -1 } else { 1 })
                .collect(),
        }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Acyclic iff the directed graph admits a topological order.
    pub fn is_acyclic(&self, g: &Graph) -> bool {
        assert_eq!(self.signs.len(), g.edge_count(), "one sign per edge");
        let n = g.n();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for (&(i, j), &s) in g.edges().iter().zip(&self.signs) {
            let (a, b) = if s > 0 { (i - 1, j - 1) } else { (j - 1, i - 1) };
            out[a].push(b);
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut visited = 0;
        while let Some(v) = stack.pop() {
            visited += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        visited == n
    }
}

/// One sign per vertex; indexes the regions of the Laplacian pullback of the
/// coordinate arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct VertexOrientation {
    signs: Vec<i8>,
}

impl VertexOrientation {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        validate_signs(&signs)?;
        Ok(Self { signs })
    }

    /// Bit `v` of `mask` set puts `-1` on vertex position `v`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self {
            signs: (0..n)
                .map(|v| if mask >> v & 1 == 1 { -1 } else { 1 })
                .collect(),
        }
    }

    /// All `2^n - 2` orientations using both signs, in mask order.
    pub fn all_nonconstant(n: usize) -> impl Iterator<Item = VertexOrientation> {
        assert!(n < 64, "too many vertices to enumerate orientations");
        let full = (1u64 << n) - 1;
        (1..full).map(move |mask| VertexOrientation::from_mask(n, mask))
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn is_nonconstant(&self) -> bool {
        self.signs.contains(&1) && self.signs.contains(&-1)
    }

    pub fn negated(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }
}

impl TryFrom<Vec<i8>> for VertexOrientation {
    type Error = Error;
    fn try_from(signs: Vec<i8>) -> Result<Self> {
        Self::new(signs)
    }
}

impl From<VertexOrientation> for Vec<i8> {
    fn from(o: VertexOrientation) -> Self {
        o.signs
    }
}

impl fmt::Display for VertexOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(if *s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

fn validate_signs(signs: &[i8]) -> Result<()> {
    match signs.iter().find(|s| s.abs() != 1) {
        Some(s) => Err(Error::InvalidArgument(format!("sign {s} is not +1 or -1"))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

/// Reads the edge-list format: the first meaningful line is `n`, every later
/// nonempty line is `i j` with `1 <= i, j <= n` and `i != j`. Lines starting
/// with `#` are comments. Repeated edges are collapsed with a warning.
pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    let mut warnings = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(count) = n else {
            if fields.len() != 1 {
                return Err(err(format!("expected the vertex count, found {line:?}")));
            }
            n = Some(
                fields[0]
                    .parse()
                    .map_err(|_| err(format!("invalid vertex count {:?}", fields[0])))?,
            );
            continue;
        };
        if fields.len() != 2 {
            return Err(err(format!("expected \"i j\", found {line:?}")));
        }
        let parse_end = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| err(format!("invalid vertex {s:?}")))?;
            if v == 0 || v > count {
                return Err(err(format!("vertex {v} out of range 1..{count}")));
            }
            Ok(v)
        };
        let (a, b) = (parse_end(fields[0])?, parse_end(fields[1])?);
        if a == b {
            return Err(err(format!("loop at vertex {a}")));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            warnings.push(format!("line {line_no}: duplicate edge {{{a}, {b}}} ignored"));
            continue;
        }
        edges.push((a, b));
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        message: "missing vertex count".into(),
    })?;
    Ok(ParsedGraph {
        graph: Graph::new(n, edges)?,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn families() {
        let p3 = family(Family::Path, 3).unwrap();
        assert_eq!(p3.edges(), &[(1, 2), (2, 3)]);
        let s3 = family(Family::Star, 3).unwrap();
        // same edge set as the path up to relabelling 1 <-> 2; as graphs they
        // are isomorphic, and both are stars
        assert_eq!(s3.edges(), &[(1, 2), (1, 3)]);
        assert_eq!(s3.star_center(), Some(0));
        assert_eq!(p3.star_center(), Some(1));
        assert_eq!(
            family(Family::Cycle, 3).unwrap(),
            family(Family::Complete, 3).unwrap()
        );
        assert_eq!(family(Family::Complete, 5).unwrap().edge_count(), 10);
        assert!(family(Family::Cycle, 2).is_err());
        assert!(family(Family::Path, 1).is_err());
        assert_eq!(family(Family::Star, 5).unwrap().star_center(), Some(0));
        assert_eq!(family(Family::Cycle, 4).unwrap().star_center(), None);
    }

    #[test]
    fn path_laplacian() {
        let l = laplacian(&family(Family::Path, 3).unwrap());
        assert_eq!(
            l,
            IntegerMatrix::from_rows(&[vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]])
        );
    }

    #[test]
    fn star_laplacian_blocks() {
        for n in 3..7 {
            let l = laplacian(&family(Family::Star, n).unwrap()).to_i64_rows();
            let mut first = vec![-1; n];
            first[0] = n as i64 - 1;
            assert_eq!(l[0], first);
            for (i, row) in l.iter().enumerate().skip(1) {
                let mut expected = vec![0; n];
                expected[0] = -1;
                expected[i] = 1;
                assert_eq!(row, &expected);
            }
        }
    }

    #[test]
    fn edgeless_laplacian_is_zero() {
        let g = Graph::empty(2);
        assert_eq!(laplacian(&g), IntegerMatrix::zeros(2, 2));
        assert_eq!(g.isolated_vertices(), vec![0, 1]);
        assert!(!g.is_connected());
    }

    #[test]
    fn boundary_columns() {
        let d = boundary_map(&Graph::new(2, [(1, 2)]).unwrap());
        assert_eq!(d, IntegerMatrix::from_rows(&[vec![-1], vec![1]]));
        let k3 = family(Family::Complete, 3).unwrap();
        let d = boundary_map(&k3);
        let product = d.mul(&d.transpose());
        // oracle by hand: diag (2,2,2), off-diagonal -1
        assert_eq!(
            product,
            IntegerMatrix::from_rows(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]])
        );
        let p3 = family(Family::Path, 3).unwrap();
        let d = boundary_map(&p3);
        assert_eq!(d.mul(&d.transpose()), laplacian(&p3));
    }

    #[test]
    fn parser() {
        let p = parse_graph("3\n1 2\n2 3\n").unwrap();
        assert_eq!(p.graph, family(Family::Path, 3).unwrap());
        assert!(p.warnings.is_empty());
        let s = parse_graph("# a star\n4\n1 2\n\n1 3\n1 4\n").unwrap();
        assert_eq!(s.graph, family(Family::Star, 4).unwrap());
        let dup = parse_graph("3\n1 2\n2 1\n").unwrap();
        assert_eq!(dup.graph.edge_count(), 1);
        assert_eq!(dup.warnings.len(), 1);

        assert!(matches!(parse_graph("2\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("2\n1 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("2\n1 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3\n1 2 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_graph("# nothing\n").is_err());
        let g = family(Family::Cycle, 5).unwrap();
        assert_eq!(parse_graph(&g.to_string()).unwrap().graph, g);
    }

    #[test]
    fn orientations() {
        let all: Vec<_> = VertexOrientation::all_nonconstant(3).collect();
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(VertexOrientation::is_nonconstant));
        assert!(!VertexOrientation::new(vec![1, 1]).unwrap().is_nonconstant());
        assert!(VertexOrientation::new(vec![1, 0]).is_err());
        let o = VertexOrientation::new(vec![1, -1, 1]).unwrap();
        assert_eq!(o.to_string(), "+-+");
        assert_eq!(o.negated().signs(), &[-1, 1, -1]);

        let k3 = family(Family::Complete, 3).unwrap();
        let acyclic = (0..8)
            .filter(|&m| EdgeOrientation::from_mask(3, m).is_acyclic(&k3))
            .count();
        assert_eq!(acyclic, 6);
    }

    #[test]
    fn disjoint_union_shifts() {
        let g = family(Family::Path, 2).unwrap();
        let u = g.disjoint_union(&family(Family::Path, 3).unwrap());
        assert_eq!(u.edges(), &[(1, 2), (3, 4), (4, 5)]);
        assert_eq!(u.components().len(), 2);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..8).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .collect();
            let k = pairs.len();
            proptest::collection::vec(any::<bool>(), k).prop_map(move |keep| {
                let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn laplacian_factors_through_boundary(g in arb_graph()) {
            let d = boundary_map(&g);
            let l = laplacian(&g);
            prop_assert_eq!(d.mul(&d.transpose()), l.clone());
            prop_assert!(l.row_sums().iter().all(Zero::is_zero));
            prop_assert!(l.mul_vec(&vec![1; g.n()]).iter().all(Zero::is_zero));
            // kernel dimension equals the number of components
            prop_assert_eq!(g.n() - l.rank(), g.components().len());
        }
    }
}
