//! Report documents. Each one serializes to JSON and back without change and
//! has a plain-text rendering with one row per value.

use std::fmt::{self, Write as _};

use harmonium_core::algebra::decimal;
use harmonium_core::fit::StructureCheck;
use harmonium_core::regions::{OrbitReport, RegionCensus, VertexCheck};
use harmonium_core::{FitReport, Graph, RationalGeneratingFunction};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub source: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphInfo {
    pub fn new(source: &str, g: &Graph) -> Self {
        Self {
            source: source.to_string(),
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub m: u64,
    #[serde(with = "decimal")]
    pub count: BigInt,
    /// Whether an independent enumeration was run and agreed.
    pub cross_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub graph: GraphInfo,
    pub method: String,
    pub rows: Vec<CountRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenComparison {
    pub table: String,
    /// `None` when the table has no unreduced form.
    pub unreduced_equal: Option<bool>,
    pub reduced_equal: bool,
    /// First series index where fit and table disagree.
    pub first_difference: Option<usize>,
}

impl GoldenComparison {
    pub fn passed(&self) -> bool {
        self.reduced_equal && self.unreduced_equal != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitOutput {
    pub graph: GraphInfo,
    pub oracle: String,
    pub candidates: Vec<usize>,
    /// Candidates derived from Laplacian minors were needed.
    pub extended_candidates: bool,
    pub fit: FitReport,
    pub unreduced: RationalGeneratingFunction,
    pub reduced: RationalGeneratingFunction,
    pub structure: Option<StructureCheck>,
    pub golden: Option<GoldenComparison>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityRow {
    pub m: u64,
    #[serde(with = "decimal")]
    pub from_fit: BigInt,
    #[serde(with = "decimal")]
    pub weighted_sum: BigInt,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityReport {
    pub graph: GraphInfo,
    /// `"beta"` or `"stanley"`
    pub mode: String,
    pub period: usize,
    pub rows: Vec<ReciprocityRow>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionsReport {
    pub graph: GraphInfo,
    pub census: Option<RegionCensus>,
    pub orbit: Option<OrbitReport>,
    pub vertices: Option<Vec<VertexCheck>>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Count(CountReport),
    Fit(Box<FitOutput>),
    Reciprocity(ReciprocityReport),
    Regions(RegionsReport),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Count(_) => true,
            Report::Fit(f) => f.passed,
            Report::Reciprocity(r) => r.passed,
            Report::Regions(r) => r.passed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Count(r) => {
                writeln!(f, "# {} ({})", r.graph.source, r.method)?;
                writeln!(f, "m\tcount")?;
                for row in &r.rows {
                    let mark = if row.cross_checked { "\t(cross-checked)" } else { "" };
                    writeln!(f, "{}\t{}{mark}", row.m, row.count)?;
                }
                Ok(())
            }
            Report::Fit(r) => {
                writeln!(f, "# {} ({})", r.graph.source, r.oracle)?;
                writeln!(
                    f,
                    "period {} (tried {:?}{}), {} samples",
                    r.fit.period(),
                    r.candidates,
                    if r.extended_candidates { ", extended by Laplacian minors" } else { "" },
                    r.fit.samples_used
                )?;
                if !r.fit.period_minimal_among_divisors {
                    writeln!(f, "note: not every divisor of the period was tested")?;
                }
                write!(f, "{}", r.fit.quasipolynomial)?;
                writeln!(f, "unreduced: {}", r.unreduced)?;
                writeln!(f, "reduced:   {}", r.reduced)?;
                if let Some(s) = &r.structure {
                    writeln!(
                        f,
                        "monic of degree n: {}; (-1)^n f(-1) = {} vs 2^n - 2 = {}: {}",
                        s.monic_of_degree_n,
                        s.closed_count_at_zero,
                        s.region_count,
                        verdict(s.holds())
                    )?;
                }
                if let Some(g) = &r.golden {
                    let mut line = format!("table {}: ", g.table);
                    if let Some(u) = g.unreduced_equal {
                        let _ = write!(line, "unreduced {}, ", verdict(u));
                    }
                    let _ = write!(line, "reduced {}", verdict(g.reduced_equal));
                    if let Some(i) = g.first_difference {
                        let _ = write!(line, " (series differ first at z^{i})");
                    }
                    writeln!(f, "{line}")?;
                }
                writeln!(f, "{}", if r.passed { "PASS" } else { "FAIL" })
            }
            Report::Reciprocity(r) => {
                writeln!(f, "# {} ({}, period {})", r.graph.source, r.mode, r.period)?;
                writeln!(f, "m\tfrom fit\tweighted sum\tverdict")?;
                for row in &r.rows {
                    writeln!(
                        f,
                        "{}\t{}\t{}\t{}",
                        row.m,
                        row.from_fit,
                        row.weighted_sum,
                        verdict(row.matches)
                    )?;
                }
                writeln!(f, "{}", if r.passed { "PASS" } else { "FAIL" })
            }
            Report::Regions(r) => {
                writeln!(f, "# {}", r.graph.source)?;
                if let Some(c) = &r.census {
                    writeln!(
                        f,
                        "nonempty regions: {} found, {} unresolved (dilations up to {})",
                        c.found,
                        c.unresolved.len(),
                        c.max_dilation
                    )?;
                    for w in &c.witnesses {
                        writeln!(f, "  {}\tt={}\t{}", w.orientation, w.dilation, w.point)?;
                    }
                }
                if let Some(o) = &r.orbit {
                    writeln!(f, "orbit identity holds with offset {}", o.offset)?;
                    writeln!(f, "t\torbit sum\tcount(t-1)\tcount(t)")?;
                    for row in &o.rows {
                        writeln!(
                            f,
                            "{}\t{}\t{}\t{}",
                            row.dilation, row.orbit_sum, row.count_previous, row.count_same
                        )?;
                    }
                }
                if let Some(vs) = &r.vertices {
                    for v in vs {
                        writeln!(f, "{}\t{}\trank {}", v.point, v.verdict, v.active_rank)?;
                    }
                }
                for w in &r.warnings {
                    writeln!(f, "warning: {w}")?;
                }
                writeln!(f, "{}", if r.passed { "PASS" } else { "FAIL" })
            }
        }
    }
}
