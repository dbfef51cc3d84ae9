//! Reference generating functions `sum_{m>=1} ℏ(m) z^m` for the path, cycle,
//! complete graph and star on 3 to 6 vertices.
//!
//! Each table holds a reduced form `c z^k f(z) / prod (1 - z^a)^e` and, for
//! `n <= 5`, the unreduced numerator over `(1 - z^p)^(n+1)`. For `n = 6` only
//! the unreduced denominator is recorded.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::algebra::RationalGeneratingFunction;
use crate::error::{Error, Result};
use crate::graph::Family;

const SOURCES: [&str; 16] = [
    include_str!("../golden/path_3.json"),
    include_str!("../golden/path_4.json"),
    include_str!("../golden/path_5.json"),
    include_str!("../golden/path_6.json"),
    include_str!("../golden/cycle_3.json"),
    include_str!("../golden/cycle_4.json"),
    include_str!("../golden/cycle_5.json"),
    include_str!("../golden/cycle_6.json"),
    include_str!("../golden/complete_3.json"),
    include_str!("../golden/complete_4.json"),
    include_str!("../golden/complete_5.json"),
    include_str!("../golden/complete_6.json"),
    include_str!("../golden/star_3.json"),
    include_str!("../golden/star_4.json"),
    include_str!("../golden/star_5.json"),
    include_str!("../golden/star_6.json"),
];

#[derive(Deserialize)]
struct RawReduced {
    /// `(c, k)` for the monomial `c z^k`
    prefactor: (i64, usize),
    factor: Vec<i64>,
    denominator: Vec<(usize, u32)>,
}

#[derive(Deserialize)]
struct RawUnreduced {
    numerator: Vec<i64>,
    denominator: Vec<(usize, u32)>,
}

#[derive(Deserialize)]
struct RawTable {
    family: Family,
    n: usize,
    reduced: RawReduced,
    unreduced: Option<RawUnreduced>,
    unreduced_denominator: Option<Vec<(usize, u32)>>,
}

#[derive(Clone, Debug)]
pub struct GoldenTable {
    pub family: Family,
    pub n: usize,
    reduced: RationalGeneratingFunction,
    unreduced: Option<RationalGeneratingFunction>,
    unreduced_denominator: Vec<(usize, u32)>,
}

impl GoldenTable {
    fn from_raw(raw: RawTable) -> Result<Self> {
        let (scale, shift) = raw.reduced.prefactor;
        let numerator: Vec<i64> = std::iter::repeat_n(0, shift)
            .chain(raw.reduced.factor.iter().map(|c| scale * c))
            .collect();
        let reduced = RationalGeneratingFunction::from_integers(&numerator, &raw.reduced.denominator);
        let (unreduced, unreduced_denominator) = match (raw.unreduced, raw.unreduced_denominator) {
            (Some(u), _) => {
                let d = u.denominator.clone();
                (Some(RationalGeneratingFunction::from_integers(&u.numerator, &u.denominator)), d)
            }
            (None, Some(d)) => (None, d),
            (None, None) => {
                return Err(Error::InvalidArgument(format!(
                    "golden table {} {} has no unreduced denominator",
                    raw.family, raw.n
                )))
            }
        };
        Ok(Self {
            family: raw.family,
            n: raw.n,
            reduced,
            unreduced,
            unreduced_denominator,
        })
    }

    pub fn reduced(&self) -> &RationalGeneratingFunction {
        &self.reduced
    }

    pub fn unreduced(&self) -> Option<&RationalGeneratingFunction> {
        self.unreduced.as_ref()
    }

    /// Factors `(k, e)` of the unreduced denominator `prod (1 - z^k)^e`.
    pub fn unreduced_denominator(&self) -> &[(usize, u32)] {
        &self.unreduced_denominator
    }

    /// `p` in the unreduced denominator `(1 - z^p)^(n+1)`.
    pub fn unreduced_period(&self) -> usize {
        self.unreduced_denominator
            .iter()
            .map(|&(k, _)| k)
            .max()
            .unwrap_or(1)
    }
}

pub fn all() -> &'static [GoldenTable] {
    static TABLES: OnceLock<Vec<GoldenTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        SOURCES
            .iter()
            .map(|s| {
                let raw: RawTable = serde_json::from_str(s).expect("embedded table parses");
                GoldenTable::from_raw(raw).expect("embedded table is complete")
            })
            .collect()
    })
}

pub fn lookup(family: Family, n: usize) -> Option<&'static GoldenTable> {
    all().iter().find(|t| t.family == family && t.n == n)
}
