//! The `harmonium` command line: counting, fitting, reciprocity checks and
//! region analysis on top of `harmonium-core`.

pub mod args;
pub mod report;

use anyhow::{anyhow, bail, Context};
use harmonium_core::algebra::{from_bigint, interpolate, reduce_gf};
use harmonium_core::enumerate::{acyclic_reciprocity_rhs, chromatic_count, reciprocity_rhs};
use harmonium_core::fit::{
    complete_period_candidates, default_period_candidates, evaluate_negative,
    fit_quasipolynomial, period_candidates, structure_check,
};
use harmonium_core::regions::{
    count_nonempty_regions, default_max_dilation, star_orbit_identity, star_region,
    star_square_vertices, verify_vertex, Verdict,
};
use harmonium_core::{golden, Budget, CountOracle, Error, Family, Graph};

use crate::args::{Cli, Command, GraphArgs, LoadedGraph, MRange, Method};
use crate::report::{
    CountReport, CountRow, FitOutput, GoldenComparison, GraphInfo, ReciprocityReport,
    ReciprocityRow, RegionsReport, Report,
};

/// Runs one command and returns its report; warnings go to `warn`.
pub fn run(cli: &Cli, warn: &mut dyn FnMut(&str)) -> anyhow::Result<Report> {
    let budget = cli.run.budget();
    let report = match &cli.command {
        Command::Count { graph, m, method } => {
            Report::Count(count(load(graph, warn)?, m.clone(), *method, budget)?)
        }
        Command::Fit {
            graph,
            period_cap,
            method,
        } => Report::Fit(Box::new(fit(&load(graph, warn)?, *period_cap, *method, budget)?)),
        Command::Reciprocity {
            graph,
            m,
            stanley,
            period_cap,
            method,
        } => {
            let g = load(graph, warn)?;
            Report::Reciprocity(if *stanley {
                stanley_reciprocity(&g, m.clone(), budget)?
            } else {
                reciprocity(&g, m.clone(), *period_cap, *method, budget)?
            })
        }
        Command::Regions {
            graph,
            count_nonempty,
            max_dilation,
            orbit_identity,
            t_max,
            verify_vertices,
        } => {
            let g = load(graph, warn)?;
            let r = regions(
                &g,
                RegionTasks {
                    count_nonempty: *count_nonempty,
                    max_dilation: *max_dilation,
                    orbit_identity: *orbit_identity,
                    t_max: *t_max,
                    verify_vertices: *verify_vertices,
                },
                budget,
            )?;
            for w in &r.warnings {
                warn(w);
            }
            Report::Regions(r)
        }
    };
    Ok(report)
}

fn load(args: &GraphArgs, warn: &mut dyn FnMut(&str)) -> anyhow::Result<LoadedGraph> {
    let g = args.load()?;
    for w in &g.warnings {
        warn(w);
    }
    Ok(g)
}

/// Names the budget flag whenever the resource guard refuses.
fn explain(e: Error) -> anyhow::Error {
    match e {
        Error::TooLarge { .. } => anyhow!("{e}; the budget is set by --budget or HARMONIUM_BUDGET"),
        other => anyhow!(other),
    }
}

fn is_star(g: &Graph) -> bool {
    g.n() >= 2 && g.star_center().is_some()
}

pub fn count(g: LoadedGraph, range: MRange, method: Method, budget: Budget) -> anyhow::Result<CountReport> {
    let graph = &g.graph;
    let use_star = match method {
        Method::Star if !is_star(graph) => bail!("--method star needs a star graph"),
        Method::Star => true,
        Method::Auto => is_star(graph),
        Method::Brute | Method::Exclusion => false,
    };
    let oracle = if use_star {
        CountOracle::star(graph.n())
    } else if method == Method::Exclusion {
        CountOracle::exclusion(graph, budget)
    } else {
        CountOracle::brute_force(graph, budget)
    };
    let mut rows = Vec::new();
    for m in range {
        let value = oracle.count(m).map_err(explain)?;
        // stars are cheap by the dynamic program; confirm by enumeration when affordable
        let cross_checked = if use_star && budget.check_power(m, graph.n()).is_ok() {
            let direct = CountOracle::brute_force(graph, budget).count(m).map_err(explain)?;
            if direct != value {
                bail!("star count {value} disagrees with enumeration {direct} at m = {m}");
            }
            true
        } else {
            false
        };
        rows.push(CountRow {
            m,
            count: value,
            cross_checked,
        });
    }
    Ok(CountReport {
        graph: GraphInfo::new(&g.source, graph),
        method: oracle.source.clone(),
        rows,
    })
}

fn fitting_oracle(g: &Graph, method: Method, budget: Budget) -> anyhow::Result<CountOracle> {
    Ok(match method {
        Method::Auto => CountOracle::for_graph(g, budget),
        Method::Brute => CountOracle::brute_force(g, budget),
        Method::Exclusion => CountOracle::exclusion(g, budget),
        Method::Star if is_star(g) => CountOracle::star(g.n()),
        Method::Star => bail!("--method star needs a star graph"),
    })
}

/// Fits with the heuristic candidates first, then with the divisors of the
/// Laplacian minor lcm that were not yet tried.
fn fit_with_fallback(
    g: &Graph,
    oracle: &CountOracle,
    period_cap: Option<usize>,
) -> anyhow::Result<(harmonium_core::FitReport, Vec<usize>, bool)> {
    let n = g.n();
    let heuristic = match period_cap {
        Some(cap) => period_candidates(n, cap),
        None => default_period_candidates(n),
    };
    match fit_quasipolynomial(oracle, n, &heuristic) {
        Ok(report) => Ok((report, heuristic, false)),
        Err(Error::PeriodNotFound(first)) => {
            let Some(complete) = complete_period_candidates(g) else {
                bail!("period not found within candidate set; {first}");
            };
            let mut all = heuristic.clone();
            all.extend(complete.into_iter().filter(|p| !heuristic.contains(p)));
            all.sort_unstable();
            let report = fit_quasipolynomial(oracle, n, &all).map_err(explain)?;
            Ok((report, all, true))
        }
        Err(e) => Err(explain(e)),
    }
}

pub fn fit(
    g: &LoadedGraph,
    period_cap: Option<usize>,
    method: Method,
    budget: Budget,
) -> anyhow::Result<FitOutput> {
    let graph = &g.graph;
    if graph.n() == 0 {
        bail!("cannot fit the empty graph");
    }
    let oracle = fitting_oracle(graph, method, budget)?;
    let (report, candidates, extended) = fit_with_fallback(graph, &oracle, period_cap)?;
    let unreduced = report.generating_function().map_err(explain)?;
    let reduced = reduce_gf(&unreduced);
    let structure = if graph.is_connected() {
        Some(structure_check(&report).map_err(explain)?)
    } else {
        None
    };
    let golden = g.family.and_then(|kind| golden::lookup(kind, graph.n())).map(|table| {
        let unreduced_equal = table.unreduced().map(|u| u == &unreduced);
        let reduced_equal = &unreduced == table.reduced();
        let horizon = 4 * report.period() * (graph.n() + 3);
        GoldenComparison {
            table: format!("{} {}", table.family, table.n),
            unreduced_equal,
            reduced_equal,
            first_difference: unreduced.first_difference(table.reduced(), horizon),
        }
    });
    let passed = structure.as_ref().is_none_or(|s| s.holds())
        && golden.as_ref().is_none_or(GoldenComparison::passed);
    Ok(FitOutput {
        graph: GraphInfo::new(&g.source, graph),
        oracle: oracle.source.clone(),
        candidates,
        extended_candidates: extended,
        fit: report,
        unreduced,
        reduced,
        structure,
        golden,
        passed,
    })
}

pub fn reciprocity(
    g: &LoadedGraph,
    range: MRange,
    period_cap: Option<usize>,
    method: Method,
    budget: Budget,
) -> anyhow::Result<ReciprocityReport> {
    let graph = &g.graph;
    if !graph.is_connected() {
        bail!("reciprocity needs a connected graph");
    }
    let oracle = fitting_oracle(graph, method, budget)?;
    let (report, _, _) = fit_with_fallback(graph, &oracle, period_cap)?;
    let mut rows = Vec::new();
    for m in range {
        let from_fit = evaluate_negative(&report, m).map_err(explain)?;
        let weighted_sum = reciprocity_rhs(graph, m, budget).map_err(explain)?;
        rows.push(ReciprocityRow {
            m,
            matches: from_fit == weighted_sum,
            from_fit,
            weighted_sum,
        });
    }
    Ok(ReciprocityReport {
        graph: GraphInfo::new(&g.source, graph),
        mode: "beta".into(),
        period: report.period(),
        passed: rows.iter().all(|r| r.matches),
        rows,
    })
}

/// `(-1)^n χ(-m)` from an interpolated chromatic polynomial against the sum
/// of compatible acyclic orientations.
pub fn stanley_reciprocity(g: &LoadedGraph, range: MRange, budget: Budget) -> anyhow::Result<ReciprocityReport> {
    let graph = &g.graph;
    let n = graph.n();
    let samples = (1..=n as u64 + 1)
        .map(|m| Ok((m as i64, from_bigint(&chromatic_count(graph, m, budget)?))))
        .collect::<harmonium_core::Result<Vec<_>>>()
        .map_err(explain)?;
    let chi = interpolate(&samples)?;
    let check = n as u64 + 2;
    let held_out = from_bigint(&chromatic_count(graph, check, budget).map_err(explain)?);
    if chi.eval_int(check as i64) != held_out {
        bail!("chromatic samples are not a polynomial of degree {n}");
    }
    let mut rows = Vec::new();
    for m in range {
        let mut value = chi.eval_int(-(m as i64));
        if n % 2 == 1 {
            value = -value;
        }
        let from_fit = harmonium_core::algebra::to_integer(&value)
            .context("chromatic polynomial is not integral at a negative integer")?;
        let weighted_sum = acyclic_reciprocity_rhs(graph, m, budget).map_err(explain)?;
        rows.push(ReciprocityRow {
            m,
            matches: from_fit == weighted_sum,
            from_fit,
            weighted_sum,
        });
    }
    Ok(ReciprocityReport {
        graph: GraphInfo::new(&g.source, graph),
        mode: "stanley".into(),
        period: 1,
        passed: rows.iter().all(|r| r.matches),
        rows,
    })
}

pub struct RegionTasks {
    pub count_nonempty: bool,
    pub max_dilation: Option<u64>,
    pub orbit_identity: bool,
    pub t_max: u64,
    pub verify_vertices: bool,
}

pub fn regions(g: &LoadedGraph, tasks: RegionTasks, budget: Budget) -> anyhow::Result<RegionsReport> {
    let graph = &g.graph;
    let n = graph.n();
    if !graph.is_connected() {
        bail!("region analysis needs a connected graph");
    }
    if !(tasks.count_nonempty || tasks.orbit_identity || tasks.verify_vertices) {
        bail!("choose at least one of --count-nonempty, --orbit-identity, --verify-vertices");
    }
    let standard_star = || -> anyhow::Result<()> {
        if n >= 3 && harmonium_core::family(Family::Star, n)? == *graph {
            Ok(())
        } else {
            bail!("--orbit-identity and --verify-vertices need a star with center 1 (--family star)")
        }
    };
    let mut warnings = Vec::new();
    let mut passed = true;

    let census = if tasks.count_nonempty {
        let max = tasks.max_dilation.unwrap_or_else(|| default_max_dilation(n));
        let c = count_nonempty_regions(graph, max, budget).map_err(explain)?;
        if !c.unresolved.is_empty() {
            warnings.push(format!(
                "{} regions without a witness up to dilation {max}: {}",
                c.unresolved.len(),
                c.unresolved.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
            ));
        }
        Some(c)
    } else {
        None
    };

    let orbit = if tasks.orbit_identity {
        standard_star()?;
        match star_orbit_identity(n, tasks.t_max, budget) {
            Ok(o) => Some(o),
            Err(Error::OrbitIdentityViolated) => {
                passed = false;
                warnings.push("orbit identity violated at both offsets".into());
                None
            }
            Err(e) => return Err(explain(e)),
        }
    } else {
        None
    };

    let vertices = if tasks.verify_vertices {
        standard_star()?;
        let sys = star_region(n, 2)?;
        let checks: Vec<_> = star_square_vertices(n)
            .iter()
            .map(|p| verify_vertex(&sys, p))
            .collect();
        passed &= checks.iter().all(|c| c.verdict == Verdict::Vertex);
        Some(checks)
    } else {
        None
    };

    Ok(RegionsReport {
        graph: GraphInfo::new(&g.source, graph),
        census,
        orbit,
        vertices,
        warnings,
        passed,
    })
}
