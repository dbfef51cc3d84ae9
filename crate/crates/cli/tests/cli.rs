use std::path::PathBuf;
use std::process::{Command, Output};

use harmonium_cli::args::{LoadedGraph, Method};
use harmonium_cli::report::Report;
use harmonium_core::{family, Budget, Family};

fn harmonium(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmonium"))
        .args(args)
        .env_remove("HARMONIUM_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("harmonium-test-{}-{name}", std::process::id()))
}

/// Second column of every data row in a text table.
fn column(text: &str, idx: usize) -> Vec<String> {
    text.lines()
        .filter(|l| l.starts_with(|c: char| c.is_ascii_digit()))
        .map(|l| l.split('\t').nth(idx).unwrap().to_string())
        .collect()
}

/// Colorings of `g` with `m` colors whose Laplacian image has no zero entry,
/// counted without any library code.
fn naive_count(n: usize, edges: &[(usize, usize)], m: u64) -> u64 {
    let mut total = 0;
    let mut c = vec![1u64; n];
    if m == 0 {
        return 0;
    }
    loop {
        let mut lc = vec![0i64; n];
        for &(a, b) in edges {
            let d = c[a] as i64 - c[b] as i64;
            lc[a] += d;
            lc[b] -= d;
        }
        if lc.iter().all(|&v| v != 0) {
            total += 1;
        }
        let mut i = 0;
        while i < n && c[i] == m {
            c[i] = 1;
            i += 1;
        }
        if i == n {
            return total;
        }
        c[i] += 1;
    }
}

#[test]
fn count_path_range() {
    let o = harmonium(&["count", "--family", "path", "--n", "3", "--m", "2..5"]);
    assert!(o.status.success());
    let expected: Vec<String> = (2..=5).map(|m| naive_count(3, &[(0, 1), (1, 2)], m).to_string()).collect();
    assert_eq!(expected, ["2", "10", "32", "72"]);
    assert_eq!(column(&stdout(&o), 1), expected);
}

/// 2, 10, 24, 32 are the leading numerator coefficients of the path's
/// generating function over (1 - z^2)^4, not values of the count.
#[test]
fn path3_numerator_over_square_denominator() {
    let o = harmonium(&["fit", "--family", "path", "--n", "3", "--json"]);
    assert!(o.status.success());
    let Report::Fit(f) = serde_json::from_str(&stdout(&o)).unwrap() else {
        panic!("not a fit report")
    };
    assert!(f.golden.unwrap().passed());
    assert_eq!(f.unreduced.denominator, vec![(2, 4)]);
    let head: Vec<String> = f.unreduced.numerator.coeffs()[2..6].iter().map(|c| c.to_string()).collect();
    assert_eq!(head, ["2", "10", "24", "32"]);
}

#[test]
fn count_star_routes_to_dynamic_program_with_cross_check() {
    let o = harmonium(&["count", "--family", "star", "--n", "6", "--m", "2..3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("star dynamic program"));
    let star: Vec<(usize, usize)> = (1..6).map(|j| (0, j)).collect();
    let expected: Vec<String> = (2..=3).map(|m| naive_count(6, &star, m).to_string()).collect();
    assert_eq!(expected, ["2", "96"]);
    assert_eq!(column(&text, 1), expected);
    assert_eq!(column(&text, 2), ["(cross-checked)", "(cross-checked)"]);
}

#[test]
fn count_from_file_at_one_is_zero() {
    let path = temp_path("g.edges");
    std::fs::write(&path, "5\n# a tree plus a chord\n1 2\n2 3\n3 4\n4 5\n1 3\n").unwrap();
    let o = harmonium(&["count", "--file", path.to_str().unwrap(), "--m", "1"]);
    std::fs::remove_file(&path).ok();
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(column(&stdout(&o), 1), ["0"]);
}

#[test]
fn malformed_file_reports_line() {
    let path = temp_path("bad.edges");
    std::fs::write(&path, "3\n1 2\n2 9\n").unwrap();
    let o = harmonium(&["count", "--file", path.to_str().unwrap(), "--m", "2"]);
    std::fs::remove_file(&path).ok();
    assert!(!o.status.success());
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn budget_refusal_names_the_flag() {
    let o = harmonium(&["count", "--family", "complete", "--n", "6", "--m", "40", "--budget", "1000"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("--budget"), "{}", stderr(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_harmonium"))
        .args(["count", "--family", "complete", "--n", "4", "--m", "10"])
        .env("HARMONIUM_BUDGET", "100")
        .output()
        .unwrap();
    assert!(!o.status.success());
}

#[test]
fn exactly_one_graph_source() {
    assert!(!harmonium(&["count", "--m", "2"]).status.success());
    let o = harmonium(&["count", "--family", "path", "--n", "3", "--file", "x", "--m", "2"]);
    assert!(!o.status.success());
    assert!(!harmonium(&["count", "--family", "path", "--m", "2"]).status.success());
}

#[test]
fn fit_path4_matches_table() {
    let o = harmonium(&["fit", "--family", "path", "--n", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("unreduced: (4z^2 + 28z^3 + 122z^4"));
    assert!(text.contains("/ ((1 - z^6)^5)"));
    assert!(text.contains("table path 4: unreduced ok, reduced ok"));
}

#[test]
fn fit_star5_and_k2() {
    let o = harmonium(&["fit", "--family", "star", "--n", "5", "--json"]);
    assert!(o.status.success());
    let Report::Fit(f) = serde_json::from_str(&stdout(&o)).unwrap() else {
        panic!("not a fit report")
    };
    assert_eq!(f.fit.period(), 12);
    assert!(f.golden.unwrap().passed());

    let o = harmonium(&["fit", "--family", "complete", "--n", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("unreduced: (2z^2) / ((1 - z)^3)"));
}

#[test]
fn fit_extends_candidates_when_heuristic_fails() {
    let path = temp_path("paw.edges");
    std::fs::write(&path, "4\n1 2\n2 3\n1 3\n3 4\n").unwrap();
    let o = harmonium(&["fit", "--file", path.to_str().unwrap(), "--json"]);
    std::fs::remove_file(&path).ok();
    assert!(o.status.success(), "{}", stderr(&o));
    let Report::Fit(f) = serde_json::from_str(&stdout(&o)).unwrap() else {
        panic!("not a fit report")
    };
    assert!(f.extended_candidates);
    assert_eq!(f.fit.period(), 30);
    assert!(f.structure.unwrap().holds());
}

#[test]
fn golden_mismatch_fails() {
    // a path presented as the star table; with two colors the path has 4
    // colorings and the star 2, so the series part at z^2
    let g = LoadedGraph {
        graph: family(Family::Path, 4).unwrap(),
        family: Some(Family::Star),
        source: "mislabelled".into(),
        warnings: Vec::new(),
    };
    let out = harmonium_cli::fit(&g, None, Method::Auto, Budget::default()).unwrap();
    let golden = out.golden.clone().unwrap();
    assert!(!golden.passed());
    assert_eq!(golden.first_difference, Some(2));
    assert!(!out.passed);
    assert!(!Report::Fit(Box::new(out)).passed());
}

#[test]
fn reciprocity_tables() {
    let o = harmonium(&["reciprocity", "--family", "path", "--n", "3", "--m", "1..4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(column(&text, 1)[0], "6");
    assert!(column(&text, 3).iter().all(|v| v == "ok"));

    let o = harmonium(&["reciprocity", "--stanley", "--family", "complete", "--n", "3", "--m", "1"]);
    assert!(o.status.success());
    assert_eq!(column(&stdout(&o), 1), ["6"]);
    assert_eq!(column(&stdout(&o), 2), ["6"]);

    let o = harmonium(&["reciprocity", "--family", "complete", "--n", "2", "--m", "3"]);
    assert!(o.status.success());
    assert_eq!(column(&stdout(&o), 1), ["12"]);
    assert_eq!(column(&stdout(&o), 2), ["12"]);
}

#[test]
fn regions_commands() {
    let o = harmonium(&["regions", "--family", "star", "--n", "4", "--count-nonempty"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("14 found, 0 unresolved"));

    let o = harmonium(&["regions", "--family", "star", "--n", "5", "--verify-vertices"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("\tvertex\trank 5").count(), 4);

    let o = harmonium(&["regions", "--family", "star", "--n", "3", "--orbit-identity", "--t-max", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("offset 0"));

    let o = harmonium(&["regions", "--family", "path", "--n", "4", "--orbit-identity"]);
    assert!(!o.status.success());
}

#[test]
fn unresolved_regions_only_warn() {
    let o = harmonium(&["regions", "--family", "path", "--n", "3", "--count-nonempty", "--max-dilation", "2"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn json_roundtrips_byte_for_byte() {
    let runs: [&[&str]; 5] = [
        &["count", "--family", "cycle", "--n", "4", "--m", "1..6", "--json"],
        &["fit", "--family", "complete", "--n", "3", "--json"],
        &["reciprocity", "--family", "star", "--n", "4", "--m", "1..3", "--json"],
        &["reciprocity", "--stanley", "--family", "cycle", "--n", "4", "--m", "1..3", "--json"],
        &["regions", "--family", "star", "--n", "4", "--count-nonempty", "--orbit-identity", "--verify-vertices", "--json"],
    ];
    for args in runs {
        let o = harmonium(args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        let text = stdout(&o);
        let parsed: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_json(), text, "{args:?}");
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let base = ["fit", "--family", "star", "--n", "5", "--json"];
    let one = harmonium(&[&base[..], &["--workers", "1"]].concat());
    let three = harmonium(&[&base[..], &["--workers", "3"]].concat());
    assert!(one.status.success() && three.status.success());
    assert_eq!(one.stdout, three.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = temp_path("out.json");
    let o = harmonium(&["count", "--family", "path", "--n", "4", "--m", "3", "--json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let Report::Count(c) = serde_json::from_str(&written).unwrap() else {
        panic!("not a count report")
    };
    assert_eq!(c.rows[0].count, 28.into());
}
