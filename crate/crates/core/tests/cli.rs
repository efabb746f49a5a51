use std::collections::BTreeMap;
use std::process::{Command, Output};

use num_bigint::BigInt;
use proptest::prelude::*;
use sigmaij::cli::{render_latex, OutputDocument};
use sigmaij::thom;
use sigmaij::{Partition, SchurExpr};

fn sigmaij(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmaij"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute_morin_text() {
    let o = sigmaij(&["compute", "--i", "1", "--j", "1", "--r", "0", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "s[2] + 2*s[1,1]");
}

#[test]
fn compute_latex_matches_printed_example() {
    let o = sigmaij(&["compute", "--i", "2", "--j", "2", "--r", "-1", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "s_{5} + 3s_{4,1} + 6s_{3,2} + 2s_{3,1,1} + 4s_{2,2,1}"
    );
}

#[test]
fn compute_rejects_bad_parameters() {
    let o = sigmaij(&["compute", "--i", "2", "--j", "3", "--r", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("j must not exceed i"));

    let o = sigmaij(&["compute", "--i", "2", "--j", "1", "--r", "-2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("h = r + i must be at least 1"));

    let o = sigmaij(&["compute", "--i", "2", "--j", "2", "--r", "0", "--route", "main2nice"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("does not apply"));

    let o = sigmaij(&["compute", "--i", "2", "--j", "1", "--r", "0", "--format", "yaml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn routes_agree_through_the_cli() {
    let run = |route: &str| {
        let o = sigmaij(&["compute", "--i", "2", "--j", "1", "--r", "1", "--route", route]);
        assert_eq!(o.status.code(), Some(0), "{route}: {}", stderr(&o));
        stdout(&o)
    };
    let nice = run("main2nice");
    assert_eq!(run("main2"), nice);
    assert_eq!(run("general"), nice);
    assert_eq!(run("auto"), nice);
}

#[test]
fn json_document_round_trips() {
    let o = sigmaij(&["compute", "--i", "3", "--j", "1", "--r", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let doc: OutputDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(format!("{}\n", doc.render()), text);
    assert_eq!(doc.basis, "schur");
    assert_eq!(doc.route, thom::Route::Main2nice);
    assert_eq!(doc.codimension, 2 * 3 * 3 - 3 + 1);
    assert_eq!(doc.expr().unwrap(), thom::tp_main2nice(3, 0).unwrap());
    let order: Vec<_> = doc.terms.iter().map(|t| t.partition.clone()).collect();
    let mut sorted = order.clone();
    sorted.sort();
    assert_eq!(order, sorted);
}

#[test]
fn verify_scopes() {
    for args in [
        vec!["verify", "--golden"],
        vec!["verify", "--restriction", "--i", "2", "--j", "1", "--r", "1"],
        vec!["verify", "--lr", "--max-weight", "8"],
        vec!["verify", "--vanishing", "--i", "3", "--j", "2", "--r", "-2"],
        vec!["verify", "--factorization", "--n-max", "2", "--p-max", "2", "--deg-max", "6"],
    ] {
        let o = sigmaij(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")), "{args:?}");
    }
    let o = sigmaij(&["verify", "--restriction", "--i", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_json_report() {
    let o = sigmaij(&["verify", "--golden", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn series_morin_rows() {
    let o = sigmaij(&["series", "--i", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().skip(2).map(String::from).collect();
    assert!(rows.len() >= 5);
    for (m, row) in rows.iter().enumerate() {
        assert_eq!(row, &format!("({m},{})\t{}", -(m as i64), 1u64 << m));
    }
}

#[test]
fn series_sigma2_matches_formula() {
    let o = sigmaij(&["series", "--i", "2", "--check-r-independence"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("consistent across r=0..3"));
    let formula = thom::thom_series_formula(2, 8).unwrap();
    let mut checked = 0;
    for line in out.lines().filter(|l| l.starts_with('(')) {
        let (g, c) = line.split_once('\t').unwrap();
        let gamma: Vec<i64> = g
            .trim_matches(|ch| ch == '(' || ch == ')')
            .split(',')
            .map(|x| x.parse().unwrap())
            .collect();
        let expected = formula.terms.get(&gamma).cloned().unwrap_or_default();
        assert_eq!(c.parse::<BigInt>().unwrap(), expected, "{gamma:?}");
        checked += 1;
    }
    assert!(checked > 10);
}

/// Reads `(partition, coefficient)` pairs back out of a LaTeX rendering.
fn parse_latex(s: &str) -> BTreeMap<Vec<usize>, BigInt> {
    let mut out = BTreeMap::new();
    if s == "0" {
        return out;
    }
    let normalized = s.replace(" - ", " + -");
    for term in normalized.split(" + ") {
        let (coeff, rest) = term.split_once("s_{").unwrap();
        let parts = rest.trim_end_matches('}');
        let lambda: Vec<usize> = if parts.is_empty() {
            vec![]
        } else {
            parts.split(',').map(|x| x.parse().unwrap()).collect()
        };
        let c = match coeff {
            "" => BigInt::from(1),
            "-" => BigInt::from(-1),
            _ => coeff.parse().unwrap(),
        };
        out.insert(lambda, c);
    }
    out
}

/// Same for the plain-text rendering `s[2] + 2*s[1,1]`.
fn parse_text(s: &str) -> BTreeMap<Vec<usize>, BigInt> {
    let mut out = BTreeMap::new();
    if s == "0" {
        return out;
    }
    let normalized = s.replace(" - ", " + -");
    for term in normalized.split(" + ") {
        let (coeff, rest) = term.split_once("s[").unwrap();
        let parts = rest.trim_end_matches(']');
        let lambda: Vec<usize> = if parts.is_empty() {
            vec![]
        } else {
            parts.split(',').map(|x| x.parse().unwrap()).collect()
        };
        let c = match coeff.trim_end_matches('*') {
            "" => BigInt::from(1),
            "-" => BigInt::from(-1),
            x => x.parse().unwrap(),
        };
        out.insert(lambda, c);
    }
    out
}

fn arb_expr() -> impl Strategy<Value = SchurExpr> {
    let partition = proptest::collection::vec(1usize..5, 0..4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    });
    proptest::collection::vec((partition, -50i64..50), 0..6).prop_map(SchurExpr::from_terms)
}

proptest! {
    #[test]
    fn text_and_latex_carry_the_same_terms(x in arb_expr()) {
        let expected: BTreeMap<Vec<usize>, BigInt> =
            x.iter().map(|(l, c)| (l.parts().to_vec(), c.clone())).collect();
        prop_assert_eq!(parse_text(&x.to_string()), expected.clone());
        prop_assert_eq!(parse_latex(&render_latex(&x)), expected);
    }

    #[test]
    fn json_round_trip_is_byte_identical(x in arb_expr()) {
        let p = thom::SingularityParams::new(2, 1, 0).unwrap();
        let doc = OutputDocument::new(p, thom::Route::General, &x);
        let text = doc.render();
        let back: OutputDocument = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.render(), text);
        prop_assert_eq!(back.expr().unwrap(), x);
    }
}
