use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;
use sptw::cli::run;

fn sptw(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("sptw").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = sptw(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn csv_rows(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    lines
        .map(|l| {
            header
                .iter()
                .cloned()
                .zip(l.split(',').map(str::to_string))
                .collect()
        })
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn bounds_json_schema() {
    let v = json(&["bounds", "--family", "complete_bipartite:3,5"]);
    assert_eq!(v["graph"]["n"], 8);
    assert_eq!(v["graph"]["m"], 15);
    assert_eq!(v["graph"]["max_degree"], 5);
    assert!((v["spectrum"]["lambda2"].as_f64().unwrap() - 3.0).abs() < 1e-8);
    assert!((v["spectrum"]["lambda_max"].as_f64().unwrap() - 8.0).abs() < 1e-8);
    assert!((v["bounds"]["thm1"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    for k in ["cs03", "ghnoo24", "thm2"] {
        assert!(v["bounds"][k].is_f64(), "{k}");
    }
    assert_eq!(v["best_integer_lower_bound"], 2);
}

#[test]
fn bounds_on_edgeless_input_are_null() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "empty.gr",
        "c three isolated vertices\np tw 3 0\n",
    );
    let v = json(&["bounds", &path]);
    assert_eq!(v["graph"]["m"], 0);
    for k in ["cs03", "ghnoo24", "thm1", "thm2"] {
        assert!(v["bounds"][k].is_null(), "{k}");
    }
    assert_eq!(v["best_integer_lower_bound"], 0);
}

#[test]
fn bounds_csv_and_edge_list_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "c4.txt", "# four-cycle\n0 1\n1 2\n2 3\n3 0\n");
    let (code, out, _) = sptw(&["bounds", &path, "--format", "csv"]);
    assert_eq!(code, 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["n"], "4");
    assert_eq!(rows[0]["m"], "4");
    assert_eq!(rows[0]["best_integer_lower_bound"], "1");
}

#[test]
fn exact_writes_a_decomposition_that_validates() {
    let dir = tempfile::tempdir().unwrap();
    let (code, gr, _) = sptw(&["family", "grid:3,4"]);
    assert_eq!(code, 0);
    let graph = write(dir.path(), "grid.gr", &gr);
    let td = dir.path().join("grid.td").display().to_string();
    let (code, out, _) = sptw(&["exact", &graph, "--out", &td]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "3");
    let v = json(&["validate", &graph, &td]);
    assert_eq!(v["width"], 3);

    let bad = write(
        dir.path(),
        "bad.td",
        "s td 1 1 12\nb 1 1 2 3 4 5 6 7 8 9 10 11\n",
    );
    let (code, out, _) = sptw(&["validate", &graph, &bad, "--format", "table"]);
    assert_eq!(code, 2);
    assert!(out.contains("valid false"));
}

#[test]
fn exact_json_embeds_td() {
    let v = json(&["exact", "--family", "cycle:5", "--format", "json"]);
    assert_eq!(v["width"], 2);
    assert_eq!(v["valid"], true);
    assert!(v["td"].as_str().unwrap().starts_with("s td"));
}

#[test]
fn exact_refuses_large_graphs() {
    let (code, _, err) = sptw(&["exact", "--family", "path:21"]);
    assert_eq!(code, 3);
    assert!(!err.is_empty());
    let (code, _, _) = sptw(&["exact", "--family", "path:22", "--limit", "22"]);
    assert_eq!(code, 0);
    let (code, _, _) = sptw(&["exact", "--family", "path:5", "--limit", "25"]);
    assert_eq!(code, 1);
}

#[test]
fn verify_examples_pass() {
    for fam in ["complete_bipartite:3,4", "complete:5", "path:6", "grid:3,3"] {
        let v = json(&["verify", "--family", fam]);
        assert!(v["theorem1"]["lower"]["passed"].as_bool().unwrap(), "{fam}");
        assert!(v["theorem1"]["upper"]["passed"].as_bool().unwrap(), "{fam}");
    }
    let v = json(&["verify", "--family", "complete:5"]);
    assert_eq!(v["theorem2"]["branch"], "complete");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(sptw(&["frobnicate"]).0, 1);
    assert_eq!(sptw(&["bounds"]).0, 1);
    assert_eq!(sptw(&["bounds", "--family", "wheel:5"]).0, 1);
    assert_eq!(sptw(&["bounds", "/nonexistent/graph.gr"]).0, 1);
    assert_eq!(sptw(&["--help"]).0, 0);
    assert_eq!(sptw(&["--version"]).0, 0);
}

#[test]
fn malformed_graphs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("loop.gr", "p tw 2 1\n1 1\n"),
        ("dup.gr", "p tw 2 2\n1 2\n2 1\n"),
        ("count.gr", "p tw 3 2\n1 2\n"),
        ("range.txt", "3\n0 3\n"),
    ] {
        let path = write(dir.path(), name, text);
        let (code, _, err) = sptw(&["bounds", &path]);
        assert_eq!(code, 1, "{name}");
        assert!(!err.is_empty(), "{name}");
    }
}

#[test]
fn compare_complete_bipartite_gaps() {
    let (code, out, _) = sptw(&[
        "compare",
        "--family",
        "complete_bipartite:1..6,1..6",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 36);
    for r in rows {
        let gap: f64 = r["gap_thm1"].parse().unwrap();
        if r["n"] == "2" {
            // K2 has lambda2 = 2, not 1
            assert!((gap - 2.0 / 3.0).abs() < 1e-6);
        } else {
            assert!((gap - 1.0).abs() < 1e-6, "{}: {gap}", r["name"]);
        }
        assert_eq!(r["error"], "");
    }
}

#[test]
fn compare_complete_graph_gap_is_zero() {
    let (code, out, _) = sptw(&["compare", "--family", "complete:2..25", "--format", "csv"]);
    assert_eq!(code, 0);
    for r in csv_rows(&out) {
        let gap: f64 = r["gap_thm2"].parse().unwrap();
        assert!(gap.abs() < 1e-6, "{}: {gap}", r["name"]);
        let tw_source = &r["tw_source"];
        let n: usize = r["n"].parse().unwrap();
        assert_eq!(tw_source, if n <= 20 { "exact" } else { "closed_form" });
    }
}

#[test]
fn batch_is_deterministic_and_sound() {
    let dir = tempfile::tempdir().unwrap();
    for (i, fam) in ["gnp:9,0.4,1", "gnp:10,0.3,2", "grid:2,5"]
        .iter()
        .enumerate()
    {
        let (_, gr, _) = sptw(&["family", fam]);
        write(dir.path(), &format!("g{i}.gr"), &gr);
    }
    let d = dir.path().display().to_string();
    let args = [
        "batch",
        &d,
        "--family",
        "gnp:11,0.5,3..12",
        "--format",
        "csv",
    ];
    let (code, first, _) = sptw(&args);
    assert_eq!(code, 0);
    let (_, second, _) = sptw(&args);
    assert_eq!(first, second);
    let rows = csv_rows(&first);
    assert_eq!(rows.len(), 13);
    for r in rows {
        let best: u64 = r["best_integer"].parse().unwrap();
        let tw: u64 = r["treewidth"].parse().unwrap();
        assert!(best <= tw, "{}", r["name"]);
    }
}

#[test]
fn family_output_round_trips() {
    let (code, gr, _) = sptw(&["family", "gnp:8,0.5", "--seed", "4"]);
    assert_eq!(code, 0);
    let (_, again, _) = sptw(&["family", "gnp:8,0.5,4"]);
    assert_eq!(gr, again);
    let g = sptw::parse_pace_gr(&gr).unwrap();
    assert_eq!(
        g,
        sptw::Family::Gnp {
            n: 8,
            p: 0.5,
            seed: 4
        }
        .generate()
        .unwrap()
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sptw");
    let ok = Command::new(bin)
        .args(["bounds", "--family", "complete:5"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["best_integer_lower_bound"], 4);
    let big = Command::new(bin)
        .args(["exact", "--family", "complete:21"])
        .output()
        .unwrap();
    assert_eq!(big.status.code(), Some(3));
    let bad = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
