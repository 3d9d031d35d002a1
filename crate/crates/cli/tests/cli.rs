use std::process::Command;

use ply_cli::{basis_listing, run, BasisKind, EXIT_CHECK, EXIT_FUEL, EXIT_OK, EXIT_USAGE};
use ply_core::ply::TraceFile;
use ply_core::Alphabet;

fn ply(args: &[&str]) -> ply_cli::Outcome {
    run(std::iter::once("ply").chain(args.iter().copied()))
}

#[test]
fn dims_examples() {
    assert_eq!(ply(&["dims", "--basis", "B", "--max-n", "5", "--gens", "1"]).stdout, "1 1 3 9 31\n");
    assert_eq!(ply(&["dims", "--basis", "Shat", "--max-n", "4", "--gens", "1"]).stdout, "1 2 8 40\n");
    assert_eq!(ply(&["dims", "--basis", "S", "--max-n", "5", "--gens", "1"]).stdout, "1 1 2 5 14\n");
    assert_eq!(ply(&["dims", "--basis", "Bhat", "--max-n", "3", "--gens", "2"]).stdout, "2 8 64\n");
    assert_eq!(ply(&["dims", "--basis", "T", "--max-n", "3", "--gens", "a,b"]).stdout, "2 8 64\n");
}

#[test]
fn lat_listing_is_bracket_free_part_of_b() {
    let al = Alphabet::first(1);
    for n in 1..=5 {
        let lat = basis_listing(BasisKind::Lat, n, &al);
        let b = basis_listing(BasisKind::B, n, &al);
        assert!(lat.iter().all(|x| b.contains(x) && !x.contains("bk(")));
        assert_eq!(lat.len(), b.iter().filter(|x| !x.contains("bk(")).count());
    }
}

#[test]
fn normalize_example() {
    let out = ply(&["normalize", "bk(a, gr(a;a))"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "-1 * bk(gr(a; a), a)\n");
    let json = ply(&["normalize", "bk(a, gr(a;a))", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["terms"][0]["coeff"], "-1");
    assert_eq!(v["terms"][0]["expr"], "bk(gr(a; a), a)");
}

#[test]
fn zero_prints_as_zero() {
    assert_eq!(ply(&["normalize", "bk(a, a)"]).stdout, "0\n");
    assert_eq!(ply(&["normalize", "bk(a, a)", "--json"]).stdout, "{\"terms\":[]}\n");
}

#[test]
fn exit_codes() {
    assert_eq!(ply(&["normalize", "bk(a"]).code, EXIT_USAGE);
    assert_eq!(ply(&["normalize", "bk(a, c)", "--gens", "a,b"]).code, EXIT_USAGE);
    assert_eq!(ply(&["normalize", "gr(a; gr(a; a))"]).code, EXIT_USAGE);
    assert_eq!(ply(&["dims", "--basis", "Q", "--max-n", "2"]).code, EXIT_USAGE);
    assert_eq!(ply(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(ply(&["normalize", "bk(a, gr(a;a))", "--fuel", "0"]).code, EXIT_FUEL);
    assert_eq!(ply(&["--help"]).code, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ply");
    let ok = Command::new(bin).args(["normalize", "bk(a, gr(a;a))"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "-1 * bk(gr(a; a), a)\n");
    let bad = Command::new(bin).args(["normalize", "bk(a,"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("1:"));
    let fuel = Command::new(bin).args(["normalize", "bk(a, gr(a;a))", "--fuel", "0"]).output().unwrap();
    assert_eq!(fuel.status.code(), Some(2));
}

#[test]
fn trace_file_replays() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.jsonl");
    let out = ply(&["normalize", "tri(bk(a, b), gr(b; a))", "--trace", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().count() > 1);
    let tf = TraceFile::parse(&text).unwrap();
    tf.check().unwrap();
    assert!(!tf.steps.is_empty());
    // Tampering with a coefficient breaks the replay.
    let bad = text.replacen("\"coeff\":\"1\"", "\"coeff\":\"2\"", 1);
    if bad != text {
        assert!(TraceFile::parse(&bad).unwrap().check().is_err());
    }
}

#[test]
fn osbb_phi_and_ly() {
    assert_eq!(ply(&["osbb", "w(b, a)"]).stdout, "1/2 * w(lb(b, a)) + w(s(b, a))\n");
    assert_eq!(ply(&["osbb", "w(a, b)"]).stdout, "-1/2 * w(lb(b, a)) + w(s(b, a))\n");
    assert_eq!(ply(&["phi", "a"]).stdout, "a\n");
    assert_eq!(ply(&["phi", "gr(a; a)"]).stdout, "gr(a; a)\n");
    assert_eq!(ply(&["phi-inv", "tb(a, a, a)"]).stdout, "0\n");
    assert_eq!(ply(&["ly", "a", "a", "a"]).stdout, "0\n");
    assert_eq!(ply(&["ly", "gr(a; a)", "a", "a"]).stdout, "gr(bk(gr(a; a), a); a) + -1 * tb(gr(a; a), a, a)\n");
}

#[test]
fn phi_round_trips_through_cli() {
    let al = Alphabet::first(1);
    for x in basis_listing(BasisKind::Shat, 4, &al) {
        let t = ply(&["phi", &x]).stdout;
        let back = ply(&["phi-inv", t.trim()]).stdout;
        assert_eq!(back.trim(), x);
    }
}

#[test]
fn enum_json_shape() {
    let out = ply(&["enum", "--basis", "B", "--n", "3", "--gens", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["count"], 3);
    assert_eq!(v["elements"].as_array().unwrap().len(), 3);
    let text = ply(&["enum", "--basis", "B", "--n", "3", "--gens", "1"]).stdout;
    assert_eq!(text, "bk(gr(a; a), a)\ngr(gr(a; a); a)\nsg(a, a; a)\n");
}

#[test]
fn check_reports_are_reproducible() {
    let args = ["check", "--suite", "ply-axioms", "--max-vertices", "4", "--samples", "30", "--seed", "7", "--gens", "2"];
    let a = ply(&args);
    let b = ply(&args);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["suite"], "ply-axioms");
    assert_eq!(v["pass"], true);
}

#[test]
fn failing_check_exits_three() {
    // With two generators the LY5 and LY6 residuals are nonzero at six vertices.
    let out = ply(&["check", "--suite", "ly-axioms", "--max-vertices", "6", "--samples", "40", "--seed", "1", "--gens", "2"]);
    assert_eq!(out.code, EXIT_CHECK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    assert!(!v["failures"].as_array().unwrap().is_empty());
}
