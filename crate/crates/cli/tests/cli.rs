use std::process::{Command, Output};

use proptest::prelude::*;
use surfgrp::fingroup::named::Family;
use surfgrp_cli::{ActionExpr, ElemWord, GroupExpr};

const INSTANCES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/instances");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surfgrp")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn exit_code_matrix() {
    let c3xc3 = format!("{INSTANCES}/c3xc3.txt");
    let cases: &[(&[&str], i32)] = &[
        (&["solve-fsep", "--genus", "2", "--B", "C2", "--A", "C2"], 0),
        (&["solve-fsep", "--genus", "2", "--B", "C2", "--A", "C3", "--action", "inversion", "--method", "both"], 0),
        (&["solve-fsep", "--genus", "1", "--B", "C1", "--A", "S3"], 1),
        (&["count-homs", "--genus", "2", "--target", "S3"], 0),
        (&["count-homs", "--genus", "1", "--target", "S3", "--surjective"], 1),
        (&["genus", "--genus", "2", "--target", "C3", "--subgroup", "kernel"], 0),
        (&["diamond", "--instance", &c3xc3], 0),
        (&["induce", "--instance", &c3xc3], 0),
        (&["experiment", "genus-frontier", "--A", "C2", "--B", "C1", "--max-genus", "3"], 0),
        (&["count-homs", "--genus", "0", "--target", "S3"], 2),
        (&["count-homs", "--genus", "2", "--target", "C3("], 2),
        (&["count-homs", "--genus", "2", "--target", "X4"], 2),
        (&["solve-fsep", "--genus", "2", "--B", "C2", "--A", "C3", "--action", "{[g1^2], [g1]}"], 2),
        (&["solve-fsep", "--genus", "2", "--B", "C2", "--A", "C2", "--mu", "z9=g1"], 2),
        (&["diamond", "--instance", "/nonexistent/instance.txt"], 2),
        (&["frobnicate"], 2),
        (&["--cap", "10", "count-homs", "--genus", "2", "--target", "S4"], 3),
    ];
    for (args, expect) in cases {
        assert_eq!(code(args), *expect, "surfgrp {}", args.join(" "));
    }
}

#[test]
fn errors_go_to_stderr() {
    let out = run(&["count-homs", "--genus", "2", "--target", "C3("]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error at 2"));
}

#[test]
fn json_report_shape() {
    let out = run(&["--json", "count-homs", "--genus", "2", "--target", "S3"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["command"], "count-homs");
    assert_eq!(v["verdict"], "solved");
    assert_eq!(v["results"]["count"], "486");
    assert!(v.get("timings").is_none());
    let timed = run(&["--json", "--timings", "count-homs", "--genus", "2", "--target", "S3"]);
    let v: serde_json::Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(v["timings"].is_object());
}

#[test]
fn csv_lists_homomorphisms() {
    let out = run(&["--csv", "count-homs", "--genus", "1", "--target", "C2", "--list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    // header plus |C2| * #classes rows
    assert_eq!(text.lines().count(), 1 + 4);
}

fn arb_word() -> impl Strategy<Value = ElemWord> {
    prop::collection::vec((0usize..3, -3i64..=3), 0..4).prop_map(ElemWord)
}

fn arb_action() -> impl Strategy<Value = ActionExpr> {
    prop_oneof![
        Just(ActionExpr::Trivial),
        Just(ActionExpr::Inversion),
        prop::collection::vec(prop::collection::vec(arb_word(), 1..3), 1..3).prop_map(ActionExpr::Table),
    ]
}

fn arb_cycle() -> impl Strategy<Value = Vec<usize>> {
    Just((1..=6).collect::<Vec<usize>>()).prop_shuffle().prop_flat_map(|pts| (2usize..=4).prop_map(move |k| pts[..k].to_vec()))
}

fn arb_expr() -> impl Strategy<Value = GroupExpr> {
    let family = prop_oneof![Just(Family::Cyclic), Just(Family::Symmetric), Just(Family::Alternating), Just(Family::Dihedral)];
    let leaf = prop_oneof![
        (family, 1usize..10).prop_map(|(f, n)| GroupExpr::Named(f, n)),
        prop::collection::vec(prop::collection::vec(arb_cycle(), 0..3), 1..3).prop_map(GroupExpr::Perm),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GroupExpr::Product(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone(), arb_action()).prop_map(|(a, b, act)| GroupExpr::Semidirect(Box::new(a), Box::new(b), act)),
            (inner.clone(), inner, prop::collection::vec(arb_word(), 0..3), arb_action()).prop_map(|(m, t, over, action)| {
                GroupExpr::Wreath { module: Box::new(m), top: Box::new(t), over, action }
            }),
        ]
    })
}

proptest! {
    #[test]
    fn group_expressions_round_trip(e in arb_expr()) {
        let text = e.to_string();
        let back: GroupExpr = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, e);
    }

    #[test]
    fn parse_errors_never_panic(src in "[A-Za-z0-9(){},=\\[\\]^* -]{0,24}") {
        let _ = src.parse::<GroupExpr>();
    }
}
