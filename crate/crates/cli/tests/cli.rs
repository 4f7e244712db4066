use std::process::Command;

use serde_json::Value;

fn sqfr(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = sqfr_cli::run(std::iter::once("sqfr").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = sqfr(&full);
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out:?} {err}"));
    (code, value)
}

#[test]
fn reducts_example() {
    let (code, out, _) = sqfr(&["reducts", "--word", "abcbabcbc", "--alphabet", "abc", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with(r#"{"source":"abcbabcbc","alphabet":"abc","count":2,"reducts":["abc","abcbabc"]"#),
        "{out}"
    );
    let (code, v) = json(&["reducts", "--word", "abc", "--alphabet", "abc"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 1);
    assert_eq!(v["reducts"][0], "abc");
}

#[test]
fn alphabet_is_inferred() {
    let (_, v) = json(&["reducts", "--word", "hotshots"]);
    assert_eq!(v["alphabet"], "hots");
    assert_eq!(v["reducts"][0], "hots");
}

#[test]
fn d_traces_print_both_targets() {
    let (code, out, _) = sqfr(&["verify", "lemma2"]);
    assert_eq!(code, 0);
    assert!(out.contains("abacabcbacabacbabc") && out.contains("abacabcbacbcacbabc"));
}

#[test]
fn every_verify_target_passes() {
    for t in [
        "lemma1",
        "lemma2",
        "lemma3",
        "lemma4",
        "proposition1",
        "length9-cover",
        "theorem4",
        "theorem6",
        "constructive",
        "table1",
    ] {
        let (code, v) = json(&["verify", t]);
        assert_eq!(code, 0, "{t}");
        assert_eq!(v["passed"], true, "{t}");
    }
    let (code, _) = json(&["verify", "theorem5", "--count", "50"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(sqfr(&["reducts"]).0, 2);
    assert_eq!(sqfr(&["reducts", "--word", "abd", "--alphabet", "abc"]).0, 2);
    assert_eq!(sqfr(&["reducts", "--word", "ab", "--bogus"]).0, 2);
    assert_eq!(sqfr(&["frobnicate"]).0, 2);
    assert_eq!(sqfr(&["builtin", "Z9"]).0, 2);
    assert_eq!(sqfr(&["reducts", "--word", "ab", "--timeout", "-1"]).0, 2);
    let (code, out, _) = sqfr(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("reducts"));
}

#[test]
fn budget_exits_3_with_partial_report() {
    let (code, v) = json(&["reducts", "--builtin", "D", "--max-visited", "10"]);
    assert_eq!(code, 3);
    assert_eq!(v["truncated"], true);
    assert_eq!(sqfr(&["distance", "--builtin", "D", "--max-visited", "3"]).0, 3);
}

#[test]
fn negatives_exit_1() {
    let (code, v) = json(&["reachable", "--word", "abab", "--to", "ba"]);
    assert_eq!(code, 1);
    assert_eq!(v["reachable"], false);
    let (code, v) = json(&["trace-verify", "--word", "abab", "--trace", "1:1"]);
    assert_eq!(code, 1);
    assert_eq!(v["valid"], false);
    let (code, v) = json(&["morphism-check", "--images", "ab,ab"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fail");
}

#[test]
fn reachable_and_traces() {
    let (code, v) = json(&["reachable", "--builtin", "D", "--to-builtin", "B"]);
    assert_eq!(code, 0);
    let trace = serde_json::to_string(&v["trace"]).unwrap();
    let (code, v) = json(&["trace-verify", "--builtin", "D", "--trace", &trace, "--expect", "abacabcbacbcacbabc"]);
    assert_eq!(code, 0);
    assert_eq!(v["square_free"], true);
    let (code, v) = json(&["trace-verify", "--builtin", "D", "--trace-builtin", "traceDA"]);
    assert_eq!(code, 0);
    assert_eq!(v["final"], "abacabcbacabacbabc");
}

#[test]
fn small_commands() {
    let (_, v) = json(&["neighbors", "--word", "aaaa"]);
    assert_eq!(v["out_degree"], 2);
    let (_, v) = json(&["distance", "--word", "aaaa"]);
    assert_eq!(v["distance"], 2);
    let (_, v) = json(&["enumerate-squarefree", "--k", "3", "--n", "10"]);
    assert_eq!(v["count"], 144);
    let (_, v) = json(&["build", "w-m", "--m", "2"]);
    assert_eq!(v["length"], 252);
    let (_, v) = json(&["build", "s-i", "--i", "1"]);
    assert_eq!(v["word"], "xabaxababxy");
    let (_, v) = json(&["build", "v-j", "--j", "1"]);
    assert_eq!(v["word"], "xabaxababxbabxyaby");
    let (_, v) = json(&["build", "prefix", "--length", "7"]);
    assert_eq!(v["word"], "yabybay");
    let (_, v) = json(&["builtin", "phi"]);
    assert_eq!(v["images"][2], "abacbcacbacabcbabc");
    let (_, v) = json(&["morphism-check", "--builtin", "phi"]);
    assert_eq!(v["verdict"], "pass");
    let (code, v) = json(&["morphism-check", "--builtin", "psi", "--brute-len", "3"]);
    assert_eq!((code, v["uniform"].clone()), (1, Value::Bool(false)));
    let (_, v) = json(&["builtin", "--list"]);
    assert!(v.as_array().unwrap().len() >= 28);
}

#[test]
fn normalize_emits_replayable_moves() {
    let (code, v) = json(&["normalize", "--word", "abcbabcbcacbcacabacabcbabcbc"]);
    assert_eq!(code, 0);
    let moves = v.as_array().unwrap();
    assert!(moves.iter().any(|m| m["move"] == "up"));
    assert!(moves.last().unwrap()["result"].as_str().unwrap().len() <= 8);
    let (code, v) = json(&["normalize", "--random", "20", "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["words"], 20);
    assert_eq!(sqfr(&["normalize", "--word", "abab"]).0, 2);
}

#[test]
fn identical_invocations_give_identical_output() {
    for args in [
        vec!["reducts", "--builtin", "S3"],
        vec!["normalize", "--random", "30", "--seed", "11", "--format", "json"],
        vec!["scan", "reduct-values", "--k", "3", "--max-len", "9"],
    ] {
        assert_eq!(sqfr(&args).1, sqfr(&args).1, "{args:?}");
    }
    let strip = |s: String| {
        let mut v: Value = serde_json::from_str(&s).unwrap();
        v["seconds"] = Value::from(0.0);
        v
    };
    let a = sqfr(&["scan", "dup-distance", "--k", "2", "--max-len", "10", "--workers", "1", "--format", "json"]).1;
    let b = sqfr(&["scan", "dup-distance", "--k", "2", "--max-len", "10", "--workers", "2", "--format", "json"]).1;
    assert_eq!(strip(a), strip(b));
}

#[test]
fn cache_is_used_and_survives_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("memo.jsonl");
    let cache = path.to_str().unwrap();
    let args = ["reducts", "--builtin", "S3", "--format", "json", "--cache", cache];
    let plain = sqfr(&args[..5]).1;
    assert!(plain.contains("\"count\":14"));
    let first = sqfr(&args);
    assert_eq!(first.1, plain);
    let second = sqfr(&args);
    assert_eq!(second.1, plain);
    assert!(second.2.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2);
    std::fs::write(&path, text.replace("\"abc\",", "")).unwrap();
    let third = sqfr(&args);
    assert_eq!(third.1, plain);
    assert!(third.2.contains("discarded"));
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_sqfr"))
        .args(["reducts", "--word", "abcbabcbc", "--alphabet", "abc"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "abcbabcbc: 2 reducts (4 words explored)\nabc\nabcbabc\n");
    let out = Command::new(env!("CARGO_BIN_EXE_sqfr"))
        .args(["distance", "--word", "ab", "--max-visited", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
