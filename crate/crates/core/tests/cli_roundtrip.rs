use std::fs;
use std::path::Path;
use std::process::Command;

use keyeq::agcode::catalog;
use keyeq::cli::parse_words;
use keyeq::decoder::DecodeRecord;
use keyeq::series::SeriesJson;

fn keyeq(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_keyeq")).args(args).output().expect("binary runs")
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

fn build(dir: &Path, instance: &str) -> String {
    let spec = p(dir, &format!("{instance}.json"));
    let out = keyeq(&["build-code", "--instance", instance, "--out", &spec]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    spec
}

#[test]
fn encode_corrupt_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let spec = build(d, "hermitian-gf4");
    fs::write(p(d, "msg.txt"), "0 0 0\n1 2 3\n3 3 1\n2 0 1\n").unwrap();
    assert!(keyeq(&["encode", "--spec", &spec, "--in", &p(d, "msg.txt"), "--out", &p(d, "cw.txt")]).status.success());
    let out = keyeq(&[
        "corrupt",
        "--spec",
        &spec,
        "--in",
        &p(d, "cw.txt"),
        "--out",
        &p(d, "rx.txt"),
        "--weight",
        "1",
        "--seed",
        "7",
        "--plant",
        &p(d, "plant.txt"),
    ]);
    assert!(out.status.success());
    let out = keyeq(&["decode", "--spec", &spec, "--in", &p(d, "rx.txt"), "--out", &p(d, "dec.jsonl")]);
    assert_eq!(out.status.code(), Some(0));

    let cw = parse_words(&fs::read_to_string(p(d, "cw.txt")).unwrap()).unwrap();
    let plant = parse_words(&fs::read_to_string(p(d, "plant.txt")).unwrap()).unwrap();
    let text = fs::read_to_string(p(d, "dec.jsonl")).unwrap();
    let recs: Vec<DecodeRecord> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 4);
    for ((r, c), e) in recs.iter().zip(&cw).zip(&plant) {
        assert_eq!(r.codeword.as_ref(), Some(c));
        let pos: Vec<usize> = (0..e.len()).filter(|&j| e[j] != 0).collect();
        assert_eq!(r.error_positions, pos);
        assert_eq!(r.error_values, pos.iter().map(|&j| e[j]).collect::<Vec<_>>());
    }
}

#[test]
fn zero_message_gives_zero_codeword() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let spec = build(d, "line-gf7");
    fs::write(p(d, "m.txt"), "0 0 0\n").unwrap();
    let out = keyeq(&["encode", "--spec", &spec, "--in", &p(d, "m.txt")]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0 0 0 0 0 0 0\n");
}

#[test]
fn all_messages_give_distinct_codewords() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let spec = build(d, "line-gf7");
    let mut msgs = String::new();
    for a in 0..7 {
        for b in 0..7 {
            for c in 0..7 {
                msgs.push_str(&format!("{a} {b} {c}\n"));
            }
        }
    }
    fs::write(p(d, "m.txt"), msgs).unwrap();
    assert!(keyeq(&["encode", "--spec", &spec, "--in", &p(d, "m.txt"), "--out", &p(d, "c.txt")]).status.success());
    let words = parse_words(&fs::read_to_string(p(d, "c.txt")).unwrap()).unwrap();
    assert_eq!(words.len(), 343);
    let distinct: std::collections::BTreeSet<_> = words.iter().cloned().collect();
    assert_eq!(distinct.len(), 343);
    // every output is a codeword: decoding reports no error
    let out = keyeq(&["decode", "--spec", &spec, "--in", &p(d, "c.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let code = catalog::line_gf7();
    for w in &words {
        let w: Vec<_> = w.iter().map(|&x| keyeq::Elem(x)).collect();
        assert!(keyeq::known_syndromes(&w, &code).unwrap().is_zero());
    }
}

#[test]
fn corrupt_is_deterministic_and_seed_dependent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let spec = build(d, "line-gf7");
    fs::write(p(d, "c.txt"), "0 0 0 0 0 0 0\n".repeat(10)).unwrap();
    let run = |seed: &str| {
        keyeq(&["corrupt", "--spec", &spec, "--in", &p(d, "c.txt"), "--weight", "2", "--seed", seed]).stdout
    };
    assert_eq!(run("42"), run("42"));
    assert_ne!(run("42"), run("43"));
    let out = keyeq(&["corrupt", "--spec", &spec, "--in", &p(d, "c.txt"), "--weight", "8"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decode_failure_sets_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let spec = build(d, "hermitian-gf4");
    // weight 8 on the zero word: whatever happens, it is never a silent wrong answer
    fs::write(p(d, "rx.txt"), "1 1 1 1 1 1 1 1\n1 0 0 0 0 0 0 0\n").unwrap();
    let out = keyeq(&["decode", "--spec", &spec, "--in", &p(d, "rx.txt")]);
    let text = String::from_utf8(out.stdout).unwrap();
    let recs: Vec<DecodeRecord> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs[1].error_positions, vec![0]);
    let all_ok = recs.iter().all(|r| r.status == keyeq::DecodeStatus::Success);
    assert_eq!(out.status.code(), Some(if all_ok { 0 } else { 2 }));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(keyeq(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(keyeq(&["encode"]).status.code(), Some(1));
    assert_eq!(keyeq(&["build-code"]).status.code(), Some(1));
    assert_eq!(keyeq(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let spec = build(d, "hermitian-gf4");
    let run = || keyeq(&["sweep", "--spec", &spec, "--weights", "0,1,2,8", "--trials", "60", "--seed", "3"]);
    let a = run();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run().stdout);
    let rows: Vec<keyeq::cli::SweepRow> =
        String::from_utf8(a.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0].exact, 60);
    assert_eq!(rows[1].exact, 60);
    assert_eq!(rows[2].miscorrected, 0);
    assert!(rows.iter().all(|r| r.unsound == 0));
}

#[test]
fn lrs_extend_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(p(d, "basis.json"), r#"{"field":{"p":5,"m":1,"modulus":[0,1]},"weights":[1],"polys":["X1^2 - X1 - 1"]}"#)
        .unwrap();
    fs::write(p(d, "init.json"), r#"{"values":[{"at":[0],"value":0},{"at":[1],"value":1}]}"#).unwrap();
    let out = keyeq(&[
        "lrs-extend",
        "--basis",
        &p(d, "basis.json"),
        "--in",
        &p(d, "init.json"),
        "--box",
        "9",
        "--out",
        &p(d, "s.json"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s: SeriesJson = serde_json::from_str(&fs::read_to_string(p(d, "s.json")).unwrap()).unwrap();
    assert_eq!(s.bound, vec![9]);
    assert_eq!(s.coeffs, vec![0, 1, 1, 2, 3, 0, 3, 3, 1, 4]);

    // two variables: the vanishing ideal of (1, 2) over GF(7) gives W_a = 1^a1 * 2^a2 * W_0
    fs::write(
        p(d, "b2.json"),
        r#"{"field":{"p":7,"m":1,"modulus":[0,1]},"weights":[1,1],"polys":["X1 - 1","X2 - 2"]}"#,
    )
    .unwrap();
    fs::write(p(d, "i2.json"), r#"{"values":[{"at":[0,0],"value":3}]}"#).unwrap();
    let out = keyeq(&["lrs-extend", "--basis", &p(d, "b2.json"), "--in", &p(d, "i2.json"), "--box", "1,2"]);
    let s: SeriesJson = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(s.coeffs, vec![3, 6, 5, 3, 6, 5]);

    // initial value outside the footprint
    fs::write(p(d, "bad.json"), r#"{"values":[{"at":[0,0],"value":3},{"at":[1,0],"value":1}]}"#).unwrap();
    let out = keyeq(&["lrs-extend", "--basis", &p(d, "b2.json"), "--in", &p(d, "bad.json"), "--box", "1,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn build_code_from_custom_spec() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // points 1..=5 of the line over GF(7), a = 2: [5, 2] code
    fs::write(
        p(d, "in.json"),
        r#"{"field":{"p":7,"m":1,"modulus":[0,1]},"curve":{"polys":[],"genus":0,"pole_orders":[1]},"a":2,"points":[[1],[2],[3],[4],[5]]}"#,
    )
    .unwrap();
    let out = keyeq(&["build-code", "--in", &p(d, "in.json"), "--out", &p(d, "spec.json")]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("[5, 2]"));
    fs::write(p(d, "bad.json"), r#"{"field":{"p":7,"m":1,"modulus":[0,1]},"curve":{"polys":[],"genus":0,"pole_orders":[1]},"a":9,"points":"all"}"#).unwrap();
    assert_eq!(keyeq(&["build-code", "--in", &p(d, "bad.json")]).status.code(), Some(1));
}
