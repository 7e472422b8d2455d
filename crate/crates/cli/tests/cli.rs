//! End-to-end runs of the `hibi` binary against golden outputs.
//!
//! Run with `UPDATE_GOLDEN=1` to rewrite the files under `tests/golden/`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().expect("workspace root")
}

fn hibi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hibi")).args(args).current_dir(workspace_root()).output().expect("binary runs")
}

/// Runs `args`, checks the exit status and compares stdout to `golden/<name>`.
fn golden(name: &str, args: &[&str], status: i32) {
    let out = hibi(args);
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    assert_eq!(
        out.status.code(),
        Some(status),
        "{name}: exit status\nstdout:\n{stdout}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).expect("write golden");
        return;
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDEN=1 to create)", path.display()));
    assert_eq!(stdout, want, "{name}: output differs from golden");
}

#[test]
fn analyze() {
    golden("analyze_worked_example.tsv", &["analyze", "corpus/worked_example.poset"], 0);
    golden(
        "analyze_worked_example_tree.tsv",
        &["analyze", "corpus/worked_example.poset", "--tree", "e2,e3,e4,e5,e6,e7"],
        0,
    );
    golden("analyze_worked_example.json", &["analyze", "corpus/worked_example.poset", "--format", "json"], 0);
    golden("analyze_z1_example.tsv", &["analyze", "corpus/z1_example.cone"], 0);
    golden("analyze_nonpure.tsv", &["analyze", "corpus/nonpure.poset"], 1);
}

#[test]
fn classify() {
    golden("classify_type2.tsv", &["classify", "corpus/type2_l1_m1_n1.poset"], 0);
    golden("classify_type3.json", &["classify", "corpus/type3_l1_m2_n1.poset", "--format", "json"], 0);
    golden("classify_segre2.tsv", &["classify", "corpus/segre2_m2.poset"], 1);
    golden("classify_polyext.tsv", &["classify", "corpus/polyext.poset"], 1);
}

#[test]
fn conic() {
    golden("conic_worked_example.tsv", &["conic", "corpus/worked_example.poset"], 0);
    golden("conic_type4.json", &["conic", "corpus/type4_m1_n1.poset", "--format", "json"], 0);
}

#[test]
fn mcm_region() {
    golden("mcm_region_type1.tsv", &["mcm-region", "corpus/type1_m0_n1.poset", "--figure-basis"], 0);
    golden("mcm_region_type5.tsv", &["mcm-region", "corpus/type5_n1.poset", "--figure-basis", "--box", "-5,5,-5,5"], 0);
    golden("mcm_region_z1_example.tsv", &["mcm-region", "corpus/z1_example.cone", "--box", "-6,6"], 0);
}

#[test]
fn nccr_verify_and_replay() {
    golden("nccr_verify_type5.tsv", &["nccr", "verify", "corpus/type5_n0.poset"], 0);
    golden("nccr_verify_segre2.json", &["nccr", "verify", "corpus/segre2_m1.poset", "--format", "json"], 0);
    golden("nccr_verify_nonpure.tsv", &["nccr", "verify", "corpus/nonpure.poset"], 1);
    golden("nccr_verify_polyext.tsv", &["nccr", "verify", "corpus/polyext.poset"], 1);

    let dir = tempfile::tempdir().expect("temp dir");
    let cert = dir.path().join("cert.jsonl");
    let cert_arg = cert.to_str().expect("utf-8 path");
    let out = hibi(&["nccr", "verify", "corpus/type1_m1_n1.poset", "--certificate", cert_arg]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&cert).expect("certificate written");
    assert!(text.lines().count() > 0);
    golden("nccr_replay_type1.tsv", &["nccr", "replay", "corpus/type1_m1_n1.poset", cert_arg], 0);

    // A certificate for one poset does not prove anything about another.
    let out = hibi(&["nccr", "replay", "corpus/type1_m2_n3.poset", cert_arg]);
    assert_eq!(out.status.code(), Some(1));

    // Truncating the certificate is detected.
    let first: String = text.lines().take(1).map(|l| format!("{l}\n")).collect();
    std::fs::write(&cert, first).unwrap();
    let out = hibi(&["nccr", "replay", "corpus/type1_m1_n1.poset", cert_arg]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate() {
    golden("generate_type1.poset", &["generate", "--type", "I", "--m", "0", "--n", "1"], 0);
    golden("generate_type3.poset", &["generate", "--type", "III", "--l", "1", "--m", "2", "--n", "1"], 0);
    let out = hibi(&["generate", "--type", "III", "--l", "0", "--m", "1", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generated_files_match_the_corpus() {
    for (file, args) in [
        ("type1_m2_n3.poset", vec!["--type", "I", "--m", "2", "--n", "3"]),
        ("type4_m2_n3.poset", vec!["--type", "IV", "--m", "2", "--n", "3"]),
        ("type5_n2.poset", vec!["--type", "V", "--n", "2"]),
    ] {
        let mut full = vec!["generate"];
        full.extend(args);
        let out = hibi(&full);
        assert!(out.status.success());
        let corpus = std::fs::read_to_string(workspace_root().join("corpus").join(file)).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), corpus, "{file}");
    }
}

#[test]
fn rank_one() {
    golden("z1_analyze_z1_example.tsv", &["z1", "analyze", "corpus/z1_example.cone"], 0);
    golden("z1_analyze_segre2.json", &["z1", "analyze", "corpus/segre2_m2.poset", "--format", "json"], 0);
    golden("z1_exchange_graph_z1_example.dot", &["z1", "exchange-graph", "corpus/z1_example.cone", "--generators-only"], 0);
    golden("z1_exchange_graph_radius.dot", &["z1", "exchange-graph", "corpus/z1_example.cone", "--radius", "2"], 0);
    golden("z1_exchange_graph_segre2.dot", &["z1", "exchange-graph", "corpus/segre2_m3.poset", "--generators-only"], 1);
    golden("z1_mutate_low.tsv", &["z1", "mutate", "corpus/z1_example.cone", "--window-lo", "0", "--end", "low"], 0);
    golden("z1_mutate_high.tsv", &["z1", "mutate", "corpus/z1_example.cone", "--window-lo", "-3", "--end", "high"], 0);
}

#[test]
fn usage_and_input_errors_exit_2() {
    for args in [
        vec!["analyze", "corpus/does_not_exist.poset"],
        vec!["analyze", "corpus/worked_example.poset", "--tree", "x1"],
        vec!["analyze", "corpus/worked_example.poset", "--tree", "e1,e2"],
        vec!["analyze", "corpus/z1_example.cone", "--tree", "e1"],
        vec!["mcm-region", "corpus/worked_example.poset", "--box", "1,2,3"],
        vec!["z1", "analyze", "corpus/worked_example.poset"],
        vec!["frobnicate"],
    ] {
        let out = hibi(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}: expected a message on stderr");
    }
}
