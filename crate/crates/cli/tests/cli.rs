use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn mfq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfq"))
        .args(args)
        .env_remove("MFQ_JOBS")
        .output()
        .expect("run mfq")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_lines(o: &Output) -> Vec<Value> {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

const K33: &str = "6\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n";

#[test]
fn pentagon_purity_dim_depth() {
    let o = mfq(&["verify", "--family", "cycle:5", "--q", "1..3", "--checks", "purity,dim,depth", "--stable"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let reports = json_lines(&o);
    assert_eq!(reports.len(), 3);
    for (r, q) in reports.iter().zip(1..) {
        assert_eq!(r["q"], q);
        assert_eq!(r["agree"]["pure"], "agree");
        assert_eq!(r["agree"]["dim"], "agree");
        assert_eq!(r["agree"]["depth"], "agree");
        assert!(r.get("elapsed_ms").is_none());
    }
    assert_eq!(reports[2]["computed"]["pure"], false);
}

#[test]
fn path_all_checks_agree() {
    let o = mfq(&["verify", "--family", "path:4", "--stable"]);
    assert_eq!(code(&o), 0);
    let reports = json_lines(&o);
    assert_eq!(reports.len(), 4);
    for r in &reports {
        for v in r["agree"].as_object().unwrap().values() {
            assert!(v == "agree" || v == "no-claim", "{r}");
        }
    }
}

#[test]
fn raw_graph_with_false_expectation_disagrees() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k33.txt");
    let e = dir.path().join("expect.json");
    fs::write(&g, K33).unwrap();
    fs::write(&e, r#"{"shellable": true}"#).unwrap();
    let (g, e) = (g.to_str().unwrap(), e.to_str().unwrap());
    let o = mfq(&["verify", "--graph", g, "--q", "1", "--checks", "shelling", "--expect", e, "--stable"]);
    assert_eq!(code(&o), 1);
    let r = &json_lines(&o)[0];
    assert_eq!(r["whiskered"], false);
    assert_eq!(r["computed"]["shellable"]["status"], "not-shellable");
    // Without the override there is no prediction to contradict.
    let o = mfq(&["verify", "--graph", g, "--q", "1", "--checks", "shelling", "--stable"]);
    assert_eq!(code(&o), 0);
    // A cap of one facet leaves the search undecided.
    let o = mfq(&["verify", "--graph", g, "--q", "1", "--checks", "shelling", "--expect", e, "--cap", "1"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json_lines(&o)[0]["agree"]["shellable"], "indeterminate");
}

#[test]
fn whisker_flag_reads_the_base_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c4.txt");
    fs::write(&g, "4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let g = g.to_str().unwrap();
    let o = mfq(&["verify", "--graph", g, "--whisker", "--q", "2", "--checks", "dim", "--stable"]);
    assert_eq!(code(&o), 0);
    let r = &json_lines(&o)[0];
    assert_eq!((r["n"].as_u64(), r["computed"]["dim"].as_u64()), (Some(4), Some(4)));
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        vec!["verify", "--graph", "wc5", "--q", "9"],
        vec!["verify", "--graph", "wc5", "--q", "0"],
        vec!["verify", "--graph", "wc5", "--cap", "0"],
        vec!["verify", "--graph", "wc5", "--checks", "bogus"],
        vec!["verify", "--graph", "/nonexistent/graph.g6"],
        vec!["verify", "--family", "nope:3"],
        vec!["verify", "--graph", "wc5", "--order", "random"],
        vec!["verify"],
        vec!["oracle", "colon", "--graph", "wc3", "--matching", "x1x3x5"],
    ] {
        let o = mfq(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn size_limits_exit_with_three() {
    let o = mfq(&["oracle", "facets", "--family", "complete:11", "--q", "1"]);
    assert_eq!(code(&o), 3);
    let o = mfq(&["sweep", "--family", "all_connected", "--n", "9", "--q", "1", "--checks", "dim"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn output_is_identical_across_job_counts() {
    let run = |jobs: &str| {
        let o = mfq(&["sweep", "--family", "trees", "--n", "3..5", "--checks", "purity,dim,cm,colon", "--stable", "--jobs", jobs, "--format", "csv"]);
        assert_eq!(code(&o), 0);
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let text = String::from_utf8(one).unwrap();
    assert!(text.starts_with("graph,n,m,ell,nu,q,check,expected,computed,agree,elapsed_ms\n"));
}

#[test]
fn text_output_names_each_check() {
    let o = mfq(&["verify", "--graph", "wc4", "--q", "3", "--format", "text", "--stable"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("wc4 q=3 n=4"));
    for name in ["purity", "dim", "shelling", "cm", "depth", "colon", "sr", "facet-complement"] {
        assert!(text.lines().any(|l| l.trim_start().starts_with(name)), "{name}");
    }
}

#[test]
fn shellable_range_stays_within_the_bound() {
    let o = mfq(&["verify", "--graph", "wc6", "--q", "shellable", "--checks", "shelling", "--stable"]);
    assert_eq!(code(&o), 0);
    let reports = json_lines(&o);
    assert_eq!(reports.len(), 3);
    for r in reports {
        assert_eq!(r["computed"]["shellable"]["status"], "shellable");
    }
}

#[test]
fn colon_oracle_single_matching() {
    let o = mfq(&["oracle", "colon", "--graph", "wc3", "--matching", "x1x2"]);
    assert_eq!(code(&o), 0);
    let r = &json_lines(&o)[0];
    assert_eq!(r["agree"], true);
    assert_eq!(r["all_quadratic"], true);
    assert_eq!(r["matching"][0], "x1-x2");
}

#[test]
fn oracles_over_all_matchings_and_q() {
    let o = mfq(&["oracle", "even-conn", "--graph", "wc4", "--q", "1..2"]);
    assert_eq!(code(&o), 0);
    let reports = json_lines(&o);
    assert!(reports.iter().all(|r| r["agree"] == true && r["invalid_witnesses"].as_array().unwrap().is_empty()));
    assert!(reports.len() > 8);

    let o = mfq(&["oracle", "sr", "--family", "cycle:4", "--q", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_lines(&o)[0]["agree"], true);

    let o = mfq(&["oracle", "facets", "--graph", "wc5", "--q", "3"]);
    assert_eq!(code(&o), 0);
    let r = &json_lines(&o)[0];
    assert_eq!(r["structured"], r["brute_force"]);
}

#[test]
fn stdin_graph6() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_mfq"))
        .args(["verify", "--graph", "-", "--q", "1", "--checks", "dim,sr", "--stable"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    // graph6 for the triangle.
    child.stdin.take().unwrap().write_all(b"Bw\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    let r = &json_lines(&o)[0];
    assert_eq!(r["n"], 3);
    assert_eq!(r["agree"]["sr"], "agree");
}
