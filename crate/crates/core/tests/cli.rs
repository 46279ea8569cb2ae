use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rearrange-lab"))
        .args(args)
        .env_remove("REARRANGE_LAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn ratio_of_spike_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let spike = write(
        dir.path(),
        "spike.json",
        r#"{"dim":2,"entries":[{"v":[5,-2],"value":0.7}]}"#,
    );
    let o = bin(&["ratio", "--enum", "wang", "--p", "inf", "--in", &spike]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("1.0"));
}

#[test]
fn exact_ratio_in_rational_mode() {
    let dir = tempfile::tempdir().unwrap();
    let plus = write(
        dir.path(),
        "plus.json",
        r#"{"dim":2,"mode":"rational","entries":[
            {"v":[0,0],"value":"1"},{"v":[1,0],"value":"1/2"},{"v":[-1,0],"value":"1/2"},
            {"v":[0,1],"value":"1/2"},{"v":[0,-1],"value":"1/2"}]}"#,
    );
    let o = bin(&["ratio", "--enum", "spiral", "--p", "2", "--in", &plus]);
    assert!(stdout(&o).contains("exact_power_ratio=9/8"));
}

#[test]
fn rearrange_round_trip_is_a_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.json",
        r#"{"dim":2,"mode":"rational","entries":[{"v":[4,4],"value":"3"},{"v":[0,9],"value":"2/3"},{"v":[1,9],"value":"2/3"}]}"#,
    );
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    for (input, output) in [(f.as_str(), &once), (once.to_str().unwrap(), &twice)] {
        let o = bin(&[
            "rearrange",
            "--enum",
            "wang",
            "--in",
            input,
            "--out",
            output.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let strip = |p: &Path| {
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("meta");
        v
    };
    assert_eq!(strip(&once), strip(&twice));
    assert!(std::fs::read_to_string(&once).unwrap().contains("\"2/3\""));
}

#[test]
fn malformed_input_exits_two_with_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"dim":2,"entries":[{"v":[0,0],"value":-1}]}"#,
    );
    let o = bin(&["ratio", "--p", "2", "--in", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("entries[0].value"));
    let broken = write(dir.path(), "broken.json", "{\"dim\":2,\n\"entries\":[");
    let o = bin(&["ratio", "--p", "2", "--in", &broken]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        bin(&["ratio", "--p", "abc", "--in", &bad]).status.code(),
        Some(2)
    );
}

#[test]
fn audit_prints_verdict_and_csv() {
    let o = bin(&["audit", "--check", "psi-length", "--n", "10000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let first = lines.next().unwrap();
    assert!(
        first.starts_with("max_len=") && first.ends_with("  PASS (<=4)"),
        "{first}"
    );
    assert!(lines.next().unwrap().starts_with("# rearrange-lab "));
    assert_eq!(
        lines.next(),
        Some("label_max,edges,max_len,argmax_i,argmax_j")
    );
    for check in [
        "psi-mult",
        "lemma41",
        "boundary",
        "spheres",
        "nested",
        "descendants",
        "corners",
    ] {
        let o = bin(&["audit", "--check", check, "--n", "300", "--enum", "wang"]);
        assert_eq!(o.status.code(), Some(0), "{check}: {}", stdout(&o));
        assert!(
            stdout(&o).lines().next().unwrap().contains("PASS"),
            "{check}"
        );
    }
}

#[test]
fn csv_outputs_are_lf_with_header() {
    let o = bin(&["ctree", "--graph", "z2", "--n", "10", "--format", "csv"]);
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows[0], "child,parent");
    assert_eq!(
        rows[1..],
        ["2,1", "3,1", "4,1", "5,1", "6,2", "7,2", "8,2", "9,3", "10,3"]
    );
    let dot = stdout(&bin(&["ctree", "--n", "5", "--format", "dot"]));
    assert!(dot.contains("graph comparison_tree {") && dot.contains("1 -- 5;"));
    let e = stdout(&bin(&["enumerate", "--kind", "spiral", "--n", "3"]));
    assert_eq!(
        e.lines().skip(1).collect::<Vec<_>>(),
        ["label,x,y", "1,0,0", "2,1,0", "3,1,1"]
    );
}

#[test]
fn search_is_reproducible_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let out = dir.path().join(name);
        let o = bin(&[
            "search",
            "--enum",
            "wang",
            "--p",
            "1.5",
            "--support",
            "4",
            "--budget",
            "20000",
            "--seed",
            "9",
            "--threads",
            threads,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
        (
            v["norm_ratio"].clone(),
            v["best"].clone(),
            v["trail"].clone(),
        )
    };
    assert_eq!(run("1", "a.json"), run("4", "b.json"));
    let env = Command::new(env!("CARGO_BIN_EXE_rearrange-lab"))
        .args(["search", "--p", "2", "--support", "3", "--budget", "100"])
        .env("REARRANGE_LAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
}

#[test]
fn sweep_and_dimcheck_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = bin(&[
        "sweep",
        "--ps",
        "1,2,inf",
        "--enums",
        "spiral,wang",
        "--budget",
        "4000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(out).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert!(rows[0].starts_with("# rearrange-lab "));
    assert_eq!(rows[1], "enum,p,lower_bound,theorem_upper");
    assert!(rows[2].starts_with("spiral,1,") && rows[2].ends_with(",16"));
    assert!(rows[7].starts_with("wang,inf,") && rows[7].ends_with(",1"));
    let o = bin(&["dimcheck", "--d", "3", "--seeds", "3", "--budget", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o)
            .lines()
            .filter(|l| l.starts_with("3,l1rand:"))
            .count(),
        3
    );
}
