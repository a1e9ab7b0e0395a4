use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pi_lowerbound::instance::{HardInstance, InstanceParams};
use pi_lowerbound::mdp::MdpJson;

fn bin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pi-lowerbound"))
        .args(args)
        .env("PI_LOWERBOUND_OUT_DIR", dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field(line: &str, key: &str) -> String {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")).map(str::to_string))
        .unwrap_or_else(|| panic!("no {key} in {line:?}"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_writes_instance_and_names() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("inst2.json");
    let o = bin(dir.path(), &["generate", "--n", "2", "--out", s(&out), "--dot", s(&dir.path().join("g.dot"))]);
    assert!(o.status.success(), "{o:?}");

    let json: MdpJson = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json.n_states, 18);
    let (mdp, init) = json.into_unchecked().unwrap();
    assert!(mdp.validate().is_ok());
    let h = HardInstance::build(InstanceParams::new(2).unwrap()).unwrap();
    assert_eq!(mdp, h.mdp);
    assert_eq!(init.unwrap(), h.initial_policy().choices());

    let names: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("inst2.names.json")).unwrap()).unwrap();
    assert_eq!(names["params"]["n"], 2);
    assert_eq!(names["state_names"]["0"], "d0");
    assert_eq!(names["state_names"]["17"], "c3");
    assert!(fs::read_to_string(dir.path().join("g.dot")).unwrap().starts_with("digraph"));
}

#[test]
fn generate_defaults_to_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bin(dir.path(), &["generate", "--n", "1"]).status.success());
    assert!(dir.path().join("instance-n1.json").exists());
}

#[test]
fn usage_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bin(dir.path(), &["generate", "--n", "0"]).status.code(), Some(2));
    assert_eq!(bin(dir.path(), &["run"]).status.code(), Some(2));
    assert_eq!(bin(dir.path(), &["run", "--n", "1", "--instance", "x.json"]).status.code(), Some(2));
    let o = bin(dir.path(), &["generate", "--n", "1", "--out", "/nonexistent/dir/x.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn run_summary_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(dir.path(), &["run", "--n", "1", "--criterion", "total"]);
    assert!(o.status.success());
    let line = stdout(&o);
    assert_eq!(field(&line, "n"), "1");
    assert_eq!(field(&line, "terminated"), "true");
    assert!(field(&line, "iterations").parse::<u64>().unwrap() >= 2);
    assert!(dir.path().join("trace-n1-total.jsonl").exists());

    let o = bin(dir.path(), &["run", "--n", "2", "--max-iterations", "1"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(field(&stdout(&o), "terminated"), "false");
}

#[test]
fn criteria_give_equal_counts() {
    let dir = tempfile::tempdir().unwrap();
    let t = bin(dir.path(), &["run", "--n", "3", "--criterion", "total"]);
    let a = bin(dir.path(), &["run", "--n", "3", "--criterion", "average", "--record-values"]);
    assert!(t.status.success() && a.status.success());
    assert_eq!(field(&stdout(&t), "iterations"), field(&stdout(&a), "iterations"));
    let trace = fs::read_to_string(dir.path().join("trace-n3-average.jsonl")).unwrap();
    assert!(trace.lines().next().unwrap().contains("\"gain\":{\"0\":\"0\""));
}

#[test]
fn traces_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    for p in [&a, &b] {
        assert!(bin(dir.path(), &["run", "--n", "3", "--record-values", "--trace", s(p)]).status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn verify_fresh_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.jsonl");
    let report = dir.path().join("r.json");
    assert!(bin(dir.path(), &["run", "--n", "2", "--trace", s(&trace)]).status.success());
    let o = bin(dir.path(), &["verify", "--n", "2", "--trace", s(&trace), "--report", s(&report)]);
    assert!(o.status.success(), "{}", stdout(&o));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["n"], 2);
    assert_eq!(r["iterations"], 27);
    assert_eq!(r["milestones"].as_array().unwrap().len(), 4);
    assert_eq!(r["milestones"][1], serde_json::json!([7, 1]));
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_tier2_has_no_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    for n in ["1", "2", "3"] {
        let report = dir.path().join(format!("r{n}.json"));
        let o = bin(dir.path(), &["verify", "--n", n, "--tier", "2", "--cross-check", "--report", s(&report)]);
        assert!(o.status.success(), "{}", stdout(&o));
        let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
        let phase = r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == "phase_oracle")
            .unwrap();
        assert_eq!(phase["pass"], true);
        assert!(phase.get("mismatches").is_none());
    }
}

#[test]
fn verify_rejects_corrupted_traces() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.jsonl");
    assert!(bin(dir.path(), &["run", "--n", "2", "--trace", s(&trace)]).status.success());
    let text = fs::read_to_string(&trace).unwrap();
    let lines: Vec<&str> = text.lines().collect();

    // cut the run short: the trace is still consistent but incomplete
    let short = dir.path().join("short.jsonl");
    fs::write(&short, lines[..10].join("\n")).unwrap();
    let o = bin(dir.path(), &["verify", "--n", "2", "--trace", s(&short)]);
    assert_eq!(o.status.code(), Some(5));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("milestones_complete") && l.contains("FAIL")), "{out}");

    // rewrite the first switch so the replay no longer fits the instance
    let bad = dir.path().join("bad.jsonl");
    let mut edited: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
    edited[0] = edited[0].replacen("\"from\":", "\"from\":9", 1);
    fs::write(&bad, edited.join("\n")).unwrap();
    let o = bin(dir.path(), &["verify", "--n", "2", "--trace", s(&bad)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    // a trace checked against the wrong instance
    let o = bin(dir.path(), &["verify", "--n", "3", "--trace", s(&trace)]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn run_and_verify_from_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("i.json");
    assert!(bin(dir.path(), &["generate", "--n", "2", "--out", s(&inst)]).status.success());
    let o = bin(dir.path(), &["run", "--instance", s(&inst)]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "n"), "2");
    assert_eq!(field(&stdout(&o), "iterations"), "27");
    assert!(bin(dir.path(), &["verify", "--instance", s(&inst)]).status.success());
}

#[test]
fn arbitrary_and_invalid_instances() {
    let dir = tempfile::tempdir().unwrap();
    let ok = dir.path().join("ok.json");
    fs::write(
        &ok,
        r#"{"n_states": 2, "actions": [
            [{"reward": "1", "transitions": [[1, "1"]]}, {"reward": "5/2", "transitions": [[1, "1"]]}],
            [{"reward": "0", "transitions": [[1, "1"]]}]]}"#,
    )
    .unwrap();
    let o = bin(dir.path(), &["run", "--instance", s(&ok), "--record-values"]);
    assert!(o.status.success(), "{o:?}");
    assert_eq!(field(&stdout(&o), "n"), "-");
    assert_eq!(field(&stdout(&o), "iterations"), "1");
    let trace = fs::read_to_string(dir.path().join("trace-n--total.jsonl")).unwrap();
    assert!(trace.lines().last().unwrap().contains("\"0\":\"5/2\""));
    // verify only applies to the lower-bound family
    assert_eq!(bin(dir.path(), &["verify", "--instance", s(&ok)]).status.code(), Some(3));

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"n_states": 1, "actions": [[{"reward": "0", "transitions": [[0, "1/2"], [0, "1/3"]]}]]}"#,
    )
    .unwrap();
    let o = bin(dir.path(), &["run", "--instance", s(&bad)]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("listed twice") || err.contains("5/6"), "{err}");

    // a recurrent cycle with reward has no total value; the failing state is named
    let cyc = dir.path().join("cyc.json");
    fs::write(
        &cyc,
        r#"{"n_states": 1, "actions": [[{"reward": "1", "transitions": [[0, "1"]]}]]}"#,
    )
    .unwrap();
    let o = bin(dir.path(), &["run", "--instance", s(&cyc)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("state 0"));
}

#[test]
fn bench_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(dir.path(), &["bench", "--n", "1..6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,iterations,pow2n,ratio,wall_ms"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 6);
    for (k, row) in rows.iter().enumerate() {
        let n = k as u32 + 1;
        assert_eq!(row[0], n.to_string());
        assert!(row[1].parse::<u64>().unwrap() >= 1 << n);
        assert_eq!(row[2], (1u64 << n).to_string());
    }
    assert_eq!(rows[0][3], "9/2");

    let o = bin(dir.path(), &["bench", "--n", "1..1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    for key in ["n", "iterations", "pow2n", "ratio", "wall_ms"] {
        assert!(arr[0].get(key).is_some(), "missing {key}");
    }
    assert_eq!(bin(dir.path(), &["bench", "--n", "3..1"]).status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "criterion = \"average\"\ntie_mode = \"strict\"\nrecord_values = true\n").unwrap();
    let o = bin(dir.path(), &["--config", s(&cfg), "run", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "criterion"), "average");
    let trace = fs::read_to_string(dir.path().join("trace-n1-average.jsonl")).unwrap();
    assert!(trace.contains("\"gain\""));

    fs::write(&cfg, "unknown = 1\n").unwrap();
    assert_eq!(bin(dir.path(), &["--config", s(&cfg), "run", "--n", "1"]).status.code(), Some(3));
}
