use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_helly-piercer"))
        .args(args)
        .env_remove("HELLY_PIERCER_CAP")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

const DISJOINT: &str = r#"{"kind": "family", "dim": 1, "boxes": [[["0", "1"]], [["2", "3"]], [["4", "5"]]]}"#;

#[test]
fn lowerbound_pipeline() {
    let g = run(&["gen", "--kind", "lowerbound2", "--params", "d=2"], None);
    assert_eq!(g.status.code(), Some(0));
    let r = run(&["colorful", "--n", "2"], Some(&stdout(&g)));
    assert_eq!(r.status.code(), Some(0));
    let v = json(&r);
    assert_eq!(v["result"]["report"]["premise_holds"], true);
    assert_eq!(v["result"]["report"]["conclusion_holds"], false);
    assert_eq!(v["result"]["report"]["conclusion_certificate"], Value::Null);
    assert_eq!(v["params"]["n"], 2);
    assert_eq!(v["tool"]["name"], "helly-piercer");
}

#[test]
fn printed_coordinates_break_the_premise() {
    let g = run(&["gen", "--kind", "lowerbound2", "--params", "d=2,coordinates=printed"], None);
    let v = json(&run(&["colorful", "--n", "2"], Some(&stdout(&g))));
    assert_eq!(v["result"]["report"]["premise_holds"], false);
    assert!(v["result"]["report"]["premise_violation"].is_array());
}

#[test]
fn pierce_disjoint_intervals() {
    let r = run(&["pierce", "--n", "2"], Some(DISJOINT));
    assert_eq!(r.status.code(), Some(0));
    let v = json(&r);
    let c = &v["result"]["certificate"];
    assert_eq!(c["verdict"], "not-pierceable");
    assert_eq!(c["violation"], serde_json::json!([0, 1, 2]));
    assert_eq!(c["witness"], Value::Null);

    let v = json(&run(&["pierce", "--n", "3"], Some(DISJOINT)));
    assert_eq!(v["result"]["certificate"]["verdict"], "pierceable");
    assert_eq!(v["result"]["certificate"]["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn helly_and_fraction_reports() {
    let g = stdout(&run(&["gen", "--kind", "interval-tight", "--params", "n=3"], None));
    let v = json(&run(&["helly", "--h", "3", "--n", "3"], Some(&g)));
    assert_eq!(v["result"]["report"]["premise_holds"], true);
    assert_eq!(v["result"]["report"]["conclusion_holds"], false);

    let v = json(&run(&["fraction", "--t", "2", "--n", "1", "--beta"], Some(DISJOINT)));
    assert_eq!(v["result"]["fraction"], "0/1");
    assert_eq!(v["result"]["total"], 3);
    assert_eq!(v["result"]["max_pierceable_subfamily"]["beta"], "1/3");
}

#[test]
fn witness_tables_single_and_all() {
    let g = stdout(&run(&["gen", "--kind", "lowerbound2", "--params", "d=2"], None));
    let v = json(&run(&["witness-tables", "--tuple", "1,1,0,0,1"], Some(&g)));
    assert_eq!(v["result"]["reading"], "axis-consistent");
    assert_eq!(v["result"]["x"].as_array().unwrap().len(), 2);
    let v = json(&run(&["witness-tables", "--all"], Some(&g)));
    assert_eq!(v["result"]["tuples"], 243);
    assert_eq!(v["result"]["failures"], 0);
}

#[test]
fn cluster_commands_are_deterministic() {
    let g1 = run(&["gen", "--kind", "cluster", "--params", "d=2,n=2,m=60", "--seed", "9"], None);
    let g2 = run(&["gen", "--kind", "cluster", "--params", "d=2,n=2,m=60", "--seed", "9"], None);
    assert_eq!(g1.stdout, g2.stdout);
    let doc = stdout(&g1);

    let c1 = run(&["calibrate", "--samples", "200", "--seed", "1"], Some(&doc));
    assert_eq!(c1.status.code(), Some(0));
    assert_eq!(c1.stdout, run(&["calibrate", "--samples", "200", "--seed", "1"], Some(&doc)).stdout);

    let args = ["cluster-test", "--gamma", "1/2", "--seed", "5"];
    let t1 = run(&args, Some(&doc));
    let t2 = run(&args, Some(&doc));
    assert_eq!(t1.status.code(), Some(0));
    assert_eq!(t1.stdout, t2.stdout);
    assert_eq!(json(&t1)["result"]["verdict"], "accept");
}

#[test]
fn far_instance_is_rejected_with_witness() {
    let doc = stdout(&run(
        &["gen", "--kind", "cluster", "--params", "type=far,d=1,n=2,m=90,epsilon=1/5", "--seed", "2"],
        None,
    ));
    let v = json(&run(&["cluster-test", "--gamma", "1/5", "--delta", "1/100", "--seed", "0"], Some(&doc)));
    assert_eq!(v["result"]["verdict"], "reject");
    assert_eq!(v["result"]["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn render_writes_svg() {
    let g = stdout(&run(&["gen", "--kind", "lowerbound2", "--params", "d=2"], None));
    let dir = std::env::temp_dir().join(format!("helly-piercer-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("lb.svg");
    let r = run(&["render", "--out", out.to_str().unwrap(), "--tables-tuple", "0,0,0,0,0", "--mark", "0,0"], Some(&g));
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches("<g id=\"class-").count(), 5);
    assert_eq!(svg.matches("<path ").count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"], None).status.code(), Some(0));
    assert_eq!(run(&["--version"], None).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(run(&["pierce"], Some(DISJOINT)).status.code(), Some(1));
    // Randomized commands need an explicit seed.
    assert_eq!(run(&["gen", "--kind", "cluster", "--params", "d=1,n=1,m=10"], None).status.code(), Some(1));
    assert_eq!(run(&["fraction", "--t", "2", "--n", "1", "--samples", "10"], Some(DISJOINT)).status.code(), Some(1));
    assert_eq!(run(&["cluster-test"], None).status.code(), Some(1));

    let bad = run(&["pierce", "--n", "1"], Some(r#"{"kind": "family", "dim": 1, "boxes": [[["2", "1"]]]}"#));
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 1"));
    assert_eq!(run(&["pierce", "--n", "1"], Some("not json")).status.code(), Some(2));
    assert_eq!(run(&["pierce", "--n", "1", "--input", "/nonexistent/x.json"], None).status.code(), Some(2));
    assert_eq!(run(&["colorful", "--n", "1"], Some(DISJOINT)).status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_3() {
    let g = stdout(&run(&["gen", "--kind", "lowerbound2", "--params", "d=2"], None));
    let o = Command::new(env!("CARGO_BIN_EXE_helly-piercer"))
        .args(["fraction", "--t", "6", "--n", "2"])
        .env("HELLY_PIERCER_CAP", "10")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(g.as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
}
