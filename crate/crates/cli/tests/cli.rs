use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn reversal(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reversal")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn zposet_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = reversal(d, &["gen", "--family", "zposet", "--t", "9", "--k", "4", "-o", "z.poset", "--extensions", "l"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(fs::read_to_string(d.join("z.poset")).unwrap().starts_with("# zposet t=9 k=4\n"));
    assert_eq!(stdout(&reversal(d, &["inc", "z.poset"])), "90\n");
    assert_eq!(stdout(&reversal(d, &["dist", "z.poset", "l1.linext", "l2.linext"])), "72\n");
    assert_eq!(stdout(&reversal(d, &["width", "z.poset"])).lines().next(), Some("3"));
}

#[test]
fn heuristic_led_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    reversal(d, &["gen", "--family", "zposet", "--t", "9", "--k", "4", "-o", "z.poset"]);
    let a = reversal(d, &["led", "z.poset", "--mode", "heuristic", "--seed", "1"]);
    let b = reversal(d, &["led", "z.poset", "--mode", "heuristic", "--seed", "1", "--threads", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["seed"], 1);
    assert_eq!(report["params"]["version"], env!("CARGO_PKG_VERSION"));
    let keys: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["name", "params", "seed", "values", "bounds", "hard_pass", "notes"]);
}

#[test]
fn exact_ratio_and_witness_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    reversal(d, &["gen", "--family", "boolean", "--d", "3", "-o", "q3.poset"]);
    let o = reversal(d, &["rr", "q3.poset", "--mode", "exact", "--witness", "w"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["values"]["ratio"], "8/9");
    assert_eq!(stdout(&reversal(d, &["dist", "q3.poset", "w1.linext", "w2.linext"])), "8\n");
    assert_eq!(stdout(&reversal(d, &["count-linext", "q3.poset"])), "48\n");
    let nb = stdout(&reversal(d, &["neighbors", "q3.poset", "w1.linext"]));
    assert_eq!(nb.matches("linext 8").count(), 3);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("cycle.poset"), "poset 3\nrel 0 1\nrel 1 2\nrel 2 0\n").unwrap();
    let o = reversal(d, &["inc", "cycle.poset"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cycle"), "{}", stderr(&o));

    fs::write(d.join("bad.poset"), "poset 3\nrel 0 1\nrel 0 x\n").unwrap();
    let o = reversal(d, &["inc", "bad.poset"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    fs::write(d.join("chain.poset"), "poset 2\nrel 0 1\n").unwrap();
    fs::write(d.join("rev.linext"), "linext 2\n1 0\n").unwrap();
    let o = reversal(d, &["dist", "chain.poset", "rev.linext", "rev.linext"]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(reversal(d, &["inc", "--no-such-flag", "chain.poset"]).status.code(), Some(2));
    assert_eq!(reversal(d, &["gen", "--family", "grid", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn graphs_and_expansion() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = reversal(d, &["sample-bipartite", "--k", "9", "--r", "1", "--seed", "4", "-o", "g.bip"]);
    assert!(o.status.success());
    assert!(fs::read_to_string(d.join("g.bip")).unwrap().contains("# seed 4"));
    let o = reversal(d, &["check-doubling", "g.bip"]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["values"]["outcome"], "violated");

    fs::write(d.join("c5.graph"), "graph 5\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 0\n").unwrap();
    let o = reversal(d, &["double-cover", "c5.graph"]);
    assert!(stdout(&o).contains("bipartite 5 2"));
    let o = reversal(d, &["check-expansion", "c5.graph", "--alpha", "0.2", "--rho", "2"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["values"]["outcome"], "holds");
}

#[test]
fn quotient_of_layered_poset() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = reversal(d, &["gen", "--family", "expander", "--k", "9", "--eps", "1.0", "--r", "3", "--seed", "7", "-o", "p.poset"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(d.join("p.poset")).unwrap();
    assert!(text.contains("# seed 7"));
    let order: Vec<String> = (0..18).map(|x| x.to_string()).collect();
    fs::write(d.join("id.linext"), format!("linext 18\n{}\n", order.join(" "))).unwrap();
    let o = reversal(d, &["quotient", "p.poset", "id.linext", "--k", "9"]);
    assert_eq!(stdout(&o), format!("linext 18\n{}\n", order.join(" ")));
}

#[test]
fn experiments_report_and_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        &["experiment", "qd", "--d", "3"][..],
        &["experiment", "ztk", "--t", "4", "--k", "3"],
        &["experiment", "wstack", "--k", "1"],
        &["experiment", "drr", "--n", "2", "--d", "3"],
        &["experiment", "prop2", "--k", "30"],
        &["experiment", "prop3", "--k", "30", "--samples", "20"],
        &["experiment", "corollary", "--k", "30", "--r", "10"],
        &["experiment", "lemma1", "--k", "9", "--k", "15", "--r", "3", "--samples", "20"],
    ] {
        let o = reversal(d, args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(report["hard_pass"], true, "{args:?}");
    }
    let o = reversal(d, &["experiment", "figure1", "--step", "0.01", "--csv", "f.csv", "--svg", "f.svg"]);
    assert!(o.status.success());
    let csv = fs::read_to_string(d.join("f.csv")).unwrap();
    assert!(csv.starts_with("alpha,value\n"));
    assert!(fs::read_to_string(d.join("f.svg")).unwrap().starts_with("<svg"));
}
