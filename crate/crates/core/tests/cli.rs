use std::process::{Command, Output};

fn posicat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posicat"))
        .args(args)
        .env("POSICAT_JOBS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn compute_catalan_prints_an_integer() {
    let o = posicat(&["compute", "--perm", "cycle:(0,3,2,5,1,4)", "--what", "catalan"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2");
}

#[test]
fn compute_variants() {
    let fig = "window:3,6,4,5,7,8,9";
    let cases = [
        ("fset", "1,1;2,3"),
        ("catalan", "3"),
        ("nu", "nu: 0\nnu_bar: 0"),
    ];
    for (what, expected) in cases {
        let o = posicat(&["compute", "--perm", fig, "--what", what]);
        assert!(o.status.success(), "{what}");
        assert_eq!(stdout(&o), expected, "{what}");
    }
    let o = posicat(&["compute", "--perm", "window:2,3,4,5,6", "--what", "rtilde"]);
    assert_eq!(stdout(&o), "q^2 + 1");
    let o = posicat(&["compute", "--perm", fig, "--what", "inversions"]);
    assert_eq!(stdout(&o), "(1, 2)\n(1, 3)");
    let o = posicat(&["compute", "--perm", "cycle:(1,4,6,2,5,7,3)", "--one-based", "--what", "catalan"]);
    assert_eq!(stdout(&o), "3");
}

#[test]
fn compute_json_and_trace() {
    let o = posicat(&["compute", "--perm", "window:1,2", "--what", "rpoly", "--trace", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], serde_json::json!([-1, 1]));
    let trace = String::from_utf8_lossy(&o.stderr);
    let rules: Vec<String> = trace
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["rule"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(rules.first().map(String::as_str), Some("simple_factor"));
    assert_eq!(rules.last().map(String::as_str), Some("base"));
}

#[test]
fn dyck_counts_and_lists() {
    let o = posicat(&["dyck", "--k", "3", "--n", "7", "--forbid", "1,1;2,3", "--coords", "rect"]);
    assert_eq!(stdout(&o), "3");
    let o = posicat(&["dyck", "--k", "3", "--n", "7", "--forbid", "1,2;2,5", "--coords", "sheared", "--list"]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn synthesize_round_trips() {
    let o = posicat(&["synthesize", "--k", "3", "--n", "7", "--forbid", "1,1;2,3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let window: Vec<String> = v["perm"]["window"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let perm = format!("window:{}", window.join(","));
    let o = posicat(&["compute", "--perm", &perm, "--what", "fset"]);
    assert_eq!(stdout(&o), "1,1;2,3");
}

#[test]
fn enumerate_formats() {
    let o = posicat(&["enumerate", "--n", "5", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 24);
    let o = posicat(&["enumerate", "--n", "5", "--k", "2", "--repetition-free", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,k,window,ell,repetition_free,catalan,fset,nu_bar"));
    assert!(lines.all(|l| l.starts_with("5,2,") && l.contains(",true,")));
}

#[test]
fn verify_main_exits_zero() {
    let o = posicat(&["verify", "--suite", "main", "--n-max", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "main");
    assert_eq!(v["checked"], 873);
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["compute", "--perm", "window:1,3", "--what", "catalan"][..],
        &["compute", "--perm", "window:1,2,3", "--what", "bogus"],
        &["dyck", "--k", "5", "--n", "3"],
        &["synthesize", "--k", "3", "--n", "7", "--forbid", "1,1"],
        &["verify", "--suite", "main", "--n-max", "1"],
        &["frobnicate"],
    ] {
        let o = posicat(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}
