use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel-mb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn leading_value(o: &Output) -> f64 {
    stdout(o).split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn transform_closed_a1() {
    let o = run(&["transform", "--example", "a1", "--a", "1", "--q", "2", "--method", "closed"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0.1839397206"), "{}", stdout(&o));
    assert!(stdout(&o).contains("+-"));
}

#[test]
fn a6_oracle_matches_series() {
    let base = ["transform", "--example", "a6", "--a", "1", "--c", "1", "--q", "2", "--method"];
    let oracle = run(&[&base[..], &["oracle"]].concat());
    let series = run(&[&base[..], &["series"]].concat());
    assert_eq!(oracle.status.code(), Some(0));
    assert_eq!(series.status.code(), Some(0));
    assert!((leading_value(&oracle) - leading_value(&series)).abs() < 1e-6);
}

#[test]
fn usage_errors_exit_one() {
    let cases: [&[&str]; 5] = [
        &["transform", "--example", "a5", "--a", "2", "--c", "1", "--q", "1", "--method", "closed"],
        &["transform", "--example", "a9", "--a", "1", "--q", "1"],
        &["transform", "--example", "a2", "--a", "1", "--q", "1"],
        &["transform", "--example", "a1", "--a", "1", "--q", "1", "--method", "series"],
        &["transform", "--example", "a1", "--bogus"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = run(&["transform", "--example", "a5", "--a", "2", "--c", "1", "--q", "1", "--method", "closed"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("requires q > a"));
}

#[test]
fn compare_a1_all_agree() {
    let o = run(&["compare", "--example", "a1", "--a", "1", "--q-grid", "0.5,1,2,5,10"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    for r in rows {
        assert_eq!(r["agree"], serde_json::Value::Bool(true), "{r}");
    }
    assert_eq!(v["metadata"]["example"], "a1");
    assert!(v.get("timings_ms").is_none());
}

#[test]
fn empty_grid() {
    let o = run(&["sweep", "--example", "a1", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "q,method,value,error,agree\n");
    let o = run(&["compare", "--example", "a1", "--a", "1", "--q-grid", ""]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["rows"].as_array().unwrap().is_empty());
}

#[test]
fn sweep_csv_rows_and_failures() {
    let o = run(&["sweep", "--example", "a5", "--a", "2", "--c", "1", "--q-grid", "1,3"]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["q", "method", "value", "error", "agree"]);
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 6);
    let closed_low = rows.iter().find(|x| &x[0] == "1.0" && &x[1] == "closed").unwrap();
    assert!(closed_low[4].starts_with("error: "));
    assert!(closed_low[2].is_empty());
    for x in rows.iter().filter(|x| &x[0] == "3.0") {
        assert_eq!(&x[4], "true");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--example", "a6", "--a", "1", "--c", "1", "--q-grid", "0.5,2,5"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    let json = ["compare", "--example", "a3", "--a", "1", "--n", "1", "--q-grid", "1,2"];
    assert_eq!(run(&json).stdout, run(&json).stdout);
}

#[test]
fn check_growth_profiles() {
    let o = run(&["check-growth", "--example", "a1", "--a", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["admissible"], true);

    let o = run(&["check-growth", "--example", "a3", "--a", "1", "--n", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["admissible"], false);
    assert!((v["a_est"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 0.05);
    assert!(!v["warnings"].as_array().unwrap().is_empty());

    let o = run(&["check-growth", "--example", "a7", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("theorem2"));
    assert!(text.contains("a_est"));
}

#[test]
fn asymptotic_from_file() {
    // f(x) = exp(-x): f^(k)(0) = (-1)^k, so the odd series gives (1+q²)^{-3/2}
    let path = std::env::temp_dir().join(format!("hankel-mb-derivs-{}.txt", std::process::id()));
    let body: String = (0..16).map(|k| if k % 2 == 0 { "1\n" } else { "-1\n" }).collect();
    std::fs::write(&path, body).unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["asymptotic", "--file", p, "--q", "8", "--series", "odd", "--terms", "6", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let exact = 65f64.powf(-1.5);
    let value = v["value"].as_f64().unwrap();
    assert!((value - exact).abs() <= v["error_bound"].as_f64().unwrap() * 2.0, "{value} vs {exact}");

    std::fs::write(&path, "1\nnot-a-number\n").unwrap();
    let o = run(&["asymptotic", "--file", p, "--q", "8"]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn selftest_passes_and_negative_control_fails() {
    let o = run(&["selftest", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 11);

    let o = run(&["selftest", "--tolerance-scale", "1e-12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("[FAIL]"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("failing criteria"));
}
