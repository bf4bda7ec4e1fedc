use std::fs;
use std::process::{Command, Output};

fn numsg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numsg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn enumerate_genus_four() {
    let o = numsg(&["enumerate", "--genus", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "g=4 N=7\n");
}

#[test]
fn enumerate_range() {
    let o = numsg(&["enumerate", "--gmax", "7", "--threads", "2"]);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    let want: Vec<String> = [1, 1, 2, 4, 7, 12, 23, 39]
        .iter()
        .enumerate()
        .map(|(g, n)| format!("g={g} N={n}"))
        .collect();
    assert_eq!(lines, want);
}

#[test]
fn exit_codes() {
    assert_eq!(numsg(&["--bogus"]).status.code(), Some(2));
    assert_eq!(numsg(&[]).status.code(), Some(2));
    assert_eq!(numsg(&["enumerate"]).status.code(), Some(2));
    assert_eq!(numsg(&["verify", "--suite", "t2-equality", "--gmax", "12"]).status.code(), Some(0));
    assert_eq!(numsg(&["--version"]).status.code(), Some(0));
    let o = numsg(&["zhai", "--k", "99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn failing_suite_exits_one_with_counterexample() {
    // the fixed tolerances of the membership suite do not hold at g = 30
    let o = numsg(&["verify", "--suite", "membership", "--gmax", "30"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("FAIL membership gmax=30: g=30: n=16:"), "{out}");
}

#[test]
fn threads_do_not_change_the_aggregate() {
    for g in ["0", "9", "16"] {
        let a = numsg(&["enumerate", "--genus", g, "--json", "--threads", "1"]);
        let b = numsg(&["enumerate", "--genus", g, "--json", "--threads", "8"]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "g={g}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["genus"], g);
    }
}

#[test]
fn band_figure_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let o = numsg(&["figures", "--figure", "1", "--gmax", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('#'));
    assert_eq!(lines.next(), Some("g,epsilon,proportion"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 12);
    for g in 1..=4 {
        assert_eq!(rows.iter().filter(|r| r[0] == g.to_string()).count(), 3);
    }
    for r in &rows {
        let p: f64 = r[2].parse().unwrap();
        assert!((0.0..=1.0).contains(&p));
    }
}

#[test]
fn weight_figure_uses_custom_epsilons() {
    let o = numsg(&["figures", "--figure", "3", "--gmin", "5", "--gmax", "6", "--eps", "0.05,0.5"]);
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().contains("epsilon*g^2"));
    let eps: Vec<&str> = text.lines().skip(2).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(eps, ["0.05", "0.5", "0.05", "0.5"]);
}

#[test]
fn mean_figure_parts_add_up() {
    let o = numsg(&["figures", "--figure", "4", "--gmax", "10"]);
    let text = stdout(&o);
    let mut lines = text.lines().skip(1);
    assert_eq!(lines.next(), Some("g,mean_total,mean_part1,mean_part2"));
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((v[1] - v[2] - v[3]).abs() < 1e-10, "{line}");
        if v[0] == 4.0 {
            assert_eq!(line.split(',').nth(1), Some("0.785714285714"));
        }
    }
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = numsg(&["enumerate", "--genus", "6", "--json", "--cache-dir", d]);
    let file = dir.path().join("genus-006.json");
    assert!(file.exists());
    let second = numsg(&["enumerate", "--genus", "6", "--json", "--cache-dir", d]);
    assert_eq!(first.stdout, second.stdout);
    assert!(stderr(&second).is_empty());

    let text = fs::read_to_string(&file).unwrap();
    fs::write(&file, text.replacen("\"count\":\"23\"", "\"count\":\"99\"", 1)).unwrap();
    let third = numsg(&["enumerate", "--genus", "6", "--cache-dir", d]);
    assert_eq!(stdout(&third), "g=6 N=23\n");
    assert!(stderr(&third).contains("corrupt"), "{}", stderr(&third));
    assert!(dir.path().join("genus-006.json.corrupt-0").exists());
    assert_eq!(field(&fs::read_to_string(&file).unwrap(), "count"), "23");
}

fn field(text: &str, key: &str) -> String {
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    v[key].as_str().unwrap().to_string()
}

#[test]
fn stats_json() {
    let o = numsg(&["stats", "--genus", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], "7");
    assert_eq!(v["values"]["E[e]/g"]["exact"], "11/14");
    assert_eq!(numsg(&["stats", "--genus", "0"]).status.code(), Some(2));
}

#[test]
fn count_values_and_polynomials() {
    let o = numsg(&["count", "--mode", "multiplicity", "--deficit", "1", "--genus", "10", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "g=10 m=g-1 count=29\nenumerated=29\n");

    let o = numsg(&["count", "--mode", "embedding", "--deficit", "3"]);
    assert!(stdout(&o).contains("t^2/2 - 3t/2 + 2"), "{}", stdout(&o));

    let o = numsg(&["count", "--mode", "embedding", "--deficit", "2", "--genus", "13", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "14");
    assert_eq!(v["proved_range"], true);
}

#[test]
fn zhai_partial_sums() {
    let o = numsg(&["zhai", "--k", "2"]);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "K=0 partial_sum=0.723606797750");
}

#[test]
fn membership_probabilities() {
    let o = numsg(&["prob", "--genus", "10", "--n", "1,20", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["membership"][0]["probability"], "0");
    assert_eq!(v["membership"][1]["f1"], "1.000000000000");
    let o = numsg(&["prob", "--genus", "10", "--pair", "2,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("tracked pairs"));
}
