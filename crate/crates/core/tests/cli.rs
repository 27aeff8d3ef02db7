use std::io::Write;
use std::process::{Command, Output, Stdio};

use runspectrum::closedform::{r_closed, r_recursive, RunCountQuery};
use runspectrum::sequences::a045623;
use runspectrum::stochastic::seeded_bytes;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_runspectrum"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("single JSON document")
}

#[test]
fn table_rows_and_total() {
    let o = run(&["table", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(
        rows,
        ["i\tr_n(i)", "1\t12", "2\t5", "3\t2", "4\t1", "total\t20"]
    );

    let text = stdout(&run(&["table", "1"]));
    assert!(text.contains("1\t1\n") && text.contains("total\t1"));
}

#[test]
fn table_oracle_route_matches_formula() {
    let a = json(&run(&["--format", "json", "table", "12", "--oracle"]));
    let b = json(&run(&["--format", "json", "table", "12"]));
    assert_eq!(a["rows"], b["rows"]);
    assert_eq!(a["total"], b["total"]);
    assert_eq!(a["route"], "oracle");
}

#[test]
fn table_large_n_json_keeps_exact_digits() {
    let doc = json(&run(&["table", "1000", "--format", "json"]));
    assert_eq!(doc["schema"], "runspectrum/1");
    let row = &doc["rows"][16];
    assert_eq!(row["i"], 17);
    let expected = r_closed(RunCountQuery::new(1000, 17).unwrap());
    assert_eq!(expected, a045623(983).unwrap());
    assert_eq!(row["count"].as_str().unwrap(), expected.to_string());
    assert!(doc["total"]
        .as_str()
        .unwrap()
        .chars()
        .all(|c| c.is_ascii_digit()));
}

#[test]
fn per_string_matrix() {
    let text = stdout(&run(&["table", "4", "--per-string"]));
    assert!(text.contains("0000 0001 0010"));
    let doc = json(&run(&["table", "3", "--per-string", "--format", "json"]));
    let rows = doc["per_string"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[6]["string"], "110");
    assert_eq!(rows[6]["counts"], serde_json::json!(["0", "1", "0"]));
    assert_eq!(run(&["table", "17", "--per-string"]).status.code(), Some(2));
}

#[test]
fn csv_has_header() {
    let text = stdout(&run(&["table", "3", "--format", "csv"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,i,count"));
    assert_eq!(
        lines.collect::<Vec<_>>(),
        ["3,1,5", "3,2,2", "3,3,1", "3,total,8"]
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["table", "0"]).status.code(), Some(2));
    assert_eq!(run(&["table", "64", "--oracle"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "1"]).status.code(), Some(2));
    assert_eq!(run(&["bijection", "13", "1"]).status.code(), Some(2));
    assert_eq!(run(&["bijection", "4", "5"]).status.code(), Some(2));
    assert_eq!(
        run(&["sample", "4", "--samples", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["--threads", "0", "table", "3"]).status.code(),
        Some(2)
    );
    let o = run(&["verify", "1"]);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_reports_table_line() {
    let o = run(&["verify", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n=4: 12 5 2 1 OK"));
    let o = run(&["verify", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&run(&["verify", "6", "--format", "json"]));
    assert_eq!(doc["passed"], true);
}

#[test]
fn bijection_listings() {
    let text = stdout(&run(&["bijection", "4", "2"]));
    let rows: Vec<&str> = text.lines().filter(|l| l.contains("pos=")).collect();
    assert_eq!(rows.len(), 5);
    assert!(text.contains("1100 pos=1"));
    assert!(text.contains("1011 pos=3"));

    let text = stdout(&run(&["bijection", "4", "4"]));
    let rows: Vec<&str> = text.lines().filter(|l| l.contains("pos=")).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].ends_with("1111 pos=1"));

    let text = stdout(&run(&["bijection", "4", "1"]));
    assert_eq!(text.lines().filter(|l| l.contains("pos=")).count(), 12);
    let groups: Vec<&str> = text.lines().filter(|l| l.starts_with("p=")).collect();
    assert_eq!(groups, ["p=1", "p=2", "p=3"]);
}

#[test]
fn sample_is_deterministic_and_accurate() {
    let args = [
        "sample",
        "20",
        "--i",
        "3",
        "--samples",
        "1000000",
        "--seed",
        "42",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["exact_mean"], "5/8");
    assert!(doc["rel_error"].as_f64().unwrap() < 0.01);

    let doc = json(&run(&[
        "sample",
        "3",
        "--samples",
        "8",
        "--seed",
        "1",
        "--format",
        "json",
    ]));
    let mean = doc["empirical_mean"].as_f64().unwrap();
    assert!((0.0..=3.0).contains(&mean));

    let text = stdout(&run(&["sample", "4", "--samples", "100000", "--seed", "9"]));
    assert!(text.contains("exact_mean\t5/4"));
}

#[test]
fn analyze_inputs() {
    let o = run_stdin(&["analyze", "-"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bits=0 runs=0"));

    let doc = json(&run_stdin(&["analyze", "-", "--format", "json"], &[0xFF]));
    assert_eq!(doc["runs"], "1");
    assert_eq!(doc["rows"][7]["i"], 8);
    assert_eq!(doc["rows"][7]["count"], "1");

    assert_eq!(
        run(&["analyze", "/definitely/not/here"]).status.code(),
        Some(3)
    );
}

#[test]
fn analyze_lsb_order() {
    let msb = json(&run_stdin(
        &["analyze", "-", "--format", "json"],
        &[0b0000_0011],
    ));
    let lsb = json(&run_stdin(
        &["analyze", "-", "--bit-order", "lsb", "--format", "json"],
        &[0b1100_0000],
    ));
    assert_eq!(msb["rows"], lsb["rows"]);
}

#[test]
fn analyze_random_file_fraction_of_pairs() {
    let mut data = vec![0u8; 1 << 20];
    seeded_bytes(2024, &mut data);
    let path = std::env::temp_dir().join(format!("runspectrum-analyze-{}.bin", std::process::id()));
    std::fs::write(&path, &data).unwrap();
    let doc = json(&run(&[
        "analyze",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]));
    std::fs::remove_file(&path).ok();
    assert_eq!(doc["bits"], 8 << 20);
    let frac = doc["rows"][1]["observed_fraction"].as_f64().unwrap();
    assert!(
        (frac - 0.25).abs() < 0.01,
        "fraction of length-2 runs {frac}"
    );
    assert_eq!(doc["rows"][1]["reference"], "1/4");
}

#[test]
fn oeis_terms_and_check() {
    let text = stdout(&run(&["oeis", "--terms", "4"]));
    assert_eq!(
        text.lines().collect::<Vec<_>>(),
        [
            "j\tA045623\tA001792",
            "0\t1\t1",
            "1\t2\t3",
            "2\t5\t8",
            "3\t12\t20"
        ]
    );
    let doc = json(&run(&[
        "oeis",
        "--sequence",
        "A001792",
        "--terms",
        "3",
        "--format",
        "json",
    ]));
    assert_eq!(doc["A001792"], serde_json::json!(["1", "3", "8"]));
    let o = run(&["oeis", "--check", "128"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["oeis", "--check", "1"]).status.code(), Some(2));
}

#[test]
fn recursion_reaches_large_n_in_cli_range() {
    let q = RunCountQuery::new(1000, 17).unwrap();
    assert_eq!(r_recursive(q), r_closed(q));
}
