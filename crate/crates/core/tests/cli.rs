use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyckshift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn census_rows() {
    let out = run(&["census", "--M", "2", "--n-max", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "M,n,total,negative,positive,neutral");
    assert_eq!(lines[2], "2,2,12,4,4,4");
    assert_eq!(lines[4], "2,4,120,48,48,24");
}

#[test]
fn reduce_prints_zero_and_unit() {
    assert_eq!(stdout(&run(&["reduce", "--word", "a1 b2"])), "0\n");
    assert_eq!(stdout(&run(&["reduce", "--word", "a1 b1"])), "1\n");
    assert_eq!(stdout(&run(&["reduce", "--word", "b2 a1 a2 b2"])), "b2 a1\n");
}

#[test]
fn rate_at_one_half() {
    let out = run(&["rate", "--M", "2", "--observable", "indicator-close", "--grid", "0:1:0.25"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().find(|l| l.starts_with("5.0000000000000000e-1,")).unwrap();
    let value: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - (3.0 / 8f64.sqrt()).ln()).abs() < 1e-12);
}

#[test]
fn enumerate_by_class() {
    let out = run(&["enumerate", "--M", "2", "--n", "2", "--class", "neutral"]);
    assert_eq!(
        stdout(&out),
        "word,class\na1 b1,neutral\na2 b2,neutral\nb1 a1,neutral\nb2 a2,neutral\n"
    );
}

#[test]
fn krieger_round_trip() {
    let image = stdout(&run(&["krieger", "--map", "phi-a", "--word", "a1 a2 b2 a1 b1 a2"]));
    assert_eq!(image, "a1 a2 b a1 b a2\n");
    let back = stdout(&run(&["krieger", "--map", "psi-a", "--word", image.trim()]));
    assert_eq!(back, "a1 a2 b2 a1 b1 a2\n");
    let beta = stdout(&run(&["krieger", "--map", "phi-b", "--word", "b2 a1 b1"]));
    assert_eq!(beta, "b2 a b1\n");
}

#[test]
fn psi_on_the_wrong_class_is_invalid_input() {
    let out = run(&["krieger", "--map", "psi-a", "--word", "b b a1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error kind="));
}

#[test]
fn witness_json() {
    let out = run(&["witness", "--M", "2", "--N", "3", "--k1", "1", "--k2", "2"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["N"], 3);
    assert_eq!(json["coords"], serde_json::json!([-7, 3]));
    assert_eq!(json["mismatch_at"], 0);
}

#[test]
fn empirical_small_histogram() {
    let out = run(&[
        "empirical", "--M", "2", "--n", "2", "--observable", "indicator-close", "--bin-width",
        "0.5",
    ]);
    let text = stdout(&out);
    let counts: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(counts, ["4", "8"]);
}

#[test]
fn observable_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    std::fs::write(&path, "# close indicator at depth 2\n\"a a\" 0\n\"a b\" 0\n\"b a\" 1\n\"b b\" 1\n")
        .unwrap();
    let spec = format!("table:{}", path.display());
    let table = run(&["rate", "--M", "2", "--observable", &spec, "--grid", "0.1:0.9:0.2"]);
    let builtin = run(&["rate", "--M", "2", "--observable", "indicator-close", "--grid", "0.1:0.9:0.2"]);
    assert!(table.status.success(), "{}", stderr(&table));
    let column = |o: &Output| -> Vec<f64> {
        stdout(o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect()
    };
    for (a, b) in column(&table).iter().zip(column(&builtin)) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn outputs_and_plots_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("nd.csv");
    let svg = dir.path().join("nd.svg");
    let args = [
        "neutral-decay", "--M", "2", "--n-max", "8", "--out", csv.to_str().unwrap(), "--svg",
        svg.to_str().unwrap(),
    ];
    assert!(run(&args).status.success());
    let first = std::fs::read(&csv).unwrap();
    let first_svg = std::fs::read(&svg).unwrap();
    assert!(String::from_utf8_lossy(&first).starts_with("n,rate,limit,gap\n"));
    assert!(run(&args).status.success());
    assert_eq!(std::fs::read(&csv).unwrap(), first);
    assert_eq!(std::fs::read(&svg).unwrap(), first_svg);
}

#[test]
fn exit_codes() {
    let bad_token = run(&["reduce", "--word", "a1 c3"]);
    assert_eq!(bad_token.status.code(), Some(1));
    assert_eq!(stderr(&bad_token).lines().count(), 1);

    let missing = run(&["census", "--M", "2"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(stderr(&missing).starts_with("error kind=usage"));
    assert_eq!(stderr(&missing).lines().count(), 1);

    let budget = run(&["census", "--M", "2", "--n-max", "20"]);
    assert_eq!(budget.status.code(), Some(3));
    assert!(stderr(&budget).contains("kind=work-budget"));

    let override_budget = run(&["--budget", "100", "census", "--M", "2", "--n-max", "5"]);
    assert_eq!(override_budget.status.code(), Some(3));

    let odd_grid = run(&["rate", "--M", "2", "--observable", "indicator-close", "--grid", "1:0:0.1"]);
    assert_eq!(odd_grid.status.code(), Some(1));
}

#[test]
fn help_documents_defaults() {
    let top = run(&["--help"]);
    assert!(top.status.success());
    let text = stdout(&top);
    assert!(text.contains("[default: 1]") && text.contains("[default: 100000000]"));
    for sub in [
        "census", "enumerate", "reduce", "krieger", "witness", "rate", "pressure", "empirical",
        "concentration", "neutral-decay",
    ] {
        let out = run(&[sub, "--help"]);
        assert!(out.status.success(), "{sub}");
        assert!(stdout(&out).contains("Usage:"), "{sub}");
    }
    let empirical = stdout(&run(&["empirical", "--help"]));
    assert!(empirical.contains("[default: 0.05]") && empirical.contains("[default: all]"));
    let rate = stdout(&run(&["rate", "--help"]));
    assert!(rate.contains("defaults to max(1, 1 - min f)"));
}

#[test]
fn pressure_grid_may_start_negative() {
    let out = run(&[
        "pressure", "--M", "3", "--gamma", "alpha", "--observable", "indicator-close", "--grid",
        "-2:2:1",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 6);
}
