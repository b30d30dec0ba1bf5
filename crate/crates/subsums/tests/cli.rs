use std::process::{Command, Output};

use subsums::report::{
    ClassificationReport, CoverReport, DimensionReport, GridReport, KakeyaReport, MeasureReport,
    SandwichOutput, SumsetReport,
};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subsums"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn round_trip<T: serde::de::DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug>(text: &str) -> T {
    let v: T = serde_json::from_str(text).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, text);
    assert_eq!(serde_json::from_str::<T>(&again).unwrap(), v);
    v
}

#[test]
fn classify_example_two() {
    let text = stdout(&["classify", "--series", "sine k=8,7,6,5,4 x=1/15"]);
    let r: ClassificationReport = round_trip(&text);
    assert_eq!(r.label, "Cantorval");
    assert!(r.certificates.iter().all(|c| c.theorem == "sine.cantorval_window"));
    assert_eq!(r.certificates.len(), 2);
    let keys: Vec<usize> = ["\"label\"", "\"certificates\"", "\"notes\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn sumset_example_two() {
    let r: SumsetReport = round_trip(&stdout(&["sumset", "--k", "8,7,6,5,4"]));
    assert_eq!((r.n0, r.n_star, r.card_sigma), (4, 22, 25));
    let r: SumsetReport = round_trip(&stdout(&["sumset", "--k", "8,7,6,5,4", "--mitm"]));
    assert_eq!((r.n0, r.n_star), (4, 22));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify", "--series", "sine k=2,1 x=0"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--series", "sine k=2,1"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--series", "sine k=1,2 x=1/2"]).status.code(), Some(2));
    assert_eq!(run(&["classify"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--k", "2,1", "--x", "0.3"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--k", "2,1", "--x-grid", "0.3:0.35:0.1"]).status.code(), Some(2));
    let ones = vec!["1"; 25].join(",");
    let out = run(&["sumset", "--k", &ones]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--mitm"));
    assert_eq!(run(&["sumset", "--k", &ones, "--mitm"]).status.code(), Some(0));
    assert_eq!(run(&["cover", "--series", "sine k=1 x=1/2", "--depth", "65"]).status.code(), Some(3));
    assert_eq!(run(&["cover", "--series", "sine k=1 x=1/15", "--depth", "300"]).status.code(), Some(3));
    assert_eq!(run(&["dimension", "--series", "sine k=1 x=1/2", "--depths", "4,8"]).status.code(), Some(2));
}

#[test]
fn scan_grid_labels() {
    let text = stdout(&["scan", "--k", "2,1", "--x", "0.05,0.15,0.30,0.45"]);
    let r: GridReport = round_trip(&text);
    let labels: Vec<&str> = r.rows.iter().map(|r| r.label.as_str()).collect();
    assert!(matches!(labels[0], "CantorSet" | "NotFiniteUnion"));
    assert!(matches!(labels[1], "NotFiniteUnion" | "Unknown"));
    assert_eq!(labels[2], "Unknown");
    assert_eq!(labels[3], "Interval");

    let r: GridReport = round_trip(&stdout(&["scan", "--k", "4,1", "--x", "0.05,0.10"]));
    assert!(r.rows.iter().all(|r| r.label == "CantorSet"));

    let csv = stdout(&["scan", "--k", "2,1", "--x-grid", "0.05:0.45:0.1", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "x,x_value,label,certificate");
    assert_eq!(lines.len(), 6);
    assert!(lines[5].starts_with("9/20,") && lines[5].contains("Interval"));
}

#[test]
fn unknown_band_sits_between_cutoffs() {
    let r: GridReport = round_trip(&stdout(&["scan", "--k", "2,1", "--x-grid", "0.01:0.99:0.01"]));
    let pi = std::f64::consts::PI;
    let (lower, upper) = (2.0 / (3.0 * pi + 2.0), (pi - 1.0) / (pi + 2.0));
    for row in &r.rows {
        let x = row.x_value;
        let unknown = row.label == "Unknown";
        assert_eq!(unknown, x > lower && x < upper, "{row:?}");
    }
}

#[test]
fn kakeya_scan_of_one_series() {
    let r: KakeyaReport = round_trip(&stdout(&["scan", "--series", "mgs k=3,2 q=1/4", "--horizon", "20"]));
    assert_eq!(r.outcomes.len(), 20);
    assert_eq!((r.leq, r.gt), (10, 10));
    let csv = stdout(&["scan", "--series", "sine k=4,1 x=1/10", "--horizon", "5", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("n,outcome"));
    assert!(csv.lines().last().unwrap().starts_with("# pattern="));
}

#[test]
fn cover_outputs() {
    let r: CoverReport = round_trip(&stdout(&["cover", "--series", "mgs k=3,2 q=1/4", "--depth", "2"]));
    assert_eq!(r.depth, 2);
    assert_eq!(r.intervals.len(), 3);
    assert_eq!(r.gaps.len(), 2);
    assert!((r.tail_hi - 5.0 / 12.0).abs() < 1e-12);
    let csv = stdout(&["cover", "--series", "mgs k=3,2 q=1/4", "--depth", "2", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("lo,hi"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn measure_dimension_sandwich_outputs() {
    let r: MeasureReport = round_trip(&stdout(&["measure", "--series", "sine k=4,1 x=1/10", "--depth", "6"]));
    assert_eq!(r.steps.len(), 7);
    let csv = stdout(&["measure", "--series", "sine k=4,1 x=1/10", "--depth", "3", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("depth,upper_bound"));

    let r: DimensionReport = round_trip(&stdout(&[
        "dimension", "--series", "mgs k=3,2 q=1/10", "--depths", "8,12,16",
    ]));
    assert_eq!(r.samples.len(), 3);
    let csv = stdout(&["dimension", "--series", "sine k=2,1 x=1/2", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("depth,eps,boxes"));
    assert!(csv.lines().last().unwrap().starts_with("# slope="));

    let args = [
        "sandwich", "--a", "mgs k=2,1 q=1/4", "--c", "sine k=2,1 x=1/2", "--b", "mgs k=2,1 q=1/2",
        "--horizon", "10",
    ];
    let r: SandwichOutput = round_trip(&stdout(&args));
    assert_eq!(r.which_chain.len(), 10);
    assert!(r.terms_ordered.iter().all(|&t| t));
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = stdout(&csv_args);
    assert_eq!(csv.lines().next(), Some("n,chain"));
    assert_eq!(csv.lines().count(), 11);
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["classify", "--series", "sine k=8,7,6,5,4 x=1/15"],
        vec!["cover", "--series", "sine k=8,7,6,5,4 x=1/15", "--depth", "12"],
        vec!["dimension", "--series", "mgs k=3,2 q=1/10", "--format", "csv"],
        vec!["scan", "--k", "3,2,1", "--x-grid", "0.02:0.98:0.02", "--format", "csv"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("subsums-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    assert!(stdout(&["sumset", "--k", "3,2", "--out", p]).is_empty());
    let r: SumsetReport = round_trip(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(r.sigma, vec![0, 2, 3, 5]);
    std::fs::remove_file(&path).unwrap();
}
