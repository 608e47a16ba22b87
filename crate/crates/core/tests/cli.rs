use std::process::{Command, Output};

use serde_json::Value;

fn realrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realrank"))
        .args(args)
        .env_remove("REALRANK_JOBS")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../docs/realrank.schema.json"
    ))
    .unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &Value) {
    let schema = schema();
    let errors: Vec<String> = schema
        .iter_errors(v)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{errors:?}\n{v:#}");
}

fn labels_of(v: &Value) -> Vec<(u64, u64)> {
    v["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| (l["s"].as_u64().unwrap(), l["a"].as_u64().unwrap()))
        .collect()
}

#[test]
fn rank_of_difference_of_squares() {
    let o = realrank(&["rank", "--coeffs", "1,0,-1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_valid(&v);
    assert_eq!(v["complex_rank"], 2);
    assert_eq!(v["admissible_rank"], 2);
    assert_eq!(v["real_rank"]["lo"], 2);
    assert_eq!(v["real_rank"]["hi"], 2);
    assert_eq!(v["real_rank"]["exact"], true);
    assert_eq!(labels_of(&v["labels"]), vec![(2, 0), (2, 1)]);
}

#[test]
fn labels_of_sum_of_squares() {
    let o = realrank(&["labels", "--coeffs", "1,0,1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_valid(&v);
    assert_eq!(labels_of(&v), vec![(2, 0)]);
    assert_eq!(v["exactness"], "COMPLETE");
}

#[test]
fn labels_below_the_rank_are_marked() {
    let o = realrank(&["labels", "--coeffs", "1,0,0,0,0", "--at", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_valid(&v);
    assert_eq!(v["normative"], false);
    assert_eq!(v["marker"], "NON-NORMATIVE");
    assert_eq!(labels_of(&v), vec![(2, 0)]);
}

#[test]
fn decomposition_with_conjugate_points() {
    let o = realrank(&["decompose", "--coeffs", "1,0,-1", "--label", "2,1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_valid(&v);
    assert_eq!(v["verification"]["passed"], true);
    assert_eq!(v["residual"], 0.0);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    for p in points {
        assert_eq!(p["kind"], "EXACT");
        assert_eq!(p["coords"][0]["re"], "1");
        assert_eq!(p["coords"][1]["re"], "0");
    }
    let ims: Vec<&str> = points
        .iter()
        .map(|p| p["coords"][1]["im"].as_str().unwrap())
        .collect();
    assert!(ims.contains(&"1") && ims.contains(&"-1"));
    for c in v["coefficients"].as_array().unwrap() {
        assert_eq!(c["re"], "1/2");
    }
}

#[test]
fn default_decomposition_of_a_cubic() {
    let o = realrank(&["decompose", "--coeffs", "1,0,0,1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_valid(&v);
    let coords: Vec<(String, String)> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p["coords"][0]["re"].as_str().unwrap().into(),
                p["coords"][1]["re"].as_str().unwrap().into(),
            )
        })
        .collect();
    assert!(coords.contains(&("1".into(), "0".into())));
    assert!(coords.contains(&("0".into(), "1".into())));
}

#[test]
fn boxed_points_carry_a_radius() {
    // x^3 + x y^2 - y^3 has an irrational admissible witness
    let o = realrank(&["decompose", "--coeffs", "1,0,1,-1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_valid(&v);
    assert_eq!(v["verification"]["passed"], true);
    assert!(v["residual"].as_f64().unwrap() < 1e-9);
    let boxed: Vec<&Value> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["kind"] == "BOXED")
        .collect();
    assert!(!boxed.is_empty());
    assert!(boxed.iter().all(|p| p["radius"].is_string()));
}

#[test]
fn unachievable_label_is_an_input_error() {
    let o = realrank(&["decompose", "--coeffs", "1,0,1", "--label", "2,1"]);
    assert_eq!(code(&o), 1);
    assert!(!o.stderr.is_empty());
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["rank", "--coeffs", "x"][..],
        &["rank", "--coeffs", "0,0,0"],
        &["rank", "--coeffs", "1"],
        &["rank", "--coeffs", "1/0,1"],
        &["decompose", "--coeffs", "1,0,-1", "--label", "2"],
        &["decompose", "--coeffs", "1,0,-1", "--label", "4,0"],
        &["sample", "--degree", "0"],
        &["sample", "--degree", "3", "--jobs", "0"],
        &["verify", "labels-odd", "--degree", "4"],
        &["verify", "claim-even", "--degree", "3"],
        &["frobnicate"],
    ] {
        let o = realrank(args);
        assert_eq!(code(&o), 1, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn negative_leading_coefficient_is_not_a_flag() {
    let o = realrank(&["rank", "--coeffs", "-1,0,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["form"]["coefficients"][0], "-1");
}

#[test]
fn help_and_version_succeed() {
    let o = realrank(&["--help"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("x^(d-i) y^i"));
    assert!(o.stderr.is_empty());
    assert_eq!(code(&realrank(&["--version"])), 0);
}

#[test]
fn strict_bracket_is_inconclusive() {
    let args = [
        "rank",
        "--coeffs",
        "0,1,0,0,0",
        "--strict",
        "--grid-bound",
        "0",
        "--random-samples",
        "0",
        "--factor-tries",
        "0",
    ];
    let o = realrank(&args);
    assert_eq!(code(&o), 2);
    let v = json(&o);
    assert_valid(&v);
    assert_eq!(v["inconclusive"], true);
    // without --strict the bracket is still reported, with success
    let relaxed: Vec<&str> = args.iter().copied().filter(|a| *a != "--strict").collect();
    let o = realrank(&relaxed);
    assert_eq!(code(&o), 0);
}

#[test]
fn failed_certification_is_inconclusive() {
    let o = realrank(&[
        "decompose",
        "--coeffs",
        "1,0,-2",
        "--label",
        "2,1",
        "--tol",
        "1e-300",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn failing_harness_exits_three() {
    let o = realrank(&[
        "verify",
        "labels-odd",
        "--degree",
        "3",
        "--count",
        "20",
        "--min-frequency",
        "0.9",
    ]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_valid(&v);
    assert_eq!(v["verdict"], "FAIL");
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("FAIL"));
}

#[test]
fn reports_match_the_schema() {
    for args in [
        &["sample", "--degree", "4", "--count", "30"][..],
        &[
            "verify",
            "generic-admissible",
            "--degree",
            "5",
            "--count",
            "20",
        ],
        &[
            "verify",
            "labels-odd",
            "--degree",
            "5",
            "--count",
            "20",
            "--min-frequency",
            "0",
        ],
        &["verify", "claim-even", "--degree", "4", "--count", "20"],
        &["verify", "label-bound", "--degree", "3", "--count", "20"],
        &[
            "verify",
            "a-rank-survey",
            "--degree",
            "2",
            "--count",
            "20",
            "--pairs",
            "1",
        ],
    ] {
        let o = realrank(args);
        assert_eq!(
            code(&o),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let v = json(&o);
        assert_valid(&v);
        assert_eq!(v["verdict"], "PASS");
    }
}

#[test]
fn csv_report_has_one_row_per_sample() {
    let o = realrank(&[
        "sample", "--degree", "3", "--count", "25", "--report", "csv",
    ]);
    assert_eq!(code(&o), 0);
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.get(0), Some("index"));
    assert_eq!(headers.len(), 10);
    assert_eq!(reader.records().count(), 25);
}

#[test]
fn report_file_and_summary_line() {
    let dir = std::env::temp_dir().join(format!("realrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = realrank(&[
        "sample",
        "--degree",
        "2",
        "--count",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let line = String::from_utf8(o.stdout).unwrap();
    assert!(
        line.starts_with("PASS sample degree=2 count=10 seed=1"),
        "{line}"
    );
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid(&v);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn jobs_from_the_environment() {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_realrank"))
            .args(["sample", "--degree", "5", "--count", "40", "--seed", "9"])
            .env("REALRANK_JOBS", jobs)
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("4"));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
