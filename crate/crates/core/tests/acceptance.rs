//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each and exits non-zero if any failed.

mod common;

use std::process::{Command, ExitCode};
use std::time::Instant;

use common::{canonical_corpus, kernel, oracle_rank, real_rooted_top_member};
use rayon::prelude::*;
use realrank::apolarity::{complex_rank, ApolarProfile};
use realrank::real_rank::{admissible_rank, labels_at, real_rank, Label, SearchBudget};
use realrank::sampler::*;
use realrank::witness::{decompose, verify_decomposition};
use realrank::{BinaryForm, HomForm};

const JOBS: usize = 8;
const TOL: f64 = 1e-9;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn config(d: usize, n: usize) -> SampleConfig {
    SampleConfig::new(d, n, 100, 1).with_jobs(JOBS)
}

/// Reports of criteria 1-3 and 7, kept for the round-trip, bound and
/// determinism criteria.
#[derive(Default)]
struct Runs {
    generic: Vec<Report>,
    odd: Vec<Report>,
    even: Vec<Report>,
    quartic: Option<Report>,
}

fn criterion_1(runs: &mut Runs) -> Outcome {
    let o = RunOptions::default();
    let mut bad = Vec::new();
    for d in 2..=10 {
        let r = verify_generic_admissible(&config(d, 200), &o).expect("harness runs");
        let expected = generic_rank(d);
        let generic = r
            .samples
            .iter()
            .filter(|s| !s.flags.iter().any(|f| f == "quarantined"));
        let all = generic.clone().all(|s| s.admissible_rank == Some(expected));
        let q = r.quarantined.len() as f64 / 200.0;
        if !(r.passed() && all && q < 0.01) {
            bad.push(format!("d={d} quarantined={q}"));
        }
        runs.generic.push(r);
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "d=2..10 at ceil((d+1)/2)".into()
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_2(runs: &mut Runs) -> Outcome {
    let o = RunOptions::default();
    let mut parts = Vec::new();
    let mut ok = true;
    for (d, n) in [(3, 2000), (5, 2000), (7, 5000)] {
        let r = verify_labels_odd(&config(d, n), &o).expect("harness runs");
        let s = d.div_ceil(2);
        let mut labels = Vec::new();
        for a in 0..=(d + 1) / 4 {
            let key = Label::new(s, a).to_string();
            let hits = r
                .tables
                .get("label")
                .and_then(|t| t.get(&key))
                .copied()
                .unwrap_or(0);
            ok &= hits as f64 / n as f64 >= 0.01;
            labels.push(format!("{key}:{hits}"));
        }
        let unique = r
            .tables
            .get("kernel_dim")
            .and_then(|t| t.get("1"))
            .copied()
            .unwrap_or(0);
        let one_label = r
            .samples
            .iter()
            .filter(|s| s.kernel_dim == Some(1))
            .all(|s| s.labels.len() == 1);
        ok &= r.passed() && unique as f64 / n as f64 >= 0.99 && one_label;
        parts.push(format!("d={d} {} unique={unique}/{n}", labels.join(" ")));
        runs.odd.push(r);
    }
    outcome(ok, parts.join("; "))
}

fn criterion_3(runs: &mut Runs) -> Outcome {
    let o = RunOptions::default();
    let mut parts = Vec::new();
    let mut ok = true;
    for d in [2, 4, 6, 8] {
        let r = verify_claim_even(&config(d, 500), &o).expect("harness runs");
        let generic: Vec<_> = r
            .samples
            .iter()
            .filter(|s| !s.flags.iter().any(|f| f == "quarantined"))
            .collect();
        let achieved = generic
            .iter()
            .all(|s| s.labels.iter().any(|l| l.s == 1 + d / 2 && 4 * l.a <= d));
        ok &= r.passed() && achieved;
        parts.push(format!("d={d} generic={}", generic.len()));
        runs.even.push(r);
    }
    outcome(ok, parts.join("; "))
}

fn near_pure_power(d: usize) -> Vec<i64> {
    let mut c = vec![0i64; d + 1];
    c[1] = 1;
    c
}

fn criterion_4(runs: &Runs) -> Outcome {
    let o = RunOptions::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for d in 3..=5 {
        let r = verify_label_bound(&config(d, 200), &o).expect("harness runs");
        let near = r.summary["fixed_vectors"][format!("x^{}y", d - 1)].as_u64();
        let c = near_pure_power(d);
        let oracle = oracle_rank(&c);
        ok &= r.passed() && near == Some(d as u64) && oracle == d;
        parts.push(format!("x^{}y={near:?} oracle={oracle}", d - 1));
    }
    let all = runs
        .generic
        .iter()
        .chain(&runs.odd)
        .chain(&runs.even)
        .chain(&runs.quartic);
    let mut sampled = 0;
    for r in all {
        for s in &r.samples {
            if let Some(a) = s.admissible_rank {
                sampled += 1;
                ok &= a <= r.config.degree;
            }
        }
    }
    parts.push(format!("{sampled} sampled forms within the bound"));
    outcome(ok, parts.join("; "))
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    let mut mismatches = Vec::new();
    for d in 1..=6 {
        let corpus = canonical_corpus(d, 2);
        total += corpus.len();
        let bad: Vec<String> = corpus
            .par_iter()
            .filter_map(|c| {
                let f = BinaryForm::from_ints(c).expect("nonzero");
                let profile = ApolarProfile::new(&f).expect("profile");
                let complex = complex_rank(&profile).expect("complex").0;
                let admissible = admissible_rank(&profile).expect("admissible").0;
                let expected = oracle_rank(c);
                (complex != expected || admissible != expected)
                    .then(|| format!("{c:?}: {complex}/{admissible} vs {expected}"))
            })
            .collect();
        mismatches.extend(bad);
    }
    let detail = format!(
        "{total} forms, {} mismatches {}",
        mismatches.len(),
        mismatches
            .iter()
            .take(3)
            .cloned()
            .collect::<Vec<_>>()
            .join(" ")
    );
    outcome(mismatches.is_empty(), detail)
}

fn show(labels: &[Label]) -> String {
    labels
        .iter()
        .map(Label::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn label_set(c: &[i64], s: usize) -> Vec<Label> {
    let f = BinaryForm::from_ints(c).expect("nonzero");
    let profile = ApolarProfile::new(&f).expect("profile");
    let set = labels_at(&profile, s, &SearchBudget::default()).expect("labels");
    assert!(set.is_complete());
    set.labels().collect()
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let diff = label_set(&[1, 0, -1], 2);
    ok &= diff == vec![Label::new(2, 0), Label::new(2, 1)];
    parts.push(format!("x^2-y^2 {{{}}}", show(&diff)));
    let sum = label_set(&[1, 0, 1], 2);
    ok &= sum == vec![Label::new(2, 0)];
    parts.push(format!("x^2+y^2 {{{}}}", show(&sum)));
    // the oracle: kernels at s = 2 are the forms b with b0 = b2 and b0 = -b2
    ok &= kernel(&[1, 0, -1], 2).len() == 2 && kernel(&[1, 0, 1], 2).len() == 2;
    for d in 3..=5 {
        let c = near_pure_power(d);
        let f = BinaryForm::from_ints(&c).expect("nonzero");
        let profile = ApolarProfile::new(&f).expect("profile");
        let triple = (
            complex_rank(&profile).expect("complex").0,
            admissible_rank(&profile).expect("admissible").0,
            real_rank(&profile, &SearchBudget::default())
                .expect("real")
                .0
                .exact(),
        );
        let oracle = oracle_rank(&c) == d && real_rooted_top_member(&c, 3).is_some();
        ok &= triple == (d, d, Some(d)) && oracle;
        parts.push(format!("x^{}y {triple:?}", d - 1));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_7(runs: &mut Runs) -> Outcome {
    let r = empirical_distribution(&config(4, 2000), &RunOptions::default()).expect("harness runs");
    let count = |t: &str, k: &str| r.tables.get(t).and_then(|t| t.get(k)).copied().unwrap_or(0);
    let (adm, r3, r4) = (
        count("admissible_rank", "3"),
        count("real_rank", "3"),
        count("real_rank", "4"),
    );
    let ok = r.passed()
        && adm as f64 / 2000.0 >= 0.99
        && r3 as f64 / 2000.0 >= 0.01
        && r4 as f64 / 2000.0 >= 0.01;
    runs.quartic = Some(r);
    outcome(
        ok,
        format!("admissible 3: {adm}/2000, real 3: {r3}, real 4: {r4}"),
    )
}

fn criterion_8(runs: &Runs) -> Outcome {
    let mut ok = true;
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for r in runs.generic.iter().chain(&runs.odd).chain(&runs.even) {
        let rt = r.round_trip.as_ref().expect("round trip enabled");
        ok &= rt.failed == 0 && rt.max_residual < TOL;
        checked += rt.checked;
        worst = worst.max(rt.max_residual);
    }
    // Gaussian-rational points leave no residual at all.
    let mut exact = 0;
    for r in &runs.generic[..2] {
        for s in &r.samples {
            let f = BinaryForm::from_ints(&s.coefficients).expect("nonzero");
            let (_, g) =
                admissible_rank(&ApolarProfile::new(&f).expect("profile")).expect("admissible");
            let dec = decompose(&f, &g, TOL).expect("decomposes");
            if dec.set.is_exact() {
                exact += 1;
                let report = verify_decomposition(&f, &dec, TOL, None);
                ok &= report.passed && report.residual == 0.0;
            }
        }
    }
    for (c, s) in [(&[1i64, 0, -1][..], 2), (&[1, 0, 0, 1][..], 2)] {
        let f = HomForm::from_ints(c);
        let profile =
            ApolarProfile::new(&BinaryForm::from_ints(c).expect("nonzero")).expect("profile");
        for (_, g) in labels_at(&profile, s, &SearchBudget::default())
            .expect("labels")
            .labels
        {
            let dec = decompose(&f, &g, TOL).expect("decomposes");
            let report = verify_decomposition(&f, &dec, TOL, None);
            ok &= dec.set.is_exact() && report.passed && report.residual == 0.0;
            exact += 1;
        }
    }
    outcome(
        ok,
        format!("{checked} witnesses, max residual {worst:.2e}, {exact} exact with residual 0"),
    )
}

fn cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_realrank"))
        .args(args)
        .output()
        .expect("binary runs");
    out.stdout
}

fn criterion_9(runs: &Runs) -> Outcome {
    let o = RunOptions::default();
    let serial = |c: &SampleConfig| c.clone().with_jobs(1);
    let mut same = true;
    for r in &runs.generic {
        same &= verify_generic_admissible(&serial(&config(r.config.degree, 200)), &o)
            .unwrap()
            .to_json()
            == r.to_json();
    }
    for r in &runs.odd {
        let c = config(r.config.degree, r.config.count);
        same &= verify_labels_odd(&serial(&c), &o).unwrap().to_json() == r.to_json();
    }
    for r in &runs.even {
        same &= verify_claim_even(&serial(&config(r.config.degree, 500)), &o)
            .unwrap()
            .to_json()
            == r.to_json();
    }
    if let Some(r) = &runs.quartic {
        same &= empirical_distribution(&serial(&config(4, 2000)), &o)
            .unwrap()
            .to_json()
            == r.to_json();
    }
    let mut cli_same = true;
    for cmd in [
        &[
            "verify",
            "generic-admissible",
            "--degree",
            "5",
            "--count",
            "200",
        ][..],
        &["verify", "labels-odd", "--degree", "3", "--count", "2000"][..],
        &[
            "sample", "--degree", "4", "--count", "500", "--report", "csv",
        ][..],
    ] {
        let run = |jobs: &str| {
            let mut args = cmd.to_vec();
            args.extend(["--seed", "1", "--jobs", jobs]);
            cli(&args)
        };
        let one = run("1");
        cli_same &= !one.is_empty() && one == run("8");
    }
    // the CLI writes the same report as the library
    let lib = runs.generic[3].to_json();
    let bin = cli(&[
        "verify",
        "generic-admissible",
        "--degree",
        "5",
        "--count",
        "200",
        "--seed",
        "1",
        "--jobs",
        "2",
    ]);
    cli_same &= lib.as_bytes() == bin.as_slice();
    outcome(
        same && cli_same,
        format!("library jobs 1 = jobs {JOBS}: {same}; CLI jobs 1 = jobs 8: {cli_same}"),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut runs = Runs::default();
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let mut report = |n: usize, o: Outcome| {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {n}: {verdict} {} [{:.1?}]",
            o.detail,
            start.elapsed()
        );
        results.push((n, o));
    };
    report(1, criterion_1(&mut runs));
    report(2, criterion_2(&mut runs));
    report(3, criterion_3(&mut runs));
    report(7, criterion_7(&mut runs));
    report(4, criterion_4(&runs));
    report(5, criterion_5());
    report(6, criterion_6());
    report(8, criterion_8(&runs));
    report(9, criterion_9(&runs));
    let failed: Vec<usize> = results
        .iter()
        .filter(|(_, o)| !o.passed)
        .map(|(n, _)| *n)
        .collect();
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
