//! Seeded sampling of random integer binary forms, rank and label
//! statistics, and verification harnesses for generic behaviour.
//!
//! Sample `i` of a run depends only on the master seed and `i`, so reports
//! are identical for any number of worker threads.

use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apolarity::{complex_rank, ApolarProfile};
use crate::error::{Error, Result};
use crate::form::BinaryForm;
use crate::real_rank::{
    admissible_rank, labels_at, Exactness, Label, LabelScan, RankValue, SearchBudget,
};
use crate::witness::{decompose, verify_decomposition};

/// How per-sample generators are derived; echoed in every report.
pub const SEED_RULE: &str = "ChaCha8Rng::seed_from_u64(seed) with stream set to the sample index";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub degree: usize,
    pub count: usize,
    /// Coefficients are uniform integers in `[-bound, bound]`.
    pub bound: i64,
    pub seed: u64,
    /// Worker threads; never affects results.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            degree: 3,
            count: 100,
            bound: 100,
            seed: 1,
            jobs: 1,
        }
    }
}

impl SampleConfig {
    pub fn new(degree: usize, count: usize, bound: i64, seed: u64) -> Self {
        Self {
            degree,
            count,
            bound,
            seed,
            jobs: 1,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::InvalidConfig("degree must be at least 1".into()));
        }
        if self.count < 1 {
            return Err(Error::InvalidConfig("count must be at least 1".into()));
        }
        if self.bound < 1 {
            return Err(Error::InvalidConfig("bound must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub index: usize,
    /// The coefficients as drawn, before normalization.
    pub coefficients: Vec<i64>,
    pub form: BinaryForm,
}

pub fn sample_form(config: &SampleConfig, index: usize) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    loop {
        let coefficients: Vec<i64> = (0..=config.degree)
            .map(|_| rng.gen_range(-config.bound..=config.bound))
            .collect();
        if let Ok(form) = BinaryForm::from_ints(&coefficients) {
            return Sample {
                index,
                coefficients,
                form,
            };
        }
    }
}

pub fn sample_forms(config: &SampleConfig) -> Result<Vec<Sample>> {
    config.validate()?;
    Ok((0..config.count).map(|i| sample_form(config, i)).collect())
}

fn run_parallel<T, F>(config: &SampleConfig, work: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Sample) -> Result<T> + Sync + Send,
{
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    pool.install(|| {
        (0..config.count)
            .into_par_iter()
            .map(|i| work(sample_form(config, i)))
            .collect()
    })
}

/// Acceptance floors. They are engineering choices, not derived values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Smallest frequency that counts as "occurs".
    pub min_frequency: f64,
    /// Frequency required of a property that should hold almost always.
    pub majority: f64,
    /// Largest tolerated fraction of quarantined samples.
    pub max_quarantine: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            min_frequency: 0.01,
            majority: 0.99,
            max_quarantine: 0.01,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    pub thresholds: Thresholds,
    pub budget: SearchBudget,
    /// Decompose along every witness and verify the result.
    pub round_trip: bool,
    pub tolerance: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            thresholds: Thresholds::default(),
            budget: SearchBudget::default(),
            round_trip: true,
            tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Per-sample row. Quantities a harness does not need are left empty.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub coefficients: Vec<i64>,
    pub complex_rank: Option<usize>,
    pub admissible_rank: Option<usize>,
    pub real_rank: Option<RankValue>,
    pub a_rank: Option<RankValue>,
    pub kernel_dim: Option<usize>,
    pub labels: Vec<Label>,
    pub exactness: Option<Exactness>,
    pub flags: Vec<String>,
    pub max_residual: Option<f64>,
}

impl SampleRecord {
    fn new(sample: &Sample) -> Self {
        Self {
            index: sample.index,
            coefficients: sample.coefficients.clone(),
            ..Default::default()
        }
    }

    fn flag(&mut self, f: &str) {
        if !self.flags.iter().any(|g| g == f) {
            self.flags.push(f.to_string());
            self.flags.sort();
        }
    }

    fn has(&self, f: &str) -> bool {
        self.flags.iter().any(|g| g == f)
    }

    fn chain(&mut self) {
        let mut seq: Vec<usize> = Vec::new();
        seq.extend(self.complex_rank);
        seq.extend(self.admissible_rank);
        seq.extend(self.real_rank.map(|r| r.lower()));
        if seq.windows(2).any(|w| w[0] > w[1]) {
            self.flag(CHAIN);
        }
    }
}

const QUARANTINED: &str = "quarantined";
const EXCEPTION: &str = "exception";
const SOUND_PARTIAL: &str = "sound-partial";
const ROUND_TRIP_FAILED: &str = "round-trip-failed";
const CHAIN: &str = "chain-violation";
const FIXED: &str = "fixed-vector";

/// Reproduction data for a sample singled out by a harness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exception {
    pub index: usize,
    pub seed: u64,
    pub coefficients: Vec<i64>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RoundTrip {
    pub checked: usize,
    pub failed: usize,
    pub max_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub degree: usize,
    pub count: usize,
    pub bound: i64,
    pub seed: u64,
    pub seed_rule: &'static str,
    pub pairs: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub kind: String,
    pub config: ConfigEcho,
    pub thresholds: Thresholds,
    pub verdict: Verdict,
    pub summary: BTreeMap<String, serde_json::Value>,
    pub tables: BTreeMap<String, BTreeMap<String, usize>>,
    pub sound_partial: usize,
    pub quarantined: Vec<Exception>,
    pub violations: Vec<Exception>,
    pub round_trip: Option<RoundTrip>,
    pub samples: Vec<SampleRecord>,
}

impl Report {
    fn new(kind: &str, config: &SampleConfig, options: &RunOptions, pairs: Option<usize>) -> Self {
        Self {
            kind: kind.to_string(),
            config: ConfigEcho {
                degree: config.degree,
                count: config.count,
                bound: config.bound,
                seed: config.seed,
                seed_rule: SEED_RULE,
                pairs,
            },
            thresholds: options.thresholds.clone(),
            verdict: Verdict::Pass,
            summary: BTreeMap::new(),
            tables: BTreeMap::new(),
            sound_partial: 0,
            quarantined: Vec::new(),
            violations: Vec::new(),
            round_trip: options.round_trip.then(RoundTrip::default),
            samples: Vec::new(),
        }
    }

    fn note(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(
            key.to_string(),
            serde_json::to_value(value).unwrap_or_default(),
        );
    }

    fn frequency(&self, table: &str, key: &str) -> f64 {
        let hits = self
            .tables
            .get(table)
            .and_then(|t| t.get(key))
            .copied()
            .unwrap_or(0);
        hits as f64 / self.config.count as f64
    }

    /// Fills the common tables, the exception lists and the round-trip
    /// summary from the per-sample records.
    fn absorb(&mut self, records: Vec<SampleRecord>, seed: u64) {
        let mut tables: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
        let mut bump = |t: &str, k: String| {
            *tables
                .entry(t.to_string())
                .or_default()
                .entry(k)
                .or_default() += 1
        };
        for r in records.iter().filter(|r| !r.has(FIXED)) {
            if let Some(v) = r.complex_rank {
                bump("complex_rank", v.to_string());
            }
            if let Some(v) = r.admissible_rank {
                bump("admissible_rank", v.to_string());
            }
            if let Some(v) = r.real_rank {
                bump("real_rank", v.to_string());
            }
            if let Some(v) = r.a_rank {
                bump("a_rank", v.to_string());
            }
            if let Some(v) = r.kernel_dim {
                bump("kernel_dim", v.to_string());
            }
            if r.exactness.is_some() {
                let set: Vec<String> = r.labels.iter().map(Label::to_string).collect();
                bump("label_set", format!("{{{}}}", set.join(",")));
                for l in &r.labels {
                    bump("label", l.to_string());
                }
            }
        }
        self.tables = tables;
        for r in &records {
            let exc = |reason: &str| Exception {
                index: r.index,
                seed,
                coefficients: r.coefficients.clone(),
                reason: reason.to_string(),
            };
            if r.has(SOUND_PARTIAL) {
                self.sound_partial += 1;
            }
            if r.has(QUARANTINED) {
                self.quarantined.push(exc(QUARANTINED));
            }
            for f in [EXCEPTION, CHAIN, ROUND_TRIP_FAILED] {
                if r.has(f) {
                    self.violations.push(exc(f));
                }
            }
            if let (Some(rt), Some(res)) = (self.round_trip.as_mut(), r.max_residual) {
                rt.max_residual = rt.max_residual.max(res);
            }
        }
        self.samples = records;
        if !self.violations.is_empty() {
            self.verdict = Verdict::Fail;
        }
        let q = self.quarantined.len() as f64 / self.config.count as f64;
        self.note("quarantine_fraction", q);
        if q >= self.thresholds.max_quarantine && !self.quarantined.is_empty() {
            self.verdict = Verdict::Fail;
        }
    }

    fn fail_unless(&mut self, ok: bool) {
        if !ok {
            self.verdict = Verdict::Fail;
        }
    }

    /// JSON with a trailing newline; stable for a fixed configuration.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per sample; see `docs/report-csv.md` for the columns.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::InvalidConfig(e.to_string());
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "index",
            "coefficients",
            "complex",
            "admissible",
            "real",
            "a_rank",
            "kernel_dim",
            "labels",
            "exactness",
            "flags",
        ])
        .map_err(io)?;
        let opt = |v: Option<String>| v.unwrap_or_default();
        for r in &self.samples {
            let coeffs: Vec<String> = r.coefficients.iter().map(i64::to_string).collect();
            let labels: Vec<String> = r.labels.iter().map(Label::to_string).collect();
            let exactness = r.exactness.map(|e| match e {
                Exactness::Complete => "COMPLETE".to_string(),
                Exactness::SoundPartial => "SOUND-PARTIAL".to_string(),
            });
            w.write_record([
                r.index.to_string(),
                coeffs.join(" "),
                opt(r.complex_rank.map(|v| v.to_string())),
                opt(r.admissible_rank.map(|v| v.to_string())),
                opt(r.real_rank.map(|v| v.to_string())),
                opt(r.a_rank.map(|v| v.to_string())),
                opt(r.kernel_dim.map(|v| v.to_string())),
                labels.join(" "),
                opt(exactness),
                r.flags.join(" "),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::InvalidConfig(e.to_string()))?;
        Ok(())
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Decomposes `f` along each witness and records the worst residual.
fn round_trip(
    record: &mut SampleRecord,
    f: &BinaryForm,
    witnesses: &[(Label, BinaryForm)],
    options: &RunOptions,
) {
    if !options.round_trip {
        return;
    }
    let mut worst: f64 = 0.0;
    for (label, g) in witnesses.iter().filter(|(_, g)| g.degree() <= f.degree()) {
        let ok = match decompose(f, g, options.tolerance) {
            Ok(dec) => {
                let report = verify_decomposition(f, &dec, options.tolerance, Some(*label));
                worst = worst.max(report.residual);
                report.passed
            }
            Err(_) => false,
        };
        if !ok {
            record.flag(ROUND_TRIP_FAILED);
        }
    }
    record.max_residual = Some(worst);
}

fn finish_round_trip(report: &mut Report, witnesses_checked: usize) {
    if let Some(rt) = report.round_trip.as_mut() {
        rt.checked = witnesses_checked;
        rt.failed = report
            .samples
            .iter()
            .filter(|r| r.has(ROUND_TRIP_FAILED))
            .count();
    }
}

/// Full rank report on every sample, aggregated into frequency tables.
pub fn empirical_distribution(config: &SampleConfig, options: &RunOptions) -> Result<Report> {
    let outcome = run_parallel(config, |sample| {
        let mut r = SampleRecord::new(&sample);
        let profile = ApolarProfile::new(&sample.form)?;
        let (complex, _) = complex_rank(&profile)?;
        let mut scan = LabelScan::new(&profile, options.budget.clone())?;
        let admissible = scan.admissible();
        let (real, _) = scan.a_rank(0)?;
        let set = scan.at(admissible)?.clone();
        r.complex_rank = Some(complex);
        r.admissible_rank = Some(admissible);
        r.real_rank = Some(real);
        r.kernel_dim = Some(profile.kernel_dim(admissible));
        r.labels = set.labels().collect();
        r.exactness = Some(set.exactness);
        if !set.is_complete() || real.exact().is_none() {
            r.flag(SOUND_PARTIAL);
        }
        r.chain();
        let witnesses: Vec<(Label, BinaryForm)> = set.labels.into_iter().collect();
        round_trip(&mut r, &sample.form, &witnesses, options);
        Ok((r, witnesses.len()))
    })?;
    let checked = outcome.iter().map(|(_, n)| n).sum();
    let mut report = Report::new("sample", config, options, None);
    report.absorb(outcome.into_iter().map(|(r, _)| r).collect(), config.seed);
    finish_round_trip(&mut report, checked);
    Ok(report)
}

/// `ceil((d + 1) / 2)`, the admissible rank of a generic form of degree `d`.
pub fn generic_rank(d: usize) -> usize {
    (d + 2) / 2
}

/// Whether the apolar ideal has the generic shape: generators of degrees
/// `floor((d+2)/2)` and `ceil((d+2)/2)` and a square-free member in the
/// lower degree.
fn generic_profile(profile: &ApolarProfile) -> Result<bool> {
    let d = profile.degree();
    let r = generic_rank(d);
    let (g1, _) = profile.generators();
    if g1.degree() != (d + 2) / 2 {
        return Ok(false);
    }
    Ok(complex_rank(profile)?.0 == r)
}

/// Every generic sample has admissible rank `ceil((d + 1) / 2)`.
pub fn verify_generic_admissible(config: &SampleConfig, options: &RunOptions) -> Result<Report> {
    if config.degree < 2 {
        return Err(Error::InvalidConfig(
            "generic-admissible needs degree >= 2".into(),
        ));
    }
    let expected = generic_rank(config.degree);
    let outcome = run_parallel(config, |sample| {
        let mut r = SampleRecord::new(&sample);
        let profile = ApolarProfile::new(&sample.form)?;
        let (complex, _) = complex_rank(&profile)?;
        let (admissible, witness) = admissible_rank(&profile)?;
        r.complex_rank = Some(complex);
        r.admissible_rank = Some(admissible);
        r.kernel_dim = Some(profile.kernel_dim(expected));
        r.chain();
        if !generic_profile(&profile)? {
            r.flag(QUARANTINED);
        } else if admissible != expected {
            r.flag(EXCEPTION);
        }
        let label = label_of_witness(&witness)?;
        round_trip(&mut r, &sample.form, &[(label, witness)], options);
        Ok(r)
    })?;
    let mut report = Report::new("generic-admissible", config, options, None);
    report.note("expected_admissible_rank", expected);
    report.absorb(outcome, config.seed);
    let generic = config.count - report.quarantined.len();
    let hits = report
        .samples
        .iter()
        .filter(|r| !r.has(QUARANTINED) && r.admissible_rank == Some(expected))
        .count();
    report.note("generic_samples", generic);
    report.note("generic_at_expected_rank", hits);
    finish_round_trip(&mut report, config.count);
    Ok(report)
}

fn label_of_witness(g: &BinaryForm) -> Result<Label> {
    let p = g.root_profile()?;
    Ok(Label::new(p.total, (p.total - p.real) / 2))
}

/// Odd degree: the kernel at `s = (d + 1) / 2` is almost always a line, so
/// the decomposition and its label are unique, and every label `(s, a)`
/// occurs with positive frequency.
pub fn verify_labels_odd(config: &SampleConfig, options: &RunOptions) -> Result<Report> {
    let d = config.degree;
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::InvalidConfig(
            "labels-odd needs an odd degree >= 3".into(),
        ));
    }
    let s = d.div_ceil(2);
    let outcome = run_parallel(config, |sample| {
        let mut r = SampleRecord::new(&sample);
        let profile = ApolarProfile::new(&sample.form)?;
        let dim = profile.kernel_dim(s);
        r.kernel_dim = Some(dim);
        let set = labels_at(&profile, s, &options.budget)?;
        r.labels = set.labels().collect();
        r.exactness = Some(set.exactness);
        if !set.is_complete() {
            r.flag(SOUND_PARTIAL);
        }
        if dim != 1 || set.labels.is_empty() {
            r.flag(QUARANTINED);
        }
        let witnesses: Vec<(Label, BinaryForm)> = set.labels.into_iter().collect();
        round_trip(&mut r, &sample.form, &witnesses, options);
        Ok((r, witnesses.len()))
    })?;
    let checked = outcome.iter().map(|(_, n)| n).sum();
    let mut report = Report::new("labels-odd", config, options, None);
    report.absorb(outcome.into_iter().map(|(r, _)| r).collect(), config.seed);
    finish_round_trip(&mut report, checked);
    // Quarantine here is the non-uniqueness statistic itself.
    if report.violations.is_empty() {
        report.verdict = Verdict::Pass;
    }
    let unique = report.frequency("kernel_dim", "1");
    report.note("unique_kernel_fraction", unique);
    let ok_unique = unique >= report.thresholds.majority;
    report.fail_unless(ok_unique);
    let mut freqs = BTreeMap::new();
    let mut all_present = true;
    for a in 0..=s / 2 {
        let key = Label::new(s, a).to_string();
        let fr = report.frequency("label", &key);
        all_present &= fr >= report.thresholds.min_frequency;
        freqs.insert(key, fr);
    }
    report.note("label_frequencies", freqs);
    report.fail_unless(all_present);
    Ok(report)
}

/// Even degree: at `s = 1 + d/2` some label `(s, a)` with `2a <= d/2` is
/// achievable on every generic sample.
pub fn verify_claim_even(config: &SampleConfig, options: &RunOptions) -> Result<Report> {
    let d = config.degree;
    if d < 2 || d % 2 == 1 {
        return Err(Error::InvalidConfig(
            "claim-even needs an even degree >= 2".into(),
        ));
    }
    let s = 1 + d / 2;
    let outcome = run_parallel(config, |sample| {
        let mut r = SampleRecord::new(&sample);
        let profile = ApolarProfile::new(&sample.form)?;
        let dim = profile.kernel_dim(s);
        r.kernel_dim = Some(dim);
        if dim != 2 || profile.kernel_dim(s - 1) != 0 {
            r.flag(QUARANTINED);
            return Ok((r, 0));
        }
        let set = labels_at(&profile, s, &options.budget)?;
        r.labels = set.labels().collect();
        r.exactness = Some(set.exactness);
        if !r.labels.iter().any(|l| 4 * l.a <= d) {
            r.flag(EXCEPTION);
        }
        let witnesses: Vec<(Label, BinaryForm)> = set.labels.into_iter().collect();
        round_trip(&mut r, &sample.form, &witnesses, options);
        Ok((r, witnesses.len()))
    })?;
    let checked = outcome.iter().map(|(_, n)| n).sum();
    let mut report = Report::new("claim-even", config, options, None);
    report.note("s", s);
    report.note("max_pairs", d / 4);
    report.absorb(outcome.into_iter().map(|(r, _)| r).collect(), config.seed);
    finish_round_trip(&mut report, checked);
    Ok(report)
}

/// `x^(d-1) y` and `x^d`, the extreme cases of the bound.
pub fn fixed_vectors(d: usize) -> Vec<(String, BinaryForm)> {
    let mut near = vec![0i64; d + 1];
    near[1] = 1;
    let mut pure = vec![0i64; d + 1];
    pure[0] = 1;
    vec![
        (
            format!("x^{}y", d - 1),
            BinaryForm::from_ints(&near).expect("nonzero"),
        ),
        (
            format!("x^{d}"),
            BinaryForm::from_ints(&pure).expect("nonzero"),
        ),
    ]
}

/// The admissible rank never exceeds the degree.
pub fn verify_label_bound(config: &SampleConfig, options: &RunOptions) -> Result<Report> {
    let d = config.degree;
    let check = |r: &mut SampleRecord, f: &BinaryForm| -> Result<usize> {
        let profile = ApolarProfile::new(f)?;
        let (complex, _) = complex_rank(&profile)?;
        let (admissible, witness) = admissible_rank(&profile)?;
        r.complex_rank = Some(complex);
        r.admissible_rank = Some(admissible);
        r.chain();
        if admissible > d {
            r.flag(EXCEPTION);
        }
        let label = label_of_witness(&witness)?;
        round_trip(r, f, &[(label, witness)], options);
        Ok(admissible)
    };
    let mut records = run_parallel(config, |sample| {
        let mut r = SampleRecord::new(&sample);
        check(&mut r, &sample.form)?;
        Ok(r)
    })?;
    let mut fixed = BTreeMap::new();
    for (k, (name, f)) in fixed_vectors(d).into_iter().enumerate() {
        let coefficients = f
            .integer_coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap_or(0))
            .collect();
        let mut r = SampleRecord {
            index: config.count + k,
            coefficients,
            ..Default::default()
        };
        r.flag(FIXED);
        fixed.insert(name, check(&mut r, &f)?);
        records.push(r);
    }
    let mut report = Report::new("label-bound", config, options, None);
    report.note("bound", d);
    report.note("fixed_vectors", fixed);
    let n = records.len();
    report.absorb(records, config.seed);
    finish_round_trip(&mut report, n);
    Ok(report)
}

/// Distribution of `a_rank(f, a)`; values that occur with positive
/// frequency must form an integer interval. A gap is only flagged when
/// some value is an unresolved bracket.
pub fn a_rank_survey(config: &SampleConfig, pairs: usize, options: &RunOptions) -> Result<Report> {
    let outcome = run_parallel(config, |sample| {
        let mut r = SampleRecord::new(&sample);
        let profile = ApolarProfile::new(&sample.form)?;
        let (value, witness) = LabelScan::new(&profile, options.budget.clone())?.a_rank(pairs)?;
        r.a_rank = Some(value);
        if value.exact().is_none() {
            r.flag(SOUND_PARTIAL);
        }
        let label = Label::new(value.upper() + 2 * pairs, pairs);
        round_trip(&mut r, &sample.form, &[(label, witness)], options);
        Ok(r)
    })?;
    let mut report = Report::new("a-rank-survey", config, options, Some(pairs));
    report.absorb(outcome, config.seed);
    finish_round_trip(&mut report, config.count);
    let floor = report.thresholds.min_frequency;
    let frequent: Vec<usize> = report
        .tables
        .get("a_rank")
        .map(|t| {
            t.iter()
                .filter(|(_, &n)| n as f64 / config.count as f64 >= floor)
                .filter_map(|(k, _)| k.parse().ok())
                .collect()
        })
        .unwrap_or_default();
    let mut sorted = frequent.clone();
    sorted.sort_unstable();
    let contiguous = sorted.windows(2).all(|w| w[1] == w[0] + 1);
    report.note("frequent_values", &sorted);
    report.note("contiguous", contiguous);
    if !contiguous {
        if report.sound_partial > 0 {
            report.note("gap_flagged", true);
        } else {
            report.verdict = Verdict::Fail;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_reproducible() {
        let c = SampleConfig::new(3, 2, 10, 42);
        assert_eq!(sample_forms(&c).unwrap(), sample_forms(&c).unwrap());
        let one = sample_forms(&SampleConfig::new(1, 1, 1, 5)).unwrap();
        assert!(!one[0].form.is_zero());
        assert_eq!(sample_form(&c, 1), sample_forms(&c).unwrap()[1]);
    }

    #[test]
    fn no_zero_forms() {
        let c = SampleConfig::new(4, 500, 1, 7);
        for s in sample_forms(&c).unwrap() {
            assert!(s.coefficients.iter().any(|&v| v != 0));
            assert!(s.coefficients.iter().all(|v| v.abs() <= 1));
        }
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(sample_forms(&SampleConfig::new(0, 1, 1, 0)).is_err());
        assert!(sample_forms(&SampleConfig::new(2, 0, 1, 0)).is_err());
        assert!(sample_forms(&SampleConfig::new(2, 1, 0, 0)).is_err());
    }

    #[test]
    fn linear_forms_have_rank_one() {
        let report =
            empirical_distribution(&SampleConfig::new(1, 100, 100, 3), &RunOptions::default())
                .unwrap();
        assert_eq!(report.tables["complex_rank"]["1"], 100);
        assert_eq!(report.tables["admissible_rank"]["1"], 100);
        assert_eq!(report.tables["real_rank"]["1"], 100);
        assert_eq!(report.tables["label_set"]["{(1,0)}"], 100);
    }

    #[test]
    fn jobs_do_not_change_reports() {
        let c = SampleConfig::new(4, 40, 100, 11);
        let a = empirical_distribution(&c, &RunOptions::default())
            .unwrap()
            .to_json();
        let b = empirical_distribution(&c.clone().with_jobs(4), &RunOptions::default())
            .unwrap()
            .to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn small_harnesses_pass() {
        let o = RunOptions::default();
        assert!(
            verify_generic_admissible(&SampleConfig::new(5, 40, 100, 1), &o)
                .unwrap()
                .passed()
        );
        assert!(verify_claim_even(&SampleConfig::new(4, 40, 100, 1), &o)
            .unwrap()
            .passed());
        assert!(verify_label_bound(&SampleConfig::new(4, 20, 100, 1), &o)
            .unwrap()
            .passed());
        let survey = a_rank_survey(&SampleConfig::new(1, 30, 100, 1), 0, &o).unwrap();
        assert_eq!(survey.tables["a_rank"]["1"], 30);
    }
}
