//! Command-line front end. Every command writes JSON (or CSV for sampling
//! reports) and maps outcomes onto fixed exit codes.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::apolarity::ApolarProfile;
use crate::error::Error;
use crate::form::HomForm;
use crate::json::{self, DecompositionJson, LabelSetJson, LabelsJson, RankJson};
use crate::real_rank::{
    admissible_label, labels_at, rank_report, witness_for, Label, RankOptions, SearchBudget,
};
use crate::sampler::{self, Report, RunOptions, SampleConfig, Thresholds};
use crate::witness::{decompose, verify_decomposition};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_FAIL: u8 = 3;

/// Environment variable holding the default for `--jobs`.
pub const JOBS_ENV: &str = "REALRANK_JOBS";

const AFTER_HELP: &str = "\
Forms are given by coefficients c_0,...,c_d where c_i multiplies x^(d-i) y^i.
Each coefficient is an integer \"p\" or a fraction \"p/q\".

Exit codes: 0 success or PASS, 1 input error, 2 inconclusive result or
certification failure, 3 verification FAIL.";

#[derive(Debug, Parser)]
#[command(
    name = "realrank",
    version,
    about = "Complex, admissible and real ranks of real binary forms"
)]
#[command(after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank triple, labels at the admissible rank and witnesses.
    Rank(RankArgs),
    /// Achievable labels at the admissible rank, or at a chosen degree.
    Labels(LabelsArgs),
    /// Explicit decomposition with a requested label.
    Decompose(DecomposeArgs),
    /// Rank and label statistics over random forms.
    Sample(SampleArgs),
    /// Check a generic property over random forms.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct FormArgs {
    /// Comma-separated coefficients c_0,...,c_d of sum c_i x^(d-i) y^i.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
}

/// Effort spent on apolar kernels of dimension three or more.
#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Grid weights range over -grid-bound..=grid-bound.
    #[arg(long, default_value_t = 1)]
    pub grid_bound: i64,
    /// Cap on the number of grid combinations tried.
    #[arg(long, default_value_t = 243)]
    pub max_grid: usize,
    /// Random combinations tried after the grid.
    #[arg(long, default_value_t = 64)]
    pub random_samples: usize,
    /// Attempts per root pattern when fixing a factor of the witness.
    #[arg(long, default_value_t = 8)]
    pub factor_tries: usize,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            grid_bound: self.grid_bound.max(0),
            max_grid: self.max_grid,
            random_samples: self.random_samples,
            factor_tries: self.factor_tries,
        }
    }
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub form: FormArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Exit with code 2 if the real rank is only bracketed.
    #[arg(long)]
    pub strict: bool,
    /// Also list label sets up to this degree (non-normative).
    #[arg(long, value_name = "S")]
    pub explore: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LabelsArgs {
    #[command(flatten)]
    pub form: FormArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Degree of the apolar forms to inspect; the result is non-normative.
    #[arg(long, value_name = "S")]
    pub at: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub form: FormArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Requested label "s,a"; defaults to the admissible witness.
    #[arg(long, value_name = "S,A", value_parser = parse_label)]
    pub label: Option<Label>,
    /// Relative residual tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub degree: usize,
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Coefficients are drawn uniformly from [-bound, bound].
    #[arg(long, default_value_t = 100)]
    pub bound: i64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub report: ReportFormat,
    /// Report file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads. Results do not depend on it.
    #[arg(long, env = JOBS_ENV)]
    pub jobs: Option<usize>,
    /// Skip decomposing along the witnesses.
    #[arg(long)]
    pub no_round_trip: bool,
    /// Relative residual tolerance for the round trip.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 0.01)]
    pub min_frequency: f64,
    #[arg(long, default_value_t = 0.99)]
    pub majority: f64,
    #[arg(long, default_value_t = 0.01)]
    pub max_quarantine: f64,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    GenericAdmissible,
    LabelsOdd,
    ClaimEven,
    LabelBound,
    ARankSurvey,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub kind: VerifyKind,
    /// Number of conjugate pairs for a-rank-survey.
    #[arg(long, default_value_t = 1)]
    pub pairs: usize,
    #[command(flatten)]
    pub run: RunArgs,
}

fn parse_label(s: &str) -> Result<Label, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"s,a\", got {s:?}"))?;
    let s_val: usize = a.trim().parse().map_err(|_| format!("bad s in {s:?}"))?;
    let a_val: usize = b.trim().parse().map_err(|_| format!("bad a in {s:?}"))?;
    if s_val == 0 || 2 * a_val > s_val {
        return Err(format!("label {s:?} needs s >= 1 and 2a <= s"));
    }
    Ok(Label::new(s_val, a_val))
}

/// Outcome of a command: exit code plus text for standard output and error.
struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::CertificationFailed { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_INPUT,
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_INPUT
                }
            };
        }
    };
    let outcome = dispatch(cli.command).unwrap_or_else(|e| Outcome {
        code: error_code(&e),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    });
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = err.write_all(outcome.stderr.as_bytes());
    outcome.code
}

fn dispatch(command: Command) -> crate::Result<Outcome> {
    match command {
        Command::Rank(a) => cmd_rank(&a),
        Command::Labels(a) => cmd_labels(&a),
        Command::Decompose(a) => cmd_decompose(&a),
        Command::Sample(a) => cmd_run(&a.run, "sample", |c, o| {
            sampler::empirical_distribution(c, o)
        }),
        Command::Verify(a) => {
            let name = a
                .kind
                .to_possible_value()
                .map(|v| v.get_name().to_string())
                .unwrap_or_default();
            let pairs = a.pairs;
            match a.kind {
                VerifyKind::GenericAdmissible => {
                    cmd_run(&a.run, &name, sampler::verify_generic_admissible)
                }
                VerifyKind::LabelsOdd => cmd_run(&a.run, &name, sampler::verify_labels_odd),
                VerifyKind::ClaimEven => cmd_run(&a.run, &name, sampler::verify_claim_even),
                VerifyKind::LabelBound => cmd_run(&a.run, &name, sampler::verify_label_bound),
                VerifyKind::ARankSurvey => {
                    cmd_run(&a.run, &name, |c, o| sampler::a_rank_survey(c, pairs, o))
                }
            }
        }
    }
}

fn cmd_rank(args: &RankArgs) -> crate::Result<Outcome> {
    let input = HomForm::parse(&args.form.coeffs)?;
    let f = input.canonical()?;
    let options = RankOptions {
        budget: args.budget.budget(),
        explore_to: args.explore,
    };
    let report = rank_report(&f, &options)?;
    let mut outcome = Outcome::ok(json::to_string(&RankJson::new(&input, &report)));
    if args.strict && report.real_rank.exact().is_none() {
        outcome.code = EXIT_INCONCLUSIVE;
        outcome.stderr = format!("real rank is only bracketed: {}\n", report.real_rank);
    }
    Ok(outcome)
}

fn cmd_labels(args: &LabelsArgs) -> crate::Result<Outcome> {
    let input = HomForm::parse(&args.form.coeffs)?;
    let f = input.canonical()?;
    let profile = ApolarProfile::new(&f)?;
    let budget = args.budget.budget();
    let (s, normative) = match args.at {
        Some(s) => (s, false),
        None => (crate::real_rank::admissible_rank(&profile)?.0, true),
    };
    let set = labels_at(&profile, s, &budget)?;
    let body = LabelsJson {
        form: (&input).into(),
        set: LabelSetJson::new(&set, normative),
    };
    Ok(Outcome::ok(json::to_string(&body)))
}

fn cmd_decompose(args: &DecomposeArgs) -> crate::Result<Outcome> {
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "tolerance must be positive, got {}",
            args.tol
        )));
    }
    let input = HomForm::parse(&args.form.coeffs)?;
    let f = input.canonical()?;
    let profile = ApolarProfile::new(&f)?;
    let (label, witness) = match args.label {
        None => admissible_label(&profile)?,
        Some(label) => match witness_for(&profile, label, &args.budget.budget())? {
            Some(g) => (label, g),
            None => {
                return Ok(Outcome {
                    code: EXIT_INCONCLUSIVE,
                    stdout: String::new(),
                    stderr: format!(
                        "label {label} not found; the search at s = {} is incomplete\n",
                        label.s
                    ),
                })
            }
        },
    };
    let dec = decompose(&input, &witness, args.tol)?;
    let verification = verify_decomposition(&input, &dec, args.tol, Some(label));
    let passed = verification.passed;
    let body = DecompositionJson::new(&input, label, &dec, verification);
    let mut outcome = Outcome::ok(json::to_string(&body));
    if !passed {
        outcome.code = EXIT_INCONCLUSIVE;
        outcome.stderr = "decomposition did not pass verification\n".into();
    }
    Ok(outcome)
}

fn cmd_run(
    args: &RunArgs,
    name: &str,
    harness: impl Fn(&SampleConfig, &RunOptions) -> crate::Result<Report>,
) -> crate::Result<Outcome> {
    let jobs = args.jobs.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    });
    if jobs == 0 {
        return Err(Error::InvalidConfig("jobs must be at least 1".into()));
    }
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "tolerance must be positive, got {}",
            args.tol
        )));
    }
    let fractions = [args.min_frequency, args.majority, args.max_quarantine];
    if fractions.iter().any(|t| !(0.0..=1.0).contains(t)) {
        return Err(Error::InvalidConfig("thresholds must lie in [0, 1]".into()));
    }
    let config = SampleConfig::new(args.degree, args.count, args.bound, args.seed).with_jobs(jobs);
    config.validate()?;
    let options = RunOptions {
        thresholds: Thresholds {
            min_frequency: args.min_frequency,
            majority: args.majority,
            max_quarantine: args.max_quarantine,
        },
        budget: args.budget.budget(),
        round_trip: !args.no_round_trip,
        tolerance: args.tol,
    };
    let report = harness(&config, &options)?;
    let body = match args.report {
        ReportFormat::Json => report.to_json().into_bytes(),
        ReportFormat::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            buf
        }
    };
    let line = summary_line(name, &report);
    let code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
    match &args.out {
        Some(path) => {
            fs::write(path, &body).map_err(|e| {
                Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))
            })?;
            Ok(Outcome {
                code,
                stdout: line,
                stderr: String::new(),
            })
        }
        None => Ok(Outcome {
            code,
            stdout: String::from_utf8(body).expect("reports are UTF-8"),
            stderr: line,
        }),
    }
}

fn summary_line(name: &str, report: &Report) -> String {
    let c = &report.config;
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    let mut line = format!(
        "{verdict} {name} degree={} count={} seed={} bound={} quarantined={} violations={}",
        c.degree,
        c.count,
        c.seed,
        c.bound,
        report.quarantined.len(),
        report.violations.len()
    );
    for (k, t) in &report.tables {
        if matches!(
            k.as_str(),
            "admissible_rank" | "real_rank" | "a_rank" | "label"
        ) {
            let cells: Vec<String> = t.iter().map(|(v, n)| format!("{v}:{n}")).collect();
            line.push_str(&format!(" {k}={{{}}}", cells.join(",")));
        }
    }
    line.push('\n');
    line
}
