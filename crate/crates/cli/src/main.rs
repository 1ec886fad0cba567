use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use splice_rank::cfk::{corpus, corpus_names, BifilteredComplex, CfkError};
use splice_rank::duality::DualityError;
use splice_rank::filtration::{lemma_suite, reading_survey};
use splice_rank::report::{
    fuzz_case, pair_checks, run_knot_checks, FuzzConfig, Knot, KnotChecks, PairSummary, RunReport, Suite,
};
use splice_rank::splice::{mirror_invariance, SpliceError};
use splice_rank::surgery::SurgeryError;

mod render;

/// Exact GF(2) computations of knot surgery packages and splice ranks.
#[derive(Parser)]
#[command(name = "splice-rank", version)]
struct Cli {
    /// Print the machine-readable report instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a complex is a valid symmetric model.
    Validate { input: String },
    /// Hat knot Floer ranks by Alexander grading.
    Hfk { input: String },
    /// The normalized package and its statistics.
    Package { input: String },
    /// The two filtrations of the ambient homology.
    Profile { input: String },
    /// All dimension identities between the profile, the surgery groups and the package.
    Lemmas { input: String },
    /// Rank of the splice of two knots with every bound and check.
    Splice { first: String, second: String },
    /// Random complexes, knot models and synthetic packages.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_gen: usize,
    },
    /// Built-in models.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Names accepted wherever a file is.
    List,
}

/// Why a run stopped before producing a report.
enum Failure {
    Input(String),
    Invariant(String),
}

impl From<SpliceError> for Failure {
    fn from(e: SpliceError) -> Self {
        let msg = e.to_string();
        match e {
            SpliceError::Duality(DualityError::Surgery(SurgeryError::Cfk(_)) | DualityError::FlipNotGraded) => {
                Failure::Input(msg)
            }
            _ => Failure::Invariant(msg),
        }
    }
}

/// A relation failure is the input's fault when the input supplied the
/// duality maps itself.
fn knot_failure(c: &BifilteredComplex, e: SpliceError) -> Failure {
    match e {
        SpliceError::Duality(DualityError::TauRelationFailure(msg)) if c.tau_override().is_some() => {
            Failure::Input(format!("{}: tau_override rejected: {msg}", c.name()))
        }
        e => e.into(),
    }
}

fn build_knot(c: &BifilteredComplex) -> Result<Knot, Failure> {
    Knot::new(c.clone()).map_err(|e| knot_failure(c, e))
}

impl From<CfkError> for Failure {
    fn from(e: CfkError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// A file path, or a corpus name when no such file exists.
fn load(input: &str) -> Result<BifilteredComplex, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{input}: {e}")))?;
        BifilteredComplex::from_json(&text).map_err(|e| Failure::Input(format!("{input}: {e}")))
    } else {
        corpus(input).map_err(|e| Failure::Input(format!("{input}: not a file and {e}")))
    }
}

fn require_valid(c: &BifilteredComplex, input: &str) -> Result<(), Failure> {
    let report = c.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure::Input(format!(
            "{input}: not a valid complex: {}",
            render::violations(&report)
        )))
    }
}

const STRUCTURE: KnotChecks = KnotChecks {
    structure: true,
    profile: false,
    lemmas: false,
    unknot: false,
};

fn knot_report(
    command: &str,
    input: &str,
    which: KnotChecks,
) -> Result<(RunReport, Option<Knot>, BifilteredComplex), Failure> {
    let c = load(input)?;
    require_valid(&c, input)?;
    let mut report = RunReport::new(command, vec![input.to_string()]);
    let knot = run_knot_checks(&mut report.suite, &c, true, which, input);
    if let Some(k) = &knot {
        report.knots.push(k.summary()?);
    }
    Ok((report, knot, c))
}

/// Why the checks could not produce a knot.
fn missing_knot(c: &BifilteredComplex) -> Failure {
    match build_knot(c) {
        Err(f) => f,
        Ok(_) => Failure::Invariant("package construction is not deterministic".into()),
    }
}

fn run(cli: &Cli) -> Result<RunReport, Failure> {
    match &cli.command {
        Command::Validate { input } => {
            let c = load(input)?;
            let mut report = RunReport::new("validate", vec![input.clone()]);
            let v = c.validate();
            report.detail("violations", &v.violations);
            if !v.is_valid() {
                return Err(Failure::Input(format!("{input}: {}", render::violations(&v))));
            }
            let flip = c.flip_map();
            report.suite.record("complex is valid", true, input, String::new);
            report
                .suite
                .record("flip is a quasi-isomorphism", flip.is_ok(), input, || {
                    format!("{flip:?}")
                });
            if let Err(e) = flip {
                return Err(Failure::Input(format!("{input}: {e}")));
            }
            Ok(report)
        }
        Command::Hfk { input } => {
            let c = load(input)?;
            require_valid(&c, input)?;
            let mut report = RunReport::new("hfk", vec![input.clone()]);
            report.detail("hfk", &c.hfk_ranks()?);
            report.detail("ambient_rank", &c.ambient_rank()?);
            Ok(report)
        }
        Command::Package { input } => {
            let (mut report, knot, c) = knot_report("package", input, STRUCTURE)?;
            let knot = knot.ok_or_else(|| missing_knot(&c))?;
            report.detail("package", &knot.package);
            if let Ok(s) = knot.package.stats() {
                report.detail("stats", &s);
            }
            Ok(report)
        }
        Command::Profile { input } => {
            let which = KnotChecks {
                profile: true,
                ..STRUCTURE
            };
            let (mut report, knot, c) = knot_report("profile", input, which)?;
            let knot = knot.ok_or_else(|| missing_knot(&c))?;
            report.detail("graded", &render::graded_rows(&knot.profile));
            report.detail("kernels", &render::kernel_rows(&knot.profile));
            Ok(report)
        }
        Command::Lemmas { input } => {
            let which = KnotChecks {
                profile: true,
                lemmas: true,
                ..STRUCTURE
            };
            let (mut report, knot, c) = knot_report("lemmas", input, which)?;
            let knot = knot.ok_or_else(|| missing_knot(&c))?;
            let lemmas = lemma_suite(&c, &knot.package, &knot.profile)
                .map_err(DualityError::from)
                .map_err(SpliceError::from)?;
            report.detail("lemmas", &lemmas);
            let survey: Vec<_> = reading_survey(&knot.package, &knot.profile)
                .into_iter()
                .map(|(reading, eq)| serde_json::json!({"reading": reading, "check": eq, "holds": eq.holds()}))
                .collect();
            report.detail("stated_exponent_readings", &survey);
            Ok(report)
        }
        Command::Splice { first, second } => {
            let (k1, k2) = (load(first)?, load(second)?);
            require_valid(&k1, first)?;
            require_valid(&k2, second)?;
            let mut report = RunReport::new("splice", vec![first.clone(), second.clone()]);
            let a = build_knot(&k1)?;
            let b = build_knot(&k2)?;
            report.knots.push(a.summary()?);
            report.knots.push(b.summary()?);
            let repro = format!("splice {first} {second}");
            let analysis = pair_checks(
                &mut report.suite,
                &a.package,
                &b.package,
                Some(&a.profile),
                true,
                &repro,
            )
            .ok_or_else(|| Failure::Invariant(format!("{:?}", report.suite.failures())))?;
            let m = mirror_invariance(&k1, &k2)?;
            report
                .suite
                .record("mirror invariance", m.holds, &repro, || format!("{m:?}"));
            report.detail("mirror", &m);
            report.pairs.push(PairSummary {
                first: k1.name().to_string(),
                second: k2.name().to_string(),
                odd: analysis.rank.h % 2 == 1,
                analysis,
            });
            Ok(report)
        }
        Command::Fuzz { seed, count, max_gen } => {
            let cfg = FuzzConfig {
                seed: *seed,
                count: *count,
                max_gen: *max_gen,
            };
            let mut report = RunReport::new("fuzz", Vec::new());
            report.seed = Some(*seed);
            report.detail("config", &cfg);
            let cases: Vec<Suite> = (0..cfg.count).into_par_iter().map(|i| fuzz_case(&cfg, i)).collect();
            for s in cases {
                report.suite.merge(s);
            }
            Ok(report)
        }
        Command::Corpus {
            action: CorpusAction::List,
        } => {
            let mut report = RunReport::new("corpus list", Vec::new());
            report.detail("names", &corpus_names());
            Ok(report)
        }
    }
}

/// Applies `SPLICE_RANK_THREADS` to the global pool.
fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SPLICE_RANK_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("SPLICE_RANK_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(report) => {
            let report = report.finish();
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", render::human(&report));
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
