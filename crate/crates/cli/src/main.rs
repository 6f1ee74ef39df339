//! `mcdm`: weight, rank, compare, and report on decision problems from the
//! command line.
//!
//! Exit codes: 0 success, 2 usage error, 3 input or parse error, 4
//! validation failure. Success paths write nothing to stderr, and output
//! for fixed inputs and flags is byte-identical across runs.

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use mcdm_core::report::{
    comparison_document, emit_report, ranking_document, weights_document, ComparisonInput,
};
use mcdm_core::{
    check_fixture, compare_rankings, entropy_weights, load_problem, manual_weights, moora,
    stddev_weights, topsis, DecisionProblem, IoError, RankMethod, Ranking, Table3Fixture,
    WeightReport, WeightVector,
};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mcdm",
    version,
    about = "Deterministic multi-criteria decision making: objective weighting, TOPSIS/MOORA ranking, agreement statistics and report bundles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightMethodArg {
    /// Shannon-entropy weights from column dispersion
    Entropy,
    /// Standard-deviation weights over min-max normalized columns
    Stddev,
    /// Fixed weights from the criteria config
    Manual,
}

impl WeightMethodArg {
    fn name(self) -> &'static str {
        match self {
            WeightMethodArg::Entropy => "entropy",
            WeightMethodArg::Stddev => "stddev",
            WeightMethodArg::Manual => "manual",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RankMethodArg {
    Topsis,
    Moora,
}

impl From<RankMethodArg> for RankMethod {
    fn from(arg: RankMethodArg) -> RankMethod {
        match arg {
            RankMethodArg::Topsis => RankMethod::Topsis,
            RankMethodArg::Moora => RankMethod::Moora,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute a criterion weight vector and print it as a JSON document
    Weights {
        /// Weighting method
        #[arg(long, value_enum)]
        method: WeightMethodArg,
        /// Decision matrix CSV (first column "alternative")
        #[arg(long)]
        matrix: PathBuf,
        /// Criteria config TOML
        #[arg(long)]
        criteria: PathBuf,
        /// Write the document here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank the alternatives and print a ranking JSON document
    Rank {
        /// Ranking method
        #[arg(long, value_enum)]
        method: RankMethodArg,
        /// Decision matrix CSV (first column "alternative")
        #[arg(long)]
        matrix: PathBuf,
        /// Criteria config TOML
        #[arg(long)]
        criteria: PathBuf,
        /// Weights document path, or a weighting method name
        /// (entropy|stddev|manual) to compute on the fly; an existing file
        /// wins over a method name
        #[arg(long)]
        weights: String,
    },
    /// Compare two ranking documents and print agreement statistics
    Compare {
        /// First ranking document
        #[arg(long)]
        a: PathBuf,
        /// Second ranking document
        #[arg(long)]
        b: PathBuf,
    },
    /// Run the full pipeline and write a report bundle
    Report {
        /// Decision matrix CSV (first column "alternative")
        #[arg(long)]
        matrix: PathBuf,
        /// Criteria config TOML
        #[arg(long)]
        criteria: PathBuf,
        /// Weighting methods for the bundle; the first drives the rankings
        #[arg(long, value_enum, value_delimiter = ',', default_value = "entropy,stddev")]
        weights_methods: Vec<WeightMethodArg>,
        /// Ranking methods; two methods add a comparison and scatter chart
        #[arg(long, value_enum, value_delimiter = ',', default_value = "topsis,moora")]
        rank_methods: Vec<RankMethodArg>,
        /// Output directory (created if missing)
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Validate a published-results fixture and print a summary
    CheckFixture {
        /// Fixture CSV
        #[arg(long)]
        fixture: PathBuf,
    },
}

enum CliError {
    /// Unreadable or unparseable input (exit 3).
    Input(String),
    /// Well-formed input that fails a semantic check (exit 4).
    Validation(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 3,
            CliError::Validation(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Validation(m) => m,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> CliError {
        match e {
            IoError::Invalid { .. } => CliError::Validation(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Weights {
            method,
            matrix,
            criteria,
            out,
        } => cmd_weights(method, &matrix, &criteria, out.as_deref()),
        Command::Rank {
            method,
            matrix,
            criteria,
            weights,
        } => cmd_rank(method.into(), &matrix, &criteria, &weights),
        Command::Compare { a, b } => cmd_compare(&a, &b),
        Command::Report {
            matrix,
            criteria,
            weights_methods,
            rank_methods,
            out_dir,
        } => cmd_report(&matrix, &criteria, &weights_methods, &rank_methods, &out_dir),
        Command::CheckFixture { fixture } => cmd_check_fixture(&fixture),
    }
}

/// Usage problems detected after clap parsing still exit with the usage
/// code and print through clap for consistent formatting.
fn usage_error(message: &str) -> ! {
    Cli::command()
        .error(ErrorKind::InvalidValue, message)
        .exit()
}

fn compute_weights(
    problem: &DecisionProblem,
    method: WeightMethodArg,
    criteria_path: &Path,
) -> Result<WeightReport, CliError> {
    match method {
        WeightMethodArg::Entropy => Ok(entropy_weights(problem)),
        WeightMethodArg::Stddev => Ok(stddev_weights(problem)),
        WeightMethodArg::Manual => manual_weights(problem).map_err(|e| {
            CliError::Validation(format!("{}: {}", criteria_path.display(), e))
        }),
    }
}

fn write_or_print(doc: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, doc)
            .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e))),
        None => {
            print!("{doc}");
            Ok(())
        }
    }
}

fn cmd_weights(
    method: WeightMethodArg,
    matrix: &Path,
    criteria: &Path,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let problem = load_problem(matrix, criteria)?;
    let report = compute_weights(&problem, method, criteria)?;
    let names: Vec<String> = problem.criteria().iter().map(|c| c.name.clone()).collect();
    write_or_print(&weights_document(&report, &names), out)
}

fn cmd_rank(
    method: RankMethod,
    matrix: &Path,
    criteria: &Path,
    weights_arg: &str,
) -> Result<(), CliError> {
    let problem = load_problem(matrix, criteria)?;
    let weights = resolve_weights(&problem, weights_arg, criteria)?;
    let ranking = run_ranker(&problem, &weights, method)?;
    write_or_print(&ranking_document(&ranking, problem.alternatives()), None)
}

/// An existing file wins over a method name; a value that is neither is an
/// input error.
fn resolve_weights(
    problem: &DecisionProblem,
    weights_arg: &str,
    criteria_path: &Path,
) -> Result<WeightVector, CliError> {
    let as_path = Path::new(weights_arg);
    if as_path.exists() {
        let doc = mcdm_core::io::read_weights_doc(as_path)?;
        let names: Vec<&str> = problem.criteria().iter().map(|c| c.name.as_str()).collect();
        let doc_names: Vec<&str> = doc.criteria.iter().map(String::as_str).collect();
        if names != doc_names {
            return Err(CliError::Validation(format!(
                "{}: weights cover criteria [{}] but the problem has [{}]",
                as_path.display(),
                doc_names.join(", "),
                names.join(", ")
            )));
        }
        return WeightVector::new(doc.weights)
            .map_err(|e| CliError::Validation(format!("{}: {}", as_path.display(), e)));
    }
    let method = match weights_arg {
        "entropy" => WeightMethodArg::Entropy,
        "stddev" => WeightMethodArg::Stddev,
        "manual" => WeightMethodArg::Manual,
        other => {
            return Err(CliError::Input(format!(
                "\"{other}\" is neither an existing weights file nor a weighting method (entropy|stddev|manual)"
            )))
        }
    };
    Ok(compute_weights(problem, method, criteria_path)?.weights)
}

fn run_ranker(
    problem: &DecisionProblem,
    weights: &WeightVector,
    method: RankMethod,
) -> Result<Ranking, CliError> {
    let result = match method {
        RankMethod::Topsis => topsis(problem, weights),
        RankMethod::Moora => moora(problem, weights),
    };
    result.map_err(|e| CliError::Validation(e.to_string()))
}

fn parse_rank_method(path: &Path, name: &str) -> Result<RankMethod, CliError> {
    match name {
        "topsis" => Ok(RankMethod::Topsis),
        "moora" => Ok(RankMethod::Moora),
        other => Err(CliError::Validation(format!(
            "{}: unknown ranking method {:?}",
            path.display(),
            other
        ))),
    }
}

fn check_rank_permutation(path: &Path, ranks: &[usize]) -> Result<(), CliError> {
    let m = ranks.len();
    let mut seen = vec![false; m];
    for &r in ranks {
        if r == 0 || r > m || seen[r - 1] {
            return Err(CliError::Validation(format!(
                "{}: ranks are not a permutation of 1..={}",
                path.display(),
                m
            )));
        }
        seen[r - 1] = true;
    }
    Ok(())
}

fn cmd_compare(a_path: &Path, b_path: &Path) -> Result<(), CliError> {
    let a = mcdm_core::io::read_ranking_doc(a_path)?;
    let b = mcdm_core::io::read_ranking_doc(b_path)?;
    if a.alternatives != b.alternatives {
        return Err(CliError::Validation(format!(
            "{} and {} rank different alternatives",
            a_path.display(),
            b_path.display()
        )));
    }
    check_rank_permutation(a_path, &a.ranks)?;
    check_rank_permutation(b_path, &b.ranks)?;
    let method_a = parse_rank_method(a_path, &a.method)?;
    let method_b = parse_rank_method(b_path, &b.method)?;
    let ranking_a = Ranking {
        method: method_a,
        scores: a.scores,
        ranks: a.ranks,
        diagnostics: None,
        degenerate: a.degenerate,
    };
    let ranking_b = Ranking {
        method: method_b,
        scores: b.scores,
        ranks: b.ranks,
        diagnostics: None,
        degenerate: b.degenerate,
    };
    let cmp = compare_rankings(&ranking_a, &ranking_b)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let doc = comparison_document(
        &cmp,
        method_a,
        method_b,
        &ranking_a.ranks,
        &ranking_b.ranks,
        &a.alternatives,
    );
    write_or_print(&doc, None)
}

fn cmd_report(
    matrix: &Path,
    criteria: &Path,
    weights_methods: &[WeightMethodArg],
    rank_methods: &[RankMethodArg],
    out_dir: &Path,
) -> Result<(), CliError> {
    if weights_methods.is_empty() {
        usage_error("--weights-methods needs at least one method");
    }
    if rank_methods.is_empty() {
        usage_error("--rank-methods needs at least one method");
    }
    for (list, flag) in [
        (
            weights_methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
            "--weights-methods",
        ),
        (
            rank_methods
                .iter()
                .map(|&m| RankMethod::from(m).as_str())
                .collect::<Vec<_>>(),
            "--rank-methods",
        ),
    ] {
        let mut sorted = list.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != list.len() {
            usage_error(&format!("{flag} lists a method twice"));
        }
    }

    let problem = load_problem(matrix, criteria)?;
    let mut weight_reports = Vec::with_capacity(weights_methods.len());
    for &method in weights_methods {
        weight_reports.push(compute_weights(&problem, method, criteria)?);
    }
    // the first weighting method drives every ranking; the rest appear in
    // the weights chart and document for side-by-side comparison
    let ranking_weights = weight_reports[0].weights.clone();
    let mut rankings = Vec::with_capacity(rank_methods.len());
    for &method in rank_methods {
        rankings.push(run_ranker(&problem, &ranking_weights, method.into())?);
    }
    let comparison = if rankings.len() == 2 {
        Some(
            compare_rankings(&rankings[0], &rankings[1])
                .map_err(|e| CliError::Validation(e.to_string()))?,
        )
    } else {
        None
    };
    let comparison_input = comparison.as_ref().map(|cmp| ComparisonInput {
        comparison: cmp,
        method_a: rankings[0].method,
        method_b: rankings[1].method,
    });
    let bundle = emit_report(
        &problem,
        &weight_reports,
        &rankings,
        comparison_input.as_ref(),
        out_dir,
    )?;
    println!("wrote {}", bundle.results_json.display());
    println!("wrote {}", bundle.ranks_csv.display());
    println!("wrote {}", bundle.weights_chart.display());
    if let Some(path) = &bundle.rank_scatter {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_check_fixture(path: &Path) -> Result<(), CliError> {
    let fixture = Table3Fixture::load(path)?;
    let check = check_fixture(&fixture);
    print!("{}", check.summary());
    if check.pass {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "{}: fixture failed validation",
            path.display()
        )))
    }
}
