use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use roughspace::harness::{self, HarnessConfig, CHECKS};
use roughspace::signature::signature;
use roughspace::unparam::{dist_d, dist_sig, dist_star, UnparamPath};
use roughspace::variation::{p_var_distance, p_variation, p_variation_lift};
use roughspace::{Error, PiecewiseLinearPath, Result, VerificationReport};

#[derive(Parser, Debug)]
#[command(
    name = "roughspace",
    version,
    about = "Signatures, p-variation and tree-like equivalence of piecewise linear paths"
)]
struct Cli {
    /// Tolerance for bound checks (default from ROUGHSPACE_TOL or 1e-9)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Truncation level N
    #[arg(long, global = true)]
    level: Option<usize>,
    /// Dyadic refinement depth k for lifted quantities
    #[arg(long, global = true)]
    refine: Option<u32>,
    /// Variation exponent p
    #[arg(long, global = true)]
    p: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the truncated signature of a path file ("-" reads stdin)
    Sig { path: String },
    /// p-variation of a path: exact, or the lifted lower bound when --level is at least 2
    Pvar { path: String },
    /// Distance between two paths, or a distance matrix over a corpus
    Dist(DistArgs),
    /// Print the tree-reduced, constant-speed representative
    Reduce {
        path: String,
        /// Emit CSV instead of JSON
        #[arg(long)]
        csv: bool,
    },
    /// Run a verification check by name, or `all`
    Verify {
        check: String,
        #[command(flatten)]
        params: CheckParams,
    },
    /// Run a check and write its sweep table as CSV
    Sweep {
        check: String,
        #[arg(long)]
        csv: PathBuf,
        #[command(flatten)]
        params: CheckParams,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Metric {
    /// p-variation distance between canonical representatives
    D,
    /// p-variation of the reduced X * reverse(Y)
    Star,
    /// product metric on truncated signatures
    Sig,
    /// p-variation distance between the paths as given
    Pvar,
}

#[derive(Args, Debug)]
struct DistArgs {
    a: Option<String>,
    b: Option<String>,
    #[arg(long, value_enum, default_value = "d")]
    metric: Metric,
    /// File listing one path file per line; prints a CSV matrix
    #[arg(long, conflicts_with_all = ["a", "b"])]
    matrix: Option<PathBuf>,
    /// Write the matrix to this file instead of stdout
    #[arg(long, requires = "matrix")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckParams {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    j_max: Option<u32>,
    #[arg(long)]
    directions: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
}

enum Failure {
    Verification,
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn read_path(arg: &str) -> Result<PiecewiseLinearPath> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        if text.trim_start().starts_with('{') {
            PiecewiseLinearPath::from_json(&text)
        } else {
            PiecewiseLinearPath::from_csv(&text)
        }
    } else {
        PiecewiseLinearPath::read_file(arg)
    }
}

fn config(cli: &Cli, params: &CheckParams) -> HarnessConfig {
    let mut cfg = HarnessConfig::default();
    if let Some(p) = cli.p {
        cfg.p = p;
    }
    if let Some(n) = cli.level {
        cfg.level = n;
    }
    if let Some(k) = cli.refine {
        cfg.refine = k;
    }
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    if let Some(s) = params.seed {
        cfg.seed = s;
    }
    if let Some(n) = params.n_max {
        cfg.n_max = n;
    }
    if let Some(e) = params.eps {
        cfg.eps = e;
    }
    if let Some(j) = params.j_max {
        cfg.j_max = j;
    }
    if let Some(m) = params.directions {
        cfg.directions = m;
    }
    if let Some(s) = params.samples {
        cfg.samples = s;
    }
    cfg
}

fn run_reports(check: &str, cfg: &HarnessConfig) -> Result<Vec<VerificationReport>> {
    if check == "all" {
        harness::run_all(cfg)
    } else {
        Ok(vec![harness::run_check(check, cfg)?])
    }
}

fn outcome(reports: &[VerificationReport]) -> std::result::Result<(), Failure> {
    for r in reports {
        print!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} checks, {} failed", reports.len(), failed);
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn distance(
    metric: Metric,
    a: &PiecewiseLinearPath,
    b: &PiecewiseLinearPath,
    p: f64,
    level: usize,
    refine: u32,
) -> Result<f64> {
    match metric {
        Metric::Pvar => Ok(p_var_distance(a, b, p, level, refine)?.value),
        _ => {
            let ca = UnparamPath::canonicalize(a, p, level)?;
            let cb = UnparamPath::canonicalize(b, p, level)?;
            match metric {
                Metric::D => dist_d(&ca, &cb, refine),
                Metric::Star => dist_star(&ca, &cb, refine),
                _ => dist_sig(&ca, &cb),
            }
        }
    }
}

fn metric_label(metric: Metric, p: f64, level: usize, refine: u32) -> String {
    let name = match metric {
        Metric::D => "d",
        Metric::Star => "star",
        Metric::Sig => "sig",
        Metric::Pvar => "pvar",
    };
    format!("{name}(p={p};N={level};k={refine})")
}

fn read_corpus(list: &Path) -> Result<Vec<(String, PiecewiseLinearPath)>> {
    let text = std::fs::read_to_string(list)?;
    let base = list.parent().unwrap_or(Path::new("."));
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let file = base.join(l);
            let path = PiecewiseLinearPath::read_file(&file)
                .map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
            Ok((l.to_string(), path))
        })
        .collect()
}

fn distance_matrix(
    args: &DistArgs,
    list: &Path,
    p: f64,
    level: usize,
    refine: u32,
) -> Result<String> {
    let corpus = read_corpus(list)?;
    let rows: Vec<Vec<f64>> = corpus
        .par_iter()
        .map(|(_, a)| {
            corpus
                .iter()
                .map(|(_, b)| distance(args.metric, a, b, p, level, refine))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![metric_label(args.metric, p, level, refine)];
    header.extend(corpus.iter().map(|(n, _)| n.clone()));
    w.write_record(&header)?;
    for ((name, _), row) in corpus.iter().zip(rows) {
        let mut rec = vec![name.clone()];
        rec.extend(row.iter().map(f64::to_string));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf8"))
}

fn run(cli: &Cli) -> std::result::Result<(), Failure> {
    let p = cli.p.unwrap_or(1.5);
    let refine = cli.refine.unwrap_or(roughspace::DEFAULT_REFINE);
    match &cli.command {
        Command::Sig { path } => {
            let x = read_path(path)?;
            let level = cli.level.unwrap_or(roughspace::DEFAULT_LEVEL);
            print!("{}", signature(&x, level).tensor().to_text());
        }
        Command::Pvar { path } => {
            let x = read_path(path)?;
            let result = match cli.level {
                Some(level) if level >= 2 => p_variation_lift(&x, p, level, refine)?,
                _ => p_variation(&x, p)?,
            };
            print!("{result}");
            if !result.exact {
                println!("gauge: homogeneous-norm");
            }
        }
        Command::Dist(args) => {
            let level = cli.level.unwrap_or(roughspace::DEFAULT_LEVEL);
            if let Some(list) = &args.matrix {
                let csv = distance_matrix(args, list, p, level, refine)?;
                match &args.out {
                    Some(out) => std::fs::write(out, csv).map_err(Error::from)?,
                    None => print!("{csv}"),
                }
            } else {
                let (Some(a), Some(b)) = (&args.a, &args.b) else {
                    return Err(Failure::Input(Error::Parse(
                        "dist needs two path files or --matrix".into(),
                    )));
                };
                let value = distance(
                    args.metric,
                    &read_path(a)?,
                    &read_path(b)?,
                    p,
                    level,
                    refine,
                )?;
                println!("{value}");
            }
        }
        Command::Reduce { path, csv } => {
            let x = read_path(path)?;
            let reduced = x.tree_reduce().with_horizon(1.0)?.constant_speed();
            if *csv {
                print!("{}", reduced.to_csv());
            } else {
                println!("{}", reduced.to_json());
            }
        }
        Command::Verify { check, params } => {
            let reports = run_reports(check, &config(cli, params))?;
            outcome(&reports)?;
        }
        Command::Sweep { check, csv, params } => {
            if check == "all" {
                return Err(Failure::Input(Error::Parse(format!(
                    "sweep needs a single check; one of {}",
                    CHECKS.join(", ")
                ))));
            }
            let report = harness::run_check(check, &config(cli, params))?;
            let Some(sweep) = &report.sweep else {
                return Err(Failure::Input(Error::Parse(format!(
                    "check '{check}' has no sweep table"
                ))));
            };
            std::fs::write(csv, sweep.to_csv()).map_err(Error::from)?;
            outcome(std::slice::from_ref(&report))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("roughspace: {e}");
            ExitCode::from(2)
        }
    }
}
