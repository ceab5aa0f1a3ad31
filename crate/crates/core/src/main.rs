use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use harary_tds::formats::{construction_set_file, edge_list, parse_edge_list, parse_set_file};
use harary_tds::{
    build_harary, classify, construct_2tds, coverage, lower_bounds, solve_exact, sweep,
    sweep_cached, Error, Execution, HararyParams, Method, ResultsCache, SolveOptions, SolveOutcome,
    SweepConfig, Verdict,
};

/// Environment variable holding the worker-thread count.
const WORKERS_ENV: &str = "HARARY_TDS_WORKERS";

const EXIT_PARAMETER: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;
const EXIT_INVALID_SET: u8 = 4;

#[derive(Parser)]
#[command(version, about = "Double total domination in Harary graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Bnb,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Bnb => Method::Bnb,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the edge list of H_{d,n}
    Gen {
        d: usize,
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print every applicable closed-form double total dominating set
    Construct {
        d: usize,
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check each set of a set file against an edge-list graph
    Verify {
        graph: PathBuf,
        sets: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Print the lower and upper bounds for H_{d,n}
    Bounds {
        d: usize,
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Compute the k-tuple total domination number of H_{d,n} exactly
    Solve {
        d: usize,
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value = "bnb")]
        method: MethodArg,
        /// Time limit in seconds
        #[arg(long)]
        budget: Option<f64>,
        /// Split the search across worker threads
        #[arg(long)]
        parallel: bool,
    },
    /// Run the conformance sweep over a parameter grid
    Sweep {
        #[arg(long, default_value_t = 2)]
        d_min: usize,
        #[arg(long)]
        d_max: usize,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Per-instance time limit in seconds
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, value_enum, default_value = "bnb")]
        method: MethodArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Line-delimited JSON results cache
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Write zero for every timing field
        #[arg(long)]
        omit_timing: bool,
    },
}

enum Failure {
    Lib(Error),
    Exit(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

fn budget(seconds: Option<f64>) -> Result<Option<Duration>, Failure> {
    seconds
        .map(|s| {
            Duration::try_from_secs_f64(s).map_err(|_| {
                Error::Parameter(format!("budget {s} is not a valid number of seconds")).into()
            })
        })
        .transpose()
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { d, n, out } => {
            let g = build_harary(&HararyParams::new(d, n)?);
            emit(out.as_ref(), &edge_list(&g))
        }
        Command::Construct { d, n, out } => {
            let p = HararyParams::new(d, n)?;
            let mut text = format!("# {p} claim={}\n", classify(&p).claim);
            text.push_str(&construction_set_file(&construct_2tds(&p)));
            emit(out.as_ref(), &text)
        }
        Command::Verify { graph, sets, k } => {
            if k == 0 {
                return Err(Error::Parameter("k must be at least 1".into()).into());
            }
            let g = parse_edge_list(&fs::read_to_string(&graph)?)?;
            let sets = parse_set_file(&fs::read_to_string(&sets)?, harary_tds::Graph::order(&g))?;
            let mut all_valid = true;
            for (line, set) in sets {
                let cov = coverage(&g, &set)?;
                match cov.first_deficient(k) {
                    None => println!("line {line}: valid {k}TDS"),
                    Some((v, c)) => {
                        all_valid = false;
                        println!("line {line}: not a {k}TDS (label {} has {c} of {k})", v + 1);
                    }
                }
            }
            if all_valid {
                Ok(())
            } else {
                Err(Failure::Exit(EXIT_INVALID_SET))
            }
        }
        Command::Bounds { d, n, k } => {
            let b = lower_bounds(&build_harary(&HararyParams::new(d, n)?), k)?;
            println!("trivial={}", b.trivial);
            println!("degree={}", b.degree);
            println!("degree_sum={}", b.degree_sum);
            println!("upper={}", b.upper);
            Ok(())
        }
        Command::Solve {
            d,
            n,
            k,
            method,
            budget: secs,
            parallel,
        } => {
            let g = build_harary(&HararyParams::new(d, n)?);
            let exec = if parallel {
                Execution::Parallel
            } else {
                Execution::Sequential
            };
            let opts = SolveOptions::new(method.into())
                .budget(budget(secs)?)
                .execution(exec);
            match solve_exact(&g, k, &opts)? {
                SolveOutcome::Solved(r) => {
                    println!("gamma={}", r.gamma);
                    println!("witness={}", r.witness.label_line());
                    println!(
                        "method={} nodes={} ms={}",
                        r.method,
                        r.stats.nodes,
                        r.stats.elapsed.as_millis()
                    );
                    Ok(())
                }
                SolveOutcome::Timeout(i) => {
                    println!("timeout lo={} hi={}", i.lo, i.hi);
                    println!("best={}", i.best.label_line());
                    Err(Failure::Exit(EXIT_TIMEOUT))
                }
            }
        }
        Command::Sweep {
            d_min,
            d_max,
            n_min,
            n_max,
            k,
            budget: secs,
            method,
            out,
            format,
            cache,
            omit_timing,
        } => {
            let mut cfg = SweepConfig::new(d_min..=d_max, n_min..=n_max, k);
            cfg.method = method.into();
            cfg.budget = budget(secs)?;
            let mut output = match cache {
                Some(path) => sweep_cached(&cfg, &mut ResultsCache::open(path)?)?,
                None => sweep(&cfg)?,
            };
            if omit_timing {
                output = output.without_timing();
            }
            let text = match format {
                Format::Json => output.to_json()?,
                Format::Csv => output.to_csv()?,
            };
            emit(out.as_ref(), &text)?;
            if output
                .reports
                .iter()
                .any(|r| r.verdict == Verdict::Unresolved)
            {
                return Err(Failure::Exit(EXIT_TIMEOUT));
            }
            Ok(())
        }
    }
}

fn configure_workers() -> Result<(), Failure> {
    let Ok(value) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let workers: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&w| w > 0)
        .ok_or_else(|| {
            Error::Parameter(format!("{WORKERS_ENV}={value:?} is not a positive integer"))
        })?;
    rayon_pool(workers)
}

#[cfg(feature = "parallel")]
fn rayon_pool(workers: usize) -> Result<(), Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| Error::Parameter(format!("worker pool: {e}")).into())
}

#[cfg(not(feature = "parallel"))]
fn rayon_pool(_workers: usize) -> Result<(), Failure> {
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARAMETER } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_workers().and_then(|()| run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Exit(code)) => ExitCode::from(code),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Infeasible { .. } => EXIT_INFEASIBLE,
                _ => EXIT_PARAMETER,
            })
        }
    }
}
