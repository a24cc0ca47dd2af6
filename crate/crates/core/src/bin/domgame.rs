use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use domgame::forest::explain;
use domgame::generate::{generate_random_forest, generate_random_tree};
use domgame::http::HttpServer;
use domgame::instance::{parse_instance, serialize_instance, InstanceFile};
use domgame::position::Player;
use domgame::service::GameService;
use domgame::solve::{
    run_crosscheck, run_oracle, run_solve, CrosscheckConfig, SolveError, SolveOptions,
    DEFAULT_MAX_UNCLAIMED,
};

const EXIT_DISAGREE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(
    name = "domgame",
    version,
    about = "Solve the Maker-Maker domination game"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Outcome of an instance by the cheapest exact method.
    Solve {
        file: String,
        #[arg(long, default_value_t = DEFAULT_MAX_UNCLAIMED)]
        max_unclaimed: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact value by exhaustive search.
    Oracle {
        file: String,
        /// Side to move, overriding the file.
        #[arg(long)]
        turn: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_UNCLAIMED)]
        max_unclaimed: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Skeleton decomposition and component classification of a forest.
    Classify {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the forest procedure with the oracle.
    Crosscheck {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random forests with 2 or 3 trees.
        #[arg(long, default_value_t = 500)]
        forests: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Print a random tree, or a forest with the given number of trees.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        forest: Option<usize>,
    },
    /// Serve the game API over HTTP.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 4)]
        workers: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        Failure {
            code: if e.is_resource_limit() {
                EXIT_GUARD
            } else {
                EXIT_INPUT
            },
            message: e.to_string(),
        }
    }
}

fn load(path: &str) -> Result<InstanceFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?;
    parse_instance(&text).map_err(|e| Failure::input(format!("{path}: {e}")))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve {
            file,
            max_unclaimed,
            format,
        } => {
            let inst = load(&file)?;
            let opts = SolveOptions {
                max_unclaimed,
                ..Default::default()
            };
            let report = run_solve(&inst, &opts)?;
            match format {
                Format::Json => println!("{}", to_json(&report)),
                Format::Text => {
                    let method = serde_json::to_value(report.method).expect("method serializes");
                    println!(
                        "outcome {} via {}",
                        report.outcome,
                        method.as_str().unwrap_or_default()
                    );
                    if let Some(v) = report.value {
                        println!("value {v}");
                    }
                    if let Some(trace) = &report.trace {
                        println!("{trace}");
                    }
                }
            }
        }
        Command::Oracle {
            file,
            turn,
            max_unclaimed,
            format,
        } => {
            let mut inst = load(&file)?;
            if let Some(t) = turn {
                let p = Player::from_letter(&t)
                    .ok_or_else(|| Failure::input(format!("--turn must be A or B, got '{t}'")))?;
                inst.turn = Some(p);
            }
            let pp = inst.pointed().map_err(|e| Failure::input(e.to_string()))?;
            let opts = SolveOptions {
                max_unclaimed,
                ..Default::default()
            };
            let report = run_oracle(&pp, &opts)?;
            match format {
                Format::Json => println!("{}", to_json(&report)),
                Format::Text => {
                    println!(
                        "value {} (outcome {}), {} to move",
                        report.value, report.outcome, report.turn
                    );
                    if let Some(best) = report.best {
                        println!(
                            "best move {} -> {} in {} plies",
                            best.vertex, best.value, best.plies_to_end
                        );
                    }
                    println!(
                        "nodes {} memo entries {} hits {}",
                        report.stats.nodes_expanded,
                        report.stats.memo_entries,
                        report.stats.memo_hits
                    );
                }
            }
        }
        Command::Classify { file, format } => {
            let inst = load(&file)?;
            let trace = explain(&inst.graph).map_err(|e| Failure::input(e.to_string()))?;
            match format {
                Format::Json => println!("{}", to_json(&trace)),
                Format::Text => println!("{trace}"),
            }
        }
        Command::Crosscheck {
            max_n,
            samples,
            seed,
            forests,
            format,
        } => {
            let cfg = CrosscheckConfig {
                max_n,
                samples,
                forests,
                seed,
            };
            let report = run_crosscheck(&cfg, &SolveOptions::default())?;
            match format {
                ReportFormat::Jsonl => {
                    for row in &report.rows {
                        println!("{}", serde_json::to_string(row).expect("rows serialize"));
                    }
                    println!(
                        "{}",
                        serde_json::json!({
                            "seed": report.seed,
                            "instances": report.instances,
                            "agreements": report.agreements,
                            "disagreements": report.disagreements,
                        })
                    );
                }
                ReportFormat::Text => {
                    for row in report.disagreeing() {
                        println!(
                            "DISAGREE #{} {:?} n={} digest {} solver {} oracle {}",
                            row.index, row.kind, row.n, row.digest, row.solver, row.oracle
                        );
                    }
                    println!(
                        "seed {} instances {} agreements {} disagreements {}",
                        report.seed, report.instances, report.agreements, report.disagreements
                    );
                }
            }
            if !report.all_agree() {
                return Ok(EXIT_DISAGREE);
            }
        }
        Command::Gen { n, seed, forest } => {
            let g = match forest {
                None => generate_random_tree(n, seed),
                Some(c) if c >= 1 && c <= n => generate_random_forest(n, c, seed),
                Some(c) => {
                    return Err(Failure::input(format!(
                        "--forest must be between 1 and {n}, got {c}"
                    )))
                }
            };
            print!("{}", serialize_instance(&InstanceFile::fresh(g)));
        }
        Command::Serve {
            port,
            host,
            workers,
        } => {
            let service = Arc::new(GameService::default());
            let addr = format!("{host}:{port}");
            let server = HttpServer::bind(&addr, service, workers)
                .map_err(|e| Failure::input(format!("cannot bind {addr}: {e}")))?;
            eprintln!("listening on http://{}", server.local_addr());
            server.join();
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
