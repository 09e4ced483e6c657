use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use kakimizu::fibred::{fibred_certificate, ReductionGraph};
use kakimizu::pipeline::{self, Limits};
use kakimizu::planar::PlanarMultigraph;
use kakimizu::rational::parse_two_bridge;
use kakimizu::thetagraph::{self, parse_weights};
use kakimizu::twobridge::{self, band_chain};
use kakimizu::{Error, SimplicialComplex};

#[derive(Parser)]
#[command(name = "kakimizu", version, about = "Kakimizu complexes of alternating knots")]
struct Cli {
    /// Longest band chain accepted for 2-bridge knots.
    #[arg(long, global = true, default_value_t = twobridge::DEFAULT_MAX_BANDS)]
    max_bands: usize,
    /// Most surfaces enumerated for a θ-graph.
    #[arg(long, global = true, default_value_t = thetagraph::DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    /// Graphviz output.
    #[arg(long)]
    dot: bool,
    /// JSON output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Even continued fraction of a 2-bridge fraction.
    Expand {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
    /// Complex of a 2-bridge knot given as p/q or [e1,...,en].
    TwoBridge {
        #[arg(allow_hyphen_values = true)]
        knot: String,
        #[command(flatten)]
        format: Format,
    },
    /// Complex of a special alternating knot from its Seifert graph file.
    Theta {
        file: PathBuf,
        /// Start weights on the θ-edges in increasing id order, e.g. 0,1,0.
        #[arg(long)]
        weights: Option<String>,
        #[command(flatten)]
        format: Format,
    },
    /// Fibredness of a graph literal `v=<n>; edges=(a,b)...` read from a file.
    Fibred {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Runs a knot table and writes a JSON report plus a text summary.
    Batch {
        table: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn print_complex(c: &SimplicialComplex, format: &Format) {
    if format.dot {
        print!("{}", c.to_dot());
    } else if format.json {
        println!("{}", c.to_json());
    } else {
        println!("shape: {}", c.recognize());
        println!("{c}");
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let limits = Limits {
        max_bands: cli.max_bands,
        max_vertices: cli.max_vertices,
    };
    match cli.command {
        Command::Expand { fraction } => {
            println!("{}", parse_two_bridge::<BigInt>(&fraction)?);
        }
        Command::TwoBridge { knot, format } => {
            let chain = band_chain(&parse_two_bridge::<BigInt>(&knot)?)?;
            let c = twobridge::build_complex(&chain, limits.max_bands)?;
            print_complex(&c, &format);
        }
        Command::Theta {
            file,
            weights,
            format,
        } => {
            let g: PlanarMultigraph = read(&file)?.parse()?;
            let c = match thetagraph::theta_from_seifert(&g) {
                Ok(tg) => {
                    let w0 = match weights {
                        Some(w) => tg.weight_vector(&parse_weights(&w)?)?,
                        None => tg.weights(),
                    };
                    thetagraph::build_complex(&tg, &w0, limits.max_vertices)?
                }
                Err(Error::EmptyTheta) if weights.is_none() => SimplicialComplex::point("T"),
                Err(e) => return Err(e),
            };
            print_complex(&c, &format);
        }
        Command::Fibred { graph } => {
            let g: ReductionGraph = read(&graph)?.parse()?;
            match fibred_certificate(&g) {
                Some(moves) => {
                    println!("fibred");
                    for m in moves {
                        println!("  {m}");
                    }
                }
                None => println!("not fibred"),
            }
        }
        Command::Batch { table, out } => {
            let records = pipeline::load_table(&table)?;
            let results = pipeline::run_batch(&records, &limits);
            pipeline::write_report(&results, &out)?;
            print!("{}", pipeline::summary_table(&results));
            return Ok(ExitCode::from(pipeline::batch_exit_code(&results) as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() || matches!(e, Error::Precondition(_) | Error::Embedding(_)) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
