//! `ribbon`: command-line front end for signed ribbon graphs.
//!
//! Exit codes: 0 success / verified / isomorphic, 1 verified-false /
//! non-isomorphic, 2 usage or parse error, 3 domain error.

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ribbon_core::{
    br_polynomial, br_polynomial_parallel, br_potts, enumerate_graphs, homfly_resolution, homfly_state_sum,
    is_isomorphic, parse_rg, partial_dual, random_graph, realize_polynomial, serialize_rg, verify_duality,
    verify_transfer, EdgeSubset, Error, GenParams, LaurentPoly, RibbonGraph, BR_VARS,
};

#[derive(Parser)]
#[command(name = "ribbon", version, about = "Signed ribbon graphs, partial duals and their polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print vertex, edge, component and boundary counts, Euler genus and orientability.
    Info { file: PathBuf },
    /// Print the signed ribbon-graph polynomial in x, y, z.
    Brpoly {
        file: PathBuf,
        /// Print the Potts form in a, b, c instead.
        #[arg(long)]
        potts: bool,
        /// Split the state sum over this many threads.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Print the partial dual with respect to an edge set.
    Dual {
        file: PathBuf,
        /// Comma-separated edge ids, `all` or `none`.
        #[arg(long)]
        edges: String,
    },
    /// Check the duality theorem for one edge set or for every edge set.
    VerifyDuality {
        file: PathBuf,
        #[arg(long, conflicts_with = "all_subsets", required_unless_present = "all_subsets")]
        edges: Option<String>,
        #[arg(long)]
        all_subsets: bool,
    },
    /// Print the homfly polynomial of the link diagram of an orientable graph.
    Homfly {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = HomflyMethod::Statesum)]
        method: HomflyMethod,
    },
    /// Check the homfly / ribbon-graph polynomial transfer at random rational points.
    CheckTransfer {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether two signed ribbon graphs are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Print a seeded random signed ribbon graph.
    Random {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        neg_prob: f64,
        #[arg(long, default_value_t = 0.5)]
        twist_prob: f64,
        #[arg(long)]
        orientable: bool,
    },
    /// Print every signed ribbon graph with the given size, up to isomorphism.
    Enum {
        /// Maximum number of vertices.
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
    },
    /// Print every graph whose ribbon-graph polynomial equals the target.
    Realize {
        /// File holding the target polynomial in x, y, z.
        #[arg(long)]
        target: PathBuf,
        /// Maximum number of vertices.
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HomflyMethod {
    Statesum,
    Resolution,
}

/// How a command ended when it did not simply succeed.
enum Failure {
    /// A check ran and came out false.
    Negative,
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Evaluation(_) | Error::Substitution(_) => Failure::Domain(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn read_graph(path: &Path) -> Result<RibbonGraph, Failure> {
    parse_rg(&read_text(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_edges(spec: &str, graph: &RibbonGraph) -> Result<EdgeSubset, Failure> {
    let subset = match spec.trim() {
        "all" => EdgeSubset::all(graph),
        "none" | "" => EdgeSubset::empty(),
        list => {
            let ids = list
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("bad edge id {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            EdgeSubset::from_ids(ids)
        }
    };
    subset.check(graph)?;
    Ok(subset)
}

fn verdict(out: &mut impl Write, ok: bool) -> Outcome {
    writeln!(out, "{ok}").map_err(io_failure)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Usage(format!("write failed: {e}"))
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Info { file } => {
            let s = read_graph(&file)?.stats();
            let yes_no = if s.orientable { "yes" } else { "no" };
            writeln!(
                out,
                "v={} e={} k={} boundary={} genus={} orientable={yes_no}",
                s.vertices, s.edges, s.components, s.boundary, s.euler_genus
            )
            .and_then(|_| {
                writeln!(out, "rank={} nullity={} positive={} negative={}", s.rank, s.nullity, s.positive, s.negative)
            })
            .map_err(io_failure)
        }
        Command::Brpoly { file, potts, workers } => {
            let g = read_graph(&file)?;
            if g.num_edges() >= 64 {
                return Err(Failure::Usage("state sums support at most 63 edges".into()));
            }
            let p = match (potts, workers) {
                (true, _) => br_potts(&g),
                (false, 0 | 1) => br_polynomial(&g),
                (false, w) => br_polynomial_parallel(&g, w),
            };
            writeln!(out, "{p}").map_err(io_failure)
        }
        Command::Dual { file, edges } => {
            let g = read_graph(&file)?;
            let subset = parse_edges(&edges, &g)?;
            let dual = partial_dual(&g, &subset)?;
            write!(out, "{}", serialize_rg(&dual)).map_err(io_failure)
        }
        Command::VerifyDuality { file, edges, all_subsets } => {
            let g = read_graph(&file)?;
            if all_subsets {
                let e = g.num_edges();
                if e >= 64 {
                    return Err(Failure::Usage("--all-subsets supports at most 63 edges".into()));
                }
                for mask in 0..1u64 << e {
                    let subset = EdgeSubset::from_mask(&g, mask);
                    if !verify_duality(&g, &subset)? {
                        let ids: Vec<String> = subset.iter().map(|i| i.to_string()).collect();
                        eprintln!("duality fails for edges {{{}}}", ids.join(","));
                        return verdict(out, false);
                    }
                }
                verdict(out, true)
            } else {
                let subset = parse_edges(edges.as_deref().unwrap_or("none"), &g)?;
                verdict(out, verify_duality(&g, &subset)?)
            }
        }
        Command::Homfly { file, method } => {
            let g = read_graph(&file)?;
            let p = match method {
                HomflyMethod::Statesum => homfly_state_sum(&g)?,
                HomflyMethod::Resolution => homfly_resolution(&g)?,
            };
            writeln!(out, "{p}").map_err(io_failure)
        }
        Command::CheckTransfer { file, samples, seed } => {
            let g = read_graph(&file)?;
            verdict(out, verify_transfer(&g, samples, seed)?)
        }
        Command::Iso { first, second } => {
            let (g, h) = (read_graph(&first)?, read_graph(&second)?);
            verdict(out, is_isomorphic(&g, &h))
        }
        Command::Random { vertices, edges, seed, neg_prob, twist_prob, orientable } => {
            let params =
                GenParams { negative_prob: neg_prob, twist_prob, orientable, ..GenParams::new(vertices, edges, seed) };
            let g = random_graph(&params)?;
            write!(out, "{}", serialize_rg(&g)).map_err(io_failure)
        }
        Command::Enum { vertices, edges } => {
            let graphs = enumerate_graphs(vertices, edges)?;
            eprintln!("{} graphs", graphs.len());
            graphs.iter().try_for_each(|g| write!(out, "{}", serialize_rg(g))).map_err(io_failure)
        }
        Command::Realize { target, vertices, edges } => {
            let text = read_text(&target)?;
            let poly = LaurentPoly::parse(text.trim(), &BR_VARS)
                .map_err(|e| Failure::Usage(format!("{}: {e}", target.display())))?;
            let graphs = realize_polynomial(&poly, vertices, edges)?;
            eprintln!("{} graphs", graphs.len());
            graphs.iter().try_for_each(|g| write!(out, "{}", serialize_rg(g))).map_err(io_failure)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let outcome = run(cli.command, &mut out);
    let _ = out.flush();
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
