//! Command-line front end for the cube-representation builders.
//!
//! Exit codes: 0 success / representation valid; 1 verification failure;
//! 2 bad flags or usage; 3 malformed input file; 4 I/O error; 5 retry or
//! seed-schedule exhaustion.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cubicity::{
    build_det, build_detband, build_rand, gen, heuristic_arrangement, verify_representation,
    width, BoundMode, BuildReport, CubeRepresentation, Graph, LinearArrangement, Seed, Verdict,
    Violation,
};

const EXIT_INVALID: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_MALFORMED: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_EXHAUSTED: u8 = 5;

#[derive(Parser)]
#[command(name = "cubicity", about = "Cube (L-infinity threshold) representations of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a cube representation of a graph
    Build(BuildArgs),
    /// Check a representation file against a graph
    Verify(VerifyArgs),
    /// Compute or measure a linear arrangement and its width
    Bandwidth(BandwidthArgs),
    /// Print graph statistics and dimension bounds
    Stats(StatsArgs),
    /// Generate a graph from a named family
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Rand,
    RandWhp,
    Det,
    Detband,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Human,
    Kv,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    /// Graph file in edge-list format
    #[arg(long)]
    input: String,
    /// Representation output path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
    /// Arrangement source for detband: 'identity', 'heuristic', or a file path
    #[arg(long)]
    order: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Batch retry cap for the randomized builders
    #[arg(long, default_value_t = 16)]
    retries: u32,
    #[arg(long, value_enum, default_value = "human")]
    report: ReportFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: String,
    /// Representation file
    #[arg(long)]
    rep: String,
}

#[derive(Args)]
struct BandwidthArgs {
    #[arg(long)]
    input: String,
    /// Measure this arrangement file instead of running the heuristic
    #[arg(long)]
    order: Option<String>,
    /// Write the arrangement here
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    input: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    BinaryTree,
    Gnp,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    /// Vertex count (path, cycle, complete, star, gnp)
    #[arg(long)]
    n: Option<usize>,
    /// Tree height (binary-tree)
    #[arg(long)]
    height: Option<u32>,
    /// Edge probability (gnp)
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

impl From<cubicity::Error> for Failure {
    fn from(e: cubicity::Error) -> Failure {
        let code = match e {
            cubicity::Error::Parse { .. }
            | cubicity::Error::SizeMismatch { .. }
            | cubicity::Error::InvalidArgument(_) => EXIT_MALFORMED,
            cubicity::Error::RetriesExhausted { .. }
            | cubicity::Error::SeedScheduleExhausted { .. } => EXIT_EXHAUSTED,
        };
        Failure::new(code, e.to_string())
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{path}: {e}")))
}

fn write_file(path: &str, content: &str) -> Result<(), Failure> {
    fs::write(path, content).map_err(|e| Failure::new(EXIT_IO, format!("{path}: {e}")))
}

fn read_graph(path: &str) -> Result<Graph, Failure> {
    let text = read_file(path)?;
    Graph::parse(&text).map_err(|e| Failure::new(EXIT_MALFORMED, format!("{path}: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bandwidth(args) => cmd_bandwidth(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Gen(args) => cmd_gen(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_arrangement(source: &str, g: &Graph) -> Result<LinearArrangement, Failure> {
    match source {
        "identity" => Ok(LinearArrangement::identity(g.n())),
        "heuristic" => Ok(heuristic_arrangement(g)),
        path => {
            let text = read_file(path)?;
            let arr = LinearArrangement::parse(&text)
                .map_err(|e| Failure::new(EXIT_MALFORMED, format!("{path}: {e}")))?;
            if arr.n() != g.n() {
                return Err(Failure::new(
                    EXIT_MALFORMED,
                    format!("arrangement has {} vertices, graph has {}", arr.n(), g.n()),
                ));
            }
            Ok(arr)
        }
    }
}

fn cmd_build(args: BuildArgs) -> Result<(), Failure> {
    let g = read_graph(&args.input)?;
    let (rep, report): (CubeRepresentation, BuildReport) = match args.algo {
        Algo::Rand => build_rand(&g, BoundMode::Expected, Seed(args.seed), args.retries)?,
        Algo::RandWhp => build_rand(&g, BoundMode::Whp, Seed(args.seed), args.retries)?,
        Algo::Det => build_det(&g)?,
        Algo::Detband => {
            let order = args.order.as_deref().ok_or_else(|| {
                Failure::new(EXIT_USAGE, "detband requires --order (identity, heuristic, or a file)")
            })?;
            let arr = load_arrangement(order, &g)?;
            build_detband(&g, &arr)?
        }
    };

    let rep_text = rep.to_text();
    let report_text = match args.report {
        ReportFormat::Human => format_report_human(&g, &report),
        ReportFormat::Kv => format_report_kv(&g, &report),
    };
    match &args.out {
        Some(path) => {
            write_file(path, &rep_text)?;
            print!("{report_text}");
        }
        None => {
            print!("{rep_text}");
            eprint!("{report_text}");
        }
    }
    if report.verified {
        Ok(())
    } else {
        Err(Failure::new(EXIT_INVALID, "representation failed verification"))
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let g = read_graph(&args.input)?;
    let text = read_file(&args.rep)?;
    let rep = CubeRepresentation::parse(&text)
        .map_err(|e| Failure::new(EXIT_MALFORMED, format!("{}: {e}", args.rep)))?;
    match verify_representation(&g, &rep)? {
        Verdict::Valid => {
            println!("valid");
            Ok(())
        }
        Verdict::Invalid(violations) => {
            for v in &violations {
                match v {
                    Violation::Missing { u, v, dim } => println!("missing {u} {v} dim {dim}"),
                    Violation::Extra { u, v } => println!("extra {u} {v}"),
                }
            }
            Err(Failure::new(EXIT_INVALID, format!("{} violations", violations.len())))
        }
    }
}

fn cmd_bandwidth(args: BandwidthArgs) -> Result<(), Failure> {
    let g = read_graph(&args.input)?;
    let arr = match &args.order {
        Some(path) => load_arrangement(path, &g)?,
        None => heuristic_arrangement(&g),
    };
    let w = width(&g, &arr)?;
    println!("width {w}");
    if let Some(path) = &args.out {
        write_file(path, &arr.to_text())?;
    }
    Ok(())
}

fn cmd_stats(args: StatsArgs) -> Result<(), Failure> {
    let g = read_graph(&args.input)?;
    let delta = g.max_degree();
    println!("n {}", g.n());
    println!("m {}", g.m());
    println!("delta {delta}");
    println!("non_edges {}", g.non_edges().len());
    println!("complete {}", g.is_complete());
    println!("k_bound_det {}", BoundMode::Expected.dimensions(delta, g.n()));
    println!("k_bound_whp {}", BoundMode::Whp.dimensions(delta, g.n()));
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let need_n = |n: Option<usize>| {
        n.ok_or_else(|| Failure::new(EXIT_USAGE, "this family requires --n"))
    };
    let g = match args.family {
        Family::Path => gen::path(need_n(args.n)?),
        Family::Cycle => {
            let n = need_n(args.n)?;
            if n < 3 {
                return Err(Failure::new(EXIT_USAGE, "cycle requires --n >= 3"));
            }
            gen::cycle(n)
        }
        Family::Complete => gen::complete(need_n(args.n)?),
        Family::Star => gen::star(need_n(args.n)?),
        Family::BinaryTree => {
            let h = args
                .height
                .ok_or_else(|| Failure::new(EXIT_USAGE, "binary-tree requires --height"))?;
            gen::binary_tree(h)
        }
        Family::Gnp => {
            let n = need_n(args.n)?;
            let p = args.p.ok_or_else(|| Failure::new(EXIT_USAGE, "gnp requires --p"))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::new(EXIT_USAGE, "--p must be in [0, 1]"));
            }
            gen::gnp(n, p, args.seed)
        }
    };
    let text = g.to_text();
    match &args.out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn format_report_human(g: &Graph, r: &BuildReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algorithm      {}", r.algorithm);
    let _ = writeln!(out, "n              {}", g.n());
    let _ = writeln!(out, "m              {}", g.m());
    let _ = writeln!(out, "delta          {}", r.max_degree);
    let _ = writeln!(out, "k_achieved     {}", r.k_achieved);
    let _ = writeln!(out, "k_bound        {}", r.k_bound);
    if let Some(alt) = r.k_bound_alt {
        let _ = writeln!(out, "k_bound_alt    {alt}");
    }
    if let Some(w) = r.width {
        let _ = writeln!(out, "width          {w}");
    }
    if let Some(b) = r.block_size {
        let _ = writeln!(out, "block_size     {b}");
    }
    if let Some(p) = r.path {
        let _ = writeln!(out, "path           {p}");
    }
    if r.batches > 0 {
        let _ = writeln!(out, "batches        {}", r.batches);
    }
    let _ = writeln!(out, "seeds          {}", join(&r.seeds));
    let _ = writeln!(out, "nonedge_trace  {}", join(&r.surviving_nonedge_trace));
    for (phase, d) in &r.phase_times {
        let _ = writeln!(out, "time_{phase:<9} {:.3} ms", d.as_secs_f64() * 1e3);
    }
    let _ = writeln!(out, "fallback       {}", r.fallback_used);
    let _ = writeln!(out, "verified       {}", r.verified);
    out
}

fn format_report_kv(g: &Graph, r: &BuildReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algorithm={}", r.algorithm);
    let _ = writeln!(out, "n={}", g.n());
    let _ = writeln!(out, "m={}", g.m());
    let _ = writeln!(out, "delta={}", r.max_degree);
    let _ = writeln!(out, "k_achieved={}", r.k_achieved);
    let _ = writeln!(out, "k_bound={}", r.k_bound);
    if let Some(alt) = r.k_bound_alt {
        let _ = writeln!(out, "k_bound_alt={alt}");
    }
    if let Some(w) = r.width {
        let _ = writeln!(out, "width={w}");
    }
    if let Some(b) = r.block_size {
        let _ = writeln!(out, "block_size={b}");
    }
    if let Some(p) = r.path {
        let _ = writeln!(out, "path={p}");
    }
    let _ = writeln!(out, "batches={}", r.batches);
    let _ = writeln!(out, "seeds={}", join(&r.seeds));
    let _ = writeln!(out, "nonedge_trace={}", join(&r.surviving_nonedge_trace));
    for (phase, d) in &r.phase_times {
        let _ = writeln!(out, "time_{phase}_ms={:.3}", d.as_secs_f64() * 1e3);
    }
    let _ = writeln!(out, "fallback={}", r.fallback_used);
    let _ = writeln!(out, "verified={}", r.verified);
    out
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}
