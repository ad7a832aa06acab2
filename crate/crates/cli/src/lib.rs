//! Command-line surface for the top-k closeness engine.
//!
//! Exit codes: 0 success, 2 input or usage error, 3 verification mismatch.

pub mod report;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use topk_closeness::{
    exact_closeness_all, generate, load_edge_list, metrics, structural_textbook_arc_count, top_k, Graph, Model,
    TopKResult,
};

use report::{entries, InputInfo, Mode, ReportStats, RunReport, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "topk-closeness", version, about = "Exact top-k closeness centrality")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the pruned engine.
    Topk(TopkArgs),
    /// Run the textbook all-BFS algorithm.
    Oracle(InputArgs),
    /// Run both and compare the rankings.
    Compare(InputArgs),
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, conflicts_with = "undirected")]
    pub directed: bool,
    /// Default when neither orientation flag is given.
    #[arg(long)]
    pub undirected: bool,
    #[arg(short = 'k', default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Args)]
pub struct TopkArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Also run the textbook algorithm and fail on disagreement.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Gnp,
    Pa,
    Path,
    Star,
    Cycle,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub model: ModelName,
    #[arg(long)]
    pub nodes: usize,
    /// Edge probability for `gnp`.
    #[arg(long)]
    pub prob: Option<f64>,
    /// Edges per new vertex for `pa`.
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub directed: bool,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

/// Text to print plus the exit code.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Topk(args) => cmd_topk(&args),
        Command::Oracle(args) => cmd_oracle(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::Gen(args) => cmd_gen(&args),
    }
}

fn load(args: &InputArgs) -> Result<Graph, CliError> {
    let file = File::open(&args.input)
        .map_err(|e| CliError::input(format!("cannot open {}: {e}", args.input.display())))?;
    load_edge_list(BufReader::new(file), args.directed)
        .map_err(|e| CliError::input(format!("{}: {e}", args.input.display())))
}

fn same_values(a: &TopKResult, b: &TopKResult) -> bool {
    const REL_TOL: f64 = 1e-12;
    let sorted = |r: &TopKResult| {
        let mut v = r.closeness_values();
        v.sort_by(|x, y| y.total_cmp(x));
        v
    };
    let (a, b) = (sorted(a), sorted(b));
    a.len() == b.len()
        && a.iter()
            .zip(&b)
            .all(|(x, y)| x == y || (x - y).abs() <= REL_TOL * x.abs().max(y.abs()))
}

fn render(report: &RunReport, args: &InputArgs) -> String {
    match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Tsv => report.to_tsv(args.stats),
    }
}

struct EngineRun {
    result: TopKResult,
    stats: ReportStats,
}

fn run_engine(g: &Graph, args: &InputArgs, textbook_arcs: Option<u64>) -> EngineRun {
    let start = Instant::now();
    let run = top_k(g, args.k as usize, args.threads as usize);
    let elapsed = start.elapsed();
    let m = metrics(
        run.stats.visited_arcs,
        textbook_arcs.unwrap_or(0),
        g.arc_count() as u64,
        g.node_count() as u64,
    );
    EngineRun {
        stats: ReportStats {
            visited_arcs: Some(run.stats.visited_arcs),
            textbook_arcs,
            improvement_factor: m.improvement_factor,
            performance_ratio: m.performance_ratio,
            cut_vertices: Some(run.stats.cut_count()),
            completed_vertices: Some(run.stats.completed_count()),
            preprocessing_ms: Some(run.stats.preprocessing.as_secs_f64() * 1e3),
            total_ms: elapsed.as_secs_f64() * 1e3,
        },
        result: run.result,
    }
}

fn oracle_run(g: &Graph, k: usize) -> (TopKResult, u64, f64) {
    let start = Instant::now();
    let (table, m_tot) = exact_closeness_all(g);
    let result = TopKResult::from_scored(g, k, table.scored());
    (result, m_tot, start.elapsed().as_secs_f64() * 1e3)
}

pub fn cmd_topk(args: &TopkArgs) -> Result<Outcome, CliError> {
    let input = &args.input;
    let g = load(input)?;
    let oracle = args.check.then(|| oracle_run(&g, input.k as usize));
    let textbook_arcs = match &oracle {
        Some((_, m_tot, _)) => Some(*m_tot),
        None if input.stats => structural_textbook_arc_count(&g),
        None => None,
    };
    let mut engine = run_engine(&g, input, textbook_arcs);
    if !input.stats && !args.check {
        engine.stats = ReportStats {
            total_ms: engine.stats.total_ms,
            ..Default::default()
        };
    }
    let verdict = oracle.as_ref().map(|(o, _, _)| {
        if same_values(&engine.result, o) {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    });
    let report = RunReport {
        mode: Mode::Engine,
        input: InputInfo::new(&input.input.display().to_string(), &g),
        k: input.k as usize,
        workers: input.threads as usize,
        results: entries(&engine.result),
        oracle_results: None,
        stats: engine.stats,
        verdict,
    };
    let code = if verdict == Some(Verdict::Mismatch) {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        output: render(&report, input),
        code,
    })
}

pub fn cmd_oracle(args: &InputArgs) -> Result<Outcome, CliError> {
    let g = load(args)?;
    let (result, m_tot, ms) = oracle_run(&g, args.k as usize);
    let report = RunReport {
        mode: Mode::Oracle,
        input: InputInfo::new(&args.input.display().to_string(), &g),
        k: args.k as usize,
        workers: 1,
        results: entries(&result),
        oracle_results: None,
        stats: ReportStats {
            textbook_arcs: Some(m_tot),
            total_ms: ms,
            ..Default::default()
        },
        verdict: None,
    };
    Ok(Outcome {
        output: render(&report, args),
        code: EXIT_OK,
    })
}

pub fn cmd_compare(args: &InputArgs) -> Result<Outcome, CliError> {
    let g = load(args)?;
    let (oracle, m_tot, _) = oracle_run(&g, args.k as usize);
    let engine = run_engine(&g, args, Some(m_tot));
    let verdict = if same_values(&engine.result, &oracle) {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    let report = RunReport {
        mode: Mode::Compare,
        input: InputInfo::new(&args.input.display().to_string(), &g),
        k: args.k as usize,
        workers: args.threads as usize,
        results: entries(&engine.result),
        oracle_results: Some(entries(&oracle)),
        stats: engine.stats,
        verdict: Some(verdict),
    };
    Ok(Outcome {
        output: render(&report, args),
        code: if verdict == Verdict::Match {
            EXIT_OK
        } else {
            EXIT_MISMATCH
        },
    })
}

pub fn cmd_gen(args: &GenArgs) -> Result<Outcome, CliError> {
    let n = args.nodes;
    let model = match args.model {
        ModelName::Gnp => Model::Gnp {
            n,
            p: args
                .prob
                .ok_or_else(|| CliError::input("--prob is required for the gnp model"))?,
        },
        ModelName::Pa => Model::PreferentialAttachment {
            n,
            degree: args.degree,
        },
        ModelName::Path => Model::Path { n },
        ModelName::Star => Model::Star { n },
        ModelName::Cycle => Model::Cycle { n },
    };
    let g = generate(model, args.directed, args.seed).map_err(|e| CliError::input(e.to_string()))?;
    let write = |out: &mut dyn Write| -> io::Result<()> {
        g.write_edge_list(&mut *out)?;
        out.flush()
    };
    match &args.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::input(format!("cannot create {}: {e}", path.display())))?;
            write(&mut BufWriter::new(file)).map_err(|e| CliError::input(e.to_string()))?;
            Ok(Outcome {
                output: String::new(),
                code: EXIT_OK,
            })
        }
        None => {
            let mut buf = Vec::new();
            write(&mut buf).map_err(|e| CliError::input(e.to_string()))?;
            Ok(Outcome {
                output: String::from_utf8(buf).expect("labels are utf-8"),
                code: EXIT_OK,
            })
        }
    }
}
