//! Command-line driver: residue tables, De Bruijn graphs and cycles, cycle
//! validation, bounded search and corpus verification.
//!
//! Every command renders into an [`Output`] that the binary flushes once.
//! Exit codes: 0 success, 1 validation failure, 2 usage, parse or I/O error.

pub mod corpus;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cubes_core::debruijn::fixtures::{parse_edge_list, Fixture};
use cubes_core::debruijn::{
    circuit_to_sequence, edges_for_class, eulerian_circuit, to_dot, validate_cycle, Alphabet,
    CyclicSequence, DeBruijnGraph, DotOptions, Gram, GraphError,
};
use cubes_core::residue::{decompose, signed_spellings, Residue};
use cubes_core::search::{scan_range, search_k_parallel, SearchBounds, SearchError, SearchResult};
use num_bigint::BigInt;
use thiserror::Error;

use corpus::{read_corpus, report_csv, search_csv, ReportRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn error(e: &CliError) -> Self {
        let code = match e {
            CliError::Graph(GraphError::NotEulerian(_)) | CliError::Graph(GraphError::NoEdges) => {
                EXIT_FAILURE
            }
            _ => EXIT_USAGE,
        };
        Output {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cubes",
    version,
    about = "Sums of three cubes: mod-9 residues, De Bruijn graphs, bounded search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residue triples and signed spellings for every class mod 9.
    Classes,
    /// Emit a De Bruijn graph or fixture sub-graph as DOT.
    Graph {
        #[command(flatten)]
        target: GraphTarget,
        /// Write DOT here instead of stdout.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Highlight edges whose digit sum is in this class (alphabet 018, order 3).
        #[arg(long, value_name = "Z")]
        highlight_class: Option<u8>,
        /// Draw the edges of this fixture dashed.
        #[arg(long, value_name = "FIXTURE")]
        dashed: Option<String>,
    },
    /// Print the deterministic Eulerian cycle of a graph.
    Cycle {
        #[command(flatten)]
        target: GraphTarget,
    },
    /// Check which edges a cyclic string covers.
    Validate {
        sequence: String,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        order: Option<usize>,
        /// full, E0, E1 or E2.
        #[arg(long, default_value = "full")]
        against: String,
    },
    /// Search one target k.
    Search {
        #[arg(allow_negative_numbers = true)]
        k: BigInt,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Search every k in an inclusive range.
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        from: i128,
        #[arg(long, allow_negative_numbers = true)]
        to: i128,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Verify every row of a `k,x,y,z` CSV.
    VerifyCorpus {
        file: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GraphTarget {
    /// Symbols in tie-breaking order.
    #[arg(long)]
    pub alphabet: Option<String>,
    #[arg(long)]
    pub order: Option<usize>,
    /// E0, E1 or E2.
    #[arg(long, conflicts_with = "edges")]
    pub subgraph: Option<String>,
    /// Edge list file, one gram per line.
    #[arg(long)]
    pub edges: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchOpts {
    /// Search |x|, |y|, |z| <= BOUND.
    #[arg(long, default_value_t = 100)]
    pub bound: u64,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub workers: Option<usize>,
}

/// Parses arguments and runs one command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    execute(cli.command).unwrap_or_else(|e| Output::error(&e))
}

pub fn execute(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Classes => Ok(cmd_classes()),
        Command::Graph {
            target,
            dot,
            highlight_class,
            dashed,
        } => cmd_graph(&target, dot.as_deref(), highlight_class, dashed.as_deref()),
        Command::Cycle { target } => cmd_cycle(&target),
        Command::Validate {
            sequence,
            alphabet,
            order,
            against,
        } => cmd_validate(&sequence, alphabet.as_deref(), order, &against),
        Command::Search { k, opts } => cmd_search(&k, &opts),
        Command::Scan { from, to, opts } => cmd_scan(from, to, &opts),
        Command::VerifyCorpus { file, out } => cmd_verify_corpus(&file, out.as_deref()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn fixture(name: &str) -> Result<Fixture, CliError> {
    name.parse::<Fixture>()
        .map_err(|e| CliError::Usage(e.to_string()))
}

pub fn cmd_classes() -> Output {
    let mut out = String::new();
    for z in Residue::all() {
        let triples = decompose(z);
        if triples.is_empty() {
            writeln!(out, "class {z}: infeasible").unwrap();
            continue;
        }
        let cells: Vec<String> = triples
            .iter()
            .map(|&t| {
                let sp: Vec<String> = signed_spellings(t).iter().map(|s| s.to_string()).collect();
                format!("{t} [{}]", sp.join(", "))
            })
            .collect();
        writeln!(out, "class {z}: {}", cells.join(" | ")).unwrap();
    }
    Output {
        stdout: out,
        ..Default::default()
    }
}

fn cubic_defaults(
    alphabet: Option<&str>,
    order: Option<usize>,
    what: &str,
) -> Result<(), CliError> {
    let alphabet_ok = alphabet.is_none_or(|a| a == "018");
    let order_ok = order.is_none_or(|o| o == 3);
    if alphabet_ok && order_ok {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "{what} is defined over alphabet 018 at order 3"
        )))
    }
}

/// Resolves `--alphabet/--order/--subgraph/--edges` into a graph.
pub fn resolve_graph(target: &GraphTarget) -> Result<DeBruijnGraph, CliError> {
    if let Some(name) = &target.subgraph {
        let fx = fixture(name)?;
        cubic_defaults(
            target.alphabet.as_deref(),
            target.order,
            &format!("fixture {fx}"),
        )?;
        return Ok(fx.graph());
    }
    let alphabet = Alphabet::new(target.alphabet.as_deref().unwrap_or("018"))?;
    let order = target.order.unwrap_or(3);
    match &target.edges {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let edges = parse_edge_list(&alphabet, order, &text)?;
            Ok(DeBruijnGraph::from_edges(alphabet, order, edges)?)
        }
        None => Ok(DeBruijnGraph::full(alphabet, order)?),
    }
}

fn graph_name(target: &GraphTarget, g: &DeBruijnGraph) -> String {
    match &target.subgraph {
        Some(name) => format!("G_{}", name.to_ascii_uppercase().trim_start_matches('E')),
        None => format!("B({},{})", g.alphabet(), g.order()),
    }
}

pub fn cmd_graph(
    target: &GraphTarget,
    dot_path: Option<&Path>,
    highlight_class: Option<u8>,
    dashed: Option<&str>,
) -> Result<Output, CliError> {
    let g = resolve_graph(target)?;
    let mut opts = DotOptions {
        name: Some(graph_name(target, &g)),
        ..Default::default()
    };
    if let Some(z) = highlight_class {
        let z =
            Residue::new(z).ok_or_else(|| CliError::Usage(format!("class {z} is not in 0..=8")))?;
        opts.highlight = edges_for_class(&g, z)?.into_iter().collect();
    }
    if let Some(name) = dashed {
        opts.dashed = fixture(name)?.edges().into_iter().collect();
    }
    let dot = to_dot(&g, &opts);
    let summary = format!("{} nodes, {} edges", g.nodes().len(), g.edges().len());
    match dot_path {
        Some(p) => {
            write_file(p, &dot)?;
            Ok(Output {
                stderr: format!("wrote {}: {summary}\n", p.display()),
                ..Default::default()
            })
        }
        None => Ok(Output {
            stdout: dot,
            stderr: format!("{summary}\n"),
            ..Default::default()
        }),
    }
}

pub fn cmd_cycle(target: &GraphTarget) -> Result<Output, CliError> {
    let g = resolve_graph(target)?;
    let circuit = eulerian_circuit(&g)?;
    let seq = circuit_to_sequence(&circuit)?;
    Ok(Output {
        stdout: format!("{seq}\nlength {}\n", seq.len()),
        ..Default::default()
    })
}

pub fn cmd_validate(
    sequence: &str,
    alphabet: Option<&str>,
    order: Option<usize>,
    against: &str,
) -> Result<Output, CliError> {
    let (alphabet, order, target): (Alphabet, usize, BTreeSet<Gram>) =
        if against.eq_ignore_ascii_case("full") {
            let a = Alphabet::new(alphabet.unwrap_or("018"))?;
            let n = order.unwrap_or(3);
            let g = DeBruijnGraph::full(a.clone(), n)?;
            (a, n, g.edge_set())
        } else {
            let fx = fixture(against)?;
            cubic_defaults(alphabet, order, &format!("fixture {fx}"))?;
            (Alphabet::cubic(), 3, fx.graph().edge_set())
        };
    let seq = CyclicSequence::parse(&alphabet, sequence)?;
    let report = validate_cycle(&seq, order, &target);
    Ok(Output {
        stdout: format!("{report}\n"),
        code: if report.is_exact() {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
        ..Default::default()
    })
}

fn summarize(results: &[SearchResult], bound: u64) -> String {
    let mut s = String::new();
    let mut found = 0;
    let mut skipped = 0;
    for r in results {
        if r.skipped {
            skipped += 1;
            writeln!(s, "k={}: infeasible (class {})", r.k, r.class()).unwrap();
        } else {
            found += r.representations.len();
            if results.len() == 1 {
                writeln!(
                    s,
                    "k={}: class {}, {} representation(s) with bound {} ({} pairs scanned, {} z pruned)",
                    r.k,
                    r.class(),
                    r.representations.len(),
                    bound,
                    r.stats.pairs_scanned,
                    r.stats.z_pruned
                )
                .unwrap();
            }
        }
    }
    if results.len() != 1 {
        writeln!(
            s,
            "{} targets, {} skipped, {} representations with bound {}",
            results.len(),
            skipped,
            found,
            bound
        )
        .unwrap();
    }
    s
}

fn emit_csv(csv: String, out: Option<&Path>, summary: String) -> Result<Output, CliError> {
    match out {
        Some(p) => {
            write_file(p, &csv)?;
            Ok(Output {
                stderr: format!("{summary}wrote {}\n", p.display()),
                ..Default::default()
            })
        }
        None => Ok(Output {
            stdout: csv,
            stderr: summary,
            ..Default::default()
        }),
    }
}

fn with_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--workers must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| CliError::Search(SearchError::Pool(e.to_string()))),
    }
}

pub fn cmd_search(k: &BigInt, opts: &SearchOpts) -> Result<Output, CliError> {
    let bounds = SearchBounds::new(opts.bound)?;
    let result = with_pool(opts.workers, || search_k_parallel(k, bounds))?;
    let results = [result];
    emit_csv(
        search_csv(&results),
        opts.out.as_deref(),
        summarize(&results, opts.bound),
    )
}

pub fn cmd_scan(from: i128, to: i128, opts: &SearchOpts) -> Result<Output, CliError> {
    let bounds = SearchBounds::new(opts.bound)?;
    if opts.workers == Some(0) {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let results = scan_range(from..=to, bounds, opts.workers)?;
    emit_csv(
        search_csv(&results),
        opts.out.as_deref(),
        summarize(&results, opts.bound),
    )
}

pub fn cmd_verify_corpus(file: &Path, out: Option<&Path>) -> Result<Output, CliError> {
    let input = std::fs::File::open(file).map_err(|source| CliError::Io {
        path: file.to_path_buf(),
        source,
    })?;
    let (rows, failures) = read_corpus(input)?;
    let report: Vec<ReportRow> = rows.iter().map(ReportRow::check).collect();
    let invalid = report.iter().filter(|r| !r.is_valid()).count();

    let mut summary = String::new();
    for f in &failures {
        writeln!(summary, "line {}: {}", f.line, f.message).unwrap();
    }
    for (row, r) in rows.iter().zip(&report) {
        if let Err(d) = &r.outcome {
            writeln!(summary, "line {}: invalid ({d})", row.line).unwrap();
        }
    }
    writeln!(
        summary,
        "{} rows: {} valid, {} invalid, {} unparsable",
        rows.len() + failures.len(),
        rows.len() - invalid,
        invalid,
        failures.len()
    )
    .unwrap();

    let mut output = emit_csv(report_csv(&report), out, summary)?;
    output.code = if !failures.is_empty() {
        EXIT_USAGE
    } else if invalid > 0 {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };
    Ok(output)
}
