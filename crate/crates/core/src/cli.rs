//! Command-line front end. Exit codes: 0 success, 1 usage error, 2 input or
//! validation failure, 3 embedding rejected.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algorithms::{
    generalized_border, generalized_ipred, identity_embedding, meet_irreducible_embedding, validate_embedding,
    AlgoError, BorderOptions, Construction, CountedMap, Embedding, IpredOptions, JoinMap, TraceRecorder,
};
use crate::fca::{powerset_intent_embedding, ConceptLattice};
use crate::io::bench::{run_suite, BenchError};
use crate::io::{
    emit_dot, emit_edges_json, emit_lattice_json, emit_stats, emit_trace, parse_cxt, parse_lattice_json,
    parse_transactions, FormatError, OpCounts, RunStats,
};
use crate::lattice::{Counting, ElementId, ExplicitLattice, JoinSemilattice, Lattice, OpCounters};
use crate::oracle::{distributivity_witness, oracle_hasse, width};
use crate::traversal::{reverse_topo_sort, Strategy, TopoOrder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_EMBEDDING: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hasse", version, about = "Hasse diagrams of finite lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the Hasse diagram of a lattice or concept lattice.
    Diagram(DiagramArgs),
    /// Validate an input and report size, cover count and width.
    Check(CheckArgs),
    /// Write the concept lattice of a context as lattice JSON.
    Concepts(ConceptsArgs),
    /// Run benchmark suites with operation counters.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Border,
    Ipred,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    LatticeJson,
    Cxt,
    Transactions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EmbeddingKind {
    Identity,
    Powerset,
    MeetIrreducible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutKind {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SortSpec {
    AboveCount,
    Random(u64),
    IntentSize,
}

fn parse_sort(s: &str) -> Result<SortSpec, String> {
    match s {
        "above-count" => Ok(SortSpec::AboveCount),
        "key:intent-size" => Ok(SortSpec::IntentSize),
        _ => s
            .strip_prefix("random:")
            .and_then(|seed| seed.parse().ok())
            .map(SortSpec::Random)
            .ok_or_else(|| "expected above-count, random:SEED or key:intent-size".to_string()),
    }
}

#[derive(Debug, Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// Defaults from the extension: .json, .cxt, anything else is read as
    /// transactions.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct DiagramArgs {
    #[arg(long, value_enum, default_value = "ipred")]
    algo: Algo,
    #[command(flatten)]
    input: InputArgs,
    /// Defaults to powerset for contexts and meet-irreducible for lattices.
    #[arg(long, value_enum)]
    embedding: Option<EmbeddingKind>,
    #[arg(long, value_parser = parse_sort, default_value = "above-count")]
    sort: SortSpec,
    #[arg(long, value_enum, default_value = "dot")]
    out: OutKind,
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Skip embedding validation.
    #[arg(long)]
    unchecked: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    distributive: bool,
}

#[derive(Debug, Args)]
struct ConceptsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 1)]
    repeat: usize,
    /// Written to standard output when absent.
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Embedding(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Embedding(_) => EXIT_EMBEDDING,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Embedding(m) => m,
        }
    }
}

impl From<AlgoError> for CliError {
    fn from(e: AlgoError) -> Self {
        match e {
            AlgoError::EmbeddingInvalid(r) => CliError::Embedding(format!("embedding rejected:\n{r}")),
            other => CliError::Input(other.to_string()),
        }
    }
}

enum Loaded {
    Explicit(ExplicitLattice),
    Concepts(ConceptLattice),
}

impl Loaded {
    fn lattice(&self) -> &dyn Lattice {
        match self {
            Loaded::Explicit(l) => l,
            Loaded::Concepts(c) => c,
        }
    }

    fn concepts(&self) -> Option<&ConceptLattice> {
        match self {
            Loaded::Concepts(c) => Some(c),
            Loaded::Explicit(_) => None,
        }
    }
}

fn infer_format(input: &InputArgs) -> Format {
    input
        .format
        .unwrap_or_else(|| match input.input.extension().and_then(|e| e.to_str()) {
            Some("json") => Format::LatticeJson,
            Some("cxt") => Format::Cxt,
            _ => Format::Transactions,
        })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn input_error(path: &Path, e: FormatError) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn load(input: &InputArgs) -> Result<Loaded, CliError> {
    let path = &input.input;
    let text = read(path)?;
    let ctx = match infer_format(input) {
        Format::LatticeJson => {
            return parse_lattice_json(&text)
                .map(Loaded::Explicit)
                .map_err(|e| input_error(path, e))
        }
        Format::Cxt => parse_cxt(&text),
        Format::Transactions => parse_transactions(&text),
    }
    .map_err(|e| input_error(path, e))?;
    ConceptLattice::new(ctx)
        .map(Loaded::Concepts)
        .map_err(|e| input_error(path, e.into()))
}

type BoxedEmbedding<'a> = Embedding<Box<dyn Lattice + 'a>>;

fn boxed<'a, C: Lattice + 'a>(emb: Embedding<C>) -> BoxedEmbedding<'a> {
    let (codomain, image) = emb.into_parts();
    Embedding::new(Box::new(codomain), image)
}

fn build_embedding<'a>(loaded: &'a Loaded, kind: Option<EmbeddingKind>) -> Result<BoxedEmbedding<'a>, CliError> {
    let l = loaded.lattice();
    let kind = kind.unwrap_or(match loaded {
        Loaded::Explicit(_) => EmbeddingKind::MeetIrreducible,
        Loaded::Concepts(_) => EmbeddingKind::Powerset,
    });
    Ok(match kind {
        EmbeddingKind::Identity => boxed(identity_embedding(l)),
        EmbeddingKind::MeetIrreducible => boxed(meet_irreducible_embedding(l)),
        EmbeddingKind::Powerset => match loaded.concepts() {
            Some(cl) => boxed(powerset_intent_embedding(cl)),
            None => {
                return Err(CliError::Usage(
                    "--embedding powerset needs a context input (cxt or transactions)".into(),
                ))
            }
        },
    })
}

fn build_order(loaded: &Loaded, sort: SortSpec) -> Result<TopoOrder, CliError> {
    let l = loaded.lattice();
    let order = match sort {
        SortSpec::AboveCount => reverse_topo_sort(l, &Strategy::AboveCount),
        SortSpec::Random(seed) => reverse_topo_sort(l, &Strategy::Random(seed)),
        SortSpec::IntentSize => {
            let cl = loaded
                .concepts()
                .ok_or_else(|| CliError::Usage("--sort key:intent-size needs a context input".into()))?;
            let key = |e: ElementId| cl.intent(e).len() as i64;
            reverse_topo_sort(cl, &Strategy::RankKey(&key))
        }
    };
    order.map_err(|e| CliError::Input(e.to_string()))
}

fn diagram(args: &DiagramArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.trace.is_some() && args.algo == Algo::Oracle {
        return Err(CliError::Usage("--trace needs --algo border or ipred".into()));
    }
    if args.embedding.is_some() && args.algo != Algo::Ipred {
        return Err(CliError::Usage("--embedding only applies to --algo ipred".into()));
    }
    let loaded = load(&args.input)?;
    let l = loaded.lattice();
    let order = build_order(&loaded, args.sort)?;
    let counters = OpCounters::new();
    let counted = Counting::new(l, &counters);
    let start = Instant::now();
    let mut trace_text = None;

    let (diagram, max_border) = match args.algo {
        Algo::Oracle => (oracle_hasse(&counted), 0),
        Algo::Border => {
            let mut rec = TraceRecorder::new(l);
            let observer = args
                .trace
                .is_some()
                .then_some(&mut rec as &mut dyn crate::algorithms::StepObserver);
            let run = generalized_border(&counted, &order, &BorderOptions { verify_order: false }, observer)?;
            if args.trace.is_some() {
                trace_text = Some(emit_trace(rec.trace()));
            }
            (run.diagram, run.max_border)
        }
        Algo::Ipred => {
            let emb = build_embedding(&loaded, args.embedding)?;
            if !args.unchecked {
                let report = validate_embedding(&emb, l);
                if !report.ok() {
                    return Err(AlgoError::EmbeddingInvalid(report).into());
                }
            }
            let map = CountedMap::new(&emb, &counters);
            let opts = IpredOptions {
                verify_order: false,
                unchecked: true,
            };
            let mut rec = TraceRecorder::with_codomain(l, emb.target());
            let observer = args
                .trace
                .is_some()
                .then_some(&mut rec as &mut dyn crate::algorithms::StepObserver);
            let Construction {
                diagram, max_border, ..
            } = generalized_ipred(&counted, &order, &map, &opts, observer)?;
            if args.trace.is_some() {
                trace_text = Some(emit_trace(rec.trace()));
            }
            (diagram, max_border)
        }
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let snapshot = counters.snapshot();

    let text = match args.out {
        OutKind::Dot => emit_dot(&diagram, l),
        OutKind::Json => emit_edges_json(&diagram, l),
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Input(format!("writing output: {e}")))?;
    if let (Some(path), Some(text)) = (&args.trace, trace_text) {
        write(path, &text)?;
    }
    if let Some(path) = &args.stats {
        let stats = RunStats {
            instance: args.input.input.display().to_string(),
            algorithm: format!("{:?}", args.algo).to_lowercase(),
            n: l.size(),
            width: width(l),
            edges: diagram.len(),
            counters: OpCounts::from(snapshot),
            max_border,
            wall_ms,
        };
        write(path, &emit_stats(&stats))?;
    }
    Ok(())
}

fn check(args: &CheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let loaded = load(&args.input)?;
    let l = loaded.lattice();
    let mut text = format!(
        "valid: true\nelements: {}\ncover-edges: {}\nwidth: {}\n",
        l.size(),
        oracle_hasse(l).len(),
        width(l)
    );
    if args.distributive {
        match distributivity_witness(l) {
            None => text.push_str("distributive: true\n"),
            Some([x, y, z]) => text.push_str(&format!(
                "distributive: false (witness {}, {}, {})\n",
                l.name(x),
                l.name(y),
                l.name(z)
            )),
        }
    }
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Input(format!("writing output: {e}")))
}

fn concepts(args: &ConceptsArgs) -> Result<(), CliError> {
    if infer_format(&args.input) == Format::LatticeJson {
        return Err(CliError::Usage(
            "concepts needs a context input (cxt or transactions)".into(),
        ));
    }
    let loaded = load(&args.input)?;
    let cl = loaded.concepts().expect("context input");
    let order = reverse_topo_sort(cl, &Strategy::AboveCount).map_err(|e| CliError::Input(e.to_string()))?;
    let run = generalized_ipred(
        cl,
        &order,
        &powerset_intent_embedding(cl),
        &IpredOptions::default(),
        None,
    )?;
    let names: Vec<String> = cl.elements().map(|e| cl.name(e).into_owned()).collect();
    let pairs: Vec<(String, String)> = run
        .diagram
        .edges()
        .iter()
        .map(|&(a, b)| (names[a.0].clone(), names[b.0].clone()))
        .collect();
    let explicit = ExplicitLattice::from_relation(&names, &pairs).map_err(|e| CliError::Input(e.to_string()))?;
    write(&args.out, &emit_lattice_json(&explicit))
}

fn bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let report = run_suite(&args.suite, args.repeat).map_err(|e| match e {
        BenchError::Spec(_) => CliError::Usage(e.to_string()),
        BenchError::Algorithm(a) => a.into(),
        other => CliError::Input(other.to_string()),
    })?;
    let text = emit_stats(&report);
    match &args.stats {
        Some(path) => write(path, &text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("writing output: {e}"))),
    }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = match &cli.command {
        Command::Diagram(a) => diagram(a, out),
        Command::Check(a) => check(a, out),
        Command::Concepts(a) => concepts(a),
        Command::Bench(a) => bench(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
