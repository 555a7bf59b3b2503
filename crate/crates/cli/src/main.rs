//! `fsp` — detect and compact frequent star patterns in RDF graphs.
//!
//! Subcommands: `detect`, `factorize`, `expand`, `stats`, `generate`.
//! Every run prints a human-readable report followed by one JSON record so
//! benchmarks can be scripted. Exit codes are stable: 0 ok, 2 bad input,
//! 3 assumption violation, 4 no candidate, 5 I/O failure, 6 integrity error.

use std::fmt;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fsp_core::detect::{
    check_assumptions, detect_exhaustive, detect_greedy, enumerate_pattern_space, DetectionResult,
    DEFAULT_SUBSET_CAP,
};
use fsp_core::factorize::{expand, factorize, savings_report, EntityMapping};
use fsp_core::generate::{class_term, generate, GeneratorSpec};
use fsp_core::ntriples::{parse_ntriples, serialize_ntriples, ParseError};
use fsp_core::{
    labeled_edge_count, repetition_histogram, EdgeConvention, Error as CoreError, Graph, Term,
};

#[derive(Parser)]
#[command(
    name = "fsp",
    version,
    about = "Detect and compact frequent star patterns in RDF graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the property subset whose star patterns are most shared
    Detect(DetectArgs),
    /// Rewrite shared star patterns into compact molecules with surrogates
    Factorize(FactorizeArgs),
    /// Undo a factorization using the linking edges (and optional mapping)
    Expand(ExpandArgs),
    /// Per-class statistics: instance counts, histograms, edge counts
    Stats(StatsArgs),
    /// Write a seeded synthetic dataset
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    /// Exhaustive scan of every property subset
    Efsp,
    /// Greedy descent from the full property set
    Gfsp,
}

impl fmt::Display for AlgorithmArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgorithmArg::Efsp => write!(f, "efsp"),
            AlgorithmArg::Gfsp => write!(f, "gfsp"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    /// Count type edges in labeled-edge totals
    WithType,
    /// Ignore type edges in labeled-edge totals
    WithoutType,
}

impl From<ConventionArg> for EdgeConvention {
    fn from(value: ConventionArg) -> Self {
        match value {
            ConventionArg::WithType => EdgeConvention::WithTypeEdges,
            ConventionArg::WithoutType => EdgeConvention::WithoutTypeEdges,
        }
    }
}

impl fmt::Display for ConventionArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConventionArg::WithType => write!(f, "with-type"),
            ConventionArg::WithoutType => write!(f, "without-type"),
        }
    }
}

#[derive(Args)]
struct DetectArgs {
    /// Input N-Triples file
    #[arg(long)]
    input: PathBuf,
    /// Class IRI, without angle brackets
    #[arg(long)]
    class: String,
    /// Comma-separated property IRIs; defaults to every class property
    #[arg(long, value_delimiter = ',')]
    properties: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Gfsp)]
    algorithm: AlgorithmArg,
    /// Fail when class entities violate completeness or functionality
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct FactorizeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Where the factorized N-Triples are written
    #[arg(long)]
    output: PathBuf,
    /// Where the entity-to-surrogate mapping is written (N-Triples)
    #[arg(long)]
    mapping: Option<PathBuf>,
    #[arg(long)]
    class: String,
    /// Properties to factorize over; detected internally when omitted
    #[arg(long, value_delimiter = ',')]
    properties: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Gfsp)]
    algorithm: AlgorithmArg,
    #[arg(long, value_enum, default_value_t = ConventionArg::WithType)]
    convention: ConventionArg,
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Mapping file to merge in before expanding
    #[arg(long)]
    mapping: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    input: PathBuf,
    /// Restrict the report to one class IRI
    #[arg(long)]
    class: Option<String>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    output: PathBuf,
    #[arg(long)]
    num_entities: usize,
    #[arg(long)]
    num_properties: usize,
    /// Tuple sharing in [0,1]: 0 all unique, 1 a single shared tuple
    #[arg(long)]
    repetition_skew: f64,
    /// Size of the per-property value pool
    #[arg(long)]
    value_cardinality: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug)]
enum CliError {
    Core(CoreError),
    Io { path: PathBuf, source: io::Error },
    EmptyInput(PathBuf),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::EmptyInput(path) => {
                write!(f, "{}: input graph is empty", path.display())
            }
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::EmptyInput(_) | CliError::Usage(_) => 2,
            CliError::Io { .. } => 5,
            CliError::Core(e) => match e {
                CoreError::Parse(ParseError::Io(_)) => 5,
                CoreError::Parse(_)
                | CoreError::Term(_)
                | CoreError::EmptyPropertySet
                | CoreError::NotASubset { .. }
                | CoreError::SubsetCapExceeded { .. }
                | CoreError::InvalidSubsetChain(_)
                | CoreError::InvalidGeneratorSpec(_)
                | CoreError::UndefinedSavings => 2,
                CoreError::FunctionalityViolation { .. }
                | CoreError::UndefinedInverse { .. }
                | CoreError::AssumptionsViolated(_) => 3,
                CoreError::NoCandidates
                | CoreError::TooFewProperties { .. }
                | CoreError::IncompletePatternSpace(_) => 4,
                CoreError::NotFunctionalInstanceOf { .. } | CoreError::DanglingSurrogate { .. } => {
                    6
                }
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Detect(args) => cmd_detect(args),
        Command::Factorize(args) => cmd_factorize(args),
        Command::Expand(args) => cmd_expand(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Generate(args) => cmd_generate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let file = File::open(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_ntriples(BufReader::new(file)).map_err(|e| CliError::Core(e.into()))
}

/// Writes through a temp file in the target directory, then renames.
fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let io_err = |source: io::Error| CliError::Io {
        path: path.to_owned(),
        source,
    };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => tempfile::NamedTempFile::new_in(dir),
        None => tempfile::NamedTempFile::new_in("."),
    }
    .map_err(io_err)?;
    tmp.write_all(content.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

fn class_iri(raw: &str) -> Result<Term, CliError> {
    Term::iri(raw).map_err(|e| CliError::Usage(format!("--class: {e}")))
}

fn property_list(raw: &[String]) -> Result<Vec<Term>, CliError> {
    raw.iter()
        .map(|p| Term::iri(p.trim()).map_err(|e| CliError::Usage(format!("--properties: {e}"))))
        .collect()
}

fn lexical_list(terms: &[Term]) -> String {
    terms
        .iter()
        .map(Term::lexical)
        .collect::<Vec<_>>()
        .join(", ")
}

fn enforce_strict(g: &Graph, class: &Term, s: &[Term], strict: bool) -> Result<(), CliError> {
    if !strict {
        return Ok(());
    }
    let diagnostics = check_assumptions(g, class, s);
    if diagnostics.is_empty() {
        Ok(())
    } else {
        Err(CliError::Core(CoreError::AssumptionsViolated(diagnostics)))
    }
}

fn run_detection(
    g: &Graph,
    class: &Term,
    s: &[Term],
    algorithm: AlgorithmArg,
) -> Result<DetectionResult, CliError> {
    match algorithm {
        AlgorithmArg::Efsp => {
            let space = enumerate_pattern_space(g, class, s, DEFAULT_SUBSET_CAP)?;
            Ok(detect_exhaustive(&space, g)?)
        }
        AlgorithmArg::Gfsp => Ok(detect_greedy(g, class, s)?),
    }
}

fn detection_properties(
    g: &Graph,
    class: &Term,
    explicit: &Option<Vec<String>>,
) -> Result<Vec<Term>, CliError> {
    match explicit {
        Some(raw) => property_list(raw),
        None => Ok(g.class_properties(class)),
    }
}

fn cmd_detect(args: DetectArgs) -> Result<(), CliError> {
    let g = read_graph(&args.input)?;
    if g.is_empty() {
        return Err(CliError::EmptyInput(args.input));
    }
    let class = class_iri(&args.class)?;
    let s = detection_properties(&g, &class, &args.properties)?;
    enforce_strict(&g, &class, &s, args.strict)?;

    let started = Instant::now();
    let result = run_detection(&g, &class, &s, args.algorithm)?;
    let exec_ms = started.elapsed().as_secs_f64() * 1e3;

    println!("class: {}", class.lexical());
    println!("algorithm: {}", args.algorithm);
    println!("properties (S): {}", lexical_list(&s));
    println!(
        "chosen subset (SP): {}",
        lexical_list(&result.best_properties)
    );
    println!("star patterns: {}", result.objective.pattern_multiplicity);
    println!("objective value: {}", result.objective.objective_value);
    println!(
        "factorized edge count: {}",
        result.objective.factorized_edges
    );
    println!("trace:");
    for entry in &result.trace {
        println!(
            "  {{{}}} -> {}",
            lexical_list(&entry.properties),
            entry.value
        );
    }
    println!("iterations: {}", result.evaluations());
    println!("exec time (ms): {exec_ms:.3}");

    let record = json!({
        "command": "detect",
        "input": args.input,
        "class": class.lexical(),
        "algorithm": args.algorithm.to_string(),
        "properties": s.iter().map(Term::lexical).collect::<Vec<_>>(),
        "chosen": result.best_properties.iter().map(Term::lexical).collect::<Vec<_>>(),
        "pattern_multiplicity": result.objective.pattern_multiplicity,
        "objective_value": result.objective.objective_value,
        "factorized_edges": result.objective.factorized_edges,
        "iterations": result.evaluations(),
        "exec_time_ms": exec_ms,
    });
    println!("{record}");
    Ok(())
}

fn write_mapping(path: &Path, mapping: &EntityMapping, like: &Graph) -> Result<(), CliError> {
    write_atomic(path, &serialize_ntriples(&mapping.as_graph(like)))
}

fn cmd_factorize(args: FactorizeArgs) -> Result<(), CliError> {
    let g = read_graph(&args.input)?;
    if g.is_empty() {
        return Err(CliError::EmptyInput(args.input));
    }
    let class = class_iri(&args.class)?;
    let s = g.class_properties(&class);
    let class_absent = g.class_instance_count(&class) == 0;

    let sp = match &args.properties {
        Some(raw) => property_list(raw)?,
        None if class_absent => Vec::new(),
        None => {
            enforce_strict(&g, &class, &s, args.strict)?;
            run_detection(&g, &class, &s, args.algorithm)?.best_properties
        }
    };
    if !sp.is_empty() {
        enforce_strict(&g, &class, &sp, args.strict)?;
    }

    let convention: EdgeConvention = args.convention.into();
    let (factorized, mapping) = if class_absent {
        eprintln!(
            "warning: class {} has no instances; output equals input",
            class.lexical()
        );
        (g.clone(), None)
    } else {
        let (factorized, mapping) = factorize(&g, &class, &sp)?;
        (factorized, Some(mapping))
    };

    write_atomic(&args.output, &serialize_ntriples(&factorized))?;
    if let Some(path) = &args.mapping {
        match &mapping {
            Some(mapping) => write_mapping(path, mapping, &g)?,
            None => write_atomic(path, "")?,
        }
    }

    let (nodes_before, nodes_after, edges_before, edges_after, percent) = if class_absent {
        (0, 0, 0, 0, 0.0)
    } else {
        let report = savings_report(&g, &factorized, &class, &s, convention)?;
        (
            report.nodes_before,
            report.nodes_after,
            report.edges_before,
            report.edges_after,
            report.percent_savings,
        )
    };

    println!("class: {}", class.lexical());
    println!("factorized over: {}", lexical_list(&sp));
    println!(
        "surrogates: {}",
        mapping.as_ref().map_or(0, |m| m.surrogates().len())
    );
    println!(
        "mapped entities: {}",
        mapping.as_ref().map_or(0, |m| m.len())
    );
    println!("nodes: {nodes_before} -> {nodes_after}");
    println!(
        "labeled edges ({}): {edges_before} -> {edges_after}",
        args.convention
    );
    println!("savings: {percent:+.1}%");

    let record = json!({
        "command": "factorize",
        "input": args.input,
        "output": args.output,
        "mapping": args.mapping,
        "class": class.lexical(),
        "properties": sp.iter().map(Term::lexical).collect::<Vec<_>>(),
        "surrogates": mapping.as_ref().map_or(0, |m| m.surrogates().len()),
        "mapped_entities": mapping.as_ref().map_or(0, |m| m.len()),
        "convention": args.convention.to_string(),
        "nodes_before": nodes_before,
        "nodes_after": nodes_after,
        "edges_before": edges_before,
        "edges_after": edges_after,
        "percent_savings": percent,
    });
    println!("{record}");
    Ok(())
}

fn cmd_expand(args: ExpandArgs) -> Result<(), CliError> {
    let mut g = read_graph(&args.input)?;
    if let Some(path) = &args.mapping {
        let mapping_graph = read_graph(path)?;
        g.extend(mapping_graph.iter().cloned());
    }
    let expanded = expand(&g, None)?;
    write_atomic(&args.output, &serialize_ntriples(&expanded))?;

    println!("triples: {} -> {}", g.len(), expanded.len());
    let record = json!({
        "command": "expand",
        "input": args.input,
        "mapping": args.mapping,
        "output": args.output,
        "triples_in": g.len(),
        "triples_out": expanded.len(),
    });
    println!("{record}");
    Ok(())
}

/// Objects shown per property in the stats histogram.
const HISTOGRAM_TOP: usize = 5;

fn cmd_stats(args: StatsArgs) -> Result<(), CliError> {
    let g = read_graph(&args.input)?;
    let classes: Vec<Term> = match &args.class {
        Some(raw) => vec![class_iri(raw)?],
        None => g.classes().into_iter().cloned().collect(),
    };

    let mut class_records = Vec::new();
    for class in &classes {
        let instances = g.class_instance_count(class);
        let s = g.class_properties(class);
        println!("class: {}", class.lexical());
        println!("  instances: {instances}");
        println!("  properties: {}", lexical_list(&s));
        println!(
            "  labeled edges: {} with type edges, {} without",
            labeled_edge_count(&g, class, &s, EdgeConvention::WithTypeEdges),
            labeled_edge_count(&g, class, &s, EdgeConvention::WithoutTypeEdges),
        );

        let mut property_records = Vec::new();
        for p in &s {
            let histogram = repetition_histogram(&g, class, p);
            let mut shares: Vec<(&Term, f64)> = histogram.iter().map(|(o, v)| (o, *v)).collect();
            shares.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
            shares.truncate(HISTOGRAM_TOP);
            let rendered: Vec<String> = shares
                .iter()
                .map(|(o, v)| format!("{} {v:.1}%", o.lexical()))
                .collect();
            println!("  {}: {}", p.lexical(), rendered.join(", "));
            property_records.push(json!({
                "property": p.lexical(),
                "top_objects": shares
                    .iter()
                    .map(|(o, v)| json!({"object": o.lexical(), "percent": v}))
                    .collect::<Vec<_>>(),
            }));
        }
        class_records.push(json!({
            "class": class.lexical(),
            "instances": instances,
            "properties": s.iter().map(Term::lexical).collect::<Vec<_>>(),
            "edges_with_type": labeled_edge_count(&g, class, &s, EdgeConvention::WithTypeEdges),
            "edges_without_type":
                labeled_edge_count(&g, class, &s, EdgeConvention::WithoutTypeEdges),
            "histograms": property_records,
        }));
    }

    let record = json!({
        "command": "stats",
        "input": args.input,
        "classes": class_records,
    });
    println!("{record}");
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let spec = GeneratorSpec {
        num_entities: args.num_entities,
        num_properties: args.num_properties,
        repetition_skew: args.repetition_skew,
        value_cardinality: args.value_cardinality,
    };
    let g = generate(&spec, args.seed)?;
    write_atomic(&args.output, &serialize_ntriples(&g))?;

    println!("class: {}", class_term().lexical());
    println!("entities: {}", args.num_entities);
    println!("triples: {}", g.len());
    let record = json!({
        "command": "generate",
        "output": args.output,
        "class": class_term().lexical(),
        "num_entities": args.num_entities,
        "num_properties": args.num_properties,
        "repetition_skew": args.repetition_skew,
        "value_cardinality": args.value_cardinality,
        "seed": args.seed,
        "triples": g.len(),
    });
    println!("{record}");
    Ok(())
}
