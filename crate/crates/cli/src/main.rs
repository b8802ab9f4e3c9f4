use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use garsp_core::graph::{classify_cycles, is_af, CycleClass};
use garsp_core::ideals::{enumerate_admissible_pairs, ideal_is_semiprojective, AdmissiblePair};
use garsp_core::oracle::{properly_infinite_bounded, Budget, OracleAnswer};
use garsp_core::projections::{
    corner_graph, h_model, infinite_model, model_properly_infinite, properly_infinite, Model,
    ModelError, ProjectionError,
};
use garsp_core::semiproj::{
    census, extension_safe, is_semiprojective, star_pairs, subquotient_witness, CensusError,
};
use garsp_core::{GraphError, Multiplicity, RelativeGraph, VertexSet};

#[derive(Parser)]
#[command(name = "garsp", version, about = "Semiprojectivity and infiniteness of relative graph C*-algebras")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph file in the text or JSON format; `-` reads stdin.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Semiprojectivity verdict with obstructions.
    Analyze(Input),
    /// Every n x n graph algebra over an alphabet; lists the non-semiprojective ones.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0,1,2,inf")]
        alphabet: String,
        #[arg(long, env = "GARSP_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// The FindFQ iteration for p_V as a table.
    TraceFindfq {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertex ids.
        #[arg(long)]
        set: String,
    },
    /// Gauge-invariant ideals with their semiprojectivity.
    Ideals(Input),
    /// Pairs with property (*) and extension safety.
    Star(Input),
    /// The corner cut down by a model projection.
    Corner {
        #[command(flatten)]
        input: Input,
        /// `V;v<w*k;...`, e.g. `0,1;1<0`.
        #[arg(long)]
        model: String,
    },
    /// Bounded search for 2[p] <= [p] in the monoid.
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Same syntax as for `corner`.
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 12)]
        max_depth: usize,
        #[arg(long, default_value_t = 200_000)]
        max_states: usize,
    },
    /// Vertex kinds and cycle classes.
    Classify(Input),
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Syntax(_) => 2,
            CliError::Precondition(_) => 1,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Syntax { .. } | GraphError::NotSquare { .. } => CliError::Syntax(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Syntax(_) => CliError::Syntax(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<ProjectionError> for CliError {
    fn from(e: ProjectionError) -> Self {
        match e {
            ProjectionError::Model(m) => m.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

struct Output {
    digest_source: Vec<u8>,
    text: String,
    result: Value,
}

fn read_input(input: &Input) -> Result<(Vec<u8>, RelativeGraph), CliError> {
    let bytes = if input.file.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::Precondition(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read(&input.file).map_err(|e| CliError::Precondition(format!("{}: {e}", input.file.display())))?
    };
    let text = std::str::from_utf8(&bytes).map_err(|_| CliError::Syntax("input is not UTF-8".into()))?;
    let g = RelativeGraph::parse(text)?;
    Ok((bytes, g))
}

fn parse_set(g: &RelativeGraph, text: &str) -> Result<VertexSet, CliError> {
    let mut set = VertexSet::new();
    for t in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = t.parse().map_err(|_| CliError::Syntax(format!("bad vertex `{t}`")))?;
        if v >= g.vertex_count() {
            return Err(GraphError::VertexOutOfRange(v).into());
        }
        set.insert(v);
    }
    Ok(set)
}

fn parse_alphabet(text: &str) -> Result<Vec<Multiplicity>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Syntax(format!("bad multiplicity `{t}`"))))
        .collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn pair_text(ap: &AdmissiblePair) -> String {
    format!("H={} R={}", ap.h, ap.r)
}

fn analyze(input: &Input) -> Result<Output, CliError> {
    let (bytes, g) = read_input(input)?;
    let verdict = is_semiprojective(&g);
    let sq = subquotient_witness(&g);
    let safe = extension_safe(&g);
    let mut text = format!("semiprojective: {}\n", verdict.semiprojective);
    for o in &verdict.obstructions {
        text += &format!(
            "obstruction at {}: omega={} {:?} witness at {} (paths {}), quotient {}, {:?}\n",
            o.v,
            o.omega,
            o.witness.kind,
            o.witness.w,
            o.witness.path_count,
            pair_text(&o.quotient_pair),
            o.corner_type
        );
    }
    if let Some(sq) = &sq {
        let checked = if sq.shape_verified { "shape checked" } else { "shape not checked" };
        text += &format!("subquotient {:?}: I: {}, J: {} ({checked})\n", sq.tag, pair_text(&sq.i), pair_text(&sq.j));
    }
    text += &format!("extension safe: {safe}\n");
    let result = json!({
        "semiprojective": verdict.semiprojective,
        "obstructions": to_value(&verdict.obstructions),
        "subquotient": to_value(&sq),
        "extension_safe": safe,
    });
    Ok(Output { digest_source: bytes, text, result })
}

fn run_census(n: usize, alphabet: &str, workers: usize) -> Result<Output, CliError> {
    let alpha = parse_alphabet(alphabet)?;
    let report = census(n, &alpha, workers)?;
    let mut text = format!(
        "{} of {} matrices are not semiprojective\n",
        report.non_semiprojective.len(),
        report.total
    );
    for e in &report.non_semiprojective {
        let rows: Vec<String> = e
            .adj
            .iter()
            .map(|r| r.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        text += &format!("#{} [{}]\n", e.index, rows.join("; "));
    }
    let source = format!("census n={n} alphabet={alphabet}");
    Ok(Output { digest_source: source.into_bytes(), text, result: to_value(&report) })
}

fn trace_findfq(input: &Input, set: &str) -> Result<Output, CliError> {
    let (bytes, g) = read_input(input)?;
    let v = parse_set(&g, set)?;
    let (_, trace) = properly_infinite(&g, &v);
    Ok(Output { digest_source: bytes, text: trace.to_table(), result: to_value(&trace) })
}

fn strictly_above(a: &AdmissiblePair, b: &AdmissiblePair) -> bool {
    a != b && a.contains(b)
}

fn ideals(input: &Input) -> Result<Output, CliError> {
    let (bytes, g) = read_input(input)?;
    let mut pairs = enumerate_admissible_pairs(&g);
    pairs.sort_by_key(|p| (p.h.len(), p.r.len()));
    let mut rows = Vec::new();
    let mut text = String::new();
    for (i, p) in pairs.iter().enumerate() {
        let sp = ideal_is_semiprojective(&g, p).map_err(|e| CliError::Precondition(e.to_string()))?;
        let below: Vec<usize> = (0..pairs.len())
            .filter(|&j| strictly_above(p, &pairs[j]))
            .filter(|&j| !pairs.iter().any(|k| strictly_above(p, k) && strictly_above(k, &pairs[j])))
            .collect();
        text += &format!("[{i}] {} semiprojective={sp} covers={below:?}\n", pair_text(p));
        rows.push(json!({ "H": to_value(&p.h), "R": to_value(&p.r), "semiprojective": sp, "covers": below }));
    }
    Ok(Output { digest_source: bytes, text, result: Value::Array(rows) })
}

fn star(input: &Input) -> Result<Output, CliError> {
    let (bytes, g) = read_input(input)?;
    let pairs = star_pairs(&g);
    let safe = extension_safe(&g);
    let mut text: String = pairs.iter().map(|(a, b)| format!("({a}, {b})\n")).collect();
    if pairs.is_empty() {
        text += "no pairs with property (*)\n";
    }
    text += &format!("extension safe: {safe}\n");
    Ok(Output { digest_source: bytes, text, result: json!({ "pairs": pairs, "extension_safe": safe }) })
}

fn corner(input: &Input, model: &str) -> Result<Output, CliError> {
    let (bytes, g) = read_input(input)?;
    let m = Model::parse(&g, model)?;
    let reduced = h_model(&g, &m)?;
    let f = corner_graph(&g, &reduced)?;
    let sp = is_semiprojective(&f.graph).semiprojective;
    let pi = model_properly_infinite(&g, &m)?;
    let fin = infinite_model(&g, &m)?;
    let text = format!(
        "model: {m}\nreduced model: {reduced}\ncorner vertices: {:?}\n{}semiprojective: {sp}\n{fin:?}, {pi:?}\n",
        f.original,
        f.graph.to_text()
    );
    let result = json!({
        "model": m.to_string(),
        "reduced_model": reduced.to_string(),
        "original_vertices": f.original,
        "graph": to_value(&f.graph.to_doc()),
        "semiprojective": sp,
        "finiteness": to_value(&fin),
        "proper_infiniteness": to_value(&pi),
    });
    Ok(Output { digest_source: bytes, text, result })
}

fn oracle(input: &Input, model: &str, budget: Budget) -> Result<Output, CliError> {
    let (bytes, g) = read_input(input)?;
    let m = Model::parse(&g, model)?;
    if budget.max_depth == 0 || budget.max_states == 0 {
        return Err(CliError::Precondition("budget must be positive".into()));
    }
    let ans = properly_infinite_bounded(&g, &m, budget)?;
    let text = match &ans {
        OracleAnswer::Yes { trace } => {
            let mut t = format!("Yes in {} steps\n", trace.len() - 1);
            for x in trace {
                t += &format!("  {x}\n");
            }
            t
        }
        OracleAnswer::Unknown { reason, states } => format!("Unknown ({reason:?}, {states} states)\n"),
    };
    Ok(Output { digest_source: bytes, text, result: json!({ "budget": to_value(&budget), "answer": to_value(&ans) }) })
}

fn classify(input: &Input) -> Result<Output, CliError> {
    let (bytes, g) = read_input(input)?;
    let classes = classify_cycles(&g);
    let mut rows = Vec::new();
    let mut text = String::new();
    for v in 0..g.vertex_count() {
        let kind = if g.is_source(v) {
            "source"
        } else if g.is_infinite_receiver(v) {
            "infinite receiver"
        } else {
            "regular"
        };
        let class = match classes.class(v) {
            CycleClass::C0 => "C0",
            CycleClass::C1 => "C1",
            CycleClass::C2 => "C2",
        };
        let in_s = g.in_relations(v);
        text += &format!("{v}: {kind}, {class}{}\n", if in_s { ", in S" } else { "" });
        rows.push(json!({ "vertex": v, "kind": kind, "class": class, "in_S": in_s }));
    }
    let infinite = classes.infinite_set(&g);
    let af = is_af(&g);
    text += &format!("infinite set: {infinite}\nAF: {af}\n");
    Ok(Output {
        digest_source: bytes,
        text,
        result: json!({ "vertices": rows, "infinite_set": to_value(&infinite), "af": af }),
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze(_) => "analyze",
        Command::Census { .. } => "census",
        Command::TraceFindfq { .. } => "trace-findfq",
        Command::Ideals(_) => "ideals",
        Command::Star(_) => "star",
        Command::Corner { .. } => "corner",
        Command::Oracle { .. } => "oracle",
        Command::Classify(_) => "classify",
    }
}

fn dispatch(c: &Command) -> Result<Output, CliError> {
    match c {
        Command::Analyze(i) => analyze(i),
        Command::Census { n, alphabet, workers } => run_census(*n, alphabet, *workers),
        Command::TraceFindfq { input, set } => trace_findfq(input, set),
        Command::Ideals(i) => ideals(i),
        Command::Star(i) => star(i),
        Command::Corner { input, model } => corner(input, model),
        Command::Oracle { input, model, max_depth, max_states } => {
            oracle(input, model, Budget { max_depth: *max_depth, max_states: *max_states })
        }
        Command::Classify(i) => classify(i),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match dispatch(&cli.command) {
        Ok(out) => {
            if cli.json {
                let report = json!({
                    "command": name,
                    "args": std::env::args().skip(1).collect::<Vec<_>>(),
                    "input_sha256": format!("{:x}", Sha256::digest(&out.digest_source)),
                    "version": env!("CARGO_PKG_VERSION"),
                    "result": out.result,
                });
                println!("{}", serde_json::to_string_pretty(&report).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("garsp {name}: {e}");
            ExitCode::from(e.code())
        }
    }
}
