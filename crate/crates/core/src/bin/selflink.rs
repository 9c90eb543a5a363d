//! Command-line entry point. Every command prints a single JSON document to
//! stdout: `{"diagnostics": [...], "payload": {...}, "status": "ok"|"error"}`
//! with object keys sorted, so identical invocations produce identical
//! bytes. Errors carry a machine-readable code in the payload and map to
//! exit codes: 0 ok, 2 usage, 3 input validation, 4 violated mathematical
//! precondition, 5 internal invariant breach.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use selflink::error::Error;
use selflink::forested::{contraction_identity_check, forested_form, Evaluator};
use selflink::graph::Edge;
use selflink::json;
use selflink::link::{linking_matrix, self_linking_weight};
use selflink::ring::Ring;
use selflink::trees::{enumerate_trees, trees_through_edge};
use selflink::wall::{
    generate_random_scenario, run_scenario, trace_is_constant, ScenarioParams,
};

#[derive(Parser)]
#[command(
    name = "selflink",
    about = "Forested forms, self-linking weights and wall-crossing checks over exact rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ring constants and element parsing checks.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Spanning-tree enumeration of complete graphs.
    Trees {
        #[command(subcommand)]
        command: TreesCommand,
    },
    /// Forested-form evaluation and its contraction identity.
    Forested {
        #[command(subcommand)]
        command: ForestedCommand,
    },
    /// Linking matrices and self-linking weights.
    Lk {
        #[command(subcommand)]
        command: LkCommand,
    },
    /// Wall-crossing scenarios.
    Wallcross {
        #[command(subcommand)]
        command: WallcrossCommand,
    },
}

#[derive(Subcommand)]
enum RingCommand {
    /// Print the additive and multiplicative identities.
    Constants {
        #[arg(long, value_name = "SPEC")]
        ring: String,
    },
    /// Parse an element and print its canonical form.
    Parse {
        #[arg(long, value_name = "SPEC")]
        ring: String,
        #[arg(long)]
        value: String,
    },
}

#[derive(Subcommand)]
enum TreesCommand {
    /// Count the spanning trees of the complete graph on N vertices.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// List spanning trees as edge lists, optionally only those through an edge.
    List {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "I,J")]
        through: Option<String>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CliEvaluator {
    Treesum,
    Det,
}

impl CliEvaluator {
    fn to_evaluator(self) -> Evaluator {
        match self {
            CliEvaluator::Treesum => Evaluator::TreeSum,
            CliEvaluator::Det => Evaluator::Determinant,
        }
    }
}

#[derive(Subcommand)]
enum ForestedCommand {
    /// Evaluate the forested form of an edge-vector document.
    Eval {
        #[arg(long, value_name = "FILE")]
        input: String,
        #[arg(long, value_enum, default_value = "det")]
        evaluator: CliEvaluator,
    },
    /// Check the contraction identity at one edge of an edge vector.
    CheckIdentity {
        #[arg(long, value_name = "FILE")]
        input: String,
        #[arg(long, value_name = "I,J")]
        edge: String,
        #[arg(long, value_enum, default_value = "treesum")]
        evaluator: CliEvaluator,
    },
}

#[derive(Subcommand)]
enum LkCommand {
    /// Compute the linking matrix of a link document.
    Matrix {
        #[arg(long, value_name = "FILE")]
        link: String,
        #[arg(long, value_name = "SPEC", default_value = "integers")]
        ring: String,
    },
    /// Compute the self-linking weight from a matrix or a link document.
    Weight {
        #[arg(long, value_name = "FILE", conflicts_with = "link")]
        matrix: Option<String>,
        #[arg(long, value_name = "FILE")]
        link: Option<String>,
        #[arg(long, value_name = "SPEC", default_value = "integers")]
        ring: String,
    },
}

#[derive(Args, Clone)]
struct GenParams {
    #[arg(long, default_value_t = 3)]
    configs: usize,
    #[arg(long, default_value_t = 4)]
    max_components: usize,
    #[arg(long, default_value_t = 12)]
    events: usize,
    #[arg(long, default_value_t = 5)]
    magnitude: u64,
}

impl GenParams {
    fn to_params(&self) -> ScenarioParams {
        ScenarioParams {
            initial_configs: self.configs,
            max_components: self.max_components,
            events: self.events,
            magnitude: self.magnitude,
        }
    }
}

#[derive(Subcommand)]
enum WallcrossCommand {
    /// Run a scenario document and print the weight trace.
    Run {
        #[arg(long, value_name = "FILE")]
        scenario: String,
    },
    /// Generate a seeded random scenario document.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_name = "SPEC")]
        ring: String,
        #[command(flatten)]
        params: GenParams,
    },
    /// Run many seeded scenarios and fail on any non-constant trace.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: u64,
        #[arg(long, value_name = "SPEC")]
        ring: String,
        #[command(flatten)]
        params: GenParams,
    },
}

enum Payload {
    Value(Value),
    /// Pre-serialized canonical JSON, for payloads too large to hold as a
    /// value tree.
    Raw(String),
}

struct Outcome {
    payload: Payload,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn new(payload: Value) -> Outcome {
        Outcome { payload: Payload::Value(payload), diagnostics: Vec::new() }
    }

    fn raw(payload: String) -> Outcome {
        Outcome { payload: Payload::Raw(payload), diagnostics: Vec::new() }
    }

    fn with_diagnostics(payload: Value, diagnostics: Vec<String>) -> Outcome {
        Outcome { payload: Payload::Value(payload), diagnostics }
    }
}

struct Failure {
    code: String,
    message: String,
    exit: i32,
    extra: Option<(String, Value)>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: e.code().to_string(),
            message: e.to_string(),
            exit: e.exit_code(),
            extra: None,
        }
    }
}

fn emit(status: &str, payload: Payload, diagnostics: &[String]) {
    // Keys stay in sorted order either way, so raw and value payloads
    // render identically shaped envelopes.
    let diagnostics = serde_json::to_string(diagnostics).expect("strings serialize");
    let payload = match payload {
        Payload::Value(v) => v.to_string(),
        Payload::Raw(s) => s,
    };
    println!("{{\"diagnostics\":{diagnostics},\"payload\":{payload},\"status\":\"{status}\"}}");
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            emit(
                "error",
                Payload::Value(json!({"code": "usage", "message": e.to_string()})),
                &[],
            );
            std::process::exit(2);
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => {
            emit("ok", outcome.payload, &outcome.diagnostics);
        }
        Err(failure) => {
            let mut payload = json!({"code": failure.code, "message": failure.message});
            if let Some((key, value)) = failure.extra {
                payload[key] = value;
            }
            emit("error", Payload::Value(payload), &[]);
            std::process::exit(failure.exit);
        }
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::from(Error::InvalidInput(format!("cannot read {path:?}: {e}"))))
}

fn parse_edge(text: &str) -> Result<Edge, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Failure::from(Error::InvalidEdge(format!(
            "expected I,J got {text:?}"
        ))));
    }
    let parse = |s: &str| -> Result<usize, Failure> {
        s.parse()
            .map_err(|_| Failure::from(Error::InvalidEdge(format!("bad vertex {s:?}"))))
    };
    Edge::new(parse(parts[0])?, parse(parts[1])?).map_err(Failure::from)
}

fn dispatch(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Ring { command } => run_ring(command),
        Command::Trees { command } => run_trees(command),
        Command::Forested { command } => run_forested(command),
        Command::Lk { command } => run_lk(command),
        Command::Wallcross { command } => run_wallcross(command),
    }
}

fn run_ring(command: RingCommand) -> Result<Outcome, Failure> {
    match command {
        RingCommand::Constants { ring } => {
            let ring = Ring::from_spec(&ring)?;
            let (zero, one) = ring.constants();
            Ok(Outcome::new(json!({
                "ring": json::to_value(&json::ring_to_doc(&ring))?,
                "zero": ring.format_element(&zero),
                "one": ring.format_element(&one),
            })))
        }
        RingCommand::Parse { ring, value } => {
            let ring = Ring::from_spec(&ring)?;
            let element = ring.parse_element(&value)?;
            Ok(Outcome::new(json!({
                "canonical": ring.format_element(&element),
            })))
        }
    }
}

fn run_trees(command: TreesCommand) -> Result<Outcome, Failure> {
    match command {
        TreesCommand::Count { n } => {
            let count = enumerate_trees(n)?.count() as u64;
            Ok(Outcome::new(json!({"count": count, "n": n})))
        }
        TreesCommand::List { n, through } => {
            // Streamed into a raw JSON string: the full list for n = 9 has
            // millions of trees, far too many to hold as a value tree.
            let mut body = String::from("[");
            let mut count = 0u64;
            let mut push_tree = |t: &selflink::trees::SpanningTree, body: &mut String| {
                if count > 0 {
                    body.push(',');
                }
                body.push('[');
                for (i, e) in t.edges().iter().enumerate() {
                    if i > 0 {
                        body.push(',');
                    }
                    body.push_str(&format!("[{},{}]", e.lo(), e.hi()));
                }
                body.push(']');
                count += 1;
            };
            match through {
                None => {
                    for t in enumerate_trees(n)? {
                        push_tree(&t, &mut body);
                    }
                }
                Some(spec) => {
                    let edge = parse_edge(&spec)?;
                    for t in trees_through_edge(n, edge)? {
                        push_tree(&t, &mut body);
                    }
                }
            }
            body.push(']');
            Ok(Outcome::raw(format!(
                "{{\"count\":{count},\"n\":{n},\"trees\":{body}}}"
            )))
        }
    }
}

fn run_forested(command: ForestedCommand) -> Result<Outcome, Failure> {
    match command {
        ForestedCommand::Eval { input, evaluator } => {
            let vector = json::read_edge_vector(&read_file(&input)?)?;
            let value = forested_form(&vector, evaluator.to_evaluator())?;
            Ok(Outcome::new(json!({
                "value": vector.ring().format_element(&value),
            })))
        }
        ForestedCommand::CheckIdentity { input, edge, evaluator } => {
            let vector = json::read_edge_vector(&read_file(&input)?)?;
            let edge = parse_edge(&edge)?;
            let check = contraction_identity_check(&vector, edge, evaluator.to_evaluator())?;
            let ring = vector.ring();
            Ok(Outcome::new(json!({
                "lhs": ring.format_element(&check.lhs),
                "rhs": ring.format_element(&check.rhs),
                "holds": check.holds,
            })))
        }
    }
}

fn run_lk(command: LkCommand) -> Result<Outcome, Failure> {
    match command {
        LkCommand::Matrix { link, ring } => {
            let ring = Ring::from_spec(&ring)?;
            let link = json::read_link(&read_file(&link)?)?;
            let matrix = linking_matrix(&link, &ring)?;
            Ok(Outcome::new(json::to_value(&json::matrix_to_doc(&matrix))?))
        }
        LkCommand::Weight { matrix, link, ring } => {
            let m = match (matrix, link) {
                (Some(path), None) => json::read_matrix(&read_file(&path)?)?,
                (None, Some(path)) => {
                    let ring = Ring::from_spec(&ring)?;
                    let link = json::read_link(&read_file(&path)?)?;
                    linking_matrix(&link, &ring)?
                }
                _ => {
                    return Err(Failure::from(Error::InvalidInput(
                        "provide exactly one of --matrix or --link".into(),
                    )))
                }
            };
            let weight = self_linking_weight(&m)?;
            Ok(Outcome::new(json!({
                "n": m.n(),
                "value": m.ring().format_element(&weight),
            })))
        }
    }
}

fn run_wallcross(command: WallcrossCommand) -> Result<Outcome, Failure> {
    match command {
        WallcrossCommand::Run { scenario } => {
            let scenario = json::read_scenario(&read_file(&scenario)?)?;
            let trace = run_scenario(&scenario)?;
            let constant = trace_is_constant(&trace);
            let trace_docs = json::trace_to_docs(&scenario.ring, &trace);
            let trace_value = json::to_value(&trace_docs)?;
            if !constant {
                let err = Error::InvariantBreach("total weight changed along the trace".into());
                return Err(Failure {
                    code: err.code().into(),
                    message: err.to_string(),
                    exit: err.exit_code(),
                    extra: Some(("trace".into(), trace_value)),
                });
            }
            Ok(Outcome::new(json!({
                "constant": true,
                "trace": trace_value,
            })))
        }
        WallcrossCommand::Gen { seed, ring, params } => {
            let ring = Ring::from_spec(&ring)?;
            let scenario = generate_random_scenario(seed, &ring, &params.to_params())?;
            Ok(Outcome::new(json::to_value(&json::scenario_to_doc(&scenario))?))
        }
        WallcrossCommand::Fuzz { seed, count, ring, params } => {
            let ring = Ring::from_spec(&ring)?;
            let params = params.to_params();
            for offset in 0..count {
                let s = seed.wrapping_add(offset);
                let scenario = generate_random_scenario(s, &ring, &params)?;
                let trace = run_scenario(&scenario)?;
                if !trace_is_constant(&trace) {
                    let err =
                        Error::InvariantBreach(format!("non-constant trace for seed {s}"));
                    return Err(Failure {
                        code: err.code().into(),
                        message: err.to_string(),
                        exit: err.exit_code(),
                        extra: Some((
                            "trace".into(),
                            json::to_value(&json::trace_to_docs(&ring, &trace))?,
                        )),
                    });
                }
            }
            Ok(Outcome::with_diagnostics(
                json!({"constant": true, "scenarios": count}),
                vec![format!("{count} scenarios from seed {seed}: every trace constant")],
            ))
        }
    }
}
