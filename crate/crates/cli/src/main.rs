//! `tropelim`: batch front end to the tropical elimination library.
//!
//! Reads a JSON problem document (from `--input` or stdin), runs one command
//! and writes a JSON result document (to `--output` or stdout).
//!
//! Exit codes: 0 success, 1 I/O failure, 2 schema or usage error, 3 violated
//! mathematical precondition, 4 genericity failure.

mod schema;
mod svg;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use tropelim::eliminate::{pushforward_seeded, MonomialMap};
use tropelim::fan::{is_balanced, Balance, TropicalCycle};
use tropelim::implicit::{graph_implicitization_seeded, tropical_implicitization, ParametrizationInput};
use tropelim::newton::{fiber_polytope_seeded, mixed_fiber_polytope_seeded, reconstruct_polytope_seeded};
use tropelim::polytope::RationalPolytope;
use tropelim::tropical::{tropical_ci, tropical_hypersurface, CompleteIntersectionInput};

use schema::{cone_value, cycle_value, int_value, polytope_value, rational_polytope_value, Problem, SchemaError, VERSION};

#[derive(Parser, Debug)]
#[command(name = "tropelim", version, about = "Exact tropical elimination on JSON documents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Problem document; stdin when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Result document; stdout when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Degree of the parametrization or monomial map (overrides the document).
    #[arg(long, global = true)]
    delta: Option<String>,
    /// Seed for generic point choices (overrides the document).
    #[arg(long, global = true, env = "TROPELIM_SEED")]
    seed: Option<u64>,
    /// Also render the result as SVG; planar results only.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Tropical variety of a generic complete intersection (`polytopes`).
    TropicalizeCi,
    /// Tropical hypersurface of a generic polynomial (`polytope`).
    TropicalizeHypersurface,
    /// Push a cycle forward along a monomial map (`cycle`, `matrix`).
    Pushforward,
    /// Tropical implicitization of a generic parametrization (`polytopes`).
    Implicitize {
        /// Use the graph of the parametrization instead of the direct formula.
        #[arg(long)]
        via_graph: bool,
    },
    /// Newton polytope of a tropical hypersurface (`cycle`).
    Newton,
    /// Mixed fiber polytope (`polytopes`, `matrix`).
    MixedFiber,
    /// Fiber polytope of `c` copies of `polytope` (`polytope`, `matrix`, `c`).
    Fiber,
    /// Check the balancing condition (`cycle`).
    CheckBalance,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::TropicalizeCi => "tropicalize-ci",
            Command::TropicalizeHypersurface => "tropicalize-hypersurface",
            Command::Pushforward => "pushforward",
            Command::Implicitize { .. } => "implicitize",
            Command::Newton => "newton",
            Command::MixedFiber => "mixed-fiber",
            Command::Fiber => "fiber",
            Command::CheckBalance => "check-balance",
        }
    }
}

enum Failure {
    Io(String),
    Schema(String),
    Math { error: tropelim::Error, extra: Value },
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::Schema(e.0)
    }
}

impl From<tropelim::Error> for Failure {
    fn from(error: tropelim::Error) -> Self {
        Failure::Math { error, extra: Value::Null }
    }
}

/// A computed result: the JSON payload and, for planar results, a figure.
enum Outcome {
    Cycle(TropicalCycle),
    Polytope(RationalPolytope),
    Balanced,
}

impl Outcome {
    fn document(&self) -> Value {
        match self {
            Outcome::Cycle(t) => json!({"version": VERSION, "cycle": cycle_value(t)}),
            Outcome::Polytope(p) => match p.to_lattice() {
                Some(q) => json!({"version": VERSION, "polytope": polytope_value(&q)}),
                None => json!({"version": VERSION, "polytope": rational_polytope_value(p)}),
            },
            Outcome::Balanced => json!({"version": VERSION, "balanced": true}),
        }
    }

    fn svg(&self) -> Option<String> {
        match self {
            Outcome::Cycle(t) if t.ambient_rank() == 2 => Some(svg::planar_fan(t)),
            Outcome::Polytope(p) if p.ambient_rank() == 2 => Some(svg::polygon(p.vertices())),
            _ => None,
        }
    }
}

fn degree(cli: &Cli, doc: &Problem) -> Result<BigInt, Failure> {
    match &cli.delta {
        Some(s) => BigInt::from_str(s.trim())
            .map_err(|_| Failure::Schema(format!("--delta: {s:?} is not an integer"))),
        None => Ok(doc.delta()?.unwrap_or_else(|| BigInt::from(1))),
    }
}

fn seed(cli: &Cli, doc: &Problem) -> u64 {
    cli.seed.or(doc.seed).unwrap_or(0)
}

fn run(cli: &Cli, doc: &Problem) -> Result<Outcome, Failure> {
    let seed = seed(cli, doc);
    match cli.command {
        Command::TropicalizeCi => {
            let ps = doc.polytopes()?;
            let input = CompleteIntersectionInput::new(ps[0].ambient_rank(), ps)?;
            Ok(Outcome::Cycle(tropical_ci(&input)?))
        }
        Command::TropicalizeHypersurface => Ok(Outcome::Cycle(tropical_hypersurface(&doc.polytope()?)?)),
        Command::Pushforward => {
            let t = doc.cycle()?;
            let map = MonomialMap::new(doc.matrix()?, degree(cli, doc)?)?;
            Ok(Outcome::Cycle(pushforward_seeded(&t, &map, seed)?))
        }
        Command::Implicitize { via_graph } => {
            let ps = doc.polytopes()?;
            let input = ParametrizationInput::new(ps[0].ambient_rank(), ps, degree(cli, doc)?)?;
            let t = if via_graph {
                graph_implicitization_seeded(&input, seed)?
            } else {
                tropical_implicitization(&input)?
            };
            Ok(Outcome::Cycle(t))
        }
        Command::Newton => {
            let q = reconstruct_polytope_seeded(&doc.cycle()?, seed)?;
            Ok(Outcome::Polytope(RationalPolytope::from(&q)))
        }
        Command::MixedFiber => {
            let ps = doc.polytopes()?;
            let map = MonomialMap::new(doc.matrix()?, degree(cli, doc)?)?;
            let q = mixed_fiber_polytope_seeded(&ps, &map, seed)?;
            Ok(Outcome::Polytope(RationalPolytope::from(&q)))
        }
        Command::Fiber => {
            let p = doc.polytope()?;
            let c = doc.c.ok_or_else(|| Failure::Schema("missing field \"c\"".into()))?;
            let map = MonomialMap::new(doc.matrix()?, degree(cli, doc)?)?;
            Ok(Outcome::Polytope(fiber_polytope_seeded(&p, &map, c, seed)?))
        }
        Command::CheckBalance => match is_balanced(&doc.cycle()?) {
            Balance::Balanced => Ok(Outcome::Balanced),
            Balance::Unbalanced { face, residual } => Err(Failure::Math {
                error: tropelim::Error::NotBalanced,
                extra: json!({
                    "face": cone_value(&face),
                    "residual": Value::Array(residual.iter().map(int_value).collect()),
                }),
            }),
        },
    }
}

fn read_input(cli: &Cli) -> Result<String, Failure> {
    let mut text = String::new();
    match &cli.input {
        Some(path) => {
            text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn write_output(cli: &Cli, doc: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(doc).expect("values serialize");
    text.push('\n');
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let doc = Problem::parse(&read_input(cli)?)?;
    let outcome = run(cli, &doc)?;
    if let Some(path) = &cli.svg {
        let figure = outcome.svg().ok_or_else(|| {
            Failure::Schema(format!("--svg: {} does not produce a planar result", cli.command.name()))
        })?;
        std::fs::write(path, figure).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    write_output(cli, &outcome.document())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) => {
            eprintln!("tropelim: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Schema(msg)) => {
            eprintln!("tropelim: schema error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math { error, extra }) => {
            let mut report = json!({
                "kind": error.kind(),
                "operation": cli.command.name(),
                "message": error.to_string(),
            });
            if let (Value::Object(r), Value::Object(x)) = (&mut report, extra) {
                r.extend(x);
            }
            eprintln!("tropelim: {}: {error}", error.kind());
            let doc = json!({"version": VERSION, "error": report});
            if let Err(Failure::Io(msg)) = write_output(&cli, &doc) {
                eprintln!("tropelim: {msg}");
            }
            ExitCode::from(if error.is_genericity_failure() { 4 } else { 3 })
        }
    }
}
