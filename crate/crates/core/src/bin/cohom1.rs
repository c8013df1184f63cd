use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cohom1::classify::{self, ClassifyError, Filter, DEFAULT_BOUND};
use cohom1::diagram::{fundamental_group, is_primitive, validate, GroupDiagram};
use cohom1::document::{parse_document, serialize, ParseError};
use cohom1::topology::{is_manifold, realize};

const BOUND_VAR: &str = "COHOM1_ORACLE_BOUND";

#[derive(Parser)]
#[command(name = "cohom1", version, about = "Group diagrams of cohomogeneity one Alexandrov spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a diagram and report its invariants.
    Check {
        /// Inline diagram, path to a document, or `-` for stdin.
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Classification table in dimension 3 or 4.
    Classify {
        dim: usize,
        #[arg(long, conflicts_with_all = ["manifold", "all"])]
        non_manifold: bool,
        #[arg(long, conflicts_with = "all")]
        manifold: bool,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Non-simply connected T^{n-2} manifolds of dimension n, listed by model.
    #[command(name = "corollary-b")]
    CorollaryB {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Fundamental group of the space of a diagram.
    Pi1 {
        diagram: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Topological description of the space of a diagram.
    Realize {
        diagram: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

enum Failure {
    Rejected(String),
    Usage(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(format!("parse error: {e}"))
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::OutOfScope(_) | ClassifyError::Guard(_) => Failure::Usage(e.to_string()),
            ClassifyError::Diagram(d) => Failure::Rejected(d.to_string()),
        }
    }
}

fn oracle_bound() -> Result<u64, Failure> {
    match std::env::var(BOUND_VAR) {
        Err(_) => Ok(DEFAULT_BOUND),
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(b) if b >= 3 => Ok(b),
            _ => Err(Failure::Usage(format!("{BOUND_VAR} must be an integer >= 3, got `{v}`"))),
        },
    }
}

fn read_input(input: &str) -> Result<GroupDiagram, Failure> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
        s
    } else if !input.trim_start().starts_with('(') && Path::new(input).is_file() {
        std::fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{input}: {e}")))?
    } else {
        input.to_string()
    };
    Ok(parse_document(&text)?)
}

fn emit(format: Format, text: String, value: Value) {
    match format {
        Format::Table => print!("{text}"),
        Format::Structured => println!("{}", serde_json::to_string_pretty(&value).expect("json values serialize")),
    }
}

fn require_accepted(d: &GroupDiagram) -> Result<(), Failure> {
    let report = validate(d);
    if report.accepted {
        Ok(())
    } else {
        Err(Failure::Rejected(format!("rejected {d}: {}", report.reasons().join("; "))))
    }
}

fn check(input: &str, format: Format) -> Result<bool, Failure> {
    let d = read_input(input)?;
    let report = validate(&d);
    let mut text = format!("diagram: {d}\ncanonical: {}\ndimension: {}\n", serialize(&d), report.dimension);
    let mut value = json!({
        "diagram": d.to_string(),
        "canonical": serialize(&d),
        "dimension": report.dimension,
        "accepted": report.accepted,
        "effectiveness": format!("{:?}", report.effectiveness),
        "checks": report.checks,
    });
    for c in &report.checks {
        text += &format!("  [{}] {}: {}\n", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    if !report.accepted {
        text += "status: rejected\n";
        emit(format, text, value);
        return Ok(false);
    }
    text += &format!("status: accepted ({:?})\n", report.effectiveness);
    let obj = value.as_object_mut().expect("object literal");
    match is_manifold(&d) {
        Ok(m) => {
            text += &format!("manifold: {}\n", if m { "yes" } else { "no" });
            obj.insert("manifold".into(), json!(m));
        }
        Err(e) => text += &format!("manifold: undetermined ({e})\n"),
    }
    match fundamental_group(&d) {
        Ok(p) => {
            text += &format!("pi1: {p}\n");
            obj.insert("pi1".into(), json!(p.to_string()));
        }
        Err(e) => text += &format!("pi1: undetermined ({e})\n"),
    }
    if d.is_interval() {
        match is_primitive(&d) {
            Ok(p) => {
                let w = p.witness.as_ref().map(|w| w.to_string());
                match &w {
                    None => text += &format!("primitive: {}\n", if p.primitive { "yes" } else { "no" }),
                    Some(w) => text += &format!("primitive: no (contained in {w})\n"),
                }
                obj.insert("primitive".into(), json!({ "primitive": p.primitive, "witness": w }));
            }
            Err(e) => text += &format!("primitive: undetermined ({e})\n"),
        }
    }
    match realize(&d) {
        Ok(s) => {
            text += &format!("space: {s}\n");
            for n in s.notes() {
                text += &format!("  note: {n}\n");
            }
            obj.insert("space".into(), json!(s.to_string()));
            obj.insert("notes".into(), json!(s.notes()));
        }
        Err(e) => text += &format!("space: undetermined ({e})\n"),
    }
    emit(format, text, value);
    Ok(true)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Check { input, format } => check(&input, format),
        Command::Classify { dim, non_manifold, manifold, all: _, format } => {
            let filter = if non_manifold {
                Filter::NonManifold
            } else if manifold {
                Filter::Manifold
            } else {
                Filter::All
            };
            let table = classify::classify(dim, filter, oracle_bound()?)?;
            emit(format, table.to_string(), serde_json::to_value(&table).expect("table serializes"));
            Ok(true)
        }
        Command::CorollaryB { n, format } => {
            let list = classify::corollary_b_list(n)?;
            let labels: Vec<String> = list.iter().map(|s| s.to_string()).collect();
            let text = labels.iter().enumerate().map(|(i, l)| format!("{}. {l}\n", i + 1)).collect();
            emit(format, text, json!({ "n": n, "families": labels }));
            Ok(true)
        }
        Command::Pi1 { diagram, format } => {
            let d = read_input(&diagram)?;
            require_accepted(&d)?;
            let p = fundamental_group(&d).map_err(|e| Failure::Rejected(e.to_string()))?;
            emit(format, format!("{p}\n"), json!({ "diagram": d.to_string(), "pi1": p.to_string() }));
            Ok(true)
        }
        Command::Realize { diagram, format } => {
            let d = read_input(&diagram)?;
            require_accepted(&d)?;
            let s = realize(&d).map_err(|e| Failure::Rejected(e.to_string()))?;
            let mut text = format!("{s}\n");
            for n in s.notes() {
                text += &format!("  note: {n}\n");
            }
            let value = json!({
                "diagram": d.to_string(),
                "space": s.to_string(),
                "manifold": s.is_manifold(),
                "notes": s.notes(),
                "structure": s,
            });
            emit(format, text, value);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Rejected(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
