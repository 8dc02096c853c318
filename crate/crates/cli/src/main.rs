use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcat::frobenius::are_complementary;
use qcat::io::{self, AnyStructure, Loaded};
use qcat::models::classify_rel;
use qcat::simon::{self, Diagnosis, Mode};
use qcat::{Error, LawReport};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "qcat",
    version,
    about = "Classical structures, complementarity and Simon's algorithm in FHilb and Rel"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Tolerance for complex comparisons; boolean checks are exact.
    #[arg(long, default_value_t = 1e-9, global = true)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the classical structure laws.
    Axioms(Source),
    /// Run Simon's algorithm on a bit function.
    Simon(SimonArgs),
    /// Enumerate boolean classical structures up to isomorphism.
    Classify {
        #[arg(long)]
        size: usize,
    },
    /// Print the copyable basis.
    Basis(Source),
    /// Decide whether two structures are complementary.
    Complementary(Pair),
}

#[derive(Args)]
struct Source {
    /// Structure JSON file.
    file: Option<PathBuf>,
    /// Builtin: fhilb:N, hadamard:N, rect:zK, group:zK or group:z2xz2.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
}

#[derive(Args)]
struct Pair {
    files: Vec<PathBuf>,
    #[arg(long)]
    builtin: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SimonModel {
    Fhilb,
    Rel,
}

#[derive(Clone, Copy, ValueEnum)]
enum SimonMode {
    Exact,
    Sampled,
}

#[derive(Args)]
struct SimonArgs {
    #[arg(long, value_enum, default_value_t = SimonModel::Fhilb)]
    model: SimonModel,
    /// Bit function JSON file.
    #[arg(long = "f")]
    f: PathBuf,
    #[arg(long, value_enum, default_value_t = SimonMode::Exact)]
    mode: SimonMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// What a command prints and how it exits.
struct Outcome {
    json: Value,
    text: String,
    success: bool,
}

enum Failure {
    Input(String),
    Semantic(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LawFailure(_) | Error::TheoremViolation(_) | Error::Degenerate(_) | Error::NotCopyable => {
                Failure::Semantic(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(src: &Source) -> Result<Loaded, Failure> {
    match (&src.file, &src.builtin) {
        (_, Some(b)) => Ok(io::builtin(b)?),
        (Some(p), None) => Ok(io::parse_structure(&read(p)?)?.into()),
        (None, None) => Err(Failure::Input("give a structure file or --builtin".into())),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn law_table(r: &LawReport) -> String {
    let mut s = format!("{:<16} {:<6} {:>12}\n", "law", "holds", "residual");
    for l in &r.laws {
        let _ = writeln!(s, "{:<16} {:<6} {:>12.3e}", l.name, l.holds, l.residual);
    }
    s
}

fn axioms(src: &Source, tol: f64) -> Result<Outcome, Failure> {
    let l = load(src)?;
    let report = match &l.structure {
        AnyStructure::Complex(c) => c.check_laws(tol)?,
        AnyStructure::Boolean(c) => c.check_laws(0.0)?,
    };
    let ok = report.all_hold();
    Ok(Outcome {
        json: json!({
            "model": l.structure.model(),
            "n": l.structure.n(),
            "all_hold": ok,
            "failures": report.failures(),
            "laws": to_json(&report.laws),
        }),
        text: law_table(&report),
        success: ok,
    })
}

fn run_simon(a: &SimonArgs) -> Result<Outcome, Failure> {
    let f = io::parse_bitfn(&read(&a.f)?)?;
    let report = match (a.model, a.mode) {
        (SimonModel::Fhilb, SimonMode::Exact) => simon::simon_run_fhilb(&f, Mode::Exact)?,
        (SimonModel::Fhilb, SimonMode::Sampled) => simon::simon_run_fhilb(&f, Mode::Sampled { seed: a.seed })?,
        (SimonModel::Rel, SimonMode::Exact) => simon::simon_run_rel(&f)?,
        (SimonModel::Rel, SimonMode::Sampled) => {
            return Err(Failure::Input("the rel model has no sampled mode".into()))
        }
    };
    let period = report
        .period
        .map_or("none".to_string(), |c| format!("{c:0w$b}", w = f.m() as usize));
    let text = format!(
        "support {:?}\nequations {:?}\nperiod {period}\ndiagnosis {}\nsamples {}\n",
        report.support,
        report.equations,
        to_json(&report.diagnosis).as_str().unwrap_or_default(),
        report.samples_used
    );
    Ok(Outcome {
        success: report.diagnosis == Diagnosis::Unique,
        json: to_json(&report),
        text,
    })
}

fn classify(size: usize) -> Result<Outcome, Failure> {
    let classes = classify_rel(size)?;
    let json = Value::Array(
        classes
            .iter()
            .map(|c| {
                json!({
                    "signature": c.signature,
                    "labeled": c.labeled,
                    "blocks": c.decomposition.blocks.iter().map(|b| json!({
                        "elements": b.elements,
                        "group": b.name,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect(),
    );
    let mut text = String::new();
    for c in &classes {
        let _ = writeln!(text, "{} ({} labeled)", c.signature.join(" + "), c.labeled);
    }
    Ok(Outcome {
        json,
        text,
        success: true,
    })
}

fn basis(src: &Source) -> Result<Outcome, Failure> {
    let l = load(src)?;
    let json = io::basis_to_json(&l)?;
    let text = match &json {
        Value::Array(v) => v
            .iter()
            .map(|x| format!("{}\n", x.as_str().map_or(x.to_string(), str::to_string)))
            .collect(),
        other => other.to_string(),
    };
    Ok(Outcome {
        json,
        text,
        success: true,
    })
}

fn complementary(p: &Pair, tol: f64) -> Result<Outcome, Failure> {
    let mut all = p
        .builtin
        .iter()
        .map(|b| io::builtin(b).map(|l| l.structure))
        .collect::<Result<Vec<_>, _>>()?;
    for f in &p.files {
        all.push(io::parse_structure(&read(f)?)?);
    }
    let ok = match all.as_slice() {
        [AnyStructure::Complex(a), AnyStructure::Complex(b)] => are_complementary(a, b, tol)?,
        [AnyStructure::Boolean(a), AnyStructure::Boolean(b)] => are_complementary(a, b, 0.0)?,
        [_, _] => return Err(Failure::Input("structures belong to different models".into())),
        _ => return Err(Failure::Input(format!("expected two structures, got {}", all.len()))),
    };
    Ok(Outcome {
        json: json!(ok),
        text: format!("{ok}\n"),
        success: ok,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tolerance >= 0.0 && cli.tolerance.is_finite()) {
        eprintln!("error: --tolerance must be a nonnegative number");
        return ExitCode::from(2);
    }
    let result = match &cli.command {
        Command::Axioms(s) => axioms(s, cli.tolerance),
        Command::Simon(a) => run_simon(a),
        Command::Classify { size } => classify(*size),
        Command::Basis(s) => basis(s),
        Command::Complementary(p) => complementary(p, cli.tolerance),
    };
    match result {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).unwrap_or_default()),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Semantic(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
    }
}
