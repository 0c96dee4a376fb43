mod document;
mod render;

use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use document::{DocError, PairDocument, ScriptDocument};
use logk3::classify::{a1_abundance, enumerate, normalize};
use logk3::grouparith::{find_marked_point, FiniteGroupModel};
use logk3::iitaka::{build_counterexample, build_model, cyclic_quotient_invariants, IitakaTag, IitakaType};
use logk3::surgery::apply_step;
use render::Style;

#[derive(Parser)]
#[command(name = "logk3", version, about = "Surgery calculator for log K3 surfaces of type II")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a pair and decide A¹-curve abundance.
    Classify {
        input: PathBuf,
        /// Emit a machine-readable report with the normalization trace.
        #[arg(long)]
        json: bool,
        /// Write the boundary dual graph in DOT format.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Run a surgery script and print the resulting pair document.
    Apply {
        input: PathBuf,
        #[arg(long)]
        script: PathBuf,
        /// Print every intermediate boundary type to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Classify every circular type in a box, one row per dihedral orbit.
    Enumerate {
        #[arg(long)]
        max_n: usize,
        #[arg(long, allow_hyphen_values = true)]
        min_lambda: i64,
        #[arg(long, allow_hyphen_values = true)]
        max_lambda: i64,
        /// CSV destination; stdout when omitted.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Build an Iitaka minimal model, optionally with its counterexample surgery.
    Iitaka {
        #[arg(long = "type")]
        tag: IitakaTag,
        #[arg(long)]
        beta: Option<i64>,
        #[arg(long)]
        counterexample: bool,
    },
    /// Invariants (a, b) of the cyclic quotient obtained by contracting a chain.
    Singularity {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        chain: Vec<i64>,
    },
    /// Search for a marked point p with a·p = target and no small multiple in G.
    Lemma33 {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_delimiter = ',')]
        gens: Vec<u64>,
        #[arg(long)]
        a: u64,
        #[arg(long, default_value_t = 0)]
        target: u64,
    },
}

const EXIT_INPUT: u8 = 1;
const EXIT_INCONSISTENT: u8 = 2;
const EXIT_STEP_FAILED: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Classify { input, json, dot } => cmd_classify(&input, json, dot.as_deref()),
        Command::Apply { input, script, trace } => cmd_apply(&input, &script, trace),
        Command::Enumerate {
            max_n,
            min_lambda,
            max_lambda,
            out,
        } => cmd_enumerate(max_n, min_lambda, max_lambda, out.as_deref()),
        Command::Iitaka {
            tag,
            beta,
            counterexample,
        } => cmd_iitaka(tag, beta, counterexample),
        Command::Singularity { chain } => cmd_singularity(&chain),
        Command::Lemma33 { modulus, gens, a, target } => cmd_lemma33(modulus, gens, a, target),
    }
}

fn read_doc<T>(path: &Path, parse: fn(&str) -> Result<T, DocError>) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_pair(path: &Path) -> Result<(PairDocument, logk3::LogSurfacePair), Failure> {
    let doc = read_doc(path, PairDocument::parse)?;
    let pair = doc
        .to_pair()
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok((doc, pair))
}

fn cmd_classify(input: &Path, json: bool, dot: Option<&Path>) -> Result<u8, Failure> {
    let (doc, pair) = load_pair(input)?;
    let norm = normalize(&pair).map_err(|e| Failure::input(e.to_string()))?;
    let verdict = a1_abundance(&pair).map_err(|e| Failure::input(e.to_string()))?;
    if let Some(path) = dot {
        fs::write(path, render::dot(&doc.name, pair.shape()))
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    let mut stdout = io::stdout().lock();
    if json {
        let report = render::classify_json(&doc.name, pair.shape(), &norm, &verdict);
        let text = serde_json::to_string_pretty(&report).expect("report holds only strings and integers");
        writeln!(stdout, "{text}")?;
    } else {
        let style = Style::from_env(io::stdout().is_terminal());
        write!(stdout, "{}", render::classify_text(&doc.name, pair.shape(), &norm, &verdict, style))?;
    }
    Ok(if norm.class.is_inconsistent() { EXIT_INCONSISTENT } else { 0 })
}

fn cmd_apply(input: &Path, script: &Path, trace: bool) -> Result<u8, Failure> {
    let (doc, mut pair) = load_pair(input)?;
    let steps = read_doc(script, ScriptDocument::parse)?
        .to_steps()
        .map_err(|e| Failure::input(format!("{}: {e}", script.display())))?;
    let mut stderr = io::stderr().lock();
    if trace {
        writeln!(stderr, "{}", pair.shape())?;
    }
    for (i, step) in steps.iter().enumerate() {
        pair = match apply_step(&pair, step) {
            Ok((next, _)) => next,
            Err(e) => {
                return Err(Failure {
                    code: EXIT_STEP_FAILED,
                    message: format!("step {} ({step}) failed: {e}", i + 1),
                })
            }
        };
        if trace {
            writeln!(stderr, "{}", pair.shape())?;
        }
    }
    print!("{}", PairDocument::from_pair(&doc.name, &pair).emit());
    Ok(0)
}

fn cmd_enumerate(max_n: usize, lo: i64, hi: i64, out: Option<&Path>) -> Result<u8, Failure> {
    let rows = enumerate(max_n, lo, hi);
    match out {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            render::write_csv(io::BufWriter::new(file), &rows)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        }
        None => render::write_csv(io::stdout().lock(), &rows)?,
    }
    Ok(0)
}

fn cmd_iitaka(tag: IitakaTag, beta: Option<i64>, counterexample: bool) -> Result<u8, Failure> {
    let t = IitakaType::new(tag, beta).map_err(|e| Failure::input(e.to_string()))?;
    let text = if counterexample {
        render::report_text(&build_counterexample(t).map_err(|e| Failure::input(e.to_string()))?)
    } else {
        render::model_text(&build_model(t).map_err(|e| Failure::input(e.to_string()))?)
    };
    print!("{text}");
    Ok(0)
}

fn cmd_singularity(chain: &[i64]) -> Result<u8, Failure> {
    let (a, b) = cyclic_quotient_invariants(chain).map_err(|e| Failure::input(e.to_string()))?;
    println!("a/b = {a}/{b} (a={a}, b={b})");
    Ok(0)
}

fn cmd_lemma33(modulus: u64, gens: Vec<u64>, a: u64, target: u64) -> Result<u8, Failure> {
    let model = FiniteGroupModel::new(modulus, gens).map_err(|e| Failure::input(e.to_string()))?;
    match find_marked_point(&model, a, target % modulus) {
        Some(m) => println!("p = {}", m.p),
        None => println!("none"),
    }
    Ok(0)
}
