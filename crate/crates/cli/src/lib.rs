//! Command-line surface for the [`gamma2`] crate.
//!
//! Every subcommand reads its input, prints a deterministic line-oriented
//! report to stdout, and encodes its outcome in the exit code: 0 for
//! success (including a congruence verdict), 1 for a noncongruence verdict,
//! 2 for syntax errors, 3 for invariant violations, 4 for an exceeded coset
//! budget. With `--json` the report becomes a single-line envelope with
//! fields `command`, `input`, `verdict` and `data`.

pub mod enumerate;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use gamma2::congruence::{quotient_table, CongruenceError};
use gamma2::dessin::DessinError;
use gamma2::gamma1::to_gamma1;
use gamma2::larcher::{filters, FilterVerdict};
use gamma2::word::MatrixError;
use gamma2::{
    decide, group_generators, is_member, trace, CongruenceVerdict, Dessin, ProjMatrix, Word,
    DEFAULT_MAX_COSETS,
};

use crate::enumerate::enumerate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONCONGRUENCE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser)]
#[command(
    name = "gamma2",
    version,
    about = "Dessins d'enfants as finite-index subgroups of the level-2 principal congruence subgroup"
)]
struct Cli {
    /// Emit a machine-readable JSON envelope instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, level and genus report for a dessin file.
    Info { file: String },
    /// Trace a word from the marked edge and report membership.
    Member { file: String, word: String },
    /// Print a free generating set for the subgroup of the dessin.
    Generators { file: String },
    /// Run the degree filters that can certify noncongruence.
    Larcher { file: String },
    /// Decide congruence by testing generators of the principal congruence
    /// subgroup at the level of the dessin.
    Congruence {
        file: String,
        /// Abort if the coset enumeration would need more cosets than this.
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Convert to the modular dessin on six times as many edges.
    Gamma1 { file: String },
    /// Print free generators for the principal congruence subgroup of even
    /// level m as words in A and B.
    #[command(name = "gens-gamma")]
    GensGamma { m: u32 },
    /// Express an integer matrix as a word in A and B.
    Matrix2word {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        c: i64,
        #[arg(allow_negative_numbers = true)]
        d: i64,
    },
    /// Count, and optionally classify, all dessins with n edges.
    Enumerate {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Decide congruence for every subgroup and tally the verdicts.
        #[arg(long)]
        classify: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Emit the dessin as a Graphviz DOT digraph.
    Dot { file: String },
}

struct Outcome {
    command: &'static str,
    input: String,
    verdict: &'static str,
    data: serde_json::Value,
    text: String,
    code: i32,
}

struct Failure {
    code: i32,
    message: String,
}

/// Parses `args` (including the program name) and runs the selected
/// subcommand, writing reports to `out` and errors to `err`. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_OK
            } else {
                let _ = write!(err, "{e}");
                EXIT_PARSE
            };
        }
    };
    match run_command(&cli.command) {
        Ok(outcome) => {
            if cli.json {
                let envelope = json!({
                    "command": outcome.command,
                    "input": outcome.input,
                    "verdict": outcome.verdict,
                    "data": outcome.data,
                });
                let _ = writeln!(out, "{envelope}");
            } else {
                let _ = write!(out, "{}", outcome.text);
            }
            outcome.code
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn run_command(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Info { file } => info(file),
        Command::Member { file, word } => member(file, word),
        Command::Generators { file } => generators(file),
        Command::Larcher { file } => larcher(file),
        Command::Congruence { file, max_cosets } => congruence(file, *max_cosets),
        Command::Gamma1 { file } => gamma1(file),
        Command::GensGamma { m } => gens_gamma(*m),
        Command::Matrix2word { a, b, c, d } => matrix2word(*a, *b, *c, *d),
        Command::Enumerate {
            n,
            classify,
            max_cosets,
        } => enumerate_cmd(*n as usize, *classify, *max_cosets),
        Command::Dot { file } => dot(file),
    }
}

fn info(file: &str) -> Result<Outcome, Failure> {
    let d = load_dessin(file)?;
    let report = d.report();
    let faces = d.faces();
    let mut text = String::new();
    let _ = writeln!(text, "edges = {}", d.n());
    let _ = writeln!(text, "marked = {}", d.marked());
    let _ = writeln!(text, "black degrees = {}", join(&report.black));
    let _ = writeln!(text, "white degrees = {}", join(&report.white));
    let _ = writeln!(text, "face degrees = {}", join(&report.face));
    let _ = writeln!(text, "faces = {faces}");
    let _ = writeln!(text, "level = {}", report.level);
    let _ = writeln!(text, "genus = {}", report.genus);
    Ok(Outcome {
        command: "info",
        input: file.to_string(),
        verdict: "ok",
        data: json!({
            "edges": d.n(),
            "marked": d.marked(),
            "black_degrees": report.black,
            "white_degrees": report.white,
            "face_degrees": report.face,
            "faces": faces.to_string(),
            "level": report.level,
            "genus": report.genus,
        }),
        text,
        code: EXIT_OK,
    })
}

fn member(file: &str, word_text: &str) -> Result<Outcome, Failure> {
    let d = load_dessin(file)?;
    let w: Word = word_text.parse().map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("word '{word_text}': {e}"),
    })?;
    let path = trace(&d, &w);
    let yes = is_member(&d, &w);
    let mut text = String::new();
    let _ = writeln!(text, "trace = {}", join(&path));
    let _ = writeln!(text, "member = {yes}");
    Ok(Outcome {
        command: "member",
        input: format!("{file} {word_text}"),
        verdict: if yes { "member" } else { "non-member" },
        data: json!({ "trace": path, "member": yes }),
        text,
        code: EXIT_OK,
    })
}

fn generators(file: &str) -> Result<Outcome, Failure> {
    let d = load_dessin(file)?;
    let words: Vec<String> = group_generators(&d)
        .iter()
        .map(Word::to_string)
        .collect();
    let mut text = String::new();
    for w in &words {
        let _ = writeln!(text, "{w}");
    }
    Ok(Outcome {
        command: "generators",
        input: file.to_string(),
        verdict: "ok",
        data: json!({ "count": words.len(), "words": words }),
        text,
        code: EXIT_OK,
    })
}

fn larcher(file: &str) -> Result<Outcome, Failure> {
    let d = load_dessin(file)?;
    let verdict = filters(&d);
    let (label, pretty, violations): (_, _, Vec<String>) = match &verdict {
        FilterVerdict::CertifiedNoncongruence(vs) => (
            "certified-noncongruence",
            "certified noncongruence",
            vs.iter().map(|v| v.to_string()).collect(),
        ),
        FilterVerdict::Inconclusive => ("inconclusive", "inconclusive", Vec::new()),
    };
    let mut text = String::new();
    let _ = writeln!(text, "n = {}", d.level() / 2);
    let _ = writeln!(text, "verdict = {pretty}");
    for v in &violations {
        let _ = writeln!(text, "{v}");
    }
    Ok(Outcome {
        command: "larcher",
        input: file.to_string(),
        verdict: label,
        data: json!({ "n": d.level() / 2, "violations": violations }),
        text,
        code: EXIT_OK,
    })
}

fn congruence(file: &str, max_cosets: usize) -> Result<Outcome, Failure> {
    let d = load_dessin(file)?;
    let level = d.level();
    let verdict = decide(&d, max_cosets);
    let mut text = String::new();
    let _ = writeln!(text, "level = {level}");
    let outcome = match &verdict {
        CongruenceVerdict::Congruence { quotient_index } => {
            let _ = writeln!(text, "verdict = congruence");
            let _ = writeln!(text, "quotient index = {quotient_index}");
            let _ = writeln!(text, "generators tested = {}", quotient_index + 1);
            Outcome {
                command: "congruence",
                input: file.to_string(),
                verdict: "congruence",
                data: json!({
                    "level": level,
                    "quotient_index": quotient_index,
                    "generators_tested": quotient_index + 1,
                }),
                text,
                code: EXIT_OK,
            }
        }
        CongruenceVerdict::Noncongruence {
            quotient_index,
            witness,
        } => {
            let _ = writeln!(text, "verdict = noncongruence");
            let _ = writeln!(text, "quotient index = {quotient_index}");
            let _ = writeln!(text, "witness = {witness}");
            Outcome {
                command: "congruence",
                input: file.to_string(),
                verdict: "noncongruence",
                data: json!({
                    "level": level,
                    "quotient_index": quotient_index,
                    "witness": witness.to_string(),
                }),
                text,
                code: EXIT_NONCONGRUENCE,
            }
        }
        CongruenceVerdict::BudgetExceeded { max_cosets } => {
            let _ = writeln!(text, "verdict = budget exceeded");
            let _ = writeln!(text, "max cosets = {max_cosets}");
            Outcome {
                command: "congruence",
                input: file.to_string(),
                verdict: "budget-exceeded",
                data: json!({ "level": level, "max_cosets": max_cosets }),
                text,
                code: EXIT_BUDGET,
            }
        }
    };
    Ok(outcome)
}

fn gamma1(file: &str) -> Result<Outcome, Failure> {
    let d = load_dessin(file)?;
    let converted = to_gamma1(&d);
    let result = converted.dessin();
    Ok(Outcome {
        command: "gamma1",
        input: file.to_string(),
        verdict: "ok",
        data: json!({
            "source_edges": converted.source_edges(),
            "edges": converted.edge_count(),
            "sigma": result.sigma().to_string(),
            "alpha": result.alpha().to_string(),
            "marked": result.marked(),
        }),
        text: result.to_string(),
        code: EXIT_OK,
    })
}

fn gens_gamma(m: u32) -> Result<Outcome, Failure> {
    let table = quotient_table(m, DEFAULT_MAX_COSETS).map_err(congruence_failure)?;
    let words: Vec<String> = table
        .schreier_generators()
        .iter()
        .map(Word::to_string)
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "index = {}", table.size());
    let _ = writeln!(text, "count = {}", words.len());
    for w in &words {
        let _ = writeln!(text, "{w}");
    }
    Ok(Outcome {
        command: "gens-gamma",
        input: m.to_string(),
        verdict: "ok",
        data: json!({ "index": table.size(), "count": words.len(), "words": words }),
        text,
        code: EXIT_OK,
    })
}

fn matrix2word(a: i64, b: i64, c: i64, d: i64) -> Result<Outcome, Failure> {
    let mat = ProjMatrix::new(a, b, c, d).map_err(matrix_failure)?;
    let word = mat.to_word().map_err(matrix_failure)?;
    let rendered = word.to_string();
    let mut text = String::new();
    let line = format!("word = {rendered}");
    let _ = writeln!(text, "{}", line.trim_end());
    Ok(Outcome {
        command: "matrix2word",
        input: format!("{a} {b} {c} {d}"),
        verdict: "ok",
        data: json!({ "word": rendered }),
        text,
        code: EXIT_OK,
    })
}

fn enumerate_cmd(n: usize, classify: bool, max_cosets: usize) -> Result<Outcome, Failure> {
    let report = enumerate(n, classify, max_cosets);
    let mut text = String::new();
    let _ = writeln!(text, "edges = {}", report.n);
    let _ = writeln!(text, "transitive pairs = {}", report.transitive_pairs);
    let _ = writeln!(text, "rooted dessins = {}", report.rooted_count);
    let _ = writeln!(text, "subgroups = {}", report.subgroup_count);
    let mut data = json!({
        "edges": report.n,
        "transitive_pairs": report.transitive_pairs,
        "rooted": report.rooted_count,
        "subgroups": report.subgroup_count,
        "classification": serde_json::Value::Null,
    });
    if let Some(tally) = &report.classification {
        let _ = writeln!(text, "congruence = {}", tally.congruence);
        let _ = writeln!(text, "noncongruence = {}", tally.noncongruence);
        let _ = writeln!(text, "budget exceeded = {}", tally.budget_exceeded);
        let _ = writeln!(text, "pair filter certified = {}", tally.pair_certified);
        let _ = writeln!(text, "width filter certified = {}", tally.width_certified);
        let _ = writeln!(text, "filter certified = {}", tally.filter_certified);
        data["classification"] = json!({
            "congruence": tally.congruence,
            "noncongruence": tally.noncongruence,
            "budget_exceeded": tally.budget_exceeded,
            "pair_certified": tally.pair_certified,
            "width_certified": tally.width_certified,
            "filter_certified": tally.filter_certified,
        });
    }
    Ok(Outcome {
        command: "enumerate",
        input: report.n.to_string(),
        verdict: "ok",
        data,
        text,
        code: EXIT_OK,
    })
}

fn dot(file: &str) -> Result<Outcome, Failure> {
    let d = load_dessin(file)?;
    let text = d.to_dot();
    Ok(Outcome {
        command: "dot",
        input: file.to_string(),
        verdict: "ok",
        data: json!({ "dot": text }),
        text,
        code: EXIT_OK,
    })
}

fn load_dessin(path: &str) -> Result<Dessin, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{path}: {e}"),
    })?;
    text.parse::<Dessin>().map_err(|e| Failure {
        code: dessin_exit_code(&e),
        message: format!("{path}: {e}"),
    })
}

/// Syntax problems exit with 2; a well-formed file describing an invalid
/// dessin exits with 3.
fn dessin_exit_code(e: &DessinError) -> i32 {
    match e {
        DessinError::SizeMismatch { .. }
        | DessinError::NoEdges
        | DessinError::MarkedOutOfRange { .. }
        | DessinError::Intransitive => EXIT_INVARIANT,
        _ => EXIT_PARSE,
    }
}

fn congruence_failure(e: CongruenceError) -> Failure {
    let code = match e {
        CongruenceError::InvalidModulus { .. } => EXIT_INVARIANT,
        CongruenceError::BudgetExceeded { .. } => EXIT_BUDGET,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn matrix_failure(e: MatrixError) -> Failure {
    Failure {
        code: EXIT_INVARIANT,
        message: e.to_string(),
    }
}

fn join<T: core::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
