//! Command-line front end. Each subcommand formats the result of one library
//! call; [`run`] returns the exit status and captured output so it can be
//! driven from tests.

use std::path::Path;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::encoder::{build_encoder, decode, encode, synthesize, Encoder, FrameHeader};
use crate::error::Error;
use crate::shift::{capacity, count_words, enumerate_words_with_cap, DEFAULT_ENUMERATION_CAP};
use crate::sim::{end_to_end, parse_tree, simulate, verify_delivery, TreeTopology};
use crate::symbol::{Bits, Word};
use crate::table::table_report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN_SUBCOMMAND: i32 = 3;
pub const EXIT_FILE_NOT_FOUND: i32 = 4;
pub const EXIT_INVALID_PARAMETER: i32 = 5;
pub const EXIT_INFEASIBLE: i32 = 6;
pub const EXIT_FAILURE: i32 = 7;

const EXIT_CODES: &str = "\
Exit status:
  0  success
  2  malformed flags
  3  unknown subcommand
  4  file not found or unreadable
  5  invalid parameter (e.g. q = 0)
  6  infeasible rate (p/n above capacity)
  7  any other error (bad file contents, decode failure, unsupported q)";

#[derive(Debug, Parser)]
#[command(name = "hdrelay", version, about = "Constrained coding for half-duplex relay trees", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Raw,
}

#[derive(Debug, Args)]
struct FormatArg {
    /// `text` rounds reals to 6 decimals, `raw` prints full precision
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct CodeArgs {
    /// Encoder file written by `build-encoder`
    #[arg(long)]
    encoder: Option<String>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Broadcast capacity C(q) in bits per symbol
    Capacity {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Number of admissible words of length n
    Count {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
    /// List every admissible word of length n
    Enumerate {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        /// Limit on (q+1)^n
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u128,
    },
    /// Synthesize a rate p:n encoder and print it
    BuildEncoder {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Encode a bit string into an admissible stream
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        /// Bit string, inline or a file path
        #[arg(long)]
        bits: String,
    },
    /// Decode a stream produced by `encode`
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Stream tokens (optionally preceded by a FRAME line), inline or a file path
        #[arg(long)]
        stream: String,
    },
    /// Forward a source stream through a tree and print the slot trace
    Simulate {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        stream: String,
        /// Slots to run after the stream ends (default: tree depth)
        #[arg(long)]
        extra_slots: Option<usize>,
    },
    /// Encode, broadcast, and decode at every node
    EndToEnd {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        tree: String,
        /// Message bits; random bits are used when absent
        #[arg(long)]
        bits: Option<String>,
        /// Length of the random message
        #[arg(long, default_value_t = 1000)]
        len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rate comparison against reference finite-depth capacities
    Table {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

/// Exit status plus captured streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    NotFound(String),
    Module(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

impl From<crate::error::TopologyError> for Failure {
    fn from(e: crate::error::TopologyError) -> Self {
        Failure::Module(e.into())
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                ErrorKind::InvalidSubcommand => EXIT_UNKNOWN_SUBCOMMAND,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                let line = text.lines().next().unwrap_or("usage error").to_string();
                Outcome { code, stdout: String::new(), stderr: line + "\n" }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(Failure::NotFound(path)) => Outcome {
            code: EXIT_FILE_NOT_FOUND,
            stdout: String::new(),
            stderr: format!("error: cannot read `{path}`\n"),
        },
        Err(Failure::Module(e)) => {
            let code = match e {
                Error::InvalidParameter(_) => EXIT_INVALID_PARAMETER,
                Error::InfeasibleRate(_) => EXIT_INFEASIBLE,
                _ => EXIT_FAILURE,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn real(x: f64, fmt: Format) -> String {
    match fmt {
        Format::Text => format!("{x:.6}"),
        Format::Raw => format!("{x}"),
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|_| Failure::NotFound(path.to_string()))
}

/// Reads `value` as a file when one exists at that path, otherwise parses it
/// inline; a value that is neither is reported as a missing file.
fn file_or_inline<T>(value: &str, parse: impl Fn(&str) -> crate::error::Result<T>) -> Result<T, Failure> {
    if Path::new(value).is_file() {
        return Ok(parse(&read_file(value)?)?);
    }
    parse(value).map_err(|_| Failure::NotFound(value.to_string()))
}

fn load_tree(path: &str) -> Result<TreeTopology, Failure> {
    Ok(parse_tree(&read_file(path)?)?)
}

fn load_encoder(code: &CodeArgs) -> Result<Encoder, Failure> {
    if let Some(path) = &code.encoder {
        return Ok(read_file(path)?.parse()?);
    }
    match (code.q, code.p, code.n) {
        (Some(q), Some(p), Some(n)) => Ok(build_encoder(q, p, n)?),
        _ => Err(Error::InvalidParameter("pass --encoder or all of --q --p --n".into()).into()),
    }
}

/// Stream text: an optional `FRAME` line followed by symbol tokens.
fn parse_framed(text: &str, p: u32, n: u32) -> crate::error::Result<(Word, FrameHeader)> {
    let mut header = None;
    let mut body = String::new();
    for line in text.lines() {
        if line.trim_start().starts_with("FRAME") {
            header = Some(line.parse::<FrameHeader>()?);
        } else {
            body.push_str(line);
            body.push(' ');
        }
    }
    let word: Word = body.parse()?;
    let header = header.unwrap_or_else(|| FrameHeader::unpadded(word.len() / n as usize, p));
    Ok((word, header))
}

fn dispatch(cmd: Command) -> Result<String, Failure> {
    Ok(match cmd {
        Command::Capacity { q, fmt } => format!("{}\n", real(capacity(q)?, fmt.format)),
        Command::Count { q, n } => format!("{}\n", count_words(q, n)?),
        Command::Enumerate { q, n, cap } => enumerate_words_with_cap(q, n, cap)?
            .iter()
            .map(|w| format!("{w}\n"))
            .collect(),
        Command::BuildEncoder { q, p, n, fmt } => {
            let s = synthesize(q, p, n)?;
            let mut out = String::new();
            if fmt.format == Format::Text {
                let r = s.encoder.report();
                out.push_str(&format!(
                    "# rate {}/{} = {} b/sym, capacity {}, efficiency {}\n",
                    p,
                    n,
                    real(r.rate, Format::Text),
                    real(r.capacity, Format::Text),
                    real(r.efficiency, Format::Text)
                ));
                out.push_str(&format!(
                    "# eigenvector {:?}, {} split rounds, {} states after splitting, {} kept\n",
                    s.eigenvector.weights, s.split_rounds, s.split_states, r.states
                ));
            }
            out.push_str(&s.encoder.to_string());
            out
        }
        Command::Encode { code, bits } => {
            let enc = load_encoder(&code)?;
            let bits: Bits = file_or_inline(&bits, |s| s.parse())?;
            let (word, header) = encode(&enc, &bits);
            format!("{header}\n{word}\n")
        }
        Command::Decode { code, stream } => {
            let enc = load_encoder(&code)?;
            let (word, header) = file_or_inline(&stream, |s| parse_framed(s, enc.p(), enc.n()))?;
            format!("{}\n", decode(&enc, &word, &header)?)
        }
        Command::Simulate { tree, stream, extra_slots } => {
            let topo = load_tree(&tree)?;
            let word: Word = file_or_inline(&stream, |s| s.parse())?;
            let trace = simulate(&topo, &word, extra_slots.unwrap_or(topo.max_depth()));
            let report = verify_delivery(&trace, &topo, &word);
            format!("{trace}{report}")
        }
        Command::EndToEnd { q, p, n, tree, bits, len, seed } => {
            let topo = load_tree(&tree)?;
            let message = match bits {
                Some(b) => file_or_inline(&b, |s| s.parse())?,
                None => random_bits(len, seed),
            };
            end_to_end(q, p, n, &topo, &message)?.to_string()
        }
        Command::Table { q, fmt } => {
            let rows = table_report(q)?;
            let mut out = String::new();
            if fmt.format == Format::Text {
                out.push_str("D\tC_ref\tC(q)/C_ref %\t0.5/C_ref %\n");
            }
            for r in rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    r.depth,
                    r.reference,
                    real(r.constrained_pct, fmt.format),
                    real(r.store_forward_pct, fmt.format)
                ));
            }
            out
        }
    })
}

/// Deterministic pseudo-random message for demos.
pub fn random_bits(len: usize, seed: u64) -> Bits {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Bits((0..len).map(|_| rng.gen()).collect())
}
