//! The `invack` command line.
//!
//! Exit status: 0 on success, 1 when a predicate is false or a witness is
//! refuted, 2 on usage errors, 3 when a value exceeds the bit budget.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bench::{run_bench, summarize, write_csv, BenchError, BENCH_OPS};
use crate::bignat::{BigNat, BigNatError, CostMeter, DEFAULT_BIT_BUDGET};
use crate::encoding::{pair, seq_encode, triple, unpair, untriple, EncodingError, SeqCode};
use crate::inverse::{alpha, alpha_prime, inv_ak};
use crate::literal::parse_literal;
use crate::oracle::{ack_eval, AckResult};
use crate::witness::{
    build_witness, check_graph, check_lt, BuildOutcome, WitnessError, WitnessFile,
    DEFAULT_LABEL_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "invack", version, about = "Inverse Ackermann computations on arbitrary-size naturals")]
struct Cli {
    /// Largest value, in bits, any literal or result may occupy.
    #[arg(long, global = true, default_value_t = DEFAULT_BIT_BUDGET)]
    max_bits: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// α(m), the least k with A(k,k) ≥ m.
    Alpha { m: String },
    /// α'(m) = α(log^(2) m).
    AlphaPrime { m: String },
    /// Inv_{A_k}(m), the least j with A_k(j) ≥ m.
    Inv {
        #[arg(short)]
        k: u64,
        m: String,
    },
    /// A(k, n) by brute force.
    Ack { k: u64, n: u64 },
    /// Whether A_k(n) < m.
    CheckLt { k: u64, n: u64, m: String },
    /// Whether A_k(n) = m.
    Graph { k: u64, n: u64, m: String },
    /// Cantor pairing ⟨u, v⟩.
    Pair { u: u64, v: u64 },
    Unpair { w: u64 },
    /// ⟨⟨u, v⟩, w⟩.
    Triple { u: u64, v: u64, w: u64 },
    Untriple { x: u64 },
    /// Sequence codes.
    Seq {
        #[command(subcommand)]
        action: SeqCommand,
    },
    /// Certificates for A_k(n) < m.
    Witness {
        #[command(subcommand)]
        action: WitnessCommand,
    },
    /// Scaling benchmark; writes CSV.
    Bench {
        /// Comma-separated bit lengths, ascending; literals such as pow2(12) allowed.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<String>,
        #[arg(long, default_value_t = 5)]
        reps: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum SeqCommand {
    /// Comma-separated naturals to a binary code, most significant digit first.
    Encode { values: String },
    /// Binary code (optionally `0b`-prefixed) to comma-separated naturals.
    Decode { code: String },
}

#[derive(Debug, Subcommand)]
enum WitnessCommand {
    /// Builds the certificate for A_k(n) < m given r = Inv_{A_3}(m).
    Build {
        k: u64,
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Checks a witness file.
    Verify { file: PathBuf },
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<BigNatError> for Failure {
    fn from(e: BigNatError) -> Self {
        match e {
            BigNatError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<WitnessError> for Failure {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::BudgetExceeded { .. } | WitnessError::LabelOverflow(_) => {
                Failure::Budget(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<EncodingError> for Failure {
    fn from(e: EncodingError) -> Self {
        match e {
            EncodingError::EntryOverflow => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            BenchError::Argument(_) => Failure::Usage(e.to_string()),
        }
    }
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            // First paragraph of clap's report, folded onto one line.
            let text = e.to_string();
            let line: Vec<&str> = text
                .lines()
                .map(str::trim)
                .take_while(|l| !l.is_empty())
                .collect();
            let _ = writeln!(err, "{}", line.join(" "));
            return EXIT_USAGE;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
        Err(Failure::Budget(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_BUDGET
        }
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn predicate(out: &mut dyn Write, holds: bool) -> Result<i32, Failure> {
    emit(out, holds)?;
    Ok(if holds { EXIT_OK } else { EXIT_FALSE })
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let budget = cli.max_bits;
    let literal = |text: &str| parse_literal(text, budget).map_err(Failure::from);
    let mut meter = CostMeter::new();
    match cli.command {
        Command::Alpha { m } => emit(out, alpha(&literal(&m)?, &mut meter)?)?,
        Command::AlphaPrime { m } => emit(out, alpha_prime(&literal(&m)?, &mut meter)?)?,
        Command::Inv { k, m } => emit(out, inv_ak(k, &literal(&m)?, &mut meter))?,
        Command::Ack { k, n } => match ack_eval(k, n, budget) {
            AckResult::Value(v) => emit(out, v)?,
            AckResult::ExceedsBudget => {
                return Err(Failure::Budget(format!("A({k},{n}) exceeds the budget of {budget} bits")))
            }
        },
        Command::CheckLt { k, n, m } => return predicate(out, check_lt(k, n, &literal(&m)?, &mut meter)?),
        Command::Graph { k, n, m } => return predicate(out, check_graph(k, n, &literal(&m)?, &mut meter)?),
        Command::Pair { u, v } => emit(out, pair(u, v).ok_or_else(|| overflow("pair"))?)?,
        Command::Unpair { w } => {
            let (u, v) = unpair(w);
            emit(out, format!("{u} {v}"))?
        }
        Command::Triple { u, v, w } => emit(out, triple(u, v, w).ok_or_else(|| overflow("triple"))?)?,
        Command::Untriple { x } => {
            let (u, v, w) = untriple(x);
            emit(out, format!("{u} {v} {w}"))?
        }
        Command::Seq { action } => match action {
            SeqCommand::Encode { values } => {
                let xs = values
                    .split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<u64>()
                            .map_err(|_| Failure::Usage(format!("not a natural: {v:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                emit(out, seq_encode(&xs)?.value().to_binary_string())?
            }
            SeqCommand::Decode { code } => {
                let digits = code.strip_prefix("0b").unwrap_or(&code);
                let value = BigNat::from_binary_str(digits)?;
                if value.stored_len() > budget {
                    return Err(Failure::Budget(format!("code exceeds the budget of {budget} bits")));
                }
                let entries = SeqCode::new(value).decode()?;
                let text: Vec<String> = entries.iter().map(u64::to_string).collect();
                emit(out, text.join(","))?
            }
        },
        Command::Witness { action } => match action {
            WitnessCommand::Build { k, n, r, out: path } => {
                match build_witness(k, n, r, DEFAULT_LABEL_BUDGET)? {
                    BuildOutcome::Refuted => {
                        emit(out, "refuted")?;
                        return Ok(EXIT_FALSE);
                    }
                    BuildOutcome::Witness(w) => {
                        let text = w.to_file()?.render();
                        match path {
                            Some(path) => fs::write(&path, text).map_err(|e| {
                                Failure::Usage(format!("cannot write {}: {e}", path.display()))
                            })?,
                            None => write!(out, "{text}")
                                .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))?,
                        }
                    }
                }
            }
            WitnessCommand::Verify { file } => {
                let text = fs::read_to_string(&file)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
                return predicate(out, WitnessFile::parse(&text)?.verify());
            }
        },
        Command::Bench { sizes, reps, out: path, seed } => {
            let sizes = sizes
                .iter()
                .map(|s| {
                    literal(s.trim())?
                        .to_small(&mut meter)
                        .map_err(|_| Failure::Usage(format!("size {s:?} does not fit a machine word")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let records = run_bench(&sizes, reps, seed, budget)?;
            let file = fs::File::create(&path)
                .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", path.display())))?;
            write_csv(&records, std::io::BufWriter::new(file))
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            for op in BENCH_OPS {
                if let Some(s) = summarize(&records, op) {
                    emit(
                        out,
                        format!(
                            "{op}: cost slope {:.3}, time slope {:.3}, time ratio per doubling {:.3}",
                            s.cost_slope, s.time_slope, s.doubling_ratio
                        ),
                    )?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn overflow(what: &str) -> Failure {
    Failure::Budget(format!("{what} does not fit 64 bits"))
}
