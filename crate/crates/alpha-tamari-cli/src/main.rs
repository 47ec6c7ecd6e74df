//! Command-line front-end: encode/decode/convert/enumerate/project/hasse/
//! verify/count over the library, with stable text and JSON output.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 failed
//! verification.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use alpha_tamari::code::{decode, encode, enumerate_codes, AlphaCode};
use alpha_tamari::nu::{
    enumerate_brackets, enumerate_reduced, extend, from_code, reduce, to_code, BracketVector,
    ReducedVector,
};
use alpha_tamari::perm::{enumerate_alpha_permutations, enumerate_avoiders, AlphaPermutation};
use alpha_tamari::poset::{build_poset, projection, ExportFormat, Labeling, PosetKind};
use alpha_tamari::verify::{
    check_lemma_suite, check_projection_oracle, check_theorem_code_iso, check_theorem_nu_iso,
    sweep, CheckReport,
};
use alpha_tamari::{enumeration_cap, Composition, Error};

/// Largest n accepted by the verify command; the exhaustive checks blow up
/// factorially beyond it.
const VERIFY_MAX_N: usize = 7;

#[derive(Parser)]
#[command(
    name = "alpha-tamari",
    version,
    about = "Parabolic Tamari lattices: codes, vectors, posets and verification",
    after_help = "The enumeration cap (default 12) can be overridden with the \
                  ALPHA_TAMARI_MAX_N environment variable."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ValueKind {
    Perm,
    Code,
    Reduced,
    Bracket,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetKind {
    Perms,
    Avoiders,
    Codes,
    Reduced,
    Bracket,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HasseKind {
    Weak,
    Tamari,
    Code,
    Reduced,
    Bracket,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HasseFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LabelingArg {
    Element,
    Code,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the alpha-code of an alpha-permutation
    Encode {
        #[arg(long)]
        alpha: String,
        /// Space-separated one-line notation, e.g. "5 8 1 4 7 3 6 2"
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Recover the avoiding permutation of a code
    Decode {
        #[arg(long)]
        alpha: String,
        /// Comma-separated entries, e.g. "2,6,0,1,3,1,1,0"
        #[arg(long)]
        code: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Project an alpha-permutation to the greatest avoider below it
    Project {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Convert between the incarnations (perm here means an avoider)
    Convert {
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum)]
        from: ValueKind,
        #[arg(long, value_enum)]
        to: ValueKind,
        /// Input in the canonical text encoding of --from
        #[arg(long)]
        value: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// List a whole incarnation, one canonical value per line
    Enumerate {
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum)]
        kind: SetKind,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Cardinality of an incarnation
    Count {
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum)]
        kind: SetKind,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Export the Hasse diagram of one of the five posets
    Hasse {
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum)]
        kind: HasseKind,
        #[arg(long, value_enum, default_value_t = HasseFormat::Dot)]
        format: HasseFormat,
        #[arg(long, value_enum, default_value_t = LabelingArg::Both)]
        labeling: LabelingArg,
    },
    /// Run the brute-force verification checks
    Verify {
        /// Restrict to a single composition
        #[arg(long)]
        alpha: Option<String>,
        /// Sweep all compositions of every n up to this bound
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("usage error: {message}");
    ExitCode::from(2)
}

/// Writes one output line, exiting quietly if the consumer closed the pipe.
fn print_line(out: &mut impl Write, line: std::fmt::Arguments) {
    if writeln!(out, "{line}").is_err() {
        std::process::exit(0);
    }
}

/// Prints a scalar result, bare in text mode, wrapped as
/// `{alpha, command, result}` in JSON mode.
fn emit(format: OutputFormat, alpha: &Composition, command: &str, result: serde_json::Value) {
    let mut out = std::io::stdout().lock();
    match format {
        OutputFormat::Text => match &result {
            serde_json::Value::String(s) => print_line(&mut out, format_args!("{s}")),
            serde_json::Value::Array(items) => {
                for item in items {
                    match item {
                        serde_json::Value::String(s) => print_line(&mut out, format_args!("{s}")),
                        other => print_line(&mut out, format_args!("{other}")),
                    }
                }
            }
            other => print_line(&mut out, format_args!("{other}")),
        },
        OutputFormat::Json => {
            print_line(
                &mut out,
                format_args!(
                    "{}",
                    json!({
                        "alpha": alpha.to_string(),
                        "command": command,
                        "result": result,
                    })
                ),
            );
        }
    }
}

fn parse_alpha(text: &str) -> Result<Composition, Error> {
    text.parse()
}

fn check_cap(alpha: &Composition) -> Result<(), Error> {
    let cap = enumeration_cap();
    if alpha.n() > cap {
        Err(Error::SizeCapExceeded { n: alpha.n(), cap })
    } else {
        Ok(())
    }
}

/// Requires the input of a perm-typed conversion to avoid the pattern;
/// non-avoiders have no faithful code representative.
fn require_avoider(w: &AlphaPermutation) -> Result<(), Error> {
    match w.alpha_231_pattern() {
        None => Ok(()),
        Some((i, j, k)) => Err(Error::InvalidPermutation {
            reason: format!("not an avoider: pattern at positions ({i},{j},{k})"),
        }),
    }
}

fn convert_value(
    alpha: &Composition,
    from: ValueKind,
    to: ValueKind,
    value: &str,
) -> Result<String, Error> {
    // normalize to a code, then fan out
    let code: AlphaCode = match from {
        ValueKind::Perm => {
            let w = AlphaPermutation::parse(alpha, value)?;
            require_avoider(&w)?;
            encode(&w)
        }
        ValueKind::Code => AlphaCode::parse(alpha, value)?,
        ValueKind::Reduced => to_code(&ReducedVector::parse(alpha, value)?),
        ValueKind::Bracket => to_code(&reduce(&BracketVector::parse(alpha, value)?)),
    };
    Ok(match to {
        ValueKind::Perm => decode(&code).to_string(),
        ValueKind::Code => code.to_string(),
        ValueKind::Reduced => from_code(&code).to_string(),
        ValueKind::Bracket => extend(&from_code(&code)).to_string(),
    })
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Encode {
            alpha,
            perm,
            format,
        } => {
            let alpha = parse_alpha(&alpha)?;
            let w = AlphaPermutation::parse(&alpha, &perm)?;
            emit(format, &alpha, "encode", json!(encode(&w).to_string()));
        }
        Command::Decode {
            alpha,
            code,
            format,
        } => {
            let alpha = parse_alpha(&alpha)?;
            let code = AlphaCode::parse(&alpha, &code)?;
            emit(format, &alpha, "decode", json!(decode(&code).to_string()));
        }
        Command::Project {
            alpha,
            perm,
            format,
        } => {
            let alpha = parse_alpha(&alpha)?;
            let w = AlphaPermutation::parse(&alpha, &perm)?;
            emit(format, &alpha, "project", json!(projection(&w).to_string()));
        }
        Command::Convert {
            alpha,
            from,
            to,
            value,
            format,
        } => {
            let alpha = parse_alpha(&alpha)?;
            let out = convert_value(&alpha, from, to, &value)?;
            emit(format, &alpha, "convert", json!(out));
        }
        Command::Enumerate {
            alpha,
            kind,
            format,
        } => {
            let alpha = parse_alpha(&alpha)?;
            check_cap(&alpha)?;
            match format {
                OutputFormat::Text => {
                    // streamed; large sets never materialize
                    let mut out = std::io::BufWriter::new(std::io::stdout().lock());
                    for_each_value(&alpha, kind, |value| {
                        print_line(&mut out, format_args!("{value}"))
                    });
                }
                OutputFormat::Json => {
                    let mut values = Vec::new();
                    for_each_value(&alpha, kind, |value| values.push(value));
                    emit(format, &alpha, "enumerate", json!(values));
                }
            }
        }
        Command::Count {
            alpha,
            kind,
            format,
        } => {
            let alpha = parse_alpha(&alpha)?;
            check_cap(&alpha)?;
            let mut count = 0u64;
            for_each_value(&alpha, kind, |_| count += 1);
            emit(format, &alpha, "count", json!(count));
        }
        Command::Hasse {
            alpha,
            kind,
            format,
            labeling,
        } => {
            let alpha = parse_alpha(&alpha)?;
            let kind = match kind {
                HasseKind::Weak => PosetKind::WeakOrder,
                HasseKind::Tamari => PosetKind::AlphaTamari,
                HasseKind::Code => PosetKind::Code,
                HasseKind::Reduced => PosetKind::Reduced,
                HasseKind::Bracket => PosetKind::Bracket,
            };
            let labeling = match labeling {
                LabelingArg::Element => Labeling::Element,
                LabelingArg::Code => Labeling::Code,
                LabelingArg::Both => Labeling::Both,
            };
            let poset = build_poset(&alpha, kind)?;
            let mut out = std::io::stdout().lock();
            match format {
                HasseFormat::Dot => {
                    if write!(out, "{}", poset.export(ExportFormat::Dot, labeling)).is_err() {
                        std::process::exit(0);
                    }
                }
                HasseFormat::Json => print_line(
                    &mut out,
                    format_args!(
                        "{}",
                        json!({
                            "alpha": alpha.to_string(),
                            "command": "hasse",
                            "result": poset.to_json(),
                        })
                    ),
                ),
            }
        }
        Command::Verify {
            alpha,
            max_n,
            format,
        } => {
            let reports = match (&alpha, max_n) {
                (None, None) => {
                    return Ok(usage_error("verify needs --alpha and/or --max-n"));
                }
                (_, Some(n)) if n > VERIFY_MAX_N => {
                    return Ok(usage_error(&format!(
                        "--max-n {n} exceeds the verification cap {VERIFY_MAX_N}"
                    )));
                }
                (Some(alpha), _) => {
                    let alpha = parse_alpha(alpha)?;
                    if alpha.n() > VERIFY_MAX_N {
                        return Ok(usage_error(&format!(
                            "--alpha {alpha} has n={} beyond the verification cap {VERIFY_MAX_N}",
                            alpha.n()
                        )));
                    }
                    verify_one(&alpha)
                }
                (None, Some(n)) => sweep(n),
            };
            let mut out = std::io::stdout().lock();
            let mut all_passed = true;
            for report in &reports {
                all_passed &= report.passed;
                match format {
                    OutputFormat::Text => print_report_line(&mut out, report),
                    OutputFormat::Json => {
                        print_line(&mut out, format_args!("{}", report.to_json()))
                    }
                }
            }
            if !all_passed {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_one(alpha: &Composition) -> Vec<CheckReport> {
    let mut reports = vec![check_theorem_code_iso(alpha), check_theorem_nu_iso(alpha)];
    reports.extend(check_lemma_suite(alpha));
    reports.push(check_projection_oracle(alpha));
    reports
}

fn print_report_line(out: &mut impl Write, report: &CheckReport) {
    if report.passed {
        print_line(
            out,
            format_args!(
                "ok   {} alpha={} ({} ms)",
                report.check_name,
                report.alpha,
                report.elapsed.as_millis()
            ),
        );
    } else {
        print_line(
            out,
            format_args!(
                "FAIL {} alpha={}: {}",
                report.check_name,
                report.alpha,
                report.counterexample.as_deref().unwrap_or("no witness")
            ),
        );
    }
}

fn for_each_value(alpha: &Composition, kind: SetKind, mut f: impl FnMut(String)) {
    match kind {
        SetKind::Perms => {
            enumerate_alpha_permutations(alpha).for_each(|w| f(w.to_string()));
        }
        SetKind::Avoiders => enumerate_avoiders(alpha).for_each(|w| f(w.to_string())),
        SetKind::Codes => enumerate_codes(alpha).for_each(|c| f(c.to_string())),
        SetKind::Reduced => enumerate_reduced(alpha).for_each(|r| f(r.to_string())),
        SetKind::Bracket => enumerate_brackets(alpha).for_each(|b| f(b.to_string())),
    }
}
