//! `corank` — invariants of finitely presented groups from the command
//! line.
//!
//! Subcommands: `betti` (abelianization invariants of a presentation),
//! `expr` (co-rank / Betti / rank of a structured group expression),
//! `realize` (witness construction for a requested triple), `oracle`
//! (brute-force Betti verification), and `check` (parse-only validation).
//!
//! Output is one JSON document on stdout, byte-identical for identical
//! inputs; `--pretty` switches to a plain text rendering. Exit status 0
//! means the command completed (and, with `--verify`, that all cross
//! checks passed); 1 marks input or I/O errors; 2 marks structured
//! rejections such as inadmissible triples or a blown enumeration budget.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use corank_core::calculus::GroupExpr;
use corank_core::oracle::{
    betti_oracle, count_homs, primes_past_torsion, some_prime_avoids_torsion, DEFAULT_BUDGET,
};
use corank_core::presentation::Presentation;
use corank_core::realize::TripleRequest;
use corank_core::report::{
    CheckReport, OracleSection, RealizeOptions, RealizeReport, Report,
};
use corank_core::abelian::abelianize;

#[derive(Parser)]
#[command(
    name = "corank",
    version,
    about = "Betti numbers, co-rank bounds, and witness groups for finite presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti number and torsion of a presented group's abelianization
    Betti(InputArgs),
    /// Evaluate a group expression: co-rank, Betti number, rank
    Expr(InputArgs),
    /// Construct a witness group with the requested (corank, betti, rank)
    Realize {
        corank: usize,
        betti: usize,
        rank: usize,
        /// Emit only the witness expression
        #[arg(long, conflicts_with = "emit_presentation")]
        emit_expression: bool,
        /// Emit only the witness presentation
        #[arg(long)]
        emit_presentation: bool,
        /// Re-derive the triple along both computation paths and fail on
        /// any mismatch
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Verify the Betti number by counting homomorphisms into Z/p
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// Primes to enumerate (default: 2 3 5 7 11 13, extended past all
        /// torsion coefficients)
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        primes: Vec<u64>,
        /// Cap on prime^generators enumerations per prime
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Parse-only validation of a presentation
    Check(InputArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for stdin
    path: Option<PathBuf>,
    /// Inline input text instead of a file
    #[arg(long, conflicts_with = "path")]
    inline: Option<String>,
    /// Human-readable output instead of JSON
    #[arg(long)]
    pretty: bool,
}

enum Failure {
    /// Bad input: parse errors, missing files, absent input.
    Input(String),
    /// The command ran and produced a structured rejection.
    Rejected(String),
}

impl Failure {
    fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Input(_) => ExitCode::from(1),
            Failure::Rejected(_) => ExitCode::from(2),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::Input(message) => eprintln!("error: {message}"),
                Failure::Rejected(document) => println!("{document}"),
            }
            failure.exit_code()
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Betti(input) => {
            let text = read_input(&input)?;
            let p = parse_presentation(&text)?;
            let report = Report::for_presentation(text.trim(), &p);
            Ok(render(&report.to_json(), report.render_pretty(), input.pretty))
        }
        Command::Expr(input) => {
            let text = read_input(&input)?;
            let e = GroupExpr::parse(text.trim())
                .map_err(|e| Failure::Input(format!("invalid expression: {e}")))?;
            let report = Report::for_expression(text.trim(), &e)
                .map_err(|e| Failure::Rejected(rejection_json(&e.to_string())))?;
            Ok(render(&report.to_json(), report.render_pretty(), input.pretty))
        }
        Command::Realize {
            corank,
            betti,
            rank,
            emit_expression,
            emit_presentation,
            verify,
            pretty,
        } => {
            let request = TripleRequest::new(corank, betti, rank);
            let options = RealizeOptions {
                emit_expression: emit_expression || !emit_presentation,
                emit_presentation: emit_presentation || !emit_expression,
                verify,
            };
            match RealizeReport::build(request, options) {
                Ok(Ok(report)) => Ok(render(&report.to_json(), report.render_pretty(), pretty)),
                Ok(Err(verify_failure)) => {
                    Err(Failure::Rejected(rejection_json(&verify_failure.to_string())))
                }
                Err(inadmissible) => {
                    let report = RealizeReport::rejection(request, &inadmissible);
                    let document = render(&report.to_json(), report.render_pretty(), pretty);
                    Err(Failure::Rejected(document))
                }
            }
        }
        Command::Oracle {
            input,
            primes,
            budget,
        } => {
            let text = read_input(&input)?;
            let p = parse_presentation(&text)?;
            let invariants = abelianize(&p);
            let primes = if primes.is_empty() {
                primes_past_torsion(&invariants)
            } else {
                primes
            };

            let mut hom_counts = Vec::with_capacity(primes.len());
            for &q in &primes {
                let hc = count_homs(&p, q, budget)
                    .map_err(|e| Failure::Rejected(rejection_json(&e.to_string())))?;
                hom_counts.push(hc);
            }
            let oracle = betti_oracle(&p, &primes, budget)
                .map_err(|e| Failure::Rejected(rejection_json(&e.to_string())))?;
            let agrees = oracle == invariants.betti;
            let warning = (!some_prime_avoids_torsion(&invariants, &primes)).then(|| {
                "no supplied prime avoids the torsion coefficients; the oracle value is only \
                 an upper bound on the Betti number"
                    .to_string()
            });
            let section = OracleSection {
                hom_counts,
                betti: oracle,
                agrees,
                warning,
            };
            let report = Report::for_presentation(text.trim(), &p).with_oracle(section);
            Ok(render(&report.to_json(), report.render_pretty(), input.pretty))
        }
        Command::Check(input) => {
            let text = read_input(&input)?;
            let p = parse_presentation(&text)?;
            let report = CheckReport::new(text.trim(), &p);
            Ok(render(&report.to_json(), format!("{p}"), input.pretty))
        }
    }
}

fn render(json: &str, pretty: String, want_pretty: bool) -> String {
    if want_pretty {
        pretty
    } else {
        json.to_string()
    }
}

fn rejection_json(message: &str) -> String {
    serde_json_escape(message)
}

/// Minimal JSON object for rejections: {"rejected":"<message>"}.
fn serde_json_escape(message: &str) -> String {
    let mut escaped = String::with_capacity(message.len() + 16);
    for c in message.chars() {
        match c {
            '"' => escaped.push_str("\\\""),
            '\\' => escaped.push_str("\\\\"),
            '\n' => escaped.push_str("\\n"),
            c if (c as u32) < 0x20 => escaped.push_str(&format!("\\u{:04x}", c as u32)),
            c => escaped.push(c),
        }
    }
    format!("{{\"rejected\":\"{escaped}\"}}")
}

fn parse_presentation(text: &str) -> Result<Presentation, Failure> {
    Presentation::parse(text.trim())
        .map_err(|e| Failure::Input(format!("invalid presentation: {e}")))
}

fn read_input(input: &InputArgs) -> Result<String, Failure> {
    if let Some(text) = &input.inline {
        return Ok(text.clone());
    }
    match &input.path {
        Some(path) if path.as_os_str() == "-" => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
            Ok(text)
        }
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("reading {}: {e}", path.display()))),
        None => Err(Failure::Input(
            "no input: pass a file path, `-` for stdin, or --inline <text>".to_string(),
        )),
    }
}
