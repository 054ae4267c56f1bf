//! `padic` — exact p-adic integer calculator on lazy digit streams.
//!
//! One-shot: `padic --prime 5 --digits 8 "3 + 4*7"`.
//! Interactive: omit the expression and feed one expression per line.
//!
//! Exit codes: 0 success, 1 parse error, 2 invalid configuration,
//! 3 verification failure (`--verify` found a stream answer disagreeing with
//! exact big-integer arithmetic — which would mean a bug, not user error).

use std::io::{BufRead, IsTerminal, Write};
use std::process::ExitCode;

use clap::Parser as ClapParser;
use num_bigint::BigUint;
use padic_cli::{parse, run, CliConfig, OutputFormat};

#[derive(ClapParser)]
#[command(name = "padic", version, about = "Exact p-adic integer calculator")]
struct Args {
    /// Prime modulus p (decimal; validated)
    #[arg(long)]
    prime: String,

    /// Number of digits to display and verify (at least 1)
    #[arg(long, default_value_t = 16)]
    digits: usize,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Pretty)]
    format: FormatArg,

    /// Cross-check every answer against exact big-integer arithmetic
    #[arg(long)]
    verify: bool,

    /// Expression to evaluate; omit to read one expression per line
    #[arg(allow_hyphen_values = true)]
    expr: Option<String>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Pretty,
    Json,
}

const EXIT_PARSE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_VERIFY: u8 = 3;

fn main() -> ExitCode {
    let args = Args::parse();

    let prime: BigUint = match args.prime.parse() {
        Ok(p) => p,
        Err(_) => {
            eprintln!("error: --prime {} is not a natural number", args.prime);
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let format = match args.format {
        FormatArg::Pretty => OutputFormat::Pretty,
        FormatArg::Json => OutputFormat::Json,
    };
    let cfg = match CliConfig::new(prime, args.digits, format, args.verify) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    match args.expr {
        Some(src) => evaluate_once(&src, &cfg),
        None => interactive(&cfg),
    }
}

fn evaluate_once(src: &str, cfg: &CliConfig) -> ExitCode {
    let expr = match parse(src) {
        Ok(expr) => expr,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let out = run(&expr, cfg);
    println!("{}", out.text);
    match out.verified {
        Some(false) => ExitCode::from(EXIT_VERIFY),
        _ => ExitCode::SUCCESS,
    }
}

/// Reads one expression per line until EOF. Parse errors are reported and
/// the session continues; a verification failure ends the session with the
/// verification exit code.
fn interactive(cfg: &CliConfig) -> ExitCode {
    let stdin = std::io::stdin();
    let prompt = stdin.is_terminal();
    loop {
        if prompt {
            eprint!("padic> ");
            let _ = std::io::stderr().flush();
        }
        let mut line = String::new();
        match stdin.lock().read_line(&mut line) {
            Ok(0) | Err(_) => return ExitCode::SUCCESS,
            Ok(_) => {}
        }
        let src = line.trim();
        if src.is_empty() {
            continue;
        }
        match parse(src) {
            Ok(expr) => {
                let out = run(&expr, cfg);
                println!("{}", out.text);
                if out.verified == Some(false) {
                    return ExitCode::from(EXIT_VERIFY);
                }
            }
            Err(err) => eprintln!("error: {err}"),
        }
    }
}
