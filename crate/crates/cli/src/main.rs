use std::io::Read;
use std::process::ExitCode;

use clap::Parser;

use subfields_cli::{run, OutputFormat, RunConfig, EXIT_PARSE};

/// Compute the complete subfield lattice of Q[x]/(f) for irreducible f.
#[derive(Parser, Debug)]
#[command(name = "subfields", version, about)]
struct Args {
    /// Polynomial as an expression in x, e.g. "x^6-2", or JSON
    /// {"coeffs":[c0,...]}.
    #[arg(long, conflicts_with = "input")]
    poly: Option<String>,

    /// Read the polynomial from a file ("-" for stdin).
    #[arg(long)]
    input: Option<String>,

    /// Output format.
    #[arg(long, default_value = "text", value_parser = ["text", "json", "dot"])]
    format: String,

    /// Seed for the randomized equation points (runs are deterministic for a
    /// fixed seed).
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Override the equation prime (must be a good prime for f).
    #[arg(long)]
    prime: Option<u64>,

    /// Run the exact-arithmetic verification suite on every subfield record.
    #[arg(long)]
    verify: bool,

    /// Compute and emit generators for every subfield.
    #[arg(long)]
    generators: bool,

    /// Run generator membership tests modulo a fresh prime instead of the
    /// equation prime.
    #[arg(long = "fresh-generator-prime")]
    fresh_generator_prime: bool,

    /// Refuse inputs of degree above this guard.
    #[arg(long = "max-degree", default_value_t = 64)]
    max_degree: usize,

    /// Worker threads for the per-factor partition computations.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = match (&args.poly, &args.input) {
        (Some(p), None) => p.clone(),
        (None, Some(path)) if path == "-" => {
            let mut buf = String::new();
            if std::io::stdin().read_to_string(&mut buf).is_err() {
                eprintln!("could not read stdin");
                return ExitCode::from(EXIT_PARSE as u8);
            }
            buf
        }
        (None, Some(path)) => match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("could not read {path}: {e}");
                return ExitCode::from(EXIT_PARSE as u8);
            }
        },
        _ => {
            eprintln!("exactly one of --poly or --input is required");
            return ExitCode::from(EXIT_PARSE as u8);
        }
    };
    let format = match args.format.as_str() {
        "json" => OutputFormat::Json,
        "dot" => OutputFormat::Dot,
        _ => OutputFormat::Text,
    };
    let config = RunConfig {
        input,
        format,
        seed: args.seed,
        prime_override: args.prime,
        verify: args.verify,
        generators: args.generators,
        fresh_generator_prime: args.fresh_generator_prime,
        max_degree_guard: args.max_degree,
        threads: args.threads,
    };
    let outcome = run(&config);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.exit_code as u8)
}
