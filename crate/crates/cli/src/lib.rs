//! Library surface of the subfields CLI: configuration, orchestration and
//! serialization, kept separate from arg parsing so tests can drive full
//! runs in-process.

pub mod output;
pub mod parse;

use subfields_core::error::Error;
use subfields_core::lattice::{all_subfields, verify_record, AllSubfieldsOptions, Lattice};
use subfields_core::numfield::NumberField;
use subfields_core::principal::ReducedFactorization;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REDUCIBLE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_DEGREE_GUARD: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Inline polynomial source (expression or JSON coefficients).
    pub input: String,
    pub format: OutputFormat,
    pub seed: u64,
    pub prime_override: Option<u64>,
    pub verify: bool,
    pub generators: bool,
    /// Use a prime distinct from the equation prime for the generator
    /// membership tests.
    pub fresh_generator_prime: bool,
    pub max_degree_guard: usize,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: String::new(),
            format: OutputFormat::Text,
            seed: 0,
            prime_override: None,
            verify: false,
            generators: false,
            fresh_generator_prime: false,
            max_degree_guard: 64,
            threads: 1,
        }
    }
}

pub struct RunOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn fail(code: i32, msg: String) -> RunOutcome {
    RunOutcome {
        exit_code: code,
        stdout: String::new(),
        stderr: msg,
    }
}

/// End-to-end run: parse, compute the lattice, optionally verify every
/// record, serialize. Output is byte-identical across runs for a fixed
/// config, including multi-threaded ones.
pub fn run(config: &RunConfig) -> RunOutcome {
    let poly = match parse::parse_poly(&config.input) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_PARSE, format!("{e}\n")),
    };
    let Some(deg) = poly.degree() else {
        return fail(EXIT_PARSE, "f must have degree >= 1\n".into());
    };
    if deg < 1 {
        return fail(EXIT_PARSE, "f must have degree >= 1\n".into());
    }
    if deg > config.max_degree_guard {
        return fail(
            EXIT_DEGREE_GUARD,
            format!(
                "degree {deg} exceeds the guard ({}); raise --max-degree to proceed\n",
                config.max_degree_guard
            ),
        );
    }
    let field = match NumberField::new(&poly) {
        Ok(f) => f,
        Err(Error::NotIrreducible) => {
            return fail(EXIT_REDUCIBLE, "f must be irreducible\n".into())
        }
        Err(e) => return fail(EXIT_INTERNAL, format!("{e}\n")),
    };
    let opts = AllSubfieldsOptions {
        seed: config.seed,
        threads: config.threads.max(1),
        prime_override: config.prime_override,
        with_generators: config.generators || config.verify,
        fresh_generator_prime: config.fresh_generator_prime,
    };
    let lat = match all_subfields(&field, &opts) {
        Ok(l) => l,
        Err(Error::BadPrime(p)) => {
            return fail(EXIT_PARSE, format!("prime override {p} is not usable for f\n"))
        }
        Err(e) => return fail(EXIT_INTERNAL, format!("{e}\n")),
    };
    let mut verified = false;
    if config.verify {
        match verify_lattice(&lat) {
            Ok(()) => verified = true,
            Err(msg) => return fail(EXIT_INTERNAL, format!("verification failed: {msg}\n")),
        }
    }
    // Strip generators from the output when they were computed only for
    // verification.
    let lat = if config.generators {
        lat
    } else {
        let mut l = lat;
        for r in l.records.iter_mut() {
            r.generators = None;
        }
        l
    };
    let stdout = match config.format {
        OutputFormat::Json => output::render_json(&lat, verified),
        OutputFormat::Dot => output::render_dot(&lat),
        OutputFormat::Text => {
            output::render_text(&lat, if config.verify { Some(verified) } else { None })
        }
    };
    RunOutcome {
        exit_code: EXIT_OK,
        stdout,
        stderr: String::new(),
    }
}

/// Exact-arithmetic coherence checks over the whole lattice: per-record
/// verification plus factorization-level invariants.
pub fn verify_lattice(lat: &Lattice) -> Result<(), String> {
    // factorization: product recovers f (also asserted at construction)
    let prod = lat
        .sf
        .factors()
        .iter()
        .fold(subfields_core::numfield::KPoly::one(&lat.field), |a, b| {
            a.mul(b)
        });
    if prod != lat.field.min_poly_as_kpoly() {
        return Err("factor product differs from f".into());
    }
    // records: x-alpha | g | f, algebra dimension, generator gcd
    let gp = lat.sf.canonical_prime().clone();
    let ctx = ReducedFactorization::new(&lat.sf, &gp).map_err(|e| e.to_string())?;
    for (idx, rec) in lat.records.iter().enumerate() {
        let gens = match &rec.generators {
            Some(g) => g.clone(),
            None => subfields_core::lattice::generators(rec, &ctx),
        };
        let report = verify_record(rec, &lat.sf, &gens).map_err(|e| e.to_string())?;
        if !report.ok() {
            return Err(format!("record #{idx} failed: {report:?}"));
        }
    }
    // closure under join
    for a in &lat.records {
        for b in &lat.records {
            let j = a.partition.join(&b.partition).map_err(|e| e.to_string())?;
            if !lat.records.iter().any(|r| r.partition == j) {
                return Err("record set not closed under join".into());
            }
        }
    }
    Ok(())
}
