use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dg_density::lie_engine::{density_pipeline, standard_fields, PipelineConfig, StandardFields, Status};
use dg_density::torus::decompose_invariant;
use dg_density::genring::x_normal_form;
use dg_density::{Derivation, ExponentVector, GeneratorWord, SurfaceParameters};

#[derive(Parser)]
#[command(name = "dgverify", version, about = "Exact verification of the density argument for the surfaces V_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification pipeline and write a JSON report.
    Verify(VerifyArgs),
    /// Write an invariant monomial a1^e1 a2^e2 a3^e3 a4^e4 in the generators.
    Decompose {
        #[arg(long)]
        n: u32,
        /// Comma-separated exponents e1,e2,e3,e4.
        #[arg(long)]
        exponents: String,
    },
    /// Reduce a word in x0..x_b to the form x0^M x_h x_b^N.
    NormalForm {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        word: String,
    },
    /// Lie bracket of two fields, named (eps, delta, deltaprime, E) or
    /// given as "c1; c2; c3; c4".
    Bracket {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    nmax: u32,
    #[arg(long, default_value_t = 3)]
    mmax: u32,
    #[arg(long, default_value_t = 3)]
    rmax: u32,
    #[arg(long, default_value_t = 4)]
    word_degree: u32,
    /// Comma-separated stage names; all stages when omitted.
    #[arg(long, value_delimiter = ',')]
    stages: Vec<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    quiet: bool,
}

/// Exit status 2: the input could not be used.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Decompose { n, exponents } => decompose(n, &exponents),
        Command::NormalForm { n, word } => normal_form(n, &word),
        Command::Bracket { n, x, y } => bracket(n, &x, &y),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn verify(args: VerifyArgs) -> Result<u8, InputError> {
    let config = PipelineConfig {
        nmax: args.nmax,
        mmax: args.mmax,
        rmax: args.rmax,
        word_degree: args.word_degree,
        seed: args.seed,
        stages: args.stages,
        ..PipelineConfig::new(args.n)
    };
    let report = density_pipeline(&config)?;
    if let Some(path) = &args.report {
        fs::write(path, report.to_json() + "\n").map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    if !args.quiet {
        for s in &report.stages {
            let status = match s.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            println!("{status} {:<12} {:>6} checks  {}", s.name, s.checked, s.details.join("; "));
            if let Some(c) = &s.counterexample {
                println!("     first failure: {c}");
            }
        }
        println!("n = {}: {}", args.n, if report.passed() { "PASS" } else { "FAIL" });
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn decompose(n: u32, exponents: &str) -> Result<u8, InputError> {
    let params = SurfaceParameters::new(n)?;
    let parts = exponents
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()?;
    let e: [u32; 4] = parts
        .try_into()
        .map_err(|v: Vec<u32>| InputError(format!("expected 4 exponents, got {}", v.len())))?;
    let e = ExponentVector(e);
    let d = decompose_invariant(&e, &params)?;
    let word = d.to_word();
    println!("{}", word.format_with_separator(" * "));
    let ok = word.lift_exponents() == e;
    println!("lift check: {}", if ok { "OK" } else { "MISMATCH" });
    Ok(if ok { 0 } else { 1 })
}

fn normal_form(n: u32, word: &str) -> Result<u8, InputError> {
    let params = SurfaceParameters::new(n)?;
    let w = GeneratorWord::parse(params, word)?;
    let nf = x_normal_form(&w)?;
    println!("{nf}");
    let ok = (&nf.lift() - &w.lift()).reduced(&params).is_zero();
    println!("lift check: {}", if ok { "OK" } else { "MISMATCH" });
    Ok(if ok { 0 } else { 1 })
}

fn parse_field(fields: &StandardFields, s: &str) -> Result<Derivation, InputError> {
    if let Some(x) = fields.by_name(s.trim()) {
        return Ok(x.clone());
    }
    Ok(Derivation::parse(fields.params, s)?)
}

fn bracket(n: u32, x: &str, y: &str) -> Result<u8, InputError> {
    let params = SurfaceParameters::new(n)?;
    let fields = standard_fields(params);
    let x = parse_field(&fields, x)?;
    let y = parse_field(&fields, y)?;
    let z = x.bracket(&y)?;
    match fields.describe(&z) {
        Some(name) => println!("{name}"),
        None => println!("{z}"),
    }
    Ok(0)
}
