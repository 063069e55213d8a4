//! Thin command-line front end: parse flags, delegate to the library, exit
//! nonzero iff a requested check fails.

use clap::Parser;
use intersection_space::cli::{run, RunConfig};

/// Compute intersection-space cohomology rings of a stratified space with
/// one isolated singularity, from a triangulation of its blowup, in exact
/// rational arithmetic.
#[derive(Parser, Debug)]
#[command(name = "ispace", version)]
struct Args {
    /// JSON input document ({"name", "dimension", "facets", "boundary"}).
    #[arg(long, conflicts_with = "example")]
    input: Option<String>,

    /// Built-in example space: disk2, disk3, disk4, solid_torus, s1_x_d3,
    /// t2_x_d2.
    #[arg(long)]
    example: Option<String>,

    /// Perversity: zero, top, lower-middle, upper-middle, or a number.
    #[arg(long, default_value = "zero")]
    perversity: String,

    /// Seed for the alternative splitting and randomized spot checks.
    #[arg(long)]
    seed: Option<u64>,

    /// Use seeded random inner-product weights instead of the identity.
    #[arg(long)]
    weights: bool,

    /// Comma-separated checks to run: main-theorem, duality, ses,
    /// invariants, or "all".
    #[arg(long, default_value = "all")]
    checks: String,

    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    out: Option<String>,

    /// Suppress stdout/stderr reporting (the exit code still reflects the
    /// checks).
    #[arg(long)]
    quiet: bool,
}

fn main() {
    let args = Args::parse();
    let checks: Vec<String> = if args.checks == "all" {
        ["main-theorem", "duality", "ses", "invariants"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else if args.checks.is_empty() || args.checks == "none" {
        Vec::new()
    } else {
        args.checks.split(',').map(|s| s.trim().to_string()).collect()
    };
    let cfg = RunConfig {
        input: args.input,
        example: args.example,
        perversity: args.perversity,
        seed: args.seed,
        random_weights: args.weights,
        checks,
        out: args.out,
        quiet: args.quiet,
    };
    match run(&cfg) {
        Ok(outcome) => {
            if !outcome.all_pass {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
