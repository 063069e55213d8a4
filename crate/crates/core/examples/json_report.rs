//! End-to-end pipeline through the same entry point the CLI uses: run all
//! checks on a built-in example and print the JSON report (exact rationals
//! serialized as "num/den" strings).
//!
//! Run with `cargo run --example json_report`.

use intersection_space::cli::{run, RunConfig};

fn main() {
    let cfg = RunConfig {
        example: Some("solid_torus".into()),
        perversity: "zero".into(),
        seed: Some(7),
        checks: vec![
            "main-theorem".into(),
            "duality".into(),
            "ses".into(),
            "invariants".into(),
        ],
        quiet: false,
        ..Default::default()
    };
    let outcome = run(&cfg).expect("pipeline runs");
    println!(
        "all checks passed: {} (exit status would be {})",
        outcome.all_pass,
        if outcome.all_pass { 0 } else { 1 }
    );
}
