//! The textual front end: problem files, presentation files, JSON reports.
//!
//! Parses the bundled fixtures and drives the same entry points the `magnus`
//! binary uses, capturing the JSON report.
//!
//! Run with: cargo run --example problem_files

use magnus::cli::run_cli_with;
use magnus::parse::{parse_poly, parse_problem};
use magnus::{Alphabet, FieldDesc};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn main() {
    // the polynomial grammar: explicit '*', '^' for repetition, '#' comments
    let alphabet = Alphabet::numbered("x", 3);
    let poly = parse_poly("3/2*x1*x3 - x2 + x1^2", &alphabet, FieldDesc::Rational).unwrap();
    println!("parsed: {}", poly.display(&alphabet));

    // constant terms do not exist in these algebras
    let err = parse_poly("x1 + 5", &alphabet, FieldDesc::Rational).unwrap_err();
    println!("rejected as expected: {err}");

    // a problem file bundles field, variables, relations and candidates
    let text = std::fs::read_to_string(fixture("free_rank1.problem")).unwrap();
    let problem = parse_problem(&text).unwrap();
    println!(
        "\nproblem file: field {}, {} variables, {} relations, {} candidates",
        problem.field,
        problem.alphabet.len(),
        problem.relations.len(),
        problem.candidates.len()
    );

    // drive the CLI in-process and capture the JSON report
    let args: Vec<String> = [
        "check",
        &fixture("free_rank1.problem"),
        "--witness",
        &fixture("free_rank1.witness"),
        "--json",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli_with(&args, &mut out, &mut err);
    let report: serde_json::Value = serde_json::from_slice(&out).unwrap();
    println!("\ncheck exited {code}; report fields:");
    println!("  verdict: {}", report["verdict"]);
    println!("  rank: {}", report["rank"]);
    println!("  alpha: {}", report["alpha"]);
    println!("  phi_relations: {}", report["phi_relations"]);
}
