//! The command-line surface.
//!
//! Exit codes: 0 = certified (or nothing found, as predicted), 1 = rejected
//! or a dependency was found, 2 = inconclusive, 3 = input error.

use std::fs;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use crate::certify::{
    certify_freeness, check_balanced, linear_parts_matrix,
    normalized_transformed_system, rank_and_invert, transform_presentation, AlgebraPresentation,
    CandidateSystem, CertifyOptions, Verdict,
};
use crate::oracle::{dependency_search_bounded, generation_search_bounded, OracleLimits};
use crate::parse::{parse_presentation, parse_problem, parse_witness_file, ProblemFile};
use crate::presentation::{EngineError, EngineLimits};
use crate::report::{
    fill_certificate, fill_min_monomial, render_matrix, render_polys, render_presentation,
    OracleReport, Report, WitnessEntryReport, WitnessReport,
};
use crate::word::Alphabet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

/// Degree bound used by `oracle` and `gen-witness` when none is given.
pub const DEFAULT_MAX_DEGREE: usize = 5;

const USAGE: &str = "\
usage: magnus <command> [options]

commands:
  check FILE [--assume-generation] [--witness WFILE] [--json]
      run the freeness certifier on a problem file
  member FILE --presentation PFILE [--json]
      rewrite a presentation until its parameter reaches the minimal monomial
  oracle FILE [--max-degree D] [--json]
      brute-force search for an algebraic dependency up to degree D (default 5)
  gen-witness FILE [--max-degree D] [--json]
      brute-force search for a generation witness up to degree D (default 5)

exit codes: 0 certified / nothing found, 1 rejected / dependency found,
            2 inconclusive, 3 input error

environment: MAGNUS_TERM_CAP overrides the presentation term cap (default 100000)
";

/// Runs the CLI against stdout/stderr.
pub fn run_cli(args: &[String]) -> i32 {
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    run_cli_with(args, &mut out, &mut err)
}

/// Runs the CLI against arbitrary writers (used by the tests).
pub fn run_cli_with(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(args, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn dispatch(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let Some(command) = args.first() else {
        let _ = write!(err, "{USAGE}");
        return Ok(EXIT_INPUT_ERROR);
    };
    match command.as_str() {
        "check" => cmd_check(&args[1..], out, err),
        "member" => cmd_member(&args[1..], out, err),
        "oracle" => cmd_oracle(&args[1..], out, err),
        "gen-witness" => cmd_gen_witness(&args[1..], out, err),
        "--help" | "-h" | "help" => {
            let _ = write!(out, "{USAGE}");
            Ok(EXIT_OK)
        }
        "--version" => {
            let _ = writeln!(out, "magnus {}", env!("CARGO_PKG_VERSION"));
            Ok(EXIT_OK)
        }
        other => {
            let _ = writeln!(err, "error: unknown command `{other}`");
            let _ = write!(err, "{USAGE}");
            Ok(EXIT_INPUT_ERROR)
        }
    }
}

struct CommonArgs {
    file: Option<String>,
    json: bool,
    assume_generation: bool,
    witness: Option<String>,
    presentation: Option<String>,
    max_degree: Option<usize>,
}

fn parse_args(args: &[String], err: &mut dyn Write) -> Result<CommonArgs, i32> {
    let mut parsed = CommonArgs {
        file: None,
        json: false,
        assume_generation: false,
        witness: None,
        presentation: None,
        max_degree: None,
    };
    let mut i = 0;
    while i < args.len() {
        match args[i].as_str() {
            "--json" => parsed.json = true,
            "--assume-generation" => parsed.assume_generation = true,
            "--witness" | "--presentation" | "--max-degree" => {
                let flag = args[i].clone();
                i += 1;
                let Some(value) = args.get(i) else {
                    let _ = writeln!(err, "error: {flag} needs a value");
                    return Err(EXIT_INPUT_ERROR);
                };
                match flag.as_str() {
                    "--witness" => parsed.witness = Some(value.clone()),
                    "--presentation" => parsed.presentation = Some(value.clone()),
                    "--max-degree" => match value.parse::<usize>() {
                        Ok(d) if d >= 1 => parsed.max_degree = Some(d),
                        _ => {
                            let _ = writeln!(err, "error: --max-degree needs a positive integer");
                            return Err(EXIT_INPUT_ERROR);
                        }
                    },
                    _ => unreachable!(),
                }
            }
            flag if flag.starts_with('-') => {
                let _ = writeln!(err, "error: unknown flag `{flag}`");
                let _ = write!(err, "{USAGE}");
                return Err(EXIT_INPUT_ERROR);
            }
            path => {
                if parsed.file.is_some() {
                    let _ = writeln!(err, "error: more than one input file");
                    return Err(EXIT_INPUT_ERROR);
                }
                parsed.file = Some(path.to_string());
            }
        }
        i += 1;
    }
    Ok(parsed)
}

fn read_file(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn load_problem(path: &str) -> Result<ProblemFile, String> {
    let text = read_file(path)?;
    parse_problem(&text).map_err(|e| format!("{path}: {e}"))
}

fn build_instance(
    problem: &ProblemFile,
) -> Result<(AlgebraPresentation, CandidateSystem), String> {
    let algebra = AlgebraPresentation::new(
        problem.field,
        problem.alphabet_size(),
        problem.relations.clone(),
    )
    .map_err(|e| e.to_string())?;
    let candidates =
        CandidateSystem::new(problem.candidates.clone()).map_err(|e| e.to_string())?;
    Ok((algebra, candidates))
}

fn engine_limits_from_env() -> Result<EngineLimits, String> {
    let mut limits = EngineLimits::default();
    if let Ok(value) = std::env::var("MAGNUS_TERM_CAP") {
        limits.max_terms = value
            .parse::<usize>()
            .map_err(|_| format!("MAGNUS_TERM_CAP must be a positive integer, got `{value}`"))?;
    }
    Ok(limits)
}

fn emit(report: &Report, json: bool, text: &str, out: &mut dyn Write, started: Instant) {
    if json {
        let mut report_json: serde_json::Value =
            serde_json::from_str(&report.to_json()).expect("valid json");
        report_json["timings"]["total_ms"] =
            serde_json::Value::from(started.elapsed().as_millis() as u64);
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report_json).expect("valid json")
        );
    } else {
        let _ = write!(out, "{text}");
    }
}

fn verdict_exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::FreeSubalgebraCertified | Verdict::FullFreenessCertified => EXIT_OK,
        Verdict::Rejected => EXIT_REJECTED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn format_matrix_block(label: &str, matrix: &[Vec<String>]) -> String {
    let mut text = format!("{label}:\n");
    let width = matrix
        .iter()
        .flat_map(|row| row.iter().map(String::len))
        .max()
        .unwrap_or(1);
    for row in matrix {
        text.push_str("  [");
        for entry in row {
            text.push_str(&format!(" {entry:>width$}"));
        }
        text.push_str(" ]\n");
    }
    text
}

fn cmd_check(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let started = Instant::now();
    let parsed = match parse_args(args, err) {
        Ok(p) => p,
        Err(code) => return Ok(code),
    };
    let Some(path) = parsed.file else {
        return Err("check needs a problem file".to_string());
    };
    let problem = load_problem(&path)?;
    problem.require_balanced().map_err(|e| format!("{path}: {e}"))?;
    let (algebra, candidates) = build_instance(&problem)?;
    check_balanced(&algebra, &candidates).map_err(|e| e.to_string())?;

    let witness = {
        let raw = if let Some(wpath) = &parsed.witness {
            if !problem.witness.is_empty() {
                return Err(
                    "witness given both inline and via --witness; use one or the other".to_string(),
                );
            }
            let text = read_file(wpath)?;
            parse_witness_file(
                &text,
                &problem.alphabet,
                problem.field,
                candidates.len(),
                algebra.relation_count(),
            )
            .map_err(|e| format!("{wpath}: {e}"))?
        } else {
            problem.witness.clone()
        };
        if raw.is_empty() {
            None
        } else {
            Some(
                problem
                    .build_witness(&raw, &algebra.relation_system())
                    .map_err(|e| format!("witness: {}", e.message))?,
            )
        }
    };

    let certificate = certify_freeness(
        &algebra,
        &candidates,
        witness.as_ref(),
        CertifyOptions {
            assume_generation: parsed.assume_generation,
        },
    );

    let mut report = Report::new("check", certificate.verdict.as_str());
    fill_certificate(&mut report, &certificate);

    let mut text = String::new();
    let n_vars = algebra.alphabet_size();
    text.push_str(&format!(
        "instance: field {}, {} variables, {} relations, {} candidates\n",
        problem.field,
        n_vars,
        algebra.relation_count(),
        candidates.len()
    ));
    text.push_str(&format!("rank: {} of {}\n", certificate.rank, n_vars));
    text.push_str(&format_matrix_block(
        "beta (rows = linear parts of candidates, then relations)",
        &render_matrix(&certificate.beta),
    ));
    if let Some(alpha) = &certificate.alpha {
        text.push_str(&format_matrix_block(
            "alpha (change of variables)",
            &render_matrix(alpha),
        ));
        let y_names = Alphabet::numbered("y", n_vars);
        for (i, p) in certificate.phi_candidates.iter().enumerate() {
            text.push_str(&format!(
                "phi(g{}) = {}\n",
                i + 1,
                p.display(&y_names)
            ));
        }
        for (i, p) in certificate.phi_relations.iter().enumerate() {
            text.push_str(&format!(
                "phi(h{}) = {}\n",
                i + 1,
                p.display(&y_names)
            ));
        }
        text.push_str("linear parts in the new coordinates: verified\n");
    }
    if let Some(reason) = &certificate.rejection_reason {
        text.push_str(&format!("reason: {reason}\n"));
    }
    for note in &certificate.assumptions {
        text.push_str(&format!("note: {note}\n"));
    }
    text.push_str(&format!("verdict: {}\n", certificate.verdict.as_str()));

    emit(&report, parsed.json, &text, out, started);
    Ok(verdict_exit_code(certificate.verdict))
}

fn cmd_member(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let started = Instant::now();
    let parsed = match parse_args(args, err) {
        Ok(p) => p,
        Err(code) => return Ok(code),
    };
    let Some(path) = parsed.file else {
        return Err("member needs a problem file".to_string());
    };
    let Some(presentation_path) = parsed.presentation else {
        return Err("member needs --presentation PFILE".to_string());
    };
    let problem = load_problem(&path)?;
    problem.require_balanced().map_err(|e| format!("{path}: {e}"))?;
    let (algebra, candidates) = build_instance(&problem)?;
    if algebra.relation_count() == 0 {
        return Err("member needs at least one relation".to_string());
    }

    let presentation_text = read_file(&presentation_path)?;
    let presentation = parse_presentation(
        &presentation_text,
        &problem.alphabet,
        &algebra.relation_system(),
    )
    .map_err(|e| format!("{presentation_path}: {e}"))?;

    let n = candidates.len();
    let k = algebra.relation_count();
    let n_vars = algebra.alphabet_size();

    // normalize through the change of variables
    let (beta, _) = linear_parts_matrix(&algebra, &candidates);
    let map = match rank_and_invert(problem.field, &beta) {
        Ok(map) => map,
        Err(rank) => {
            let mut report = Report::new("member", Verdict::Rejected.as_str());
            report.rank = Some(rank);
            report.beta = Some(render_matrix(&beta));
            report.reason = Some(format!(
                "linear parts have rank {rank} < {n_vars}; cannot normalize the relation system"
            ));
            let text = format!(
                "rank: {rank} of {n_vars}\nverdict: REJECTED (cannot normalize the relation system)\n"
            );
            emit(&report, parsed.json, &text, out, started);
            return Ok(EXIT_REJECTED);
        }
    };
    let (composite, system) = normalized_transformed_system(&map, &algebra, n);
    let transformed = transform_presentation(&composite, &presentation, Arc::clone(&system))
        .map_err(|e| e.to_string())?;

    // engine coordinates j <= k hold y_{n+j}; the rest hold y_1..y_n
    let display_names: Vec<String> = (1..=n_vars as usize)
        .map(|pos| {
            if pos <= k {
                format!("y{}", n + pos)
            } else {
                format!("y{}", pos - k)
            }
        })
        .collect();
    let display_alphabet = Alphabet::from_names(display_names).expect("unique names");

    let limits = engine_limits_from_env()?;
    match transformed.certify_min_monomial(&limits) {
        Ok(certificate) => {
            let mut report = Report::new("member", "MIN_MONOMIAL_CERTIFIED");
            report.rank = Some(n_vars as usize);
            report.beta = Some(render_matrix(&beta));
            report.alpha = Some(render_matrix(map.matrix()));
            report.phi_relations = Some(render_polys(system.relations(), &display_alphabet));
            fill_min_monomial(&mut report, &certificate, &display_alphabet);

            let mut text = String::new();
            text.push_str(&format!("rank: {n_vars} of {n_vars}\n"));
            text.push_str("normalized relations (engine coordinates):\n");
            for (i, f) in system.relations().iter().enumerate() {
                text.push_str(&format!("  f{} = {}\n", i + 1, f.display(&display_alphabet)));
            }
            text.push_str("parameter trace:\n");
            for tau in &certificate.tau_trace {
                text.push_str(&format!("  {}\n", tau.display(&display_alphabet)));
            }
            text.push_str(&format!(
                "minimal monomial: {}\n",
                certificate.min_monomial.display(&display_alphabet)
            ));
            text.push_str(&format!(
                "final presentation ({} terms):\n",
                certificate.presentation.terms().len()
            ));
            for term in certificate.presentation.terms() {
                text.push_str(&format!("  {}\n", term.display(&display_alphabet)));
            }
            text.push_str(&format!("steps: {}\n", certificate.steps));
            text.push_str("verdict: MIN_MONOMIAL_CERTIFIED\n");
            emit(&report, parsed.json, &text, out, started);
            Ok(EXIT_OK)
        }
        Err(EngineError::TermCapExceeded { reached, cap }) => {
            let mut report = Report::new("member", Verdict::Inconclusive.as_str());
            report.reason = Some(format!("term cap exceeded: {reached} terms, cap {cap}"));
            let text = format!(
                "verdict: INCONCLUSIVE (term cap exceeded: {reached} terms, cap {cap})\n"
            );
            emit(&report, parsed.json, &text, out, started);
            Ok(EXIT_INCONCLUSIVE)
        }
        Err(EngineError::StepCapExceeded { cap }) => {
            let mut report = Report::new("member", Verdict::Inconclusive.as_str());
            report.reason = Some(format!("step cap exceeded: {cap} steps"));
            let text = format!("verdict: INCONCLUSIVE (step cap exceeded: {cap} steps)\n");
            emit(&report, parsed.json, &text, out, started);
            Ok(EXIT_INCONCLUSIVE)
        }
        Err(other) => Err(other.to_string()),
    }
}

fn cmd_oracle(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let started = Instant::now();
    let parsed = match parse_args(args, err) {
        Ok(p) => p,
        Err(code) => return Ok(code),
    };
    let Some(path) = parsed.file else {
        return Err("oracle needs a problem file".to_string());
    };
    let max_degree = parsed.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    // the oracle does not require balanced counts: any candidate list works
    let problem = load_problem(&path)?;
    let (algebra, candidates) = build_instance(&problem)?;

    let limits = OracleLimits::default();
    match dependency_search_bounded(&algebra, &candidates, max_degree, &limits) {
        Ok(Some(dependency)) => {
            let slot_names = Alphabet::numbered("z", candidates.len() as u32);
            let phi_text = dependency.phi.display(&slot_names).to_string();
            let membership = render_presentation(&dependency.membership, &problem.alphabet);
            let mut report = Report::new("oracle", "DEPENDENCY_FOUND");
            report.oracle = Some(OracleReport {
                max_degree,
                found: true,
                phi: Some(phi_text.clone()),
                exact: Some(dependency.exact),
                membership: Some(membership.clone()),
            });
            let mut text = format!("dependency found: {phi_text}\n");
            if dependency.exact {
                text.push_str("membership verified exactly:\n");
            } else {
                text.push_str(
                    "membership holds up to the degree bound only (truncation caveat):\n",
                );
            }
            for term in &membership {
                text.push_str(&format!("  {term}\n"));
            }
            text.push_str("verdict: DEPENDENCY_FOUND\n");
            emit(&report, parsed.json, &text, out, started);
            Ok(EXIT_REJECTED)
        }
        Ok(None) => {
            let mut report = Report::new("oracle", "NONE_UP_TO_DEGREE");
            report.oracle = Some(OracleReport {
                max_degree,
                found: false,
                phi: None,
                exact: None,
                membership: None,
            });
            let text = format!(
                "no dependency of degree <= {max_degree}\nverdict: NONE_UP_TO_DEGREE\n"
            );
            emit(&report, parsed.json, &text, out, started);
            Ok(EXIT_OK)
        }
        Err(e) => {
            let mut report = Report::new("oracle", Verdict::Inconclusive.as_str());
            report.reason = Some(e.to_string());
            let text = format!("verdict: INCONCLUSIVE ({e})\n");
            emit(&report, parsed.json, &text, out, started);
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn cmd_gen_witness(
    args: &[String],
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, String> {
    let started = Instant::now();
    let parsed = match parse_args(args, err) {
        Ok(p) => p,
        Err(code) => return Ok(code),
    };
    let Some(path) = parsed.file else {
        return Err("gen-witness needs a problem file".to_string());
    };
    let max_degree = parsed.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    let problem = load_problem(&path)?;
    let (algebra, candidates) = build_instance(&problem)?;

    let limits = OracleLimits::default();
    match generation_search_bounded(&algebra, &candidates, max_degree, &limits) {
        Ok(Some(witness)) => {
            let slot_names = Alphabet::numbered("z", candidates.len() as u32);
            let entries: Vec<WitnessEntryReport> = witness
                .entries
                .iter()
                .enumerate()
                .map(|(i, entry)| WitnessEntryReport {
                    variable: problem.alphabet.name(i as u32 + 1).to_string(),
                    phi: entry.phi.display(&slot_names).to_string(),
                    ideal_part: render_presentation(&entry.ideal_part, &problem.alphabet),
                })
                .collect();
            let mut report = Report::new("gen-witness", "WITNESS_FOUND");
            report.witness = Some(WitnessReport {
                max_degree,
                found: true,
                entries,
            });
            let mut text = String::from("generation witness found and verified exactly:\n");
            for (i, entry) in witness.entries.iter().enumerate() {
                text.push_str(&format!(
                    "  {} = {}",
                    problem.alphabet.name(i as u32 + 1),
                    entry.phi.display(&slot_names)
                ));
                if entry.ideal_part.is_empty() {
                    text.push('\n');
                } else {
                    text.push_str(" + ideal part:\n");
                    for term in entry.ideal_part.terms() {
                        text.push_str(&format!("    {}\n", term.display(&problem.alphabet)));
                    }
                }
            }
            text.push_str("verdict: WITNESS_FOUND\n");
            emit(&report, parsed.json, &text, out, started);
            Ok(EXIT_OK)
        }
        Ok(None) => {
            let mut report = Report::new("gen-witness", "NONE_UP_TO_DEGREE");
            report.witness = Some(WitnessReport {
                max_degree,
                found: false,
                entries: Vec::new(),
            });
            let text = format!(
                "no generation witness of degree <= {max_degree} (inconclusive)\nverdict: NONE_UP_TO_DEGREE\n"
            );
            emit(&report, parsed.json, &text, out, started);
            Ok(EXIT_INCONCLUSIVE)
        }
        Err(e) => {
            let mut report = Report::new("gen-witness", Verdict::Inconclusive.as_str());
            report.reason = Some(e.to_string());
            let text = format!("verdict: INCONCLUSIVE ({e})\n");
            emit(&report, parsed.json, &text, out, started);
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}
