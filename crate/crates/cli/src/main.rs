use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use semiclifford::circuit::{parse_bit_matrices, parse_circuit};
use semiclifford::classify::classify;
use semiclifford::dense::{extract_rep, HierarchyLevel, DenseMatrix};
use semiclifford::expansion::expand;
use semiclifford::normal_form::{
    commuting_set_normal_form, involution_normal_form, is_nice_form, simultaneous_nice_form_obstruction,
};
use semiclifford::pipeline::{run_pipeline, verify_counterexample};
use semiclifford::random::self_check;
use semiclifford::{Error, Result};

/// Clifford hierarchy toolkit: classification, symplectic normal forms,
/// Pauli expansions and generalized semi-Clifford certificates.
#[derive(Parser, Debug)]
#[command(name = "semiclifford", version, about)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also run a randomized self-check of the symbolic Clifford formulas
    /// against dense matrices, seeded with this value.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Highest hierarchy level tested by `classify`.
    #[arg(long, global = true, default_value_t = 3)]
    kmax: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hierarchy level and semi-Clifford tests for a circuit.
    Classify { circuit: PathBuf },
    /// Block normal form of one symplectic involution or a commuting family.
    Normalform { matrices: PathBuf },
    /// Pauli-basis expansion of a Clifford circuit.
    Expand { circuit: PathBuf },
    /// Generalized semi-Clifford certificate for a third-level circuit.
    Pipeline { circuit: PathBuf },
    /// Check the seven-qubit controlled-swap counterexample.
    VerifyCounterexample,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Normalform { .. } => "normalform",
            Command::Expand { .. } => "expand",
            Command::Pipeline { .. } => "pipeline",
            Command::VerifyCounterexample => "verify-counterexample",
        }
    }
}

/// What a subcommand produced: a JSON report, a text rendering, and whether
/// every check it performed passed.
struct Outcome {
    report: Value,
    text: String,
    passed: bool,
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Result<DenseMatrix> {
    parse_circuit(&read(path)?)?.to_dense()
}

fn level_text(level: HierarchyLevel) -> String {
    match level {
        HierarchyLevel::Level(k) => format!("C{k}"),
        HierarchyLevel::Above(k) => format!("not in C{k}"),
    }
}

fn run_classify(path: &Path, kmax: usize) -> Result<Outcome> {
    let u = load_circuit(path)?;
    let report = classify(&u, kmax)?;
    let verdict = |holds: Option<bool>| match holds {
        Some(true) => "yes",
        Some(false) => "no",
        None => "not tested (too many qubits)",
    };
    let text = format!(
        "qubits: {}\nhierarchy level: {}\nsemi-Clifford: {}\ngeneralized semi-Clifford: {}",
        report.n,
        level_text(report.hierarchy_level),
        verdict(report.semi_clifford.as_ref().map(|v| v.holds)),
        verdict(report.generalized_semi_clifford.as_ref().map(|v| v.holds)),
    );
    Ok(Outcome { report: to_value(&report), text, passed: true })
}

fn run_normalform(path: &Path) -> Result<Outcome> {
    let cs = parse_bit_matrices(&read(path)?)?;
    let set = match cs.as_slice() {
        [c] => {
            let r = involution_normal_form(c)?;
            semiclifford::normal_form::SetNormalForm { m: r.m, normalized: vec![r.normalized] }
        }
        _ => commuting_set_normal_form(&cs)?,
    };
    let nice: Vec<bool> = set.normalized.iter().map(is_nice_form).collect();
    let mut obstructed_pairs = Vec::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if simultaneous_nice_form_obstruction(&cs[i], &cs[j])? {
                obstructed_pairs.push((i, j));
            }
        }
    }
    let obstruction = !obstructed_pairs.is_empty();
    let mut text = format!("matrices: {}\nM:\n", cs.len());
    for row in set.m.to_strings() {
        text += &format!("  {row}\n");
    }
    for (k, c) in set.normalized.iter().enumerate() {
        text += &format!("M C{} M^-1{}:\n", k + 1, if nice[k] { " (I E; 0 I)" } else { "" });
        for row in c.to_strings() {
            text += &format!("  {row}\n");
        }
    }
    text += &format!("obstruction to a common (I E; 0 I) form: {obstruction}");
    let mut report = to_value(&set);
    report["count"] = json!(cs.len());
    report["nice_form"] = json!(nice);
    report["obstruction"] = json!(obstruction);
    report["obstructed_pairs"] = json!(obstructed_pairs);
    Ok(Outcome { report, text, passed: true })
}

fn run_expand(path: &Path) -> Result<Outcome> {
    let u = load_circuit(path)?;
    let rep = extract_rep(&u).ok_or_else(|| Error::NotClifford("circuit is not a Clifford operator".into()))?;
    let exp = expand(&rep)?;
    let (c_hex, h_hex) = rep.to_hex();
    let mut text = format!(
        "qubits: {}\nC: {c_hex}\nh: {h_hex}\ns = dim Ker(I+C): {}\nsupport size: {}\nmagnitude: {}\n",
        exp.n,
        exp.s,
        exp.support_size(),
        exp.magnitude
    );
    text += "coefficients (label: phase):";
    for (a, p) in &exp.coeffs {
        text += &format!("\n  {a}: i^{}", p.exponent());
    }
    let mut report = to_value(&exp);
    report["rep"] = json!({ "c": c_hex, "h": h_hex });
    report["support_size"] = json!(exp.support_size());
    Ok(Outcome { report, text, passed: true })
}

fn run_pipeline_cmd(path: &Path) -> Result<Outcome> {
    let u = load_circuit(path)?;
    let cert = run_pipeline(&u)?;
    let text = format!(
        "qubits: {}\ndim Ker T: {}\nKer T basis: {}\ntarget Lagrangian: {}\ndiagonal span rank: {} of {}\ngeneralized semi-Clifford: {}",
        cert.n,
        cert.kernel_basis.len(),
        cert.kernel_basis.join(" "),
        cert.target_lagrangian.join(" "),
        cert.span_rank,
        1usize << cert.n,
        cert.generalized_semi_clifford
    );
    Ok(Outcome { report: to_value(&cert), passed: cert.generalized_semi_clifford, text })
}

/// Generator index of `X` on the control qubit `R` (qubit 6 of 7).
const R_X_GENERATOR: usize = 13;

fn run_verify() -> Result<Outcome> {
    let v = verify_counterexample()?;
    let r_witness = v.vu_violations.contains(&R_X_GENERATOR);
    let passed = v.uv_in_c3 && !v.vu_in_c3 && r_witness && v.certificate_produced;
    let text = format!(
        "UV in C3: {}\nVU in C3: {}\nVU violations at generators: {:?}\nX on R is a witness: {r_witness}\ncertificate produced: {}",
        v.uv_in_c3, v.vu_in_c3, v.vu_violations, v.certificate_produced
    );
    let mut report = to_value(&v);
    report["r_x_witness"] = json!(r_witness);
    Ok(Outcome { report, text, passed })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Classify { circuit } => run_classify(circuit, cli.kmax),
        Command::Normalform { matrices } => run_normalform(matrices),
        Command::Expand { circuit } => run_expand(circuit),
        Command::Pipeline { circuit } => run_pipeline_cmd(circuit),
        Command::VerifyCounterexample => run_verify(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let check = cli.seed.map(|seed| self_check(seed, 20));
    let outcome = execute(&cli);
    let check_ok = check.as_ref().is_none_or(|c| c.passed);
    let ok = check_ok && matches!(&outcome, Ok(o) if o.passed);

    if cli.json {
        let (report, error) = match &outcome {
            Ok(o) => (o.report.clone(), (!o.passed).then(|| "verdict check failed".to_string())),
            Err(e) => (Value::Null, Some(e.to_string())),
        };
        let error = error.or_else(|| (!check_ok).then(|| "self-check failed".to_string()));
        let mut doc = json!({
            "command": cli.command.name(),
            "ok": ok,
            "error": error,
            "report": report,
        });
        if let Some(c) = &check {
            doc["self_check"] = to_value(c);
        }
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        match &outcome {
            Ok(o) => println!("{}", o.text),
            Err(e) => eprintln!("error: {e}"),
        }
        if let Some(c) = &check {
            println!(
                "self-check (seed {}): {} circuits, {} generator checks, {}",
                c.seed,
                c.circuits,
                c.generator_checks,
                if c.passed { "passed" } else { "FAILED" }
            );
        }
        if matches!(&outcome, Ok(o) if !o.passed) {
            eprintln!("error: verdict check failed");
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
