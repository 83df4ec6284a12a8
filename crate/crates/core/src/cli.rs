//! The `elemops` command line: JSON in, JSON report out.
//!
//! Exit status is 0 on success, 1 when a property fails or a hypothesis is not
//! met, and 2 for malformed input or I/O failures.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::annihil::{find_annihilator, verify_zero};
use crate::elemop::ElemOp;
use crate::error::Error;
use crate::exactnum::Matrix;
use crate::invert::{
    biorthogonal_decomposition, classify_inverse, derivation_inverse, derivation_inverse_is_derivation,
    inverse_elemop, sum_of_invertibles_impossible, upsilon_inverse, verify_biorthogonal,
    DecompositionKind,
};
use crate::json::{
    self, AnnihilatorJson, ApplyInput, CanonicalFormJson, ClassificationJson, ComposeInput, DecompositionJson,
    DerivationInverseJson, ElemOpJson, InverseJson, MatrixJson, PairInput, PencilInput, ShiftJson,
};
use crate::pencil::PencilSpace;
use crate::selftest;
use crate::shiftspace::{pencil_nonregularity, verify_relations};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "elemops", version, about = "Exact computations with elementary operators on rational matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Input JSON file (standard input when omitted).
    #[arg(short, long, global = true)]
    pub input: Option<PathBuf>,

    /// Write the JSON report here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest matrix size used by randomised runs.
    #[arg(long, global = true, default_value_t = 3)]
    pub n: usize,

    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,

    /// Longest chain annihilator to search for (default `n^2`).
    #[arg(long, global = true)]
    pub max_chain: Option<usize>,

    #[arg(long, global = true, default_value_t = 64)]
    pub max_index: usize,

    /// Print the JSON report instead of a text summary.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Length of an operator and a minimal representation.
    Length,
    /// Apply an operator to a matrix.
    Apply,
    /// Compose two operators.
    Compose,
    /// Certified inverse with its length.
    Invert,
    /// Inverse of `T -> T + ATB`.
    Upsilon,
    /// Inverse of `T -> AT - TB`.
    DerivationInverse,
    /// Search for an elementary annihilator.
    Annihilate,
    /// Canonical form of a rectangular pencil.
    PencilForm,
    /// Biorthogonal or two-invertible decomposition.
    DecomposeInvertible,
    /// Structural cases of an inverse.
    Classify,
    /// Relations of the partial-shift example.
    ShiftDemo,
    /// Randomised invariant suites.
    Selftest,
}

#[derive(Debug)]
struct Outcome {
    report: Value,
    ok: bool,
}

fn report<T: Serialize>(value: &T, ok: bool) -> Outcome {
    Outcome {
        report: serde_json::to_value(value).expect("wire types serialize"),
        ok,
    }
}

fn exit_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::DimensionMismatch { .. } | Error::NotSquare { .. } => EXIT_INPUT,
        Error::Precondition(_) | Error::Hypothesis(_) | Error::Certificate(_) => EXIT_FAILED,
    }
}

fn read_input(path: &Option<PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn elemop(text: &str) -> crate::Result<ElemOp> {
    ElemOp::try_from(&json::parse::<ElemOpJson>(text)?)
}

fn pair(text: &str) -> crate::Result<(Matrix, Matrix)> {
    let p: PairInput = json::parse(text)?;
    Ok(((&p.a).try_into()?, (&p.b).try_into()?))
}

fn needs_input(cmd: Command) -> bool {
    !matches!(cmd, Command::ShiftDemo | Command::Selftest)
}

fn execute(cli: &Cli, text: &str) -> crate::Result<Outcome> {
    Ok(match cli.command {
        Command::Length => {
            let op = elemop(text)?;
            let minimal = op.minimize();
            report(
                &json!({ "length": minimal.terms().len(), "minimal": ElemOpJson::from(&minimal) }),
                true,
            )
        }
        Command::Apply => {
            let input: ApplyInput = json::parse(text)?;
            let op = ElemOp::try_from(&input.op)?;
            let t = Matrix::try_from(&input.t)?;
            let result = op.apply(&t)?;
            report(&json!({ "result": MatrixJson::from(&result) }), true)
        }
        Command::Compose => {
            let input: ComposeInput = json::parse(text)?;
            let left = ElemOp::try_from(&input.left)?;
            let right = ElemOp::try_from(&input.right)?;
            let c = left.compose(&right)?.minimize();
            report(&json!({ "length": c.terms().len(), "composition": ElemOpJson::from(&c) }), true)
        }
        Command::Invert => {
            let op = elemop(text)?;
            let r = inverse_elemop(&op)?;
            report(&InverseJson::from(&r), true)
        }
        Command::Upsilon => {
            let (a, b) = pair(text)?;
            let r = upsilon_inverse(&a, &b)?;
            report(&InverseJson::from(&r), !r.invertible || r.prediction_holds())
        }
        Command::DerivationInverse => {
            let (a, b) = pair(text)?;
            let r = derivation_inverse(&a, &b)?;
            let as_derivation = if r.invertible {
                derivation_inverse_is_derivation(&a, &b)?.map(|d| DerivationInverseJson::from(&d))
            } else {
                None
            };
            let ok = !r.invertible || r.prediction_holds();
            report(&json!({ "inverse": InverseJson::from(&r), "as_derivation": as_derivation }), ok)
        }
        Command::Annihilate => {
            let op = elemop(text)?;
            let max_chain = cli.max_chain.unwrap_or(op.n() * op.n());
            let r = find_annihilator(&op, max_chain)?;
            let verified = match (&r.witness, &r.algebraic) {
                (Some(w), _) => Some(verify_zero(w, &op) && !w.is_zero()),
                (None, Some(w)) => Some(w.annihilates(&op)),
                (None, None) => None,
            };
            let mut value = serde_json::to_value(AnnihilatorJson::from(&r)).expect("serializes");
            value["verified"] = json!(verified);
            report(&value, verified != Some(false))
        }
        Command::PencilForm => {
            let input: PencilInput = json::parse(text)?;
            let space = PencilSpace::new((&input.b1).try_into()?, (&input.b2).try_into()?)?;
            let form = space.canonical_form()?;
            let verified = form.verify(&space);
            let mut value = serde_json::to_value(CanonicalFormJson::from(&form)).expect("serializes");
            value["verified"] = json!(verified);
            report(&value, verified)
        }
        Command::DecomposeInvertible => {
            let op = elemop(text)?;
            match biorthogonal_decomposition(&op, cli.seed)? {
                Some(d) => {
                    let verified = match d.kind {
                        DecompositionKind::Biorthogonal => inverse_elemop(&op)?
                            .inverse
                            .is_some_and(|inv| verify_biorthogonal(&op, &inv, &d)),
                        DecompositionKind::TwoInvertible => ElemOp::new(op.n(), vec![d.m1.clone(), d.m2.clone()])?
                            .same_operator(&op),
                    };
                    let mut value = serde_json::to_value(DecompositionJson::from(&d)).expect("serializes");
                    value["verified"] = json!(verified);
                    report(&value, verified)
                }
                None => {
                    let impossible = op.length() == 2 && sum_of_invertibles_impossible(&op)?;
                    report(&json!({ "kind": null, "two_invertible_impossible": impossible }), false)
                }
            }
        }
        Command::Classify => {
            let op = elemop(text)?;
            let c = classify_inverse(&op, cli.seed)?;
            report(&ClassificationJson::from(&c), true)
        }
        Command::ShiftDemo => {
            let r = verify_relations(cli.max_index);
            let cert = pencil_nonregularity(2..=16)?;
            let ok = r.all_hold() && cert.iter().all(|&(_, zero)| zero);
            report(&ShiftJson::new(&r, cert), ok)
        }
        Command::Selftest => {
            let r = selftest::run(cli.seed, cli.n, cli.trials);
            report(&r, r.passed)
        }
    })
}

fn summary(value: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = value {
        for (k, v) in map {
            match v {
                Value::Object(_) => out.push_str(&format!("{k}: {{..}}\n")),
                Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                    out.push_str(&format!("{k}: [{} items]\n", items.len()))
                }
                _ => out.push_str(&format!("{k}: {v}\n")),
            }
        }
    }
    out
}

/// Runs one command and returns the exit status.
pub fn run(cli: &Cli) -> i32 {
    let text = if needs_input(cli.command) {
        match read_input(&cli.input) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read input: {e}");
                return EXIT_INPUT;
            }
        }
    } else {
        String::new()
    };
    let outcome = match execute(cli, &text) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    let rendered = serde_json::to_string_pretty(&outcome.report).expect("serializes") + "\n";
    if let Some(path) = &cli.output {
        if let Err(e) = fs::write(path, &rendered) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    if cli.json {
        print!("{rendered}");
    } else if cli.output.is_none() {
        print!("{}", summary(&outcome.report));
    }
    if outcome.ok {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

/// Parses arguments and runs; usage errors exit with status 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invert::is_two_sided_inverse;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("elemops").chain(args.iter().copied())).unwrap()
    }

    const IDENTITY: &str = r#"{"n": 2, "terms": [{"A": [["1","0"],["0","1"]], "B": [["1","0"],["0","1"]]}]}"#;

    #[test]
    fn length_of_identity() {
        let out = execute(&cli(&["length"]), IDENTITY).unwrap();
        assert_eq!(out.report["length"], json!(1));
        assert!(out.ok);
    }

    #[test]
    fn annihilate_invertible() {
        let out = execute(&cli(&["annihilate"]), IDENTITY).unwrap();
        assert_eq!(out.report["status"], json!("none"));
        assert!(out.ok);
    }

    #[test]
    fn unknown_command_rejected() {
        assert!(Cli::try_parse_from(["elemops", "frobnicate"]).is_err());
        assert_eq!(main_with_args(["elemops", "frobnicate"]), EXIT_INPUT);
    }

    #[test]
    fn malformed_input_maps_to_two() {
        let err = execute(&cli(&["length"]), "{").unwrap_err();
        assert_eq!(exit_for(&err), EXIT_INPUT);
    }

    #[test]
    fn deterministic_reports() {
        let c = cli(&["selftest", "--n", "2", "--trials", "2", "--seed", "3"]);
        let a = execute(&c, "").unwrap().report;
        let b = execute(&c, "").unwrap().report;
        assert_eq!(a, b);
    }

    #[test]
    fn check_two_sided_inverse_of_invert_output() {
        let op = elemop(IDENTITY).unwrap();
        let out = execute(&cli(&["invert"]), IDENTITY).unwrap();
        let inv: ElemOpJson = serde_json::from_value(out.report["inverse"].clone()).unwrap();
        assert!(is_two_sided_inverse(&op, &ElemOp::try_from(&inv).unwrap()));
    }
}
