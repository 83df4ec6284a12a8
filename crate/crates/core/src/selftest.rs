//! Randomised invariant suites behind `elemops selftest`.

use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::annihil::{chain_annihilator, verify_zero};
use crate::elemop::{dim_bound_check, ElemOp};
use crate::exactnum::minimal_polynomial;
use crate::invert::{derivation_aux, mn_dichotomy, upsilon_inverse, Dichotomy};
use crate::pencil::PencilSpace;
use crate::random;
use crate::shiftspace::verify_relations;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub n: usize,
    pub trials: usize,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

type Trial = fn(&mut ChaCha8Rng, usize) -> Result<(), String>;

fn size(rng: &mut ChaCha8Rng, max_n: usize) -> usize {
    rng.gen_range(2..=max_n.max(2))
}

fn length_trial(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    let n = size(rng, max_n);
    let len = rng.gen_range(1..=3);
    let op = random::planted_length(rng, n, len);
    (op.length() == len)
        .then_some(())
        .ok_or_else(|| format!("n={n}: planted {len}, measured {}", op.length()))
}

fn zero_tensor_trial(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    let n = size(rng, max_n);
    let m = rng.gen_range(2..=5);
    let terms = random::zero_tensor(rng, n, m);
    dim_bound_check(&terms)
        .then_some(())
        .ok_or_else(|| format!("n={n}, {m} terms: dimension bound fails"))
}

fn compose_trial(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    let n = size(rng, max_n);
    let x = random::planted_length(rng, n, 2);
    let y = random::planted_length(rng, n, 1);
    let t = random::matrix(rng, n, n, 3);
    let xy = x.compose(&y).map_err(|e| e.to_string())?;
    let direct = x.apply(&y.apply(&t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if xy.apply(&t).map_err(|e| e.to_string())? != direct {
        return Err(format!("n={n}: composition disagrees with sequential application"));
    }
    let k = x.operator_matrix();
    let back = ElemOp::from_operator_matrix(&k, n).map_err(|e| e.to_string())?;
    back.same_operator(&x)
        .then_some(())
        .ok_or_else(|| format!("n={n}: operator matrix round trip changed the operator"))
}

fn aux_trial(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    let n = size(rng, max_n);
    let d = rng.gen_range(2..=n);
    let b = random::with_min_degree(rng, n, d);
    let a = random::matrix(rng, n, n, 3);
    let aux = derivation_aux(&a, &b).map_err(|e| e.to_string())?;
    let tau = ElemOp::derivation(&a, &b).map_err(|e| e.to_string())?;
    let m_b = minimal_polynomial(&b).map_err(|e| e.to_string())?;
    let target = ElemOp::left(&m_b.eval_matrix(&a)).map_err(|e| e.to_string())?;
    let ok = aux.compose(&tau).map(|c| c.same_operator(&target)).unwrap_or(false)
        && tau.compose(&aux).map(|c| c.same_operator(&target)).unwrap_or(false);
    ok.then_some(()).ok_or_else(|| format!("n={n}, deg {d}: auxiliary identity fails"))
}

fn upsilon_trial(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    let n = size(rng, max_n);
    loop {
        let (da, db) = (rng.gen_range(2..=n), rng.gen_range(2..=n));
        let a = random::with_min_degree(rng, n, da);
        let b = random::with_min_degree(rng, n, db);
        let r = upsilon_inverse(&a, &b).map_err(|e| e.to_string())?;
        if !r.invertible {
            continue;
        }
        return r.prediction_holds().then_some(()).ok_or_else(|| {
            format!("n={n}: predicted {:?}, certified {:?}", r.predicted_length, r.inverse_length)
        });
    }
}

fn dichotomy_trial(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    let n = rng.gen_range(2..=max_n.clamp(2, 3));
    let psi = if rng.gen_bool(0.5) {
        random::planted_singular(rng, n)
    } else {
        random::length_two(rng, n, 3)
    };
    let det_zero = num_traits::Zero::is_zero(&psi.operator_matrix().det().map_err(|e| e.to_string())?);
    match mn_dichotomy(&psi, rng.gen()).map_err(|e| e.to_string())? {
        Dichotomy::Annihilated(w) if det_zero && verify_zero(&w, &psi) => Ok(()),
        Dichotomy::AnnihilatedOverExtension(w) if det_zero && w.annihilates(&psi) => Ok(()),
        Dichotomy::SumOfInvertibles(_) if !det_zero => Ok(()),
        other => Err(format!("n={n}: unexpected outcome {other:?}")),
    }
}

fn chain_trial(rng: &mut ChaCha8Rng, max_n: usize) -> Result<(), String> {
    let n = size(rng, max_n);
    let k = rng.gen_range(2..=n);
    let psi = random::chain_target(rng, n, k);
    let sol = chain_annihilator(&psi, k)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("n={n}, k={k}: no chain found"))?;
    let phi = sol.assemble(n);
    (verify_zero(&phi, &psi) && !phi.is_zero())
        .then_some(())
        .ok_or_else(|| format!("n={n}, k={k}: witness does not annihilate"))
}

fn pencil_trial(rng: &mut ChaCha8Rng, _max_n: usize) -> Result<(), String> {
    let planted = random::planted_pencil(rng);
    let space = PencilSpace::new(planted.b1, planted.b2).map_err(|e| e.to_string())?;
    let form = space.canonical_form().map_err(|e| e.to_string())?;
    (form.block_sizes == planted.block_sizes && form.verify(&space))
        .then_some(())
        .ok_or_else(|| format!("planted {:?}, recovered {:?}", planted.block_sizes, form.block_sizes))
}

fn shift_trial(rng: &mut ChaCha8Rng, _max_n: usize) -> Result<(), String> {
    let n = rng.gen_range(1..=16);
    verify_relations(n)
        .all_hold()
        .then_some(())
        .ok_or_else(|| format!("relations fail at N={n}"))
}

const SUITES: [(&str, Trial); 9] = [
    ("chain_annihilator", chain_trial),
    ("compose_apply", compose_trial),
    ("derivation_aux", aux_trial),
    ("dichotomy", dichotomy_trial),
    ("length", length_trial),
    ("pencil_roundtrip", pencil_trial),
    ("shift_relations", shift_trial),
    ("upsilon_inverse", upsilon_trial),
    ("zero_tensor", zero_tensor_trial),
];

fn run_suite(name: &'static str, trial: Trial, seed: u64, index: u64, n: usize, trials: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
    let mut failures = 0;
    let mut first_failure = None;
    for _ in 0..trials {
        if let Err(msg) = trial(&mut rng, n) {
            failures += 1;
            first_failure.get_or_insert(msg);
        }
    }
    SuiteResult {
        name,
        trials,
        failures,
        first_failure,
    }
}

/// Runs every suite on its own thread; suites are seeded independently so
/// the report does not depend on scheduling.
pub fn run(seed: u64, n: usize, trials: usize) -> SelftestReport {
    let mut suites: Vec<SuiteResult> = thread::scope(|scope| {
        let handles: Vec<_> = SUITES
            .iter()
            .enumerate()
            .map(|(i, &(name, trial))| scope.spawn(move || run_suite(name, trial, seed, i as u64, n, trials)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    suites.sort_by(|a, b| a.name.cmp(b.name));
    SelftestReport {
        seed,
        n,
        trials,
        passed: suites.iter().all(|s| s.failures == 0),
        suites,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = run(7, 3, 4);
        assert!(a.passed, "{:?}", a.suites);
        let b = run(7, 3, 4);
        assert_eq!(a, b);
        let names: Vec<_> = a.suites.iter().map(|s| s.name).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        assert_eq!(names, sorted);
    }
}
