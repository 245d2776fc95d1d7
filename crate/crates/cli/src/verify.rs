use std::fmt::Write as _;

use duclab_core::clifford::spacetime;
use duclab_core::poly::verify_lemma3;
use duclab_core::report::CheckLine;
use duclab_core::schedule::LambdaSchedule;
use duclab_core::sim::matchgate_class_check;
use duclab_core::sim::mbqc::{adaptive_run, dual_unitarity_check, prepare_resource, AngleProgram, Boundary};
use duclab_core::sim::spt::{half_chain_entropy, injectivity_check, projective_rep_check, symmetry_check};
use duclab_core::universality::{
    b_follows_a, block_repetition_check, check_lemma1, check_recurrence, lemma2_direct,
    lemma2_instance, verify_theorem1, DIRECT_CLOSURE_QUBITS,
};
use duclab_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{Source, Suite, VerifyArgs};
use crate::{emit, EXIT_FAIL};

fn ks(a: &VerifyArgs, default: &[usize]) -> Vec<usize> {
    a.k.as_ref().map(|l| l.0.clone()).unwrap_or_else(|| default.to_vec())
}

/// `(N, k)` pairs: the explicit pair when `--N` is given, else the suite defaults.
fn sizes(a: &VerifyArgs, default: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    match (a.n, &a.k) {
        (Some(n), Some(k)) => Ok(k.0.iter().map(|&k| (n, k)).collect()),
        (Some(_), None) => Err(Error::Domain("--N needs --k".into())),
        (None, Some(k)) => Ok(default.iter().copied().filter(|(_, dk)| k.0.contains(dk)).collect()),
        (None, None) => Ok(default.to_vec()),
    }
}

fn ones(k: usize) -> Result<LambdaSchedule> {
    LambdaSchedule::all_ones(k)
}

fn lemma2_lines(k: usize) -> Result<Vec<CheckLine>> {
    let m = (k + 1) / 4;
    if 3 * m <= DIRECT_CLOSURE_QUBITS {
        return Ok(vec![CheckLine::new("lemma2-direct", k, lemma2_direct(k)?).param("qubits", 3 * m)]);
    }
    // too large to close directly: the inductive chain from the k = 7 base
    let report = verify_theorem1(k)?;
    Ok(report.lines)
}

fn recurrence_lines(k: usize) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let mut r = 0u32;
    while (1usize << r) < k {
        lines.push(CheckLine::new("recurrence", k, check_recurrence(k, r)?).param("r", r));
        r += 1;
    }
    let d = spacetime(k, &ones(k)?, duclab_core::clifford::DEFAULT_PERIOD_CAP)?;
    lines.push(CheckLine::new("b-follows-a", k, b_follows_a(&d)));
    if k >= 7 && (k + 1).is_multiple_of(4) {
        lines.push(CheckLine::new("block-repetition", k, block_repetition_check(k)?));
    }
    Ok(lines)
}

fn byproduct_line(n: usize, k: usize, schedule: &LambdaSchedule, trials: usize, seed: u64) -> Result<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_fid: f64 = 1.0;
    let mut max_perr: f64 = 0.0;
    let mut failures = 0;
    for t in 0..trials {
        let program = AngleProgram::random(n, &mut rng);
        let run = adaptive_run(n, k, schedule, &program, seed.wrapping_add(t as u64))?;
        min_fid = min_fid.min(run.fidelity);
        max_perr = max_perr.max((run.record.probability() - run.virtual_probability).abs());
        if !run.passed() {
            failures += 1;
        }
    }
    Ok(CheckLine::new("byproduct", k, failures == 0)
        .param("N", n)
        .param("trials", trials)
        .param("min_fidelity", format!("{min_fid:.12}"))
        .param("max_prob_err", format!("{max_perr:.3e}"))
        .param("failures", failures))
}

pub fn run_suite(a: &VerifyArgs, source: &Source) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    match a.suite {
        Suite::Lemma1 => {
            for k in ks(a, &[7, 11]) {
                lines.push(CheckLine::new("lemma1", k, check_lemma1(&lemma2_instance(k)?)?));
            }
        }
        Suite::Lemma2 => {
            for k in ks(a, &[3, 7, 11, 15]) {
                lines.extend(lemma2_lines(k)?);
            }
        }
        Suite::Lemma3 => {
            let rs = a.r.as_ref().map(|l| l.0.clone()).unwrap_or_else(|| vec![2, 3, 4, 5]);
            for r in rs {
                lines.push(verify_lemma3(r as u32, a.caps.period_cap)?.line());
            }
        }
        Suite::Theorem1 => {
            for k in ks(a, &[3, 7, 11, 15, 19, 23, 27, 31]) {
                let rep = verify_theorem1(k)?;
                lines.extend(rep.lines.iter().cloned());
                lines.push(CheckLine::new("theorem1", k, rep.verified).param("m", rep.m).param("qubits", 3 * rep.m));
            }
        }
        Suite::Recurrence => {
            for k in ks(a, &[7, 11, 15, 19, 23, 27, 31]) {
                lines.extend(recurrence_lines(k)?);
            }
        }
        Suite::DualUnitarity => {
            let trials = a.trials.unwrap_or(100);
            for (n, k) in sizes(a, &[(4, 4), (6, 2), (8, 3), (9, 3)])? {
                lines.push(dual_unitarity_check(n, k, &source.schedule(k)?, trials, a.seed)?.line());
            }
        }
        Suite::Byproduct => {
            let trials = a.trials.unwrap_or(200);
            for (n, k) in sizes(a, &[(9, 3)])? {
                lines.push(byproduct_line(n, k, &source.schedule(k)?, trials, a.seed)?);
            }
        }
        Suite::Symmetry => {
            for (n, k) in sizes(a, &[(6, 1), (8, 2)])? {
                let r = symmetry_check(n, k, &source.schedule(k)?)?;
                lines.push(
                    CheckLine::new("symmetry", k, r.passed())
                        .param("N", n)
                        .param("elements", r.elements_checked)
                        .param("faithful", r.faithful),
                );
                let trials = a.trials.unwrap_or(1000);
                lines.push(CheckLine::new("projective-rep", k, projective_rep_check(k, trials, a.seed)?));
            }
        }
        Suite::Injectivity => {
            for k in ks(a, &[1, 2, 3]) {
                let r = injectivity_check(k, &source.schedule(k)?)?;
                lines.push(
                    CheckLine::new("injectivity", k, r.passed())
                        .param("L", r.length)
                        .param("span", r.span)
                        .param("expected", 1usize << (2 * k))
                        .param("rank", r.multiplicative_rank),
                );
            }
        }
        Suite::Entropy => {
            for (n, k) in sizes(a, &[(8, 1), (10, 2), (12, 3)])? {
                let state = prepare_resource(n, k, &source.schedule(k)?, Boundary::Open)?;
                let s = half_chain_entropy(&state, n / 2)?;
                lines.push(
                    CheckLine::new("entropy", k, (s - k as f64).abs() < 1e-8)
                        .param("N", n)
                        .param("bits", format!("{s:.12}")),
                );
            }
        }
        Suite::Matchgate => {
            for k in ks(a, &[2, 3, 4, 5, 6, 7]) {
                lines.push(matchgate_class_check(k)?.line());
            }
        }
    }
    Ok(lines)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<u8> {
    let source = a.source.resolve()?;
    let lines = run_suite(a, &source)?;
    let mut text = String::new();
    if a.source.explain {
        writeln!(text, "# {}", source.explain()).unwrap();
    }
    for l in &lines {
        writeln!(text, "{l}").unwrap();
    }
    let failed = lines.iter().filter(|l| !l.pass).count();
    writeln!(
        text,
        "SUMMARY checks={} failed={} {}",
        lines.len(),
        failed,
        if failed == 0 { "PASS" } else { "FAIL" }
    )
    .unwrap();
    emit(a.out.as_deref(), &text)?;
    Ok(if failed == 0 { 0 } else { EXIT_FAIL })
}
