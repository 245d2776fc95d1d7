//! Acceptance suite: one line per criterion, `ACCEPT <n> <name> PASS|FAIL <detail>`.
//!
//! Runs without the libtest harness so the lines are always printed. The process fails
//! if any criterion fails, except for deviations listed in `KNOWN_DEVIATIONS`, which
//! must reproduce exactly as recorded (anything else failing in that criterion is still
//! fatal).

use std::process::Command;
use std::time::Instant;

use duclab_core::clifford::build_map;
use duclab_core::lie::{close, closure_dim, default_member_cap, AlgebraFamily, PauliSet};
use duclab_core::pauli::{Letter, PauliWord};
use duclab_core::poly::verify_lemma3;
use duclab_core::schedule::{LambdaSchedule, Preset};
use duclab_core::sim::matchgate_class_check;
use duclab_core::sim::mbqc::{
    adaptive_run, apply_layer, dual_unitarity_check, prepare_resource, stabilizer_check,
    stabilizers, AngleProgram, Boundary,
};
use duclab_core::sim::spt::{half_chain_entropy, projective_rep_check, symmetry_check};
use duclab_core::sim::StateVector;
use duclab_core::universality::{
    block_repetition_check, check_recurrence, lemma2_direct, verify_theorem1,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(criterion, detail)` pairs that fail as recorded in the decisions ledger.
/// The reference table for preset f lists p_7 = 16; the map period is 32 (the dimension
/// 16383 matches).
const KNOWN_DEVIATIONS: &[(u32, &str)] = &[(2, "f:k=7:p=32!=16")];

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    /// Failing sub-checks, as short tokens.
    failures: Vec<String>,
    detail: String,
    seconds: f64,
}

fn criterion(id: u32, name: &'static str, f: impl FnOnce() -> (Vec<String>, String)) -> Outcome {
    let t = Instant::now();
    let (failures, detail) = f();
    let o = Outcome {
        id,
        name,
        pass: failures.is_empty(),
        failures,
        detail,
        seconds: t.elapsed().as_secs_f64(),
    };
    let status = if o.pass { "PASS" } else { "FAIL" };
    let extra = if o.failures.is_empty() {
        String::new()
    } else {
        format!(" failing=[{}]", o.failures.join(","))
    };
    println!("ACCEPT {} {} {} {}{} ({:.1}s)", o.id, o.name, status, o.detail, extra, o.seconds);
    o
}

fn family(label: &str) -> AlgebraFamily {
    match label {
        "su" => AlgebraFamily::SuPow,
        "sp" => AlgebraFamily::SpPow,
        "so" => AlgebraFamily::SoPow,
        "spl" => AlgebraFamily::SpLinear,
        "sol" => AlgebraFamily::SoLinear,
        other => panic!("unknown family {other}"),
    }
}

// ---------------------------------------------------------------- 1

fn all_ones_table() -> (Vec<String>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_duclab"))
        .args(["table", "--preset", "all-ones", "--k-range", "1..7"])
        .output()
        .expect("run duclab");
    let text = String::from_utf8_lossy(&out.stdout);
    let want_p = [3u64, 4, 12, 10, 24, 18, 24];
    let want_dim = [3usize, 10, 63, 120, 496, 4095, 8256];
    let want_label = ["su", "sp", "su", "so", "so", "su", "sp"];
    let mut failures = Vec::new();
    let mut lines = text.lines();
    if lines.next() != Some("k\tp_k\tdim\tlabel") {
        failures.push("header".into());
    }
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    if rows.len() != 7 || !out.status.success() {
        failures.push(format!("rows={} status={}", rows.len(), out.status));
        return (failures, String::new());
    }
    for (i, row) in rows.iter().enumerate() {
        let k = i + 1;
        let fam = family(want_label[i]).name();
        let ok = row[0] == k.to_string()
            && row[1] == want_p[i].to_string()
            && row[2] == want_dim[i].to_string()
            && row[3].split('|').any(|l| l == fam);
        if !ok {
            failures.push(format!("k={k}:{}", row.join("/")));
        }
    }
    let ps: Vec<&str> = rows.iter().map(|r| r[1]).collect();
    let dims: Vec<&str> = rows.iter().map(|r| r[2]).collect();
    (failures, format!("p=({}) dim=({})", ps.join(","), dims.join(",")))
}

// ---------------------------------------------------------------- 2

struct Table {
    preset: Preset,
    p: [u64; 6],
    dim: [usize; 6],
    label: [&'static str; 6],
}

fn reference_tables() -> Vec<Table> {
    use Preset::*;
    vec![
        Table { preset: A, p: [4, 12, 10, 24, 18, 24], dim: [10, 63, 120, 496, 4095, 8256], label: ["sp", "su", "so", "so", "su", "sp"] },
        Table { preset: B, p: [6, 8, 10, 12, 14, 16], dim: [15, 28, 45, 66, 91, 120], label: ["sol"; 6] },
        Table { preset: C, p: [5, 12, 17, 10, 63, 24], dim: [10, 36, 255, 496, 2016, 8128], label: ["sp", "sp", "su", "so", "so", "so"] },
        Table { preset: D, p: [5, 12, 17, 30, 63, 48], dim: [10, 36, 136, 528, 4095, 8128], label: ["sp", "sp", "sp", "sp", "su", "so"] },
        Table { preset: E, p: [8, 16, 12, 16, 36, 32], dim: [15, 63, 255, 1023, 4095, 16383], label: ["su"; 6] },
        Table { preset: F, p: [16, 8, 40, 32, 56, 16], dim: [15, 28, 255, 1023, 4095, 16383], label: ["su", "so", "su", "su", "su", "su"] },
        Table { preset: G, p: [52, 24, 150, 116, 274, 32], dim: [15, 28, 255, 1023, 4095, 120], label: ["su", "so", "su", "su", "su", "sol"] },
        Table { preset: H, p: [12, 8, 20, 12, 28, 16], dim: [15, 21, 255, 528, 4095, 8128], label: ["su", "spl", "su", "sp", "su", "so"] },
        Table { preset: I, p: [5, 12, 17, 30, 93, 180], dim: [15, 36, 255, 496, 4095, 8256], label: ["su", "sp", "su", "so", "su", "sp"] },
        Table { preset: J, p: [5, 7, 9, 11, 13, 15], dim: [10, 21, 36, 55, 78, 105], label: ["spl"; 6] },
    ]
}

fn family_tables() -> (Vec<String>, String) {
    let tables = reference_tables();
    let jobs: Vec<(usize, usize)> = (0..tables.len()).flat_map(|t| (0..6).map(move |c| (t, c))).collect();
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(t, c)| {
                let preset = tables[t].preset;
                scope.spawn(move || {
                    let k = c + 2;
                    let s = preset.schedule(k).unwrap();
                    closure_dim(k, &s, 1_000_000, default_member_cap(k)).unwrap()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failures = Vec::new();
    let mut matched = 0;
    for (&(t, c), got) in jobs.iter().zip(&results) {
        let tab = &tables[t];
        let k = c + 2;
        let name = tab.preset.name();
        let mut cell_ok = true;
        if got.period != tab.p[c] {
            failures.push(format!("{name}:k={k}:p={}!={}", got.period, tab.p[c]));
            cell_ok = false;
        }
        if got.dimension != tab.dim[c] {
            failures.push(format!("{name}:k={k}:dim={}!={}", got.dimension, tab.dim[c]));
            cell_ok = false;
        }
        if !got.label.matches(family(tab.label[c])) {
            failures.push(format!("{name}:k={k}:label={}", got.label));
            cell_ok = false;
        }
        if cell_ok {
            matched += 1;
        }
    }
    (failures, format!("tables=a..j k=2..7 columns_matched={matched}/60"))
}

// ---------------------------------------------------------------- 3

fn lemma3() -> (Vec<String>, String) {
    let mut failures = Vec::new();
    let mut periods = Vec::new();
    for r in 2..=5 {
        let rep = verify_lemma3(r, 1_000_000).unwrap();
        periods.push(rep.period.to_string());
        if !rep.passed() {
            failures.push(format!("r={r}"));
        }
    }
    (failures, format!("r=2..5 periods=({})", periods.join(",")))
}

// ---------------------------------------------------------------- 4

fn dual_unitarity() -> (Vec<String>, String) {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (i, (n, k)) in [(4, 4), (6, 2), (8, 3), (9, 3)].into_iter().enumerate() {
        let s = LambdaSchedule::all_ones(k).unwrap();
        let rep = dual_unitarity_check(n, k, &s, 100, 100 + i as u64).unwrap();
        worst = worst.max(rep.max_error);
        if !rep.passed() {
            failures.push(format!("N={n},k={k}"));
        }
    }
    (failures, format!("pairs=4 trials=100 max_err={worst:.2e}"))
}

// ---------------------------------------------------------------- 5

fn byproduct() -> (Vec<String>, String) {
    let (n, k) = (9, 3);
    let s = LambdaSchedule::all_ones(k).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    let mut min_fid: f64 = 1.0;
    let mut words = std::collections::BTreeSet::new();
    for seed in 0..200u64 {
        let program = AngleProgram::random(n, &mut rng);
        let run = adaptive_run(n, k, &s, &program, seed).unwrap();
        min_fid = min_fid.min(run.fidelity);
        words.insert(run.record.boundary_word.phaseless().to_string());
        if !run.passed() {
            failures.push(format!("seed={seed}"));
        }
    }
    (
        failures,
        format!("N=9 k=3 trajectories=200 min_fidelity={min_fid:.12} distinct_boundary_words={}", words.len()),
    )
}

// ---------------------------------------------------------------- 6

fn stabilizer_criterion() -> (Vec<String>, String) {
    let mut failures = Vec::new();
    let ones1 = LambdaSchedule::all_ones(1).unwrap();
    let mut signs = std::collections::BTreeSet::new();
    for n in 5..=8 {
        let state = prepare_resource(n, 1, &ones1, Boundary::Open).unwrap();
        let st = stabilizers(n, 1, &ones1, Boundary::Open).unwrap();
        for (i, exact) in st.iter().enumerate().take(n - 1).skip(1) {
            let mut want = PauliWord::identity(n);
            want.set_letter(i - 1, Letter::X);
            want.set_letter(i, Letter::Y);
            want.set_letter(i + 1, Letter::X);
            let e = state.expectation(exact).unwrap();
            signs.insert(if exact.phase() == 0 { "+" } else { "-" });
            if exact.key() != want.key() || (e - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
                failures.push(format!("N={n}:i={}", i + 1));
            }
        }
    }
    let mut generic = 0;
    for k in 1..=3 {
        let s = LambdaSchedule::all_ones(k).unwrap();
        for n in 3..=12 {
            for b in [Boundary::Open, Boundary::Periodic] {
                let state = prepare_resource(n, k, &s, b).unwrap();
                if !stabilizer_check(&state, k, &s, b).unwrap() {
                    failures.push(format!("N={n}:k={k}:{b}"));
                }
                generic += 1;
            }
        }
    }
    let signs: Vec<&str> = signs.into_iter().collect();
    (
        failures,
        format!("interior=X_(i-1)Y_iX_(i+1) exact_sign={} generic_states={generic}", signs.join("")),
    )
}

// ---------------------------------------------------------------- 7

fn symmetry() -> (Vec<String>, String) {
    let mut failures = Vec::new();
    let ones1 = LambdaSchedule::all_ones(1).unwrap();
    let state = prepare_resource(6, 1, &ones1, Boundary::Periodic).unwrap();
    let base = "ZZIZZI";
    for shift in 0..6 {
        let rotated: String = base.chars().cycle().skip(shift).take(6).collect();
        let p: PauliWord = rotated.parse().unwrap();
        let e = state.expectation(&p).unwrap();
        if (e - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
            failures.push(format!("k=1:{rotated}"));
        }
    }
    let rep = symmetry_check(8, 2, &LambdaSchedule::all_ones(2).unwrap()).unwrap();
    if !(rep.passed() && rep.elements_checked == 16 && rep.faithful) {
        failures.push(format!("k=2:{rep:?}"));
    }
    if !projective_rep_check(2, 0, 0).unwrap() {
        failures.push("cocycle k=2".into());
    }
    (failures, format!("k=1 N=6 ZZIZZI+shifts; k=2 N=8 elements={} faithful={}", rep.elements_checked, rep.faithful))
}

// ---------------------------------------------------------------- 8

fn entropy() -> (Vec<String>, String) {
    let mut failures = Vec::new();
    let mut values = Vec::new();
    for (n, k) in [(8, 1), (10, 2), (12, 3)] {
        let state = prepare_resource(n, k, &LambdaSchedule::all_ones(k).unwrap(), Boundary::Open).unwrap();
        let bits = half_chain_entropy(&state, n / 2).unwrap();
        values.push(format!("{bits:.10}"));
        if (bits - k as f64).abs() > 1e-8 {
            failures.push(format!("N={n}:k={k}"));
        }
    }
    (failures, format!("S/log2=({})", values.join(",")))
}

// ---------------------------------------------------------------- 9

fn matchgate() -> (Vec<String>, String) {
    let mut failures = Vec::new();
    let mut dims = Vec::new();
    for k in 2..=7 {
        let rep = matchgate_class_check(k).unwrap();
        dims.push(rep.dimension.to_string());
        if !rep.passed() {
            failures.push(format!("k={k}"));
        }
    }
    // the CLI front end reports the same
    let out = Command::new(env!("CARGO_BIN_EXE_duclab"))
        .args(["verify", "matchgate", "--k", "2..7"])
        .output()
        .expect("run duclab");
    if !out.status.success() {
        failures.push("cli".into());
    }
    (failures, format!("dims=({})", dims.join(",")))
}

// ---------------------------------------------------------------- 10

fn theorem1() -> (Vec<String>, String) {
    let mut failures = Vec::new();
    for k in [3, 7] {
        if !lemma2_direct(k).unwrap() {
            failures.push(format!("direct:k={k}"));
        }
    }
    for k in [3, 7, 11, 15] {
        let rep = verify_theorem1(k).unwrap();
        if !rep.verified {
            failures.push(format!("lemma2:k={k}"));
        }
    }
    let mut structure = 0;
    for k in (7..=31).step_by(4) {
        if !block_repetition_check(k).unwrap() {
            failures.push(format!("block:k={k}"));
        }
        structure += 1;
        let mut r = 0;
        while (1usize << r) < k {
            if !check_recurrence(k, r).unwrap() {
                failures.push(format!("rec:k={k}:r={r}"));
            }
            structure += 1;
            r += 1;
        }
    }
    (failures, format!("lemma2 k=3,7,11,15; structure_checks={structure} up to k=31"))
}

// ---------------------------------------------------------------- 11

type Dense = Vec<Complex64>;

/// Columns of the operator `f` applied to each basis state, row-major `d × d`.
fn dense_of(n: usize, f: impl Fn(&mut StateVector)) -> Dense {
    let d = 1usize << n;
    let mut m = vec![Complex64::new(0.0, 0.0); d * d];
    for col in 0..d {
        let mut amps = vec![Complex64::new(0.0, 0.0); d];
        amps[col] = Complex64::new(1.0, 0.0);
        let mut v = StateVector::from_amplitudes(n, amps).unwrap();
        f(&mut v);
        for (row, a) in v.amplitudes().iter().enumerate() {
            m[row * d + col] = *a;
        }
    }
    m
}

fn mat_mul(a: &Dense, b: &Dense, d: usize) -> Dense {
    let mut c = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..d {
                c[i * d + j] += x * b[k * d + j];
            }
        }
    }
    c
}

fn adjoint(a: &Dense, d: usize) -> Dense {
    let mut c = a.clone();
    for i in 0..d {
        for j in 0..d {
            c[i * d + j] = a[j * d + i].conj();
        }
    }
    c
}

fn pauli_matrix(p: &PauliWord) -> Dense {
    dense_of(p.n_qubits(), |v| v.apply_pauli(p).unwrap())
}

fn random_word(n: usize, rng: &mut impl Rng) -> PauliWord {
    let letters: Vec<Letter> = (0..n)
        .map(|_| [Letter::I, Letter::X, Letter::Y, Letter::Z][rng.random_range(0..4)])
        .collect();
    PauliWord::from_letters(&letters).with_phase(rng.random_range(0..4))
}

/// Complex span dimension of `gens` closed under commutators.
fn dense_closure(gens: Vec<Dense>, d: usize) -> usize {
    let mut rows: Vec<(usize, Dense)> = Vec::new();
    let mut basis: Vec<Dense> = Vec::new();
    let reduce = |mut v: Dense, rows: &[(usize, Dense)]| {
        for (p, r) in rows {
            let f = v[*p] / r[*p];
            for (x, y) in v.iter_mut().zip(r) {
                *x -= f * y;
            }
        }
        v
    };
    let add = |m: Dense, rows: &mut Vec<(usize, Dense)>, basis: &mut Vec<Dense>| {
        let v = reduce(m.clone(), rows);
        if let Some(p) = v.iter().position(|z| z.norm() > 1e-9) {
            for (_, r) in rows.iter_mut() {
                let f = r[p] / v[p];
                for (x, y) in r.iter_mut().zip(&v) {
                    *x -= f * y;
                }
            }
            rows.push((p, v));
            basis.push(m);
        }
    };
    for g in gens {
        add(g, &mut rows, &mut basis);
    }
    let mut i = 0;
    while i < basis.len() {
        for j in 0..i {
            let ab = mat_mul(&basis[i], &basis[j], d);
            let ba = mat_mul(&basis[j], &basis[i], d);
            let comm: Dense = ab.iter().zip(&ba).map(|(x, y)| x - y).collect();
            add(comm, &mut rows, &mut basis);
        }
        i += 1;
    }
    basis.len()
}

fn oracles() -> (Vec<String>, String) {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut conjugations = 0;
    for preset in Preset::ALL {
        for k in 1..=5 {
            let s = preset.schedule(k).unwrap();
            let d = 1usize << k;
            let layers: Vec<_> = (1..=s.period_t())
                .map(|l| {
                    let u = dense_of(k, |v| apply_layer(v, s.layer(l), Boundary::Open).unwrap());
                    (build_map(k, &s, l).unwrap(), adjoint(&u, d), u)
                })
                .collect();
            for t in 0..200 {
                let (map, ud, u) = &layers[t % layers.len()];
                let p = random_word(k, &mut rng);
                let want = mat_mul(&mat_mul(ud, &pauli_matrix(&p), d), u, d);
                let got = pauli_matrix(&map.apply(&p).unwrap());
                let err = want.iter().zip(&got).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                if err > 1e-10 {
                    failures.push(format!("{}:k={k}:{p}", preset.name()));
                }
                conjugations += 1;
            }
        }
    }
    let mut closures = 0;
    for trial in 0..50 {
        let n = 1 + trial % 3;
        let count = rng.random_range(1..=4);
        let words: Vec<PauliWord> = (0..count)
            .map(|_| random_word(n, &mut rng).with_phase(0))
            .filter(|w| !w.is_identity())
            .collect();
        if words.is_empty() {
            continue;
        }
        let alg = close(&PauliSet::from_words(n, &words).unwrap(), 1 << 12).unwrap();
        let dense = dense_closure(words.iter().map(pauli_matrix).collect(), 1 << n);
        if alg.len() != dense {
            failures.push(format!("closure:n={n}:{}!={dense}", alg.len()));
        }
        closures += 1;
    }
    (failures, format!("conjugations={conjugations} closures={closures}"))
}

fn main() {
    // `cargo test -- --list` and filters are not supported; always run everything
    let outcomes = vec![
        criterion(1, "all-ones-table", all_ones_table),
        criterion(2, "family-tables", family_tables),
        criterion(3, "lemma3", lemma3),
        criterion(4, "dual-unitarity", dual_unitarity),
        criterion(5, "byproduct", byproduct),
        criterion(6, "stabilizers", stabilizer_criterion),
        criterion(7, "symmetry", symmetry),
        criterion(8, "entropy", entropy),
        criterion(9, "matchgate", matchgate),
        criterion(10, "theorem1", theorem1),
        criterion(11, "oracles", oracles),
    ];
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("ACCEPT summary passed={passed}/{}", outcomes.len());

    let mut unexpected = Vec::new();
    for o in &outcomes {
        for f in &o.failures {
            if !KNOWN_DEVIATIONS.contains(&(o.id, f.as_str())) {
                unexpected.push(format!("criterion {} {}: {f}", o.id, o.name));
            }
        }
    }
    for &(id, token) in KNOWN_DEVIATIONS {
        let seen = outcomes.iter().any(|o| o.id == id && o.failures.iter().any(|f| f == token));
        println!("ACCEPT known-deviation criterion={id} {token} reproduced={seen}");
        if !seen {
            unexpected.push(format!("known deviation {token} no longer reproduces; update the list"));
        }
    }
    if !unexpected.is_empty() {
        for u in &unexpected {
            eprintln!("unexpected: {u}");
        }
        std::process::exit(1);
    }
}
