//! Resource states, the sideways (virtual) reading of the circuit, and the adaptive
//! measurement protocol with byproduct tracking.
//!
//! Physical site `i` is measured in the basis `e^{-iθ_i X}|s_i⟩`. Read sideways, the same
//! measurement acts on a `k`-qubit virtual register as `U_i = T^{(i)} e^{iθ_i Z_1} Z_1^{s_i}`,
//! starting from `|L⟩ = |+⟩^{⊗k}` and ending on `⟨R| = ⟨0…0|`; the two pictures agree up
//! to the constant `2^{(k-N)/2}`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{build_map, layer_map, SymplecticMap};
use crate::error::{check_dims, Error, Result};
use crate::pauli::{Letter, PauliWord};
use crate::report::CheckLine;
use crate::schedule::LambdaSchedule;

use super::state::{check_size, exp_x, exp_z, hadamard, phase_s, StateVector};

/// Largest virtual register handled densely.
pub const MAX_VIRTUAL_QUBITS: usize = 10;

/// Outcomes whose conditional probability falls below this are treated as impossible.
pub const ZERO_PROBABILITY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    Open,
    /// Adds a `CZ` between sites `N` and `1` in every layer.
    Periodic,
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Boundary::Open),
            "periodic" => Ok(Boundary::Periodic),
            other => Err(Error::Parse(format!("boundary must be open or periodic, got {other:?}"))),
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        })
    }
}

fn check_virtual(k: usize) -> Result<()> {
    if k == 0 || k > MAX_VIRTUAL_QUBITS {
        Err(Error::SizeGuard(format!(
            "virtual register needs 1 <= k <= {MAX_VIRTUAL_QUBITS}, got {k}"
        )))
    } else {
        Ok(())
    }
}

fn check_boundary(n: usize, boundary: Boundary) -> Result<()> {
    if boundary == Boundary::Periodic && n < 3 {
        Err(Error::Domain("periodic chains need at least 3 sites".into()))
    } else {
        Ok(())
    }
}

/// One layer `(∏ H_i S_i^{λ_i})(∏ CZ_{i,i+1})` applied to a dense state.
pub fn apply_layer(state: &mut StateVector, with_s: &[bool], boundary: Boundary) -> Result<()> {
    let n = state.n_qubits();
    check_dims(n, with_s.len())?;
    for i in 0..n.saturating_sub(1) {
        state.apply_cz(i, i + 1);
    }
    if boundary == Boundary::Periodic {
        check_boundary(n, boundary)?;
        state.apply_cz(n - 1, 0);
    }
    let (h, s) = (hadamard(), phase_s());
    for (q, &with) in with_s.iter().enumerate() {
        if with {
            state.apply_1q(q, &s);
        }
        state.apply_1q(q, &h);
    }
    Ok(())
}

/// `λ(i, t)` for sites `1..=n` at circuit step `t`.
fn physical_row(n: usize, schedule: &LambdaSchedule, t: usize) -> Vec<bool> {
    (1..=n).map(|i| schedule.physical(i, t)).collect()
}

/// Heisenberg map of physical layer `t` on `n` sites.
pub fn physical_layer_map(
    n: usize,
    schedule: &LambdaSchedule,
    t: usize,
    boundary: Boundary,
) -> Result<SymplecticMap> {
    check_boundary(n, boundary)?;
    let open = layer_map(n, &physical_row(n, schedule, t))?;
    match boundary {
        Boundary::Open => Ok(open),
        // the extra bond commutes with the chain, so it conjugates last
        Boundary::Periodic => SymplecticMap::cz(n, n - 1, 0).compose(&open),
    }
}

/// The depth-`k` resource state on `n` sites; `k = 0` gives `|+⟩^{⊗n}`.
pub fn prepare_resource(
    n: usize,
    k: usize,
    schedule: &LambdaSchedule,
    boundary: Boundary,
) -> Result<StateVector> {
    check_size(n)?;
    if n == 0 {
        return Err(Error::Domain("need at least one site".into()));
    }
    check_boundary(n, boundary)?;
    let mut state = StateVector::plus(n)?;
    if k == 0 {
        return Ok(state);
    }
    check_dims(k, schedule.k())?;
    for t in 1..=k {
        apply_layer(&mut state, &physical_row(n, schedule, t), boundary)?;
    }
    Ok(state)
}

/// `S_i = W X_i W†` for the depth-`k` circuit `W`, with exact signs.
pub fn stabilizers(
    n: usize,
    k: usize,
    schedule: &LambdaSchedule,
    boundary: Boundary,
) -> Result<Vec<PauliWord>> {
    if k > 0 {
        check_dims(k, schedule.k())?;
    }
    let forward = (1..=k)
        .map(|t| physical_layer_map(n, schedule, t, boundary).map(|m| m.inverse()))
        .collect::<Result<Vec<_>>>()?;
    (0..n)
        .map(|i| {
            let mut p = PauliWord::single(n, i, Letter::X);
            for m in &forward {
                p = m.apply(&p)?;
            }
            Ok(p)
        })
        .collect()
}

/// Every stabilizer has expectation `+1` within `1e-10`.
pub fn stabilizer_check(
    state: &StateVector,
    k: usize,
    schedule: &LambdaSchedule,
    boundary: Boundary,
) -> Result<bool> {
    let n = state.n_qubits();
    for s in stabilizers(n, k, schedule, boundary)? {
        let e = state.expectation(&s)?;
        if (e - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Measurement angles `θ_i`, one per physical site.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleProgram {
    pub angles: Vec<f64>,
}

impl AngleProgram {
    pub fn new(angles: Vec<f64>) -> Self {
        AngleProgram { angles }
    }

    pub fn zeros(n: usize) -> Self {
        AngleProgram {
            angles: vec![0.0; n],
        }
    }

    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        AngleProgram {
            angles: (0..n).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

fn check_program(n: usize, program: &AngleProgram, outcomes: Option<&[u8]>) -> Result<()> {
    check_dims(n, program.len())?;
    if let Some(o) = outcomes {
        check_dims(n, o.len())?;
        if o.iter().any(|&s| s > 1) {
            return Err(Error::Domain("outcomes must be 0 or 1".into()));
        }
    }
    Ok(())
}

/// One virtual step `T^{(site)} e^{iθZ_1} Z_1^s`.
pub fn virtual_step(
    v: &mut StateVector,
    schedule: &LambdaSchedule,
    site: usize,
    theta: f64,
    s: u8,
) -> Result<()> {
    if s == 1 {
        v.apply_pauli(&PauliWord::single(v.n_qubits(), 0, Letter::Z))?;
    }
    v.apply_1q(0, &exp_z(theta));
    apply_layer(v, schedule.layer(site), Boundary::Open)
}

fn sideways_state(
    k: usize,
    schedule: &LambdaSchedule,
    program: &AngleProgram,
    outcomes: &[u8],
) -> Result<StateVector> {
    let mut v = StateVector::plus(k)?;
    for (i, (&theta, &s)) in program.angles.iter().zip(outcomes).enumerate() {
        virtual_step(&mut v, schedule, i + 1, theta, s)?;
    }
    Ok(v)
}

/// `2^{(k-N)/2} ⟨R| U_N … U_1 |L⟩`.
pub fn sideways_amplitude(
    n: usize,
    k: usize,
    schedule: &LambdaSchedule,
    program: &AngleProgram,
    outcomes: &[u8],
) -> Result<Complex64> {
    check_virtual(k)?;
    check_dims(k, schedule.k())?;
    check_program(n, program, Some(outcomes))?;
    let v = sideways_state(k, schedule, program, outcomes)?;
    Ok(v.amplitude(0) * 2f64.powf((k as f64 - n as f64) / 2.0))
}

/// `⟨s_1^{θ_1} … s_N^{θ_N}|ψ⟩` for an already prepared state.
pub fn overlap_with(state: &StateVector, program: &AngleProgram, outcomes: &[u8]) -> Result<Complex64> {
    let n = state.n_qubits();
    check_program(n, program, Some(outcomes))?;
    let mut rotated = state.clone();
    for (q, &theta) in program.angles.iter().enumerate() {
        rotated.apply_1q(q, &exp_x(theta));
    }
    let index = outcomes
        .iter()
        .enumerate()
        .fold(0usize, |acc, (q, &s)| acc | ((s as usize) << q));
    Ok(rotated.amplitude(index))
}

/// Physical overlap on the open-chain resource state.
pub fn physical_overlap(
    n: usize,
    k: usize,
    schedule: &LambdaSchedule,
    program: &AngleProgram,
    outcomes: &[u8],
) -> Result<Complex64> {
    let state = prepare_resource(n, k, schedule, Boundary::Open)?;
    overlap_with(&state, program, outcomes)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualUnitarityReport {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub max_error: f64,
}

impl DualUnitarityReport {
    pub fn passed(&self) -> bool {
        self.max_error < 1e-10
    }

    pub fn line(&self) -> CheckLine {
        CheckLine::new("dual-unitarity", self.k, self.passed())
            .param("N", self.n)
            .param("trials", self.trials)
            .param("max_err", format!("{:.3e}", self.max_error))
    }
}

/// Random angles and outcomes: physical overlap against the sideways amplitude.
pub fn dual_unitarity_check(
    n: usize,
    k: usize,
    schedule: &LambdaSchedule,
    trials: usize,
    seed: u64,
) -> Result<DualUnitarityReport> {
    check_virtual(k)?;
    let state = prepare_resource(n, k, schedule, Boundary::Open)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_error: f64 = 0.0;
    for _ in 0..trials {
        let program = AngleProgram::random(n, &mut rng);
        let outcomes: Vec<u8> = (0..n).map(|_| rng.random_range(0..2u8)).collect();
        let a = overlap_with(&state, &program, &outcomes)?;
        let b = sideways_amplitude(n, k, schedule, &program, &outcomes)?;
        max_error = max_error.max((a - b).norm());
    }
    Ok(DualUnitarityReport {
        n,
        k,
        trials,
        max_error,
    })
}

/// `Σ_s |sideways_amplitude(s)|²` over all `2^N` outcome strings; 1 for a valid reading.
pub fn born_sum(n: usize, k: usize, schedule: &LambdaSchedule, program: &AngleProgram) -> Result<f64> {
    if n > 16 {
        return Err(Error::SizeGuard(format!("born_sum enumerates 2^N strings; N={n} > 16")));
    }
    let mut total = 0.0;
    for b in 0..1usize << n {
        let outcomes: Vec<u8> = (0..n).map(|q| (b >> q & 1) as u8).collect();
        total += sideways_amplitude(n, k, schedule, program, &outcomes)?.norm_sqr();
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    /// Seed of the sampler; `None` when outcomes were forced.
    pub seed: Option<u64>,
    pub outcomes: Vec<u8>,
    pub raw_angles: Vec<f64>,
    pub corrected_angles: Vec<f64>,
    /// Conditional probability of each observed outcome.
    pub probabilities: Vec<f64>,
    /// Accumulated byproduct acting on the logical state.
    pub boundary_word: PauliWord,
}

impl MeasurementRecord {
    /// One line per site: `i s_i theta_raw theta_corrected`.
    pub fn trajectory_log(&self) -> String {
        let mut out = String::new();
        for (i, ((s, raw), corr)) in self
            .outcomes
            .iter()
            .zip(&self.raw_angles)
            .zip(&self.corrected_angles)
            .enumerate()
        {
            out.push_str(&format!("{} {} {:.12} {:.12}\n", i + 1, s, raw, corr));
        }
        out
    }

    pub fn probability(&self) -> f64 {
        self.probabilities.iter().product()
    }
}

#[derive(Debug, Clone)]
pub struct AdaptiveRun {
    pub record: MeasurementRecord,
    /// Logical state after undoing the byproduct, normalized.
    pub corrected: StateVector,
    /// `U(θ_N, 0) … U(θ_1, 0)|L⟩`, normalized.
    pub ideal: StateVector,
    pub fidelity: f64,
    /// `2^{k-N} |⟨R|v_N⟩|²` from the virtual picture, to compare with the sampled probability.
    pub virtual_probability: f64,
}

impl AdaptiveRun {
    pub fn fidelity_ok(&self) -> bool {
        self.fidelity >= 1.0 - 1e-8
    }

    pub fn probability_ok(&self) -> bool {
        (self.record.probability() - self.virtual_probability).abs() <= 1e-10
    }

    pub fn passed(&self) -> bool {
        self.fidelity_ok() && self.probability_ok()
    }

    /// Z-basis statistics of the corrected logical state, `bitstring probability` per line;
    /// virtual qubit 1 is the leftmost character.
    pub fn distribution_tsv(&self) -> String {
        let k = self.corrected.n_qubits();
        let mut out = String::from("bitstring\tprobability\n");
        for (b, p) in self.corrected.distribution().iter().enumerate() {
            let bits: String = (0..k).map(|q| if b >> q & 1 == 1 { '1' } else { '0' }).collect();
            out.push_str(&format!("{bits}\t{p:.12}\n"));
        }
        out
    }
}

/// Sequential single-site measurements with Born sampling and feed-forward.
pub fn adaptive_run(
    n: usize,
    k: usize,
    schedule: &LambdaSchedule,
    program: &AngleProgram,
    seed: u64,
) -> Result<AdaptiveRun> {
    run(n, k, schedule, program, Sampler::Seeded(Box::new(ChaCha8Rng::seed_from_u64(seed))), Some(seed))
}

/// As [`adaptive_run`] with every outcome prescribed.
pub fn adaptive_run_forced(
    n: usize,
    k: usize,
    schedule: &LambdaSchedule,
    program: &AngleProgram,
    outcomes: &[u8],
) -> Result<AdaptiveRun> {
    check_program(n, program, Some(outcomes))?;
    run(n, k, schedule, program, Sampler::Forced(outcomes), None)
}

enum Sampler<'a> {
    Seeded(Box<ChaCha8Rng>),
    Forced(&'a [u8]),
}

fn run(
    n: usize,
    k: usize,
    schedule: &LambdaSchedule,
    program: &AngleProgram,
    mut sampler: Sampler<'_>,
    seed: Option<u64>,
) -> Result<AdaptiveRun> {
    check_virtual(k)?;
    check_dims(k, schedule.k())?;
    check_program(n, program, None)?;
    let mut phys = prepare_resource(n, k, schedule, Boundary::Open)?;
    // Schrödinger maps B ↦ T B T† per layer of the schedule
    let forward = (1..=schedule.period_t())
        .map(|l| build_map(k, schedule, l).map(|m| m.inverse()))
        .collect::<Result<Vec<_>>>()?;

    let z1 = PauliWord::single(k, 0, Letter::Z);
    let mut byproduct = PauliWord::identity(k);
    let mut v = StateVector::plus(k)?;
    let mut ideal = StateVector::plus(k)?;
    let mut record = MeasurementRecord {
        seed,
        outcomes: Vec::with_capacity(n),
        raw_angles: program.angles.clone(),
        corrected_angles: Vec::with_capacity(n),
        probabilities: Vec::with_capacity(n),
        boundary_word: PauliWord::identity(k),
    };

    for (q, &theta) in program.angles.iter().enumerate() {
        let site = q + 1;
        let sign = if byproduct.x_bit(0) { -1.0 } else { 1.0 };
        let corrected = sign * theta;

        phys.apply_1q(q, &exp_x(corrected));
        let norm = phys.norm_sqr();
        let p1 = phys.probability(q, 1) / norm;
        let s: u8 = match &mut sampler {
            Sampler::Seeded(rng) => u8::from(rng.random::<f64>() < p1),
            Sampler::Forced(o) => o[q],
        };
        let p = if s == 1 { p1 } else { 1.0 - p1 };
        if p < ZERO_PROBABILITY {
            return Err(Error::ZeroProbability {
                site,
                probability: p,
            });
        }
        phys.project(q, s);
        phys.normalize()?;

        virtual_step(&mut v, schedule, site, corrected, s)?;
        virtual_step(&mut ideal, schedule, site, theta, 0)?;
        if s == 1 {
            byproduct = z1.mul(&byproduct)?;
        }
        byproduct = forward[(site - 1) % forward.len()].apply(&byproduct)?;

        record.outcomes.push(s);
        record.corrected_angles.push(corrected);
        record.probabilities.push(p);
    }

    let virtual_probability = v.amplitude(0).norm_sqr() * 2f64.powi(k as i32 - n as i32);
    let mut corrected = v;
    corrected.apply_pauli(&byproduct.phaseless())?;
    corrected.normalize()?;
    ideal.normalize()?;
    let fidelity = corrected.fidelity(&ideal)?;
    record.boundary_word = byproduct;
    Ok(AdaptiveRun {
        record,
        corrected,
        ideal,
        fidelity,
        virtual_probability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(k: usize) -> LambdaSchedule {
        LambdaSchedule::all_ones(k).unwrap()
    }

    #[test]
    fn boundary_parses() {
        assert_eq!("open".parse::<Boundary>().unwrap(), Boundary::Open);
        assert_eq!("periodic".parse::<Boundary>().unwrap(), Boundary::Periodic);
        assert!("closed".parse::<Boundary>().is_err());
    }

    #[test]
    fn depth_zero_is_plus_state() {
        let s = prepare_resource(4, 0, &ones(1), Boundary::Open).unwrap();
        assert_eq!(s, StateVector::plus(4).unwrap());
    }

    #[test]
    fn guards() {
        assert!(prepare_resource(23, 1, &ones(1), Boundary::Open).is_err());
        assert!(prepare_resource(2, 1, &ones(1), Boundary::Periodic).is_err());
        let p = AngleProgram::zeros(3);
        assert!(sideways_amplitude(3, 11, &ones(11), &p, &[0, 0, 0]).is_err());
        assert!(sideways_amplitude(3, 2, &ones(2), &p, &[0, 0]).is_err());
    }

    #[test]
    fn all_zero_outcomes_need_no_correction() {
        let p = AngleProgram::new(vec![0.3, 1.2, 0.7, 2.0]);
        let r = adaptive_run_forced(4, 2, &ones(2), &p, &[0, 0, 0, 0]).unwrap();
        assert_eq!(r.record.corrected_angles, p.angles);
        assert!(r.record.boundary_word.is_identity());
        assert!(r.passed());
    }
}
