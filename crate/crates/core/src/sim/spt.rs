//! Symmetries, projective edge representation, injectivity and entanglement of the
//! resource states.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits;
use crate::clifford::{build_map, spacetime, SymplecticMap, DEFAULT_PERIOD_CAP};
use crate::error::{check_dims, Error, Result};
use crate::pauli::{Letter, PauliWord};
use crate::schedule::LambdaSchedule;

use super::mbqc::{apply_layer, prepare_resource, Boundary, MAX_VIRTUAL_QUBITS};
use super::state::StateVector;

/// `V(ξ)` for the packed vector `ξ = (ξ^X; ξ^Z)`, bit `q` of `x`/`z` for qubit `q + 1`.
pub fn v_of(k: usize, x: u64, z: u64) -> PauliWord {
    PauliWord::from_bits(k, vec![x], vec![z], 0).expect("k <= 64")
}

/// Unit vectors `X̂_1 … X̂_k, Ẑ_1 … Ẑ_k`.
pub fn unit_vectors(k: usize) -> Vec<PauliWord> {
    let mut out: Vec<PauliWord> = (0..k).map(|q| PauliWord::single(k, q, Letter::X)).collect();
    out.extend((0..k).map(|q| PauliWord::single(k, q, Letter::Z)));
    out
}

/// Schrödinger maps `V ↦ T V T†`, one per schedule layer.
fn forward_maps(k: usize, schedule: &LambdaSchedule) -> Result<Vec<SymplecticMap>> {
    (1..=schedule.period_t())
        .map(|l| build_map(k, schedule, l).map(|m| m.inverse()))
        .collect()
}

/// Exponents of `u(ξ) = ∏_i Z_i^{e_i}` on `n` sites: `e_i` is the X-bit on virtual qubit 1
/// of `ξ` pushed through the first `i - 1` layers. Fails unless `ξ` returns to itself
/// after `n` layers (the chain length must be compatible with the period).
pub fn symmetry_exponents(n: usize, schedule: &LambdaSchedule, xi: &PauliWord) -> Result<Vec<bool>> {
    let k = schedule.k();
    check_dims(k, xi.n_qubits())?;
    let maps = forward_maps(k, schedule)?;
    let mut cur = xi.phaseless();
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        out.push(cur.x_bit(0));
        cur = maps[(i - 1) % maps.len()].apply_phaseless(&cur)?;
    }
    if cur.key() != xi.key() {
        return Err(Error::Domain(format!(
            "chain of {n} sites is not a multiple of the virtual period"
        )));
    }
    Ok(out)
}

/// `u(ξ)` as an `n`-qubit Pauli word of `Z`s.
pub fn symmetry_operator(n: usize, schedule: &LambdaSchedule, xi: &PauliWord) -> Result<PauliWord> {
    let e = symmetry_exponents(n, schedule, xi)?;
    let letters: Vec<Letter> = e.iter().map(|&b| if b { Letter::Z } else { Letter::I }).collect();
    Ok(PauliWord::from_letters(&letters))
}

/// `I`/`Z` rendering of `u(ξ)`, site 1 first.
pub fn symmetry_pattern(n: usize, schedule: &LambdaSchedule, xi: &PauliWord) -> Result<String> {
    Ok(symmetry_exponents(n, schedule, xi)?
        .iter()
        .map(|&b| if b { 'Z' } else { 'I' })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub n: usize,
    pub k: usize,
    /// `u(ξ)|ψ̃⟩ = |ψ̃⟩` for every unit vector `ξ`.
    pub generators_fix_state: bool,
    /// Number of group elements checked densely (all `4^k` when small).
    pub elements_checked: usize,
    pub all_elements_fix_state: bool,
    /// `ξ ↦ u(ξ)` is injective (GF(2) rank `2k`).
    pub faithful: bool,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.generators_fix_state && self.all_elements_fix_state && self.faithful
    }
}

fn fixes(state: &StateVector, u: &PauliWord) -> Result<bool> {
    Ok((state.expectation(u)? - Complex64::new(1.0, 0.0)).norm() < 1e-10)
}

/// Checks the `ℤ_2^{2k}` symmetry of the periodic resource state on `n` sites. The whole
/// group is enumerated when `4^k <= 256`.
pub fn symmetry_check(n: usize, k: usize, schedule: &LambdaSchedule) -> Result<SymmetryReport> {
    check_dims(k, schedule.k())?;
    let state = prepare_resource(n, k, schedule, Boundary::Periodic)?;
    let units = unit_vectors(k);
    let mut exps = Vec::with_capacity(2 * k);
    let mut generators_fix_state = true;
    for xi in &units {
        let u = symmetry_operator(n, schedule, xi)?;
        generators_fix_state &= fixes(&state, &u)?;
        exps.push(u.z_bits().to_vec());
    }
    let faithful = bits::gf2_rank(&exps) == 2 * k;

    let mut elements_checked = 0;
    let mut all_elements_fix_state = true;
    if 2 * k <= 8 {
        for mask in 0u64..(1 << (2 * k)) {
            let xi = v_of(k, mask & ((1 << k) - 1), mask >> k);
            let u = symmetry_operator(n, schedule, &xi)?;
            all_elements_fix_state &= fixes(&state, &u)?;
            elements_checked += 1;
        }
    }
    Ok(SymmetryReport {
        n,
        k,
        generators_fix_state,
        elements_checked,
        all_elements_fix_state,
        faithful,
    })
}

/// `ξ^T Λ ζ` with `Λ = (0 I; I 0)`.
pub fn form(xi: &PauliWord, zeta: &PauliWord) -> bool {
    !xi.commutes(zeta).expect("same register")
}

/// Projective representation on the virtual register: `V(ξ)V(ζ) ∝ V(ξ⊕ζ)`, the
/// commutation sign is `(-1)^{ξ^T Λ ζ}`, `V(ξ)² = I`, and only `ξ = 0` is central.
/// Exhaustive for `k <= 3`, otherwise `trials` random pairs.
pub fn projective_rep_check(k: usize, trials: usize, seed: u64) -> Result<bool> {
    if k == 0 || k > 32 {
        return Err(Error::Domain(format!("projective check supports 1 <= k <= 32, got {k}")));
    }
    let mask = (1u64 << k) - 1;
    let pair_ok = |a: (u64, u64), b: (u64, u64)| -> Result<bool> {
        let (va, vb) = (v_of(k, a.0, a.1), v_of(k, b.0, b.1));
        let sum = v_of(k, a.0 ^ b.0, a.1 ^ b.1);
        let ab = va.mul(&vb)?;
        let ba = vb.mul(&va)?;
        let sign_ok = if form(&va, &vb) {
            ab.phase() == (ba.phase() + 2) % 4
        } else {
            ab.phase() == ba.phase()
        };
        let square_ok = va.mul(&va)?.is_identity() && va.mul(&va)?.phase() == 0;
        Ok(ab.key() == sum.key() && sign_ok && square_ok)
    };
    if k <= 3 {
        let all: Vec<(u64, u64)> = (0..1u64 << (2 * k)).map(|m| (m & mask, m >> k)).collect();
        for &a in &all {
            for &b in &all {
                if !pair_ok(a, b)? {
                    return Ok(false);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let a = (rng.random::<u64>() & mask, rng.random::<u64>() & mask);
            let b = (rng.random::<u64>() & mask, rng.random::<u64>() & mask);
            if !pair_ok(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(center_is_trivial(k))
}

/// Only `ξ = 0` commutes with every `V(ζ)`; enough to test against the unit vectors.
/// Exhaustive for `k <= 8`; larger `k` use nondegeneracy of the form's Gram matrix.
pub fn center_is_trivial(k: usize) -> bool {
    let units = unit_vectors(k);
    if k > 8 {
        let gram: Vec<Vec<u64>> = units
            .iter()
            .map(|a| {
                let mut row = vec![0u64; bits::words_for(2 * k)];
                for (j, b) in units.iter().enumerate() {
                    bits::set(&mut row, j, form(a, b));
                }
                row
            })
            .collect();
        return bits::gf2_rank(&gram) == 2 * k;
    }
    let mask = (1u64 << k) - 1;
    (1u64..1 << (2 * k)).all(|m| {
        let v = v_of(k, m & mask, m >> k);
        units.iter().any(|u| form(&v, u))
    })
}

/// Dense `2^k × 2^k` matrix of one virtual layer.
fn layer_matrix(k: usize, with_s: &[bool]) -> Result<DMatrix<Complex64>> {
    let dim = 1usize << k;
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[col] = Complex64::new(1.0, 0.0);
        let mut v = StateVector::from_amplitudes(k, amps)?;
        apply_layer(&mut v, with_s, Boundary::Open)?;
        for (row, a) in v.amplitudes().iter().enumerate() {
            m[(row, col)] = *a;
        }
    }
    Ok(m)
}

fn z1_matrix(k: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(1 << k, 1 << k, |r, c| {
        if r != c {
            Complex64::new(0.0, 0.0)
        } else if r & 1 == 1 {
            Complex64::new(-1.0, 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        }
    })
}

/// Dimension of the span of `{A_L(s_L) … A_1(s_1)}` over all `s ∈ {0,1}^L`, where
/// `A_i(s) = T^{(i)} Z_1^s`.
pub fn injectivity_span(k: usize, schedule: &LambdaSchedule, length: usize) -> Result<usize> {
    check_dims(k, schedule.k())?;
    if k > 4 || length > 24 || (1usize << length) << (2 * k) > 1 << 24 {
        return Err(Error::SizeGuard(format!(
            "injectivity span needs k <= 4 and 2^L·4^k <= 2^24, got k = {k}, L = {length}"
        )));
    }
    let z1 = z1_matrix(k);
    let layers = (1..=schedule.period_t().min(length.max(1)))
        .map(|l| layer_matrix(k, schedule.layer(l)))
        .collect::<Result<Vec<_>>>()?;
    let dim = 1usize << k;
    let mut products = vec![DMatrix::<Complex64>::identity(dim, dim)];
    for step in 0..length {
        let t = &layers[step % layers.len()];
        let a = [t.clone(), t * &z1];
        products = products
            .iter()
            .flat_map(|p| a.iter().map(move |ai| ai * p))
            .collect();
    }
    let cols = products.len();
    let stacked = DMatrix::from_fn(dim * dim, cols, |r, c| products[c][r]);
    Ok(stacked.rank(1e-9))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityReport {
    pub k: usize,
    pub length: usize,
    pub span: usize,
    /// GF(2) rank of the symplectic vectors of `{O_k(ℓ)}`.
    pub multiplicative_rank: usize,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.span == 1 << (2 * self.k) && self.multiplicative_rank == 2 * self.k
    }
}

/// Span at `L = p_k` plus the multiplicative cross-check on the generators.
pub fn injectivity_check(k: usize, schedule: &LambdaSchedule) -> Result<InjectivityReport> {
    if k > MAX_VIRTUAL_QUBITS {
        return Err(Error::SizeGuard(format!("k = {k} too large")));
    }
    let d = spacetime(k, schedule, DEFAULT_PERIOD_CAP)?;
    let length = d.period();
    let span = injectivity_span(k, schedule, length)?;
    let vectors: Vec<Vec<u64>> = d.columns().iter().map(|c| c.symplectic_vector()).collect();
    Ok(InjectivityReport {
        k,
        length,
        span,
        multiplicative_rank: bits::gf2_rank(&vectors),
    })
}

/// Von Neumann entropy (in bits) of sites `1..=cut`.
pub fn half_chain_entropy(state: &StateVector, cut: usize) -> Result<f64> {
    let n = state.n_qubits();
    if cut == 0 || cut >= n {
        return Err(Error::Domain(format!("cut must lie in 1..{n}, got {cut}")));
    }
    let (rows, cols) = (1usize << cut, 1usize << (n - cut));
    let norm = state.norm_sqr();
    // site 1 is least significant, so the left block is the low index bits
    let m = DMatrix::from_fn(rows, cols, |l, r| state.amplitude(l | (r << cut)));
    let sv = m.singular_values();
    Ok(sv
        .iter()
        .map(|s| s * s / norm)
        .filter(|&p| p > 1e-15)
        .map(|p| -p * p.log2())
        .sum())
}
