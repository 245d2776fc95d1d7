//! Clifford conjugation maps and the spacetime evolution of `Z` on the first qubit.
//!
//! A [`SymplecticMap`] stores the images of the generators `X_q`, `Z_q` under a Clifford
//! automorphism `P ↦ f(P)`, with exact signs. Maps built from a circuit `T` act in the
//! Heisenberg direction, `P ↦ T† P T`, which is the direction in which the rotation
//! generators `O(ℓ) = T^{ℓ†} Z T^ℓ` evolve.

use std::fmt;

use crate::bits;
use crate::error::{check_dims, Error, Result};
use crate::pauli::{Letter, PauliWord};
use crate::schedule::LambdaSchedule;

pub const DEFAULT_PERIOD_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMap {
    k: usize,
    x_images: Vec<PauliWord>,
    z_images: Vec<PauliWord>,
}

impl SymplecticMap {
    pub fn identity(k: usize) -> Self {
        SymplecticMap {
            k,
            x_images: (0..k).map(|q| PauliWord::single(k, q, Letter::X)).collect(),
            z_images: (0..k).map(|q| PauliWord::single(k, q, Letter::Z)).collect(),
        }
    }

    /// Builds a map from generator images. Fails unless the images are Hermitian and
    /// reproduce the commutation relations of the generators.
    pub fn from_images(x_images: Vec<PauliWord>, z_images: Vec<PauliWord>) -> Result<Self> {
        let k = x_images.len();
        check_dims(k, z_images.len())?;
        for p in x_images.iter().chain(&z_images) {
            check_dims(k, p.n_qubits())?;
            if p.phase() % 2 != 0 {
                return Err(Error::Domain(format!("image {p} is not Hermitian")));
            }
        }
        let map = SymplecticMap {
            k,
            x_images,
            z_images,
        };
        if !map.preserves_form() {
            return Err(Error::Domain("images do not preserve the symplectic form".into()));
        }
        Ok(map)
    }

    /// `P ↦ H† P H` on qubit `q`.
    pub fn hadamard(k: usize, q: usize) -> Self {
        let mut m = Self::identity(k);
        m.x_images[q] = PauliWord::single(k, q, Letter::Z);
        m.z_images[q] = PauliWord::single(k, q, Letter::X);
        m
    }

    /// `P ↦ S† P S` on qubit `q`, with `S = diag(1, i)`: `X ↦ -Y`.
    pub fn phase_gate(k: usize, q: usize) -> Self {
        let mut m = Self::identity(k);
        m.x_images[q] = PauliWord::single(k, q, Letter::Y).with_phase(2);
        m
    }

    /// `P ↦ CZ P CZ` on qubits `a`, `b`.
    pub fn cz(k: usize, a: usize, b: usize) -> Self {
        assert_ne!(a, b, "CZ needs two distinct qubits");
        let mut m = Self::identity(k);
        m.x_images[a].set_letter(b, Letter::Z);
        m.x_images[b].set_letter(a, Letter::Z);
        m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn x_image(&self, q: usize) -> &PauliWord {
        &self.x_images[q]
    }

    pub fn z_image(&self, q: usize) -> &PauliWord {
        &self.z_images[q]
    }

    /// Exact image of `p`, including its phase.
    pub fn apply(&self, p: &PauliWord) -> Result<PauliWord> {
        check_dims(self.k, p.n_qubits())?;
        Ok(self.apply_unchecked(p))
    }

    pub(crate) fn apply_unchecked(&self, p: &PauliWord) -> PauliWord {
        let mut acc = PauliWord::identity(self.k);
        let mut ys = 0u8;
        for q in 0..self.k {
            let (x, z) = (p.x_bit(q), p.z_bit(q));
            if x {
                acc = acc.mul_unchecked(&self.x_images[q]);
            }
            if z {
                acc = acc.mul_unchecked(&self.z_images[q]);
            }
            if x && z {
                ys = ys.wrapping_add(1);
            }
        }
        // Y = i·X·Z for each Y letter, plus the input's own phase
        let phase = (acc.phase() as u32 + p.phase() as u32 + ys as u32) % 4;
        acc.with_phase(phase as u8)
    }

    /// Image ignoring phases (XOR of generator images).
    pub fn apply_phaseless(&self, p: &PauliWord) -> Result<PauliWord> {
        check_dims(self.k, p.n_qubits())?;
        let w = bits::words_for(self.k);
        let (mut x, mut z) = (vec![0u64; w], vec![0u64; w]);
        for q in 0..self.k {
            if p.x_bit(q) {
                bits::xor_into(&mut x, self.x_images[q].x_bits());
                bits::xor_into(&mut z, self.x_images[q].z_bits());
            }
            if p.z_bit(q) {
                bits::xor_into(&mut x, self.z_images[q].x_bits());
                bits::xor_into(&mut z, self.z_images[q].z_bits());
            }
        }
        PauliWord::from_bits(self.k, x, z, 0)
    }

    /// `self ∘ other`: `P ↦ self(other(P))`.
    pub fn compose(&self, other: &SymplecticMap) -> Result<SymplecticMap> {
        check_dims(self.k, other.k)?;
        Ok(SymplecticMap {
            k: self.k,
            x_images: other.x_images.iter().map(|p| self.apply_unchecked(p)).collect(),
            z_images: other.z_images.iter().map(|p| self.apply_unchecked(p)).collect(),
        })
    }

    pub fn inverse(&self) -> SymplecticMap {
        // Phaseless inverse from the symplectic form: f^{-1}(X_q) has Z-bit j set iff
        // f(X_j) anticommutes with X_q, and so on.
        let k = self.k;
        let pre = |g: &PauliWord| {
            let mut w = PauliWord::identity(k);
            for j in 0..k {
                let x = self.z_images[j].anticommutes_unchecked(g);
                let z = self.x_images[j].anticommutes_unchecked(g);
                w.set_letter(j, Letter::from_bits(x, z));
            }
            // fix the sign so that f(w) == g exactly
            let image = self.apply_unchecked(&w);
            let sign = (4 + g.phase() - image.phase()) % 4;
            w.with_phase(sign)
        };
        let x_images = (0..k).map(|q| pre(&PauliWord::single(k, q, Letter::X))).collect();
        let z_images = (0..k).map(|q| pre(&PauliWord::single(k, q, Letter::Z))).collect();
        SymplecticMap {
            k,
            x_images,
            z_images,
        }
    }

    pub fn is_identity_phaseless(&self) -> bool {
        (0..self.k).all(|q| {
            self.x_images[q].key() == PauliWord::single(self.k, q, Letter::X).key()
                && self.z_images[q].key() == PauliWord::single(self.k, q, Letter::Z).key()
        })
    }

    /// Checks that every pair of generator images has the generators' symplectic product.
    pub fn preserves_form(&self) -> bool {
        let k = self.k;
        for a in 0..k {
            for b in 0..k {
                let xz = self.x_images[a].anticommutes_unchecked(&self.z_images[b]);
                if xz != (a == b) {
                    return false;
                }
                if self.x_images[a].anticommutes_unchecked(&self.x_images[b])
                    || self.z_images[a].anticommutes_unchecked(&self.z_images[b])
                {
                    return false;
                }
            }
        }
        true
    }

    fn binary(&self) -> BinaryMatrix {
        BinaryMatrix::from_map(self)
    }
}

/// Phaseless `2k × 2k` matrix over GF(2), stored by columns. Column `q` is the image of
/// `X_q`, column `k + q` the image of `Z_q`, each packed as `(x; z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BinaryMatrix {
    k: usize,
    cols: Vec<Vec<u64>>,
}

impl BinaryMatrix {
    fn identity(k: usize) -> Self {
        let w = bits::words_for(2 * k);
        let cols = (0..2 * k)
            .map(|c| {
                let mut v = vec![0u64; w];
                bits::set(&mut v, c, true);
                v
            })
            .collect();
        BinaryMatrix { k, cols }
    }

    fn from_map(map: &SymplecticMap) -> Self {
        let cols = map
            .x_images
            .iter()
            .chain(&map.z_images)
            .map(|p| p.symplectic_vector())
            .collect();
        BinaryMatrix { k: map.k, cols }
    }

    fn apply(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; v.len()];
        for (c, col) in self.cols.iter().enumerate() {
            if bits::get(v, c) {
                bits::xor_into(&mut out, col);
            }
        }
        out
    }

    /// `self ∘ other`
    fn compose(&self, other: &BinaryMatrix) -> BinaryMatrix {
        BinaryMatrix {
            k: self.k,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(c, col)| {
            bits::first_set(col) == Some(c) && bits::popcount(col) == 1
        })
    }
}

/// Conjugation by one circuit layer `(∏_q H_q S_q^{λ_q})(∏_q CZ_{q,q+1})` on an open
/// chain of `k` qubits, in the Heisenberg direction `P ↦ T† P T`.
pub fn layer_map(k: usize, with_s: &[bool]) -> Result<SymplecticMap> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    check_dims(k, with_s.len())?;
    let mut h_then_s = SymplecticMap::identity(k);
    for (q, &with) in with_s.iter().enumerate() {
        let mut single = SymplecticMap::hadamard(k, q);
        if with {
            single = SymplecticMap::phase_gate(k, q).compose(&single)?;
        }
        h_then_s = single.compose(&h_then_s)?;
    }
    let mut czs = SymplecticMap::identity(k);
    for q in 0..k.saturating_sub(1) {
        czs = SymplecticMap::cz(k, q, q + 1).compose(&czs)?;
    }
    czs.compose(&h_then_s)
}

/// The layer map for virtual step `layer` (1-based) of `schedule`.
pub fn build_map(k: usize, schedule: &LambdaSchedule, layer: usize) -> Result<SymplecticMap> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    check_dims(k, schedule.k())?;
    if layer == 0 {
        return Err(Error::Domain("layers are numbered from 1".into()));
    }
    layer_map(k, schedule.layer(layer))
}

pub fn compose(a: &SymplecticMap, b: &SymplecticMap) -> Result<SymplecticMap> {
    a.compose(b)
}

/// Least `p <= cap` with `map^p` equal to the identity up to phases.
pub fn period(map: &SymplecticMap, cap: u64) -> Result<u64> {
    let m = map.binary();
    let mut acc = m.clone();
    for p in 1..=cap {
        if acc.is_identity() {
            return Ok(p);
        }
        acc = acc.compose(&m);
    }
    Err(Error::PeriodExhausted { cap })
}

/// Period of the cumulative evolution under a schedule: the least `ℓ <= cap` such that
/// `h_ℓ ∘ … ∘ h_1` is proportional to the identity. `ℓ` need not be
/// a multiple of the schedule's repeat length.
pub fn schedule_period(k: usize, schedule: &LambdaSchedule, cap: u64) -> Result<u64> {
    check_dims(k, schedule.k())?;
    let layers = (1..=schedule.period_t())
        .map(|l| build_map(k, schedule, l).map(|m| m.binary()))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = BinaryMatrix::identity(k);
    for l in 1..=cap {
        acc = layers[((l - 1) as usize) % layers.len()].compose(&acc);
        if acc.is_identity() {
            return Ok(l);
        }
    }
    Err(Error::PeriodExhausted { cap })
}

/// The columns `O(0) = Z_1`, `O(ℓ) = h_ℓ(O(ℓ-1))` for `ℓ = 1..p-1`: each column is the
/// previous one pushed through the next layer's local update rule.
///
/// For schedules that vary from layer to layer this is not the same set as the nested
/// `h_1(h_2(…h_ℓ(Z_1)))`; the column recursion is what the family tables are built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacetimeDiagram {
    k: usize,
    columns: Vec<PauliWord>,
}

impl SpacetimeDiagram {
    /// Validates the column-0 invariant (`Z` on the first qubit, identity elsewhere).
    pub fn from_columns(k: usize, columns: Vec<PauliWord>) -> Result<Self> {
        let first = columns
            .first()
            .ok_or_else(|| Error::Domain("diagram needs at least one column".into()))?;
        if first.key() != PauliWord::single(k, 0, Letter::Z).key() {
            return Err(Error::Domain(format!("column 0 must be Z on qubit 1, got {first}")));
        }
        for c in &columns {
            check_dims(k, c.n_qubits())?;
        }
        Ok(SpacetimeDiagram {
            k,
            columns: columns.into_iter().map(|c| c.phaseless()).collect(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn period(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[PauliWord] {
        &self.columns
    }

    /// Column `ℓ`, negative indices wrapping as `O(-ℓ) = O(p - ℓ)`.
    pub fn column(&self, l: i64) -> &PauliWord {
        let p = self.columns.len() as i64;
        &self.columns[l.rem_euclid(p) as usize]
    }

    /// Letter at column `ℓ`, row `i` (rows numbered `1..=k`).
    pub fn cell(&self, l: i64, i: usize) -> Letter {
        assert!((1..=self.k).contains(&i), "row {i} outside 1..={}", self.k);
        self.column(l).letter(i - 1)
    }

    /// Z-component bit `a(ℓ, i)` with the mirror boundary conditions of the open chain:
    /// `a(ℓ, 0) = a(ℓ, k+1) = 0`, `a(ℓ, -i) = a(ℓ, i)` and `a(ℓ, k+1+i) = a(ℓ, k+1-i)`.
    pub fn a(&self, l: i64, i: i64) -> bool {
        self.reflected(l, i).map(|q| self.column(l).z_bit(q)).unwrap_or(false)
    }

    /// X-component bit `b(ℓ, i)`, same boundary conditions as [`Self::a`].
    pub fn b(&self, l: i64, i: i64) -> bool {
        self.reflected(l, i).map(|q| self.column(l).x_bit(q)).unwrap_or(false)
    }

    fn reflected(&self, _l: i64, i: i64) -> Option<usize> {
        let span = 2 * (self.k as i64 + 1);
        let mut j = i.rem_euclid(span);
        if j > self.k as i64 + 1 {
            j = span - j;
        }
        if j == 0 || j == self.k as i64 + 1 {
            None
        } else {
            Some((j - 1) as usize)
        }
    }

    /// `k` lines of `period` letters, row 1 first.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity((self.period() + 1) * self.k);
        for q in 0..self.k {
            out.extend(self.columns.iter().map(|c| c.letter(q).as_char()));
            out.push('\n');
        }
        out
    }

    /// `Z` wherever the first row carries `X` or `Y`, `I` elsewhere.
    pub fn symmetry_row(&self) -> String {
        self.columns
            .iter()
            .map(|c| if c.x_bit(0) { 'Z' } else { 'I' })
            .collect()
    }
}

impl fmt::Display for SpacetimeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn spacetime(k: usize, schedule: &LambdaSchedule, cap: u64) -> Result<SpacetimeDiagram> {
    let p = schedule_period(k, schedule, cap)? as usize;
    let z1 = PauliWord::single(k, 0, Letter::Z);
    let layers = (1..=schedule.period_t())
        .map(|l| build_map(k, schedule, l))
        .collect::<Result<Vec<_>>>()?;
    let mut columns = Vec::with_capacity(p);
    columns.push(z1);
    for l in 1..p {
        let next = layers[(l - 1) % layers.len()].apply_phaseless(&columns[l - 1])?;
        columns.push(next);
    }
    SpacetimeDiagram::from_columns(k, columns)
}

pub fn render(diagram: &SpacetimeDiagram) -> String {
    diagram.render()
}
