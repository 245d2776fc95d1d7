//! Mechanized universality argument for the all-ones circuit.
//!
//! Qubits at positions `4, 8, 12, …` are frozen in `|+⟩`. A generator whose column
//! carries only `I`/`X` there acts on the remaining register as its restriction;
//! anything else would disturb a frozen qubit and is dropped (the zero marker).
//! The index sets, the two conditions of the Pauli-closure lemma and the inductive
//! step from `k - 4` to `k` are all checked on concrete diagrams.

use crate::bits;
use crate::clifford::{spacetime, SpacetimeDiagram, DEFAULT_PERIOD_CAP};
use crate::error::{Error, Result};
use crate::lie::{close, default_member_cap, PauliSet};
use crate::pauli::{Letter, PauliWord};
use crate::report::CheckLine;
use crate::schedule::LambdaSchedule;

/// Largest reduced register on which [`verify_theorem1`] runs a direct closure.
pub const DIRECT_CLOSURE_QUBITS: usize = 8;

/// 1-based position `i` is frozen when it is a positive multiple of 4.
pub fn is_frozen(i: usize) -> bool {
    i > 0 && i.is_multiple_of(4)
}

/// 0-based indices of the qubits that stay active on a `k`-qubit register.
pub fn unfrozen_positions(k: usize) -> Vec<usize> {
    (1..=k).filter(|&i| !is_frozen(i)).map(|i| i - 1).collect()
}

/// The restriction of `column` to the unfrozen qubits, or `None` (the zero marker) when a
/// frozen qubit carries `Y` or `Z`.
pub fn modify(column: &PauliWord) -> Option<PauliWord> {
    let k = column.n_qubits();
    let blocked = (1..=k)
        .filter(|&i| is_frozen(i))
        .any(|i| matches!(column.letter(i - 1), Letter::Y | Letter::Z));
    if blocked {
        None
    } else {
        Some(column.restrict(&unfrozen_positions(k)).phaseless())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModifiedGenerator {
    /// Column index as requested; negative values count back from the period.
    pub source_column: i64,
    /// `None` is the zero marker.
    pub word: Option<PauliWord>,
}

impl ModifiedGenerator {
    pub fn is_zero(&self) -> bool {
        self.word.is_none()
    }
}

pub fn modified_at(diagram: &SpacetimeDiagram, l: i64) -> ModifiedGenerator {
    ModifiedGenerator {
        source_column: l,
        word: modify(diagram.column(l)),
    }
}

/// One modified generator per column `ℓ = 0..p-1`.
pub fn tilde_generators(k: usize, schedule: &LambdaSchedule, cap: u64) -> Result<Vec<ModifiedGenerator>> {
    let d = spacetime(k, schedule, cap)?;
    Ok((0..d.period() as i64).map(|l| modified_at(&d, l)).collect())
}

fn all_ones_diagram(k: usize) -> Result<SpacetimeDiagram> {
    spacetime(k, &LambdaSchedule::all_ones(k)?, DEFAULT_PERIOD_CAP)
}

/// Letters allowed on frozen rows by column class `ℓ mod 4`: `{I,X}`, `{I}`, `{I}`, `{I,Z}`.
pub fn frozen_pattern_holds(d: &SpacetimeDiagram) -> bool {
    let k = d.k();
    (0..d.period() as i64).all(|l| {
        (4..=k).step_by(4).all(|i| {
            let c = d.cell(l, i);
            match l % 4 {
                0 => matches!(c, Letter::I | Letter::X),
                1 | 2 => c == Letter::I,
                _ => matches!(c, Letter::I | Letter::Z),
            }
        })
    })
}

pub fn frozen_pattern_check(k: usize) -> Result<bool> {
    Ok(frozen_pattern_holds(&all_ones_diagram(k)?))
}

fn block_count(k: usize) -> Result<usize> {
    if k >= 3 && (k + 1).is_multiple_of(4) {
        Ok((k + 1) / 4)
    } else {
        Err(Error::Domain(format!("index set needs k = 4m - 1, got k = {k}")))
    }
}

/// `{-1} ∪ ⋃_{j<m} {4j, 4j+1, 4j+2, -4j-2, -4j-3, -4j-4}` for `k = 4m - 1`, unresolved.
pub fn lemma2_index_set(k: usize) -> Result<Vec<i64>> {
    let m = block_count(k)? as i64;
    let mut out = vec![-1];
    for j in 0..m {
        out.extend([4 * j, 4 * j + 1, 4 * j + 2, -4 * j - 2, -4 * j - 3, -4 * j - 4]);
    }
    Ok(out)
}

/// The indices contributed by the last block `j = m - 1`.
pub fn newest_block(k: usize) -> Result<Vec<i64>> {
    let j = block_count(k)? as i64 - 1;
    Ok(vec![4 * j, 4 * j + 1, 4 * j + 2, -4 * j - 2, -4 * j - 3, -4 * j - 4])
}

/// `ℓ` normalized into `0..p`.
pub fn resolve_index(l: i64, period: usize) -> usize {
    l.rem_euclid(period as i64) as usize
}

/// Hypotheses of the closure lemma on a register of `k1 + k2` qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaOneInstance {
    pub k1: usize,
    pub k2: usize,
    pub set_s1: Vec<PauliWord>,
    pub set_s2: Vec<PauliWord>,
}

impl LemmaOneInstance {
    fn validate(&self) -> Result<usize> {
        let n = self.k1 + self.k2;
        if self.k1 == 0 || self.k2 == 0 {
            return Err(Error::Domain("lemma instance needs k1, k2 >= 1".into()));
        }
        if self.set_s1.is_empty() || self.set_s2.is_empty() {
            return Err(Error::Domain("lemma instance needs nonempty S1 and S2".into()));
        }
        if let Some(w) = self.set_s1.iter().chain(&self.set_s2).find(|w| w.n_qubits() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: w.n_qubits(),
            });
        }
        Ok(n)
    }

    /// Splits an S2 word into `(A, B)` on the first `k1` and last `k2` qubits.
    pub fn split(&self, w: &PauliWord) -> (PauliWord, PauliWord) {
        let a: Vec<usize> = (0..self.k1).collect();
        let b: Vec<usize> = (self.k1..self.k1 + self.k2).collect();
        (w.restrict(&a), w.restrict(&b))
    }
}

/// Condition (i): the closure of `S1` is exactly the set of all non-identity Paulis on
/// the first `k1` qubits.
pub fn lemma1_condition_i(inst: &LemmaOneInstance) -> Result<bool> {
    let n = inst.validate()?;
    let target = default_member_cap(inst.k1);
    let set = PauliSet::from_words(n, &inst.set_s1)?;
    // anything larger than the target already fails; cap just above it
    let closed = match close(&set, target.saturating_add(1)) {
        Ok(c) => c,
        Err(Error::ClosureExhausted { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    let confined = closed
        .words()
        .all(|w| (inst.k1..n).all(|q| w.letter(q) == Letter::I));
    Ok(confined && closed.len() == target)
}

/// Condition (ii): every `A_i` is nontrivial and the `B_i` generate the whole Pauli group
/// on `k2` qubits under multiplication (GF(2) rank `2·k2`).
pub fn lemma1_condition_ii(inst: &LemmaOneInstance) -> Result<bool> {
    inst.validate()?;
    let mut vectors = Vec::with_capacity(inst.set_s2.len());
    for w in &inst.set_s2 {
        let (a, b) = inst.split(w);
        if a.is_identity() {
            return Ok(false);
        }
        vectors.push(b.symplectic_vector());
    }
    Ok(bits::gf2_rank(&vectors) == 2 * inst.k2)
}

pub fn check_lemma1(inst: &LemmaOneInstance) -> Result<bool> {
    Ok(lemma1_condition_ii(inst)? && lemma1_condition_i(inst)?)
}

fn modified_words(d: &SpacetimeDiagram, ls: &[i64]) -> Option<Vec<PauliWord>> {
    ls.iter().map(|&l| modify(d.column(l))).collect()
}

/// The instance built from the index sets for `k = 4m - 1`, `m >= 2`: `S1` from
/// `I_{k-4}`, `S2` from the newest block, with `k1 = 3(m-1)` and `k2 = 3`.
/// Fails if a selected column is a zero marker.
pub fn lemma2_instance(k: usize) -> Result<LemmaOneInstance> {
    let m = block_count(k)?;
    if m < 2 {
        return Err(Error::Domain("the split instance needs k >= 7".into()));
    }
    let d = all_ones_diagram(k)?;
    instance_from(&d, &lemma2_index_set(k - 4)?, &newest_block(k)?, 3 * (m - 1), 3)
}

pub fn instance_from(
    d: &SpacetimeDiagram,
    s1: &[i64],
    s2: &[i64],
    k1: usize,
    k2: usize,
) -> Result<LemmaOneInstance> {
    let zero = || Error::Domain("a selected generator is the zero marker".into());
    Ok(LemmaOneInstance {
        k1,
        k2,
        set_s1: modified_words(d, s1).ok_or_else(zero)?,
        set_s2: modified_words(d, s2).ok_or_else(zero)?,
    })
}

/// Closure of `{Õ_k(ℓ) : ℓ ∈ I_k}` equals every Pauli on the `3m` unfrozen qubits.
pub fn lemma2_direct(k: usize) -> Result<bool> {
    let m = block_count(k)?;
    let d = all_ones_diagram(k)?;
    let Some(words) = modified_words(&d, &lemma2_index_set(k)?) else {
        return Ok(false);
    };
    let n = 3 * m;
    let set = PauliSet::from_words(n, &words)?;
    let closed = close(&set, default_member_cap(n))?;
    Ok(closed.len() == default_member_cap(n))
}

/// `Õ_big(ℓ) ≡ Õ_small(ℓ)` up to identity padding for every `ℓ` in `indices` (zero
/// markers must agree too).
pub fn padding_equivalent(small: usize, big: usize, indices: &[i64]) -> Result<bool> {
    let ds = all_ones_diagram(small)?;
    let db = all_ones_diagram(big)?;
    let n_small = unfrozen_positions(small).len();
    let n_big = unfrozen_positions(big).len();
    let positions: Vec<usize> = (0..n_small).collect();
    Ok(indices.iter().all(|&l| {
        match (modify(ds.column(l)), modify(db.column(l))) {
            (None, None) => true,
            (Some(s), Some(b)) => s.embed(n_big, &positions).key() == b.key(),
            _ => false,
        }
    }))
}

/// `O_k(±(ℓ+4), i+4) == O_k(±ℓ, i)` for `ℓ = 0..=k-4`, `i = ℓ..=ℓ+3`, over every cell
/// that lies on the chain.
///
/// The seed cell `(0, 1)` is skipped on the backward branch: there the four-step
/// relation picks up the seed itself, so `O(-4, 5)` is not a copy of `Z_1`.
pub fn block_repetition_holds(d: &SpacetimeDiagram) -> bool {
    let k = d.k() as i64;
    (0..=k - 4).all(|l| {
        (l..=l + 3)
            .filter(|&i| i >= 1 && i + 4 <= k)
            .all(|i| {
                [1i64, -1].iter().all(|&s| {
                    (s < 0 && l == 0 && i == 1)
                        || d.cell(s * (l + 4), (i + 4) as usize) == d.cell(s * l, i as usize)
                })
            })
    })
}

pub fn block_repetition_check(k: usize) -> Result<bool> {
    block_count(k)?;
    if k < 7 {
        return Err(Error::Domain("block repetition needs k >= 7".into()));
    }
    Ok(block_repetition_holds(&all_ones_diagram(k)?))
}

/// `a(ℓ+s, i) ≡ a(ℓ, i-s) + a(ℓ, i) + a(ℓ, i+s) + a(ℓ-s, i)` with `s = 2^r`, at every
/// `ℓ` and `1 <= i <= k`; the same for the `b` bits.
pub fn recurrence_holds(d: &SpacetimeDiagram, r: u32) -> bool {
    let s = 1i64 << r;
    let k = d.k() as i64;
    let p = d.period() as i64;
    let rel = |f: &dyn Fn(i64, i64) -> bool, l: i64, i: i64| {
        f(l + s, i) == (f(l, i - s) ^ f(l, i) ^ f(l, i + s) ^ f(l - s, i))
    };
    (0..p).all(|l| {
        (1..=k).all(|i| rel(&|l, i| d.a(l, i), l, i) && rel(&|l, i| d.b(l, i), l, i))
    })
}

pub fn check_recurrence(k: usize, r: u32) -> Result<bool> {
    if r > 0 && (r >= usize::BITS || (1usize << r) >= k) {
        return Err(Error::Domain(format!("recurrence needs 2^r < k, got r = {r}, k = {k}")));
    }
    Ok(recurrence_holds(&all_ones_diagram(k)?, r))
}

/// `b(ℓ, i) == a(ℓ-1, i)` at every cell: a `Z` becomes a `Y` one step later.
pub fn b_follows_a(d: &SpacetimeDiagram) -> bool {
    let k = d.k() as i64;
    (0..d.period() as i64).all(|l| (1..=k).all(|i| d.b(l, i) == d.a(l - 1, i)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremOneReport {
    pub k: usize,
    pub m: usize,
    /// The largest `4m - 1 <= k`.
    pub q: usize,
    pub verified: bool,
    pub lines: Vec<CheckLine>,
}

/// Universality on `3m` qubits for `m = ⌊(k+1)/4⌋`.
///
/// Reduced registers of at most [`DIRECT_CLOSURE_QUBITS`] qubits are closed directly.
/// Beyond that the argument runs as an induction from the `k = 7` base: for each
/// `q' = 11, 15, …, q` the generators indexed by `I_{q'-4}` are identity-padded copies
/// of the previous level's (condition (i) by hypothesis), the newest block satisfies
/// condition (ii), and the block-repetition structure is present. Finally the
/// generators of `q` are padded copies of those of `k`.
pub fn verify_theorem1(k: usize) -> Result<TheoremOneReport> {
    if k < 3 {
        return Err(Error::Domain("universality statement needs k >= 3".into()));
    }
    let m = (k + 1) / 4;
    let q = 4 * m - 1;
    let mut lines = Vec::new();
    if 3 * m <= DIRECT_CLOSURE_QUBITS {
        lines.push(CheckLine::new("lemma2-direct", q, lemma2_direct(q)?).param("qubits", 3 * m));
    } else {
        lines.push(CheckLine::new("lemma2-direct", 7, lemma2_direct(7)?).param("qubits", 6));
        for step in (11..=q).step_by(4) {
            let prev = lemma2_index_set(step - 4)?;
            lines.push(CheckLine::new("padding", step, padding_equivalent(step - 4, step, &prev)?).param("from", step - 4));
            let ii = match lemma2_instance(step) {
                Ok(inst) => lemma1_condition_ii(&inst)?,
                Err(Error::Domain(_)) => false,
                Err(e) => return Err(e),
            };
            lines.push(CheckLine::new("lemma1-ii", step, ii));
            lines.push(CheckLine::new("block-repetition", step, block_repetition_check(step)?));
        }
    }
    if k > q {
        let pass = padding_equivalent(q, k, &lemma2_index_set(q)?)?;
        lines.push(CheckLine::new("padding", k, pass).param("from", q));
    }
    let verified = lines.iter().all(|l| l.pass);
    Ok(TheoremOneReport {
        k,
        m,
        q,
        verified,
        lines,
    })
}
