//! Dynamical Lie algebras generated by Pauli words.
//!
//! For Pauli generators the real Lie algebra is spanned by `i·P` for the words `P`
//! reachable by commutators, and the commutator of two words is (up to a scalar) their
//! product when they anticommute and zero otherwise. Closure is therefore a set question
//! over phaseless words.

use std::collections::HashSet;
use std::fmt;

use crate::clifford::{spacetime, DEFAULT_PERIOD_CAP};
use crate::error::{check_dims, Error, Result};
use crate::pauli::PauliWord;
use crate::schedule::LambdaSchedule;

/// Widest register a [`PauliSet`] supports; keys pack X and Z into one `u128`.
pub const MAX_SET_QUBITS: usize = 64;

const BYTES_PER_MEMBER: usize = 48;
const DEFAULT_MEM_GUARD_MB: usize = 2048;

/// Memory guard in bytes, overridable through `DUCLAB_MEM_GUARD_MB`.
pub fn mem_guard_bytes() -> usize {
    std::env::var("DUCLAB_MEM_GUARD_MB")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_MEM_GUARD_MB)
        .saturating_mul(1 << 20)
}

#[inline]
fn pack(p: &PauliWord) -> u128 {
    let x = p.x_bits().first().copied().unwrap_or(0) as u128;
    let z = p.z_bits().first().copied().unwrap_or(0) as u128;
    x | (z << 64)
}

#[inline]
fn anticommute(a: u128, b: u128) -> bool {
    let (ax, az) = (a as u64, (a >> 64) as u64);
    let (bx, bz) = (b as u64, (b >> 64) as u64);
    ((ax & bz).count_ones() + (az & bx).count_ones()) & 1 == 1
}

/// Deduplicated set of phaseless, non-identity Pauli words on a common register.
#[derive(Debug, Clone)]
pub struct PauliSet {
    n_qubits: usize,
    members: Vec<u128>,
    index: HashSet<u128>,
}

impl PauliSet {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_SET_QUBITS {
            return Err(Error::Domain(format!(
                "Pauli sets support 1..={MAX_SET_QUBITS} qubits, got {n_qubits}"
            )));
        }
        Ok(PauliSet {
            n_qubits,
            members: Vec::new(),
            index: HashSet::new(),
        })
    }

    pub fn from_words<'a>(
        n_qubits: usize,
        words: impl IntoIterator<Item = &'a PauliWord>,
    ) -> Result<Self> {
        let mut set = Self::new(n_qubits)?;
        for w in words {
            set.insert(w)?;
        }
        Ok(set)
    }

    /// Inserts the phaseless form of `p`; the identity is ignored. Returns whether it was new.
    pub fn insert(&mut self, p: &PauliWord) -> Result<bool> {
        check_dims(self.n_qubits, p.n_qubits())?;
        Ok(self.insert_key(pack(p)))
    }

    fn insert_key(&mut self, key: u128) -> bool {
        if key == 0 || !self.index.insert(key) {
            return false;
        }
        self.members.push(key);
        true
    }

    pub fn contains(&self, p: &PauliWord) -> bool {
        p.n_qubits() == self.n_qubits && self.index.contains(&pack(p))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn unpack(&self, key: u128) -> PauliWord {
        let n = self.n_qubits;
        let mask = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
        PauliWord::from_bits(
            n,
            vec![key as u64 & mask],
            vec![(key >> 64) as u64 & mask],
            0,
        )
        .expect("packed key fits the register")
    }

    /// Members as phaseless words, in insertion order.
    pub fn words(&self) -> impl Iterator<Item = PauliWord> + '_ {
        self.members.iter().map(|&k| self.unpack(k))
    }

    /// Members sorted by their packed key; stable across runs.
    pub fn sorted_words(&self) -> Vec<PauliWord> {
        let mut keys = self.members.clone();
        keys.sort_unstable();
        keys.into_iter().map(|k| self.unpack(k)).collect()
    }

    pub fn same_members(&self, other: &PauliSet) -> bool {
        self.n_qubits == other.n_qubits && self.index == other.index
    }
}

impl PartialEq for PauliSet {
    fn eq(&self, other: &Self) -> bool {
        self.same_members(other)
    }
}

impl Eq for PauliSet {}

/// Smallest superset of `generators` closed under commutators. Fails with
/// [`Error::ClosureExhausted`] once more than `member_cap` words (or the memory guard)
/// would be needed.
pub fn close(generators: &PauliSet, member_cap: usize) -> Result<PauliSet> {
    if generators.is_empty() {
        return Err(Error::Domain("closure needs at least one generator".into()));
    }
    let cap = member_cap.min(mem_guard_bytes() / BYTES_PER_MEMBER);
    let mut out = PauliSet::new(generators.n_qubits)?;
    for &g in &generators.members {
        out.insert_key(g);
    }
    if out.len() > cap {
        return Err(Error::ClosureExhausted { cap });
    }
    // every unordered pair (i, j) with j < i is visited exactly once
    let mut i = 1;
    while i < out.members.len() {
        let a = out.members[i];
        for j in 0..i {
            let b = out.members[j];
            if anticommute(a, b) && out.insert_key(a ^ b) && out.len() > cap {
                return Err(Error::ClosureExhausted { cap });
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Default member cap for a register of `n` qubits: `4^n - 1`, saturating.
pub fn default_member_cap(n_qubits: usize) -> usize {
    4usize
        .checked_pow(n_qubits as u32)
        .map(|v| v - 1)
        .unwrap_or(usize::MAX)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraFamily {
    /// `su(2^k)`, dimension `4^k - 1`
    SuPow,
    /// `sp(2^k)`, dimension `2^{k-1}(2^k + 1)`
    SpPow,
    /// `sp(2k)`, dimension `k(2k + 1)`
    SpLinear,
    /// `so(2^k)`, dimension `2^{k-1}(2^k - 1)`
    SoPow,
    /// `so(2(k+1))`, dimension `(k + 1)(2k + 1)`
    SoLinear,
}

impl AlgebraFamily {
    pub const ORDER: [AlgebraFamily; 5] = [
        AlgebraFamily::SuPow,
        AlgebraFamily::SpPow,
        AlgebraFamily::SpLinear,
        AlgebraFamily::SoPow,
        AlgebraFamily::SoLinear,
    ];

    pub fn dimension(self, k: usize) -> Option<u128> {
        let k = k as u32;
        let two_k = 2u128.checked_pow(k)?;
        let kk = k as u128;
        Some(match self {
            AlgebraFamily::SuPow => two_k * two_k - 1,
            AlgebraFamily::SpPow => two_k * (two_k + 1) / 2,
            AlgebraFamily::SoPow => two_k * (two_k - 1) / 2,
            AlgebraFamily::SpLinear => kk * (2 * kk + 1),
            AlgebraFamily::SoLinear => (kk + 1) * (2 * kk + 1),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraFamily::SuPow => "su(2^k)",
            AlgebraFamily::SpPow => "sp(2^k)",
            AlgebraFamily::SpLinear => "sp(2k)",
            AlgebraFamily::SoPow => "so(2^k)",
            AlgebraFamily::SoLinear => "so(2(k+1))",
        }
    }
}

/// Every family whose dimension formula matches; empty means unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraLabel {
    pub families: Vec<AlgebraFamily>,
    pub dimension: usize,
}

impl AlgebraLabel {
    pub fn is_unknown(&self) -> bool {
        self.families.is_empty()
    }

    pub fn matches(&self, family: AlgebraFamily) -> bool {
        self.families.contains(&family)
    }
}

impl fmt::Display for AlgebraLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.families.is_empty() {
            return f.write_str("unknown");
        }
        let names: Vec<_> = self.families.iter().map(|fam| fam.name()).collect();
        f.write_str(&names.join("|"))
    }
}

pub fn classify(dimension: usize, k: usize) -> AlgebraLabel {
    let families = if dimension == 0 || k == 0 {
        Vec::new()
    } else {
        AlgebraFamily::ORDER
            .into_iter()
            .filter(|f| f.dimension(k) == Some(dimension as u128))
            .collect()
    };
    AlgebraLabel {
        families,
        dimension,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSummary {
    pub k: usize,
    pub period: u64,
    pub dimension: usize,
    pub label: AlgebraLabel,
}

/// Period, algebra dimension and label for `{O_k(ℓ)}` under `schedule`.
pub fn closure_dim(
    k: usize,
    schedule: &LambdaSchedule,
    period_cap: u64,
    member_cap: usize,
) -> Result<ClosureSummary> {
    let diagram = spacetime(k, schedule, period_cap)?;
    let gens = PauliSet::from_words(k, diagram.columns())?;
    let algebra = close(&gens, member_cap)?;
    Ok(ClosureSummary {
        k,
        period: diagram.period() as u64,
        dimension: algebra.len(),
        label: classify(algebra.len(), k),
    })
}

/// [`closure_dim`] with the default caps.
pub fn closure_dim_default(k: usize, schedule: &LambdaSchedule) -> Result<ClosureSummary> {
    closure_dim(k, schedule, DEFAULT_PERIOD_CAP, default_member_cap(k))
}
