//! Pauli words in the binary symplectic representation.
//!
//! A word on `n` qubits is `i^phase · σ(x_0,z_0) ⊗ … ⊗ σ(x_{n-1},z_{n-1})` where
//! `σ(0,0)=I, σ(1,0)=X, σ(1,1)=Y, σ(0,1)=Z`. The phase is measured against the
//! Hermitian letters, so `X·Z = -iY` has bits `(1;1)` and phase exponent 3.
//!
//! Qubits are indexed from 0 in the API; qubit 0 is the leftmost character of the
//! textual form (the "first" qubit of a chain).

use std::fmt;
use std::str::FromStr;

use crate::bits;
use crate::error::{check_dims, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' | '_' => Some(Letter::I),
            'X' | 'x' => Some(Letter::X),
            'Y' | 'y' => Some(Letter::Y),
            'Z' | 'z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// Phaseless identity of a Pauli word, used for set membership.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliKey {
    n_qubits: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PauliKey {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn to_word(&self) -> PauliWord {
        PauliWord {
            n_qubits: self.n_qubits,
            x: self.x.clone(),
            z: self.z.clone(),
            phase: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    n_qubits: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliWord {
    pub fn identity(n_qubits: usize) -> Self {
        let w = bits::words_for(n_qubits);
        PauliWord {
            n_qubits,
            x: vec![0; w],
            z: vec![0; w],
            phase: 0,
        }
    }

    pub fn single(n_qubits: usize, qubit: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n_qubits);
        p.set_letter(qubit, letter);
        p
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut p = Self::identity(letters.len());
        for (q, l) in letters.iter().enumerate() {
            p.set_letter(q, *l);
        }
        p
    }

    /// Builds a word from packed X and Z bit-vectors; excess high bits must be clear.
    pub fn from_bits(n_qubits: usize, x: Vec<u64>, z: Vec<u64>, phase: u8) -> Result<Self> {
        let w = bits::words_for(n_qubits);
        if x.len() != w || z.len() != w {
            return Err(Error::Domain(format!(
                "expected {w} packed words for {n_qubits} qubits"
            )));
        }
        let p = PauliWord {
            n_qubits,
            x,
            z,
            phase: phase % 4,
        };
        if !n_qubits.is_multiple_of(64) && w > 0 {
            let mask = !0u64 << (n_qubits % 64);
            if (p.x[w - 1] | p.z[w - 1]) & mask != 0 {
                return Err(Error::Domain("bits set beyond n_qubits".into()));
            }
        }
        Ok(p)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    pub fn phaseless(&self) -> Self {
        self.clone().with_phase(0)
    }

    pub fn x_bits(&self) -> &[u64] {
        &self.x
    }

    pub fn z_bits(&self) -> &[u64] {
        &self.z
    }

    pub fn x_bit(&self, q: usize) -> bool {
        bits::get(&self.x, q)
    }

    pub fn z_bit(&self, q: usize) -> bool {
        bits::get(&self.z, q)
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n_qubits).map(|q| self.letter(q)).collect()
    }

    pub fn set_letter(&mut self, q: usize, letter: Letter) {
        assert!(q < self.n_qubits, "qubit {q} out of range");
        let (x, z) = letter.bits();
        bits::set(&mut self.x, q, x);
        bits::set(&mut self.z, q, z);
    }

    pub fn key(&self) -> PauliKey {
        PauliKey {
            n_qubits: self.n_qubits,
            x: self.x.clone(),
            z: self.z.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        bits::is_zero(&self.x) && bits::is_zero(&self.z)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Symplectic vector `(x; z)` packed into `2n` bits: X part first.
    pub fn symplectic_vector(&self) -> Vec<u64> {
        let n = self.n_qubits;
        let mut v = vec![0u64; bits::words_for(2 * n)];
        for q in 0..n {
            bits::set(&mut v, q, self.x_bit(q));
            bits::set(&mut v, n + q, self.z_bit(q));
        }
        v
    }

    /// Restriction to the listed qubits (in order); phase is dropped.
    pub fn restrict(&self, qubits: &[usize]) -> PauliWord {
        let mut out = PauliWord::identity(qubits.len());
        for (dst, &src) in qubits.iter().enumerate() {
            out.set_letter(dst, self.letter(src));
        }
        out
    }

    /// Embeds this word into `n_total` qubits with qubit `q` placed at `positions[q]`.
    pub fn embed(&self, n_total: usize, positions: &[usize]) -> PauliWord {
        assert_eq!(positions.len(), self.n_qubits);
        let mut out = PauliWord::identity(n_total);
        for (src, &dst) in positions.iter().enumerate() {
            out.set_letter(dst, self.letter(src));
        }
        out.phase = self.phase;
        out
    }

    pub(crate) fn mul_unchecked(&self, other: &PauliWord) -> PauliWord {
        // i^{xz} X^x Z^z convention per letter; reorder Z1 X2 -> X2 Z1 costs (-1)^{z1.x2}.
        let mut acc = self.phase as i64 + other.phase as i64;
        acc += bits::and_popcount(&self.x, &self.z) as i64;
        acc += bits::and_popcount(&other.x, &other.z) as i64;
        acc += 2 * bits::and_popcount(&self.z, &other.x) as i64;
        let x: Vec<u64> = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z: Vec<u64> = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        acc -= bits::and_popcount(&x, &z) as i64;
        PauliWord {
            n_qubits: self.n_qubits,
            x,
            z,
            phase: acc.rem_euclid(4) as u8,
        }
    }

    pub(crate) fn anticommutes_unchecked(&self, other: &PauliWord) -> bool {
        let s = bits::and_popcount(&self.x, &other.z) + bits::and_popcount(&self.z, &other.x);
        s & 1 == 1
    }

    /// Exact product `self · other`.
    pub fn mul(&self, other: &PauliWord) -> Result<PauliWord> {
        check_dims(self.n_qubits, other.n_qubits)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn commutes(&self, other: &PauliWord) -> Result<bool> {
        check_dims(self.n_qubits, other.n_qubits)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    /// Phaseless commutator: `None` if the words commute, else their phaseless product.
    pub fn commutator(&self, other: &PauliWord) -> Result<Option<PauliWord>> {
        check_dims(self.n_qubits, other.n_qubits)?;
        if self.anticommutes_unchecked(other) {
            Ok(Some(self.mul_unchecked(other).with_phase(0)))
        } else {
            Ok(None)
        }
    }
}

pub fn pauli_mul(p: &PauliWord, q: &PauliWord) -> Result<PauliWord> {
    p.mul(q)
}

pub fn commutes(p: &PauliWord, q: &PauliWord) -> Result<bool> {
    p.commutes(q)
}

pub fn commutator(p: &PauliWord, q: &PauliWord) -> Result<Option<PauliWord>> {
    p.commutator(q)
}

/// The form `ξ^T Λ ζ` with `Λ = [[0, I], [I, 0]]` on `2n`-bit symplectic vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticForm {
    pub n_qubits: usize,
}

impl SymplecticForm {
    pub fn new(n_qubits: usize) -> Self {
        SymplecticForm { n_qubits }
    }

    pub fn product(&self, p: &PauliWord, q: &PauliWord) -> Result<u8> {
        check_dims(self.n_qubits, p.n_qubits)?;
        check_dims(self.n_qubits, q.n_qubits)?;
        Ok(p.anticommutes_unchecked(q) as u8)
    }
}

const PHASE_TOKENS: [&str; 4] = ["+1", "+i", "-1", "-i"];

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != 0 {
            f.write_str(PHASE_TOKENS[self.phase as usize])?;
        }
        for q in 0..self.n_qubits {
            write!(f, "{}", self.letter(q).as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('\u{2212}', "-");
        let (phase, rest) = if let Some(r) = s.strip_prefix("+1") {
            (0, r)
        } else if let Some(r) = s.strip_prefix("-1") {
            (2, r)
        } else if let Some(r) = s.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else {
            (0, s.as_str())
        };
        if rest.is_empty() {
            return Err(Error::Parse("empty Pauli word".into()));
        }
        let letters = rest
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse(format!("bad letter {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliWord::from_letters(&letters).with_phase(phase))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let r = w("X").mul(&w("Z")).unwrap();
        assert_eq!(r.letter(0), Letter::Y);
        assert_eq!(r.phase(), 3);
        assert_eq!(r.to_string(), "-iY");
        let r = w("Z").mul(&w("X")).unwrap();
        assert_eq!(r.phase(), 1);
    }

    #[test]
    fn single_qubit_table() {
        // XY = iZ, YZ = iX, ZX = iY
        assert_eq!(w("X").mul(&w("Y")).unwrap(), w("+iZ"));
        assert_eq!(w("Y").mul(&w("Z")).unwrap(), w("+iX"));
        assert_eq!(w("Z").mul(&w("X")).unwrap(), w("+iY"));
        assert_eq!(w("Y").mul(&w("Y")).unwrap(), w("I"));
    }

    #[test]
    fn identity_is_neutral() {
        let p = w("-iXYZIZ");
        let id = PauliWord::identity(5);
        assert_eq!(id.mul(&p).unwrap(), p);
        assert_eq!(p.mul(&id).unwrap(), p);
    }

    #[test]
    fn commutation_basics() {
        assert!(w("XI").commutes(&w("IZ")).unwrap());
        assert!(!w("X").commutes(&w("Z")).unwrap());
        assert_eq!(w("X").commutator(&w("Z")).unwrap(), Some(w("Y")));
        assert_eq!(w("XX").commutator(&w("XX")).unwrap(), None);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert_eq!(
            w("XX").mul(&w("X")),
            Err(Error::Dimension {
                expected: 2,
                found: 1
            })
        );
        assert!(w("XX").commutes(&w("X")).is_err());
        assert!(SymplecticForm::new(3).product(&w("XX"), &w("XX")).is_err());
    }

    #[test]
    fn text_round_trip_and_tokens() {
        for s in ["+iXYZ", "-1IIZ", "-iY", "XZ"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert_eq!(w("+1XZ"), w("XZ"));
        assert_eq!(w("\u{2212}iX").phase(), 3);
        assert!("XQ".parse::<PauliWord>().is_err());
        assert!("+i".parse::<PauliWord>().is_err());
    }

    #[test]
    fn key_ignores_phase() {
        let mut set = std::collections::HashSet::new();
        set.insert(w("XYZ").key());
        set.insert(w("-iXYZ").key());
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn wide_words_cross_word_boundary() {
        let mut p = PauliWord::identity(130);
        p.set_letter(0, Letter::X);
        p.set_letter(129, Letter::Z);
        let mut q = PauliWord::identity(130);
        q.set_letter(129, Letter::X);
        assert!(!p.commutes(&q).unwrap());
        let r = p.mul(&q).unwrap();
        assert_eq!(r.letter(129), Letter::Y);
        assert_eq!(r.letter(0), Letter::X);
        assert_eq!(r.weight(), 2);
    }

    #[test]
    fn restrict_and_embed() {
        let p = w("ZXZIY");
        assert_eq!(p.restrict(&[0, 2, 4]), w("ZZY"));
        assert_eq!(w("XY").embed(4, &[1, 3]), w("IXIY"));
    }
}
