//! Glider classes of the all-`H` schedule.
//!
//! With no phase gates the generators are quadratic in `2k+2` Majorana-like strings,
//! so every closure element is a `Y` string capped by at most two non-`Y` letters.

use std::fmt;

use crate::clifford::DEFAULT_PERIOD_CAP;
use crate::lie::{close, default_member_cap, PauliSet};
use crate::clifford::spacetime;
use crate::error::Result;
use crate::pauli::{Letter, PauliWord};
use crate::report::CheckLine;
use crate::schedule::LambdaSchedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GliderClass {
    /// `Y…Y U` starting at qubit 1, `U ∈ {X, Z}`.
    Prefix,
    /// `U Y…Y` ending at qubit `k`.
    Suffix,
    /// `U Y…Y V` strictly inside.
    Interior,
    /// A lone `Y_i`.
    SingleY,
    /// `Y` on every qubit.
    FullY,
}

impl fmt::Display for GliderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GliderClass::Prefix => "prefix",
            GliderClass::Suffix => "suffix",
            GliderClass::Interior => "interior",
            GliderClass::SingleY => "single-y",
            GliderClass::FullY => "full-y",
        };
        f.write_str(s)
    }
}

fn is_end(l: Letter) -> bool {
    matches!(l, Letter::X | Letter::Z)
}

/// Class of a Pauli string, or `None` if it is not a glider.
///
/// Precedence for short words: full `Y` string, then lone `Y`, then prefix, suffix, interior.
pub fn classify_glider(p: &PauliWord) -> Option<GliderClass> {
    let letters = p.letters();
    let k = letters.len();
    let a = letters.iter().position(|&l| l != Letter::I)?;
    let b = letters.iter().rposition(|&l| l != Letter::I)?;
    if b > a && letters[a + 1..b].iter().any(|&l| l != Letter::Y) {
        return None;
    }
    let (la, lb) = (letters[a], letters[b]);
    if la == Letter::Y && lb == Letter::Y {
        return if a == 0 && b == k - 1 {
            Some(GliderClass::FullY)
        } else if a == b {
            Some(GliderClass::SingleY)
        } else {
            None
        };
    }
    if a == 0 && is_end(lb) && (a == b || la == Letter::Y) {
        return Some(GliderClass::Prefix);
    }
    if b == k - 1 && is_end(la) && (a == b || lb == Letter::Y) {
        return Some(GliderClass::Suffix);
    }
    if a < b && is_end(la) && is_end(lb) {
        return Some(GliderClass::Interior);
    }
    None
}

#[derive(Debug, Clone)]
pub struct MatchgateReport {
    pub k: usize,
    pub dimension: usize,
    pub expected: usize,
    pub unclassified: Vec<PauliWord>,
    pub counts: Vec<(GliderClass, usize)>,
}

impl MatchgateReport {
    pub fn passed(&self) -> bool {
        self.dimension == self.expected && self.unclassified.is_empty()
    }

    pub fn line(&self) -> CheckLine {
        CheckLine::new("matchgate", self.k, self.passed())
            .param("dim", self.dimension)
            .param("expected", self.expected)
            .param("unclassified", self.unclassified.len())
    }
}

/// Closes the all-`H` generators and sorts every element into a glider class.
/// The dimension law holds from `k = 2`; at `k = 1` the closure is all of `su(2)`.
pub fn matchgate_class_check(k: usize) -> Result<MatchgateReport> {
    let d = spacetime(k, &LambdaSchedule::all_zeros(k)?, DEFAULT_PERIOD_CAP)?;
    let gens = PauliSet::from_words(k, d.columns())?;
    let alg = close(&gens, default_member_cap(k))?;
    let mut counts = std::collections::BTreeMap::new();
    let mut unclassified = Vec::new();
    for w in alg.sorted_words() {
        match classify_glider(&w) {
            Some(c) => *counts.entry(c).or_insert(0usize) += 1,
            None => unclassified.push(w),
        }
    }
    Ok(MatchgateReport {
        k,
        dimension: alg.len(),
        expected: (k + 1) * (2 * k + 1),
        unclassified,
        counts: counts.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(classify_glider(&w("YYXII")), Some(GliderClass::Prefix));
        assert_eq!(classify_glider(&w("IIZYY")), Some(GliderClass::Suffix));
        assert_eq!(classify_glider(&w("IXYZI")), Some(GliderClass::Interior));
        assert_eq!(classify_glider(&w("IIYII")), Some(GliderClass::SingleY));
        assert_eq!(classify_glider(&w("YYYYY")), Some(GliderClass::FullY));
        assert_eq!(classify_glider(&w("IXIZI")), None);
        assert_eq!(classify_glider(&w("IIIII")), None);
    }

    #[test]
    fn small_closures_are_orthogonal() {
        for k in 2..=7 {
            let r = matchgate_class_check(k).unwrap();
            assert!(r.passed(), "k={k}: {:?}", r);
        }
    }
}
