//! Polynomial picture of the translation-invariant circuit.
//!
//! On the infinite chain a Pauli operator is a pair of Laurent polynomials `(x(u); z(u))`
//! over GF(2) and one circuit step is the matrix `t_∞ = (0 1; 1 u+1+u⁻¹)`. Mirroring the
//! open chain of length `k` about sites `0` and `k+1` periodizes everything with period
//! `2(k+1)`, so all identities live in the cyclic ring `GF(2)[u]/(u^M - 1)`,
//! `M = 2(k+1)`.

use std::fmt;

use crate::bits;
use crate::clifford::{schedule_period, spacetime};
use crate::error::{Error, Result};
use crate::report::CheckLine;
use crate::schedule::LambdaSchedule;

/// Element of `GF(2)[u]/(u^M - 1)`; bit `d` is the coefficient of `u^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicPoly {
    modulus: usize,
    coeffs: Vec<u64>,
}

impl CyclicPoly {
    pub fn zero(modulus: usize) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        CyclicPoly {
            modulus,
            coeffs: vec![0; bits::words_for(modulus)],
        }
    }

    pub fn one(modulus: usize) -> Self {
        Self::monomial(modulus, 0)
    }

    /// `u^d`, negative `d` allowed.
    pub fn monomial(modulus: usize, d: i64) -> Self {
        let mut p = Self::zero(modulus);
        p.toggle(d);
        p
    }

    /// Sum of `u^d` over `degrees` (repeated degrees cancel).
    pub fn from_degrees(modulus: usize, degrees: &[i64]) -> Self {
        let mut p = Self::zero(modulus);
        for &d in degrees {
            p.toggle(d);
        }
        p
    }

    fn index(&self, d: i64) -> usize {
        d.rem_euclid(self.modulus as i64) as usize
    }

    pub fn toggle(&mut self, d: i64) {
        let i = self.index(d);
        bits::flip(&mut self.coeffs, i);
    }

    pub fn coeff(&self, d: i64) -> bool {
        bits::get(&self.coeffs, self.index(d))
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.modulus).filter(|&d| bits::get(&self.coeffs, d)).collect()
    }

    pub fn is_zero(&self) -> bool {
        bits::is_zero(&self.coeffs)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.modulus)
    }

    fn check(&self, other: &CyclicPoly) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "ring mismatch: modulus {} vs {}",
                self.modulus, other.modulus
            )))
        }
    }

    pub fn add(&self, other: &CyclicPoly) -> Result<CyclicPoly> {
        self.check(other)?;
        let mut out = self.clone();
        bits::xor_into(&mut out.coeffs, &other.coeffs);
        Ok(out)
    }

    pub fn mul(&self, other: &CyclicPoly) -> Result<CyclicPoly> {
        self.check(other)?;
        let mut out = Self::zero(self.modulus);
        let ds = other.degrees();
        for a in self.degrees() {
            for &b in &ds {
                bits::flip(&mut out.coeffs, (a + b) % self.modulus);
            }
        }
        Ok(out)
    }

    /// `p(u) ↦ p(u^2)`; over GF(2) this equals `p^2`.
    pub fn frobenius(&self) -> CyclicPoly {
        let mut out = Self::zero(self.modulus);
        for d in self.degrees() {
            bits::flip(&mut out.coeffs, (2 * d) % self.modulus);
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> CyclicPoly {
        let mut base = self.clone();
        let mut acc = Self::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            base = base.mul(&base).expect("same ring");
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds = self.degrees();
        if ds.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = ds
            .iter()
            .map(|&d| match d {
                0 => "1".to_string(),
                1 => "u".to_string(),
                _ => format!("u^{d}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// `[[a, b], [c, d]]` over a common cyclic ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix2x2 {
    pub entries: [[CyclicPoly; 2]; 2],
}

impl PolyMatrix2x2 {
    pub fn new(a: CyclicPoly, b: CyclicPoly, c: CyclicPoly, d: CyclicPoly) -> Result<Self> {
        a.check(&b)?;
        a.check(&c)?;
        a.check(&d)?;
        Ok(PolyMatrix2x2 {
            entries: [[a, b], [c, d]],
        })
    }

    pub fn identity(modulus: usize) -> Self {
        let (o, z) = (CyclicPoly::one(modulus), CyclicPoly::zero(modulus));
        PolyMatrix2x2 {
            entries: [[o.clone(), z.clone()], [z, o]],
        }
    }

    pub fn modulus(&self) -> usize {
        self.entries[0][0].modulus
    }

    pub fn mul(&self, other: &PolyMatrix2x2) -> Result<PolyMatrix2x2> {
        self.entries[0][0].check(&other.entries[0][0])?;
        let e = |i: usize, j: usize| -> CyclicPoly {
            let l = self.entries[i][0].mul(&other.entries[0][j]).expect("same ring");
            let r = self.entries[i][1].mul(&other.entries[1][j]).expect("same ring");
            l.add(&r).expect("same ring")
        };
        Ok(PolyMatrix2x2 {
            entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
        })
    }

    pub fn add(&self, other: &PolyMatrix2x2) -> Result<PolyMatrix2x2> {
        let e = |i: usize, j: usize| self.entries[i][j].add(&other.entries[i][j]);
        Ok(PolyMatrix2x2 {
            entries: [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]],
        })
    }

    pub fn scale(&self, s: &CyclicPoly) -> Result<PolyMatrix2x2> {
        let e = |i: usize, j: usize| self.entries[i][j].mul(s);
        Ok(PolyMatrix2x2 {
            entries: [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]],
        })
    }

    pub fn pow(&self, mut e: u64) -> PolyMatrix2x2 {
        let mut base = self.clone();
        let mut acc = Self::identity(self.modulus());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            base = base.mul(&base).expect("same ring");
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> CyclicPoly {
        self.entries[0][0].add(&self.entries[1][1]).expect("same ring")
    }

    pub fn det(&self) -> CyclicPoly {
        let [[a, b], [c, d]] = &self.entries;
        a.mul(d)
            .and_then(|ad| ad.add(&b.mul(c)?))
            .expect("same ring")
    }

    /// Acts on a column `(x; z)`.
    pub fn apply(&self, x: &CyclicPoly, z: &CyclicPoly) -> Result<(CyclicPoly, CyclicPoly)> {
        let [[a, b], [c, d]] = &self.entries;
        Ok((a.mul(x)?.add(&b.mul(z)?)?, c.mul(x)?.add(&d.mul(z)?)?))
    }
}

fn check_modulus(modulus: usize, min: usize) -> Result<()> {
    if modulus < min || !modulus.is_multiple_of(2) {
        Err(Error::Domain(format!(
            "modulus must be even and at least {min}, got {modulus}"
        )))
    } else {
        Ok(())
    }
}

/// `t_∞ = (0 1; 1 u+1+u⁻¹)` reduced into the ring of the given modulus.
pub fn t_infinity(modulus: usize) -> Result<PolyMatrix2x2> {
    check_modulus(modulus, 4)?;
    PolyMatrix2x2::new(
        CyclicPoly::zero(modulus),
        CyclicPoly::one(modulus),
        CyclicPoly::one(modulus),
        CyclicPoly::from_degrees(modulus, &[1, 0, -1]),
    )
}

/// `γ = Tr(t_∞³)`, computed by ring arithmetic.
pub fn gamma(modulus: usize) -> Result<CyclicPoly> {
    check_modulus(modulus, 8)?;
    Ok(t_infinity(modulus)?.pow(3).trace())
}

/// The closed form `(u+1+u⁻¹)(u²+u⁻²)`.
pub fn gamma_closed_form(modulus: usize) -> Result<CyclicPoly> {
    check_modulus(modulus, 8)?;
    CyclicPoly::from_degrees(modulus, &[1, 0, -1]).mul(&CyclicPoly::from_degrees(modulus, &[2, -2]))
}

/// `(t³)² == γ·t³ + I`, the Cayley–Hamilton identity of a unimodular 2×2 matrix.
pub fn cayley_hamilton_holds(modulus: usize) -> Result<bool> {
    let t3 = t_infinity(modulus)?.pow(3);
    let g = t3.trace();
    let rhs = t3.scale(&g)?.add(&PolyMatrix2x2::identity(modulus))?;
    Ok(t3.pow(2) == rhs)
}

/// Evolves `Z_1` on the mirrored ring of `2(k+1)` sites and compares each step, read on
/// sites `1..=k`, with the open-chain column; the mirror sites `0` and `k+1` must stay
/// empty. Checked for `ℓ = 0..steps`.
pub fn ghost_image_check(k: usize, steps: usize) -> Result<bool> {
    let modulus = 2 * (k + 1);
    let t = t_infinity(modulus)?;
    let d = spacetime(k, &LambdaSchedule::all_ones(k)?, crate::clifford::DEFAULT_PERIOD_CAP)?;
    let mut x = CyclicPoly::zero(modulus);
    let mut z = CyclicPoly::from_degrees(modulus, &[1, -1]);
    for l in 0..steps as i64 {
        let col = d.column(l);
        for edge in [0, k as i64 + 1] {
            if x.coeff(edge) || z.coeff(edge) {
                return Ok(false);
            }
        }
        for i in 1..=k {
            if x.coeff(i as i64) != col.x_bit(i - 1) || z.coeff(i as i64) != col.z_bit(i - 1) {
                return Ok(false);
            }
        }
        (x, z) = t.apply(&x, &z)?;
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma3Report {
    pub r: u32,
    pub k: usize,
    pub modulus: usize,
    /// Directly computed open-chain period.
    pub period: u64,
    /// `(t³)^{2^r} == γ^{2^{r-1}}·(t³)^{2^{r-1}} + I`.
    pub doubling_identity: bool,
    /// `γ^{2^{r-1}} == 0` in the ring.
    pub annihilation: bool,
    pub cayley_hamilton: bool,
    /// `p_k == 3k + 3`; for `r = 1` only `p_k | 3k + 3` is required.
    pub period_matches: bool,
}

impl Lemma3Report {
    pub fn passed(&self) -> bool {
        self.doubling_identity && self.annihilation && self.cayley_hamilton && self.period_matches
    }

    pub fn line(&self) -> CheckLine {
        CheckLine::new("lemma3", self.k, self.passed())
            .param("r", self.r)
            .param("period", self.period)
            .param("expected", 3 * self.k + 3)
    }
}

/// The period statement for `k = 2^r - 1`.
pub fn verify_lemma3(r: u32, period_cap: u64) -> Result<Lemma3Report> {
    if r == 0 || r > 10 {
        return Err(Error::Domain(format!("lemma 3 check supports 1 <= r <= 10, got {r}")));
    }
    let k = (1usize << r) - 1;
    let modulus = 2 * (k + 1);
    let t3 = t_infinity(modulus)?.pow(3);
    let half = 1u64 << (r - 1);
    let g = t3.trace();
    let g_half = g.pow(half);
    let lhs = t3.pow(2 * half);
    let rhs = t3
        .pow(half)
        .scale(&g_half)?
        .add(&PolyMatrix2x2::identity(modulus))?;
    let cayley = {
        let rhs = t3.scale(&g)?.add(&PolyMatrix2x2::identity(modulus))?;
        t3.pow(2) == rhs
    };
    let period = schedule_period(k, &LambdaSchedule::all_ones(k)?, period_cap)?;
    let target = 3 * k as u64 + 3;
    let period_matches = if r == 1 {
        target.is_multiple_of(period)
    } else {
        period == target
    };
    Ok(Lemma3Report {
        r,
        k,
        modulus,
        period,
        doubling_identity: lhs == rhs,
        annihilation: g_half.is_zero(),
        cayley_hamilton: cayley,
        period_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_infinity_entries() {
        let t = t_infinity(8).unwrap();
        assert_eq!(t.entries[1][1].degrees(), vec![0, 1, 7]);
        assert!(t.det().is_one());
        let (x, z) = t.apply(&CyclicPoly::one(8), &CyclicPoly::zero(8)).unwrap();
        assert!(x.is_zero() && z.is_one());
        assert!(t_infinity(3).is_err());
        assert!(t_infinity(2).is_err());
    }

    #[test]
    fn gamma_matches_closed_form() {
        for m in [8, 10, 12, 16, 32, 64] {
            assert_eq!(gamma(m).unwrap(), gamma_closed_form(m).unwrap(), "modulus {m}");
            assert!(cayley_hamilton_holds(m).unwrap());
        }
    }

    #[test]
    fn frobenius_is_squaring() {
        let p = CyclicPoly::from_degrees(16, &[0, 3, 7, 12]);
        assert_eq!(p.mul(&p).unwrap(), p.frobenius());
        let g = gamma(16).unwrap();
        assert_eq!(g.pow(2), g.frobenius());
    }

    #[test]
    fn display_and_ring_checks() {
        assert_eq!(CyclicPoly::from_degrees(8, &[1, 0, -1]).to_string(), "1 + u + u^7");
        assert_eq!(CyclicPoly::zero(4).to_string(), "0");
        assert!(CyclicPoly::one(4).add(&CyclicPoly::one(6)).is_err());
    }
}
