//! Dense state vectors. Site 1 is the least significant bit of the amplitude index.

use num_complex::Complex64;

use crate::error::{check_dims, Error, Result};
use crate::pauli::PauliWord;

/// Hard cap on dense registers.
pub const MAX_QUBITS: usize = 22;

pub type Gate1 = [[Complex64; 2]; 2];

const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn hadamard() -> Gate1 {
    let r = Complex64::new(R, 0.0);
    [[r, r], [r, -r]]
}

pub fn phase_s() -> Gate1 {
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    [[o, z], [z, Complex64::new(0.0, 1.0)]]
}

/// `e^{iθZ}`.
pub fn exp_z(theta: f64) -> Gate1 {
    let z = Complex64::new(0.0, 0.0);
    [[Complex64::from_polar(1.0, theta), z], [z, Complex64::from_polar(1.0, -theta)]]
}

/// `e^{iθX}`.
pub fn exp_x(theta: f64) -> Gate1 {
    let c = Complex64::new(theta.cos(), 0.0);
    let s = Complex64::new(0.0, theta.sin());
    [[c, s], [s, c]]
}

pub fn check_size(n_qubits: usize) -> Result<()> {
    if n_qubits > MAX_QUBITS {
        Err(Error::SizeGuard(format!(
            "dense register of {n_qubits} qubits exceeds the cap of {MAX_QUBITS}"
        )))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    /// `|+⟩^{⊗n}`.
    pub fn plus(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let a = Complex64::new((1u64 << n_qubits) as f64, 0.0).sqrt().inv();
        Ok(StateVector {
            n_qubits,
            amps: vec![a; 1 << n_qubits],
        })
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::Domain(format!(
                "{} amplitudes for {n_qubits} qubits",
                amps.len()
            )));
        }
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalize(&mut self) -> Result<f64> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::Domain("cannot normalize the zero vector".into()));
        }
        for a in &mut self.amps {
            *a /= n;
        }
        Ok(n)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        check_dims(self.n_qubits, other.n_qubits)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨a|b⟩| / (‖a‖‖b‖)`: 1 iff the rays coincide.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm() / (self.norm() * other.norm()))
    }

    fn check_qubit(&self, q: usize) {
        assert!(q < self.n_qubits, "qubit {q} outside register of {}", self.n_qubits);
    }

    pub fn apply_1q(&mut self, q: usize, g: &Gate1) {
        self.check_qubit(q);
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = g[0][0] * a0 + g[0][1] * a1;
                self.amps[i | bit] = g[1][0] * a0 + g[1][1] * a1;
            }
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        self.check_qubit(a);
        self.check_qubit(b);
        let mask = (1usize << a) | (1usize << b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
    }

    /// Applies the Pauli word including its phase.
    pub fn apply_pauli(&mut self, p: &PauliWord) -> Result<()> {
        check_dims(self.n_qubits, p.n_qubits())?;
        let x = p.x_bits().first().copied().unwrap_or(0) as usize;
        let z = p.z_bits().first().copied().unwrap_or(0) as usize;
        let ys = (x & z).count_ones();
        let phase = Complex64::i().powu((p.phase() as u32 + ys) % 4);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, &a) in self.amps.iter().enumerate() {
            let sign = if (b & z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[b ^ x] = a * phase * sign;
        }
        self.amps = out;
        Ok(())
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, p: &PauliWord) -> Result<Complex64> {
        let mut pp = self.clone();
        pp.apply_pauli(p)?;
        self.inner(&pp)
    }

    /// Probability of reading `outcome` on qubit `q` in the computational basis.
    pub fn probability(&self, q: usize, outcome: u8) -> f64 {
        self.check_qubit(q);
        let bit = 1usize << q;
        let want = if outcome == 1 { bit } else { 0 };
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit == want)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Projects qubit `q` onto `outcome` without renormalizing.
    pub fn project(&mut self, q: usize, outcome: u8) {
        self.check_qubit(q);
        let bit = 1usize << q;
        let want = if outcome == 1 { bit } else { 0 };
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit != want {
                *a = Complex64::new(0.0, 0.0);
            }
        }
    }

    /// Z-basis probabilities of the normalized state.
    pub fn distribution(&self) -> Vec<f64> {
        let n = self.norm_sqr();
        self.amps.iter().map(|a| a.norm_sqr() / n).collect()
    }
}
