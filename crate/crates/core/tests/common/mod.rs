//! Dense-matrix oracles. Qubit `q` is bit `q` of the basis index, as in the simulator.
#![allow(dead_code)]

use duclab_core::pauli::{Letter, PauliWord};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

pub type Mat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn letter_matrix(l: Letter) -> Mat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let v = match l {
        Letter::I => [o, z, z, o],
        Letter::X => [z, o, o, z],
        Letter::Y => [z, -i, i, z],
        Letter::Z => [o, z, z, -o],
    };
    Mat::from_row_slice(2, 2, &v)
}

/// `A_{n-1} ⊗ … ⊗ A_0`, so `A_q` acts on bit `q`.
pub fn kron_sites(ops: &[Mat]) -> Mat {
    let mut out = Mat::identity(1, 1);
    for op in ops.iter().rev() {
        out = out.kronecker(op);
    }
    out
}

pub fn pauli_dense(p: &PauliWord) -> Mat {
    let ops: Vec<Mat> = p.letters().into_iter().map(letter_matrix).collect();
    kron_sites(&ops) * c(0.0, 1.0).powu(p.phase() as u32)
}

pub fn single(n: usize, q: usize, g: Mat) -> Mat {
    let ops: Vec<Mat> = (0..n).map(|j| if j == q { g.clone() } else { Mat::identity(2, 2) }).collect();
    kron_sites(&ops)
}

pub fn hadamard() -> Mat {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Mat::from_row_slice(2, 2, &[c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)])
}

pub fn phase_s() -> Mat {
    Mat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)])
}

pub fn cz(n: usize, a: usize, b: usize) -> Mat {
    let d = 1 << n;
    let mut m = Mat::identity(d, d);
    for i in 0..d {
        if i >> a & 1 == 1 && i >> b & 1 == 1 {
            m[(i, i)] = c(-1.0, 0.0);
        }
    }
    m
}

/// `(∏ H S^λ)(∏ CZ)` on an open chain.
pub fn layer_dense(with_s: &[bool]) -> Mat {
    let n = with_s.len();
    let d = 1 << n;
    let mut u = Mat::identity(d, d);
    for i in 0..n.saturating_sub(1) {
        u = cz(n, i, i + 1) * u;
    }
    for (q, &s) in with_s.iter().enumerate() {
        if s {
            u = single(n, q, phase_s()) * u;
        }
        u = single(n, q, hadamard()) * u;
    }
    u
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn random_word(n: usize, rng: &mut impl Rng) -> PauliWord {
    let letters: Vec<Letter> = (0..n)
        .map(|_| [Letter::I, Letter::X, Letter::Y, Letter::Z][rng.random_range(0..4)])
        .collect();
    PauliWord::from_letters(&letters).with_phase(rng.random_range(0..4))
}

/// Dimension of the complex span of `gens` closed under commutators, by Gaussian rank.
pub fn dense_closure_dim(gens: &[Mat]) -> usize {
    // reduced rows with their pivot column; each row vanishes at every other pivot
    let mut rows: Vec<(usize, Vec<Complex64>)> = Vec::new();
    let mut basis: Vec<Mat> = Vec::new();
    let push = |m: Mat, rows: &mut Vec<(usize, Vec<Complex64>)>, basis: &mut Vec<Mat>| {
        let mut v: Vec<Complex64> = m.iter().copied().collect();
        for (p, b) in rows.iter() {
            let f = v[*p] / b[*p];
            for (x, y) in v.iter_mut().zip(b) {
                *x -= f * y;
            }
        }
        let Some(p) = v.iter().position(|z| z.norm() > 1e-9) else {
            return;
        };
        for (_, b) in rows.iter_mut() {
            let f = b[p] / v[p];
            for (x, y) in b.iter_mut().zip(&v) {
                *x -= f * y;
            }
        }
        rows.push((p, v));
        basis.push(m);
    };
    for g in gens {
        push(g.clone(), &mut rows, &mut basis);
    }
    let mut i = 0;
    while i < basis.len() {
        for j in 0..i {
            let comm = &basis[i] * &basis[j] - &basis[j] * &basis[i];
            push(comm, &mut rows, &mut basis);
        }
        i += 1;
    }
    basis.len()
}
