mod common;

use common::*;
use duclab_core::pauli::{commutator, SymplecticForm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn products_match_dense_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=4 {
        for _ in 0..200 {
            let (p, q) = (random_word(n, &mut rng), random_word(n, &mut rng));
            let pq = p.mul(&q).unwrap();
            let dense = pauli_dense(&p) * pauli_dense(&q);
            assert!(max_diff(&pauli_dense(&pq), &dense) < 1e-12, "{p} * {q} = {pq}");
        }
    }
}

#[test]
fn commutators_match_dense_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=4 {
        let form = SymplecticForm::new(n);
        for _ in 0..500 {
            let (p, q) = (random_word(n, &mut rng), random_word(n, &mut rng));
            let (a, b) = (pauli_dense(&p), pauli_dense(&q));
            let dense = &a * &b - &b * &a;
            let zero = dense.iter().all(|z| z.norm() < 1e-12);
            assert_eq!(p.commutes(&q).unwrap(), zero);
            assert_eq!(form.product(&p, &q).unwrap() == 0, zero);
            match commutator(&p, &q).unwrap() {
                None => assert!(zero),
                // [P, Q] = 2PQ when they anticommute; the result drops the phase
                Some(r) => {
                    assert_eq!(r, p.mul(&q).unwrap().with_phase(0));
                    assert!(max_diff(&(&a * &b * c(2.0, 0.0)), &dense) < 1e-12);
                }
            }
        }
    }
}

#[test]
fn letter_convention() {
    // XZ = -iY
    let xz = pauli_dense(&"X".parse().unwrap()) * pauli_dense(&"Z".parse().unwrap());
    assert!(max_diff(&xz, &pauli_dense(&"-iY".parse().unwrap())) < 1e-12);
}

#[test]
fn commutation_parity_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..1000 {
        let (a, b, cc) = (
            random_word(6, &mut rng),
            random_word(6, &mut rng),
            random_word(6, &mut rng),
        );
        let ab = a.mul(&b).unwrap();
        let lhs = ab.commutes(&cc).unwrap();
        assert_eq!(lhs, a.commutes(&cc).unwrap() == b.commutes(&cc).unwrap());
        let (m, n) = (pauli_dense(&ab), pauli_dense(&cc));
        let dense_commutes = (&m * &n - &n * &m).iter().all(|z| z.norm() < 1e-12);
        assert_eq!(lhs, dense_commutes);
    }
}

#[test]
fn spec_product_example() {
    let p: duclab_core::pauli::PauliWord = "XZ".parse().unwrap();
    let q = "ZZ".parse().unwrap();
    let r = p.mul(&q).unwrap();
    assert_eq!(r.clone().with_phase(0), "YI".parse().unwrap());
    assert!(max_diff(&pauli_dense(&r), &(pauli_dense(&p) * pauli_dense(&q))) < 1e-12);
}
