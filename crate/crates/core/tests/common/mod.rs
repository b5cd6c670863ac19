#![allow(dead_code)]

use floquet_core::kicked::{build_perturbation_vectors, EigenvaluePolynomial, KickedSystemSpec, PerturbationVector};
use floquet_core::op::{unitary_from_hermitian, HermitianOperator, UnitaryOperator};
use floquet_core::{CMatrix, CVector, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn golden() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

pub fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> HermitianOperator {
    let m = random_matrix(rng, d);
    HermitianOperator::new(&m + m.adjoint()).unwrap()
}

pub fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> UnitaryOperator {
    unitary_from_hermitian(&random_hermitian(rng, d), 1.3).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng, d: usize) -> CVector {
    let v = CVector::from_fn(d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let n = v.norm();
    v / Complex64::new(n, 0.0)
}

/// Perturbation vectors with random phases on the amplitudes.
pub fn random_vectors(rng: &mut ChaCha8Rng, gamma: f64, d: usize, count: usize) -> Vec<PerturbationVector> {
    build_perturbation_vectors(gamma, d, count)
        .unwrap()
        .into_iter()
        .map(|v| {
            let ph: Vec<f64> = (0..d).map(|_| rng.random_range(0.0..TAU)).collect();
            v.with_phases(&ph).unwrap()
        })
        .collect()
}

pub fn random_spec(rng: &mut ChaCha8Rng, d: usize, rank: usize) -> KickedSystemSpec {
    let gamma = rng.random_range(0.6..2.0);
    let poly = if rng.random_bool(0.5) {
        EigenvaluePolynomial::harmonic(TAU * rng.random_range(0.1..0.9)).unwrap()
    } else {
        EigenvaluePolynomial::new(vec![0.0, rng.random_range(0.1..2.0), rng.random_range(0.1..1.0)]).unwrap()
    };
    let strengths: Vec<f64> = (0..rank).map(|_| rng.random_range(-4.0..4.0)).collect();
    let vectors = random_vectors(rng, gamma, d, rank);
    KickedSystemSpec::new(poly, rng.random_range(0.5..1.5), rng.random_range(0.5..2.0), strengths, vectors).unwrap()
}

pub fn golden_oscillator(gamma: f64, d: usize, lambda: f64) -> KickedSystemSpec {
    let poly = EigenvaluePolynomial::harmonic(TAU * golden()).unwrap();
    let vectors = build_perturbation_vectors(gamma, d, 1).unwrap();
    KickedSystemSpec::new(poly, 1.0, 1.0, vec![lambda], vectors).unwrap()
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}
