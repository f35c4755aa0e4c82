//! Random generators shared by the integration suites.

#![allow(dead_code)]

use qsim_core::circuit::Circuit;
use qsim_core::gates::Gate;
use qsim_core::qstate::StateVector;
use qsim_core::{ComplexMatrix, C64};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_state<R: Rng>(rng: &mut R, num_qubits: usize) -> StateVector {
    let amps = (0..1usize << num_qubits)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    StateVector::normalize(amps).unwrap()
}

pub fn random_circuit<R: Rng>(rng: &mut R, num_qubits: usize, max_len: usize) -> Circuit {
    let mut c = Circuit::new(num_qubits).unwrap();
    let len = rng.gen_range(0..=max_len);
    let wires: Vec<usize> = (0..num_qubits).collect();
    for _ in 0..len {
        let gate = loop {
            let g = *Gate::ALL.choose(rng).unwrap();
            if g.arity() <= num_qubits {
                break g;
            }
        };
        let chosen: Vec<usize> = wires.choose_multiple(rng, gate.arity()).copied().collect();
        c.push(gate, &chosen).unwrap();
    }
    c
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let data = (0..n * n)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::from_vec(n, n, data).unwrap()
}

/// `(M + M†)/2` for a random `M`.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let m = random_matrix(rng, n);
    m.add(&qsim_core::numerics::adjoint(&m))
        .unwrap()
        .scale(C64::new(0.5, 0.0))
}
