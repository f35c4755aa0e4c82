//! Demonstrator circuits: Bell-pair preparation and Grover search.

use std::f64::consts::PI;

use crate::circuit::{apply_gate, Circuit};
use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::limits::Limits;
use crate::numerics::C64;
use crate::qstate::StateVector;

/// H on qubit 0 followed by CNOT from qubit 0 to qubit 1.
pub fn bell_circuit() -> Circuit {
    Circuit::new(2)
        .and_then(|c| c.with(Gate::H, &[0]))
        .and_then(|c| c.with(Gate::Cnot, &[0, 1]))
        .expect("static circuit is valid")
}

/// Problem size, marked item and iteration count for a Grover run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroverSpec {
    pub num_qubits: usize,
    pub marked: usize,
    pub iterations: usize,
}

impl GroverSpec {
    pub fn new(num_qubits: usize, marked: usize, iterations: usize) -> Result<Self> {
        if num_qubits < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: num_qubits,
            });
        }
        // Bound the shift before checking `marked`; the real cap comes later.
        Limits::check("grover qubits", num_qubits, 62)?;
        if marked >= 1usize << num_qubits {
            return Err(Error::WireOutOfRange {
                wire: marked,
                num_qubits,
            });
        }
        Ok(Self {
            num_qubits,
            marked,
            iterations,
        })
    }

    /// Same problem with the optimal iteration count.
    pub fn optimal(num_qubits: usize, marked: usize) -> Result<Self> {
        Self::new(num_qubits, marked, grover_optimal_iterations(num_qubits))
    }
}

#[derive(Debug, Clone)]
pub struct GroverOutcome {
    pub final_state: StateVector,
    pub success_probability: f64,
}

/// Sign flip on the marked amplitude.
pub fn grover_oracle(amps: &mut [C64], marked: usize) {
    amps[marked] = -amps[marked];
}

/// Inversion about the mean, `H⊗ⁿ·(2|0⟩⟨0| − I)·H⊗ⁿ`.
pub fn grover_diffusion(amps: &mut [C64], num_qubits: usize) {
    hadamard_all(amps, num_qubits);
    for z in amps.iter_mut().skip(1) {
        *z = -*z;
    }
    hadamard_all(amps, num_qubits);
}

fn hadamard_all(amps: &mut [C64], num_qubits: usize) {
    for q in 0..num_qubits {
        apply_gate(amps, num_qubits, Gate::H, &[q], false);
    }
}

/// `(D·O)ᵏ·H⊗ⁿ|0…0⟩` and the probability of observing the marked item.
pub fn grover_run(spec: &GroverSpec) -> Result<GroverOutcome> {
    grover_run_with_limits(spec, &Limits::default())
}

pub fn grover_run_with_limits(spec: &GroverSpec, limits: &Limits) -> Result<GroverOutcome> {
    Limits::check("grover qubits", spec.num_qubits, limits.grover)?;
    let n = spec.num_qubits;
    let mut amps = StateVector::zero(n)?.into_amplitudes();
    hadamard_all(&mut amps, n);
    for _ in 0..spec.iterations {
        grover_oracle(&mut amps, spec.marked);
        grover_diffusion(&mut amps, n);
    }
    let success_probability = amps[spec.marked].norm_sqr();
    Ok(GroverOutcome {
        final_state: StateVector::from_raw(n, amps),
        success_probability,
    })
}

/// `sin²((2k+1)·arcsin(2^(−n/2)))`.
pub fn grover_closed_form(num_qubits: usize, iterations: usize) -> f64 {
    let theta = grover_angle(num_qubits);
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

fn grover_angle(num_qubits: usize) -> f64 {
    (-(num_qubits as f64) / 2.0).exp2().asin()
}

/// `round(π/(4θ) − ½)` with `θ = arcsin(2^(−n/2))`, floored at zero.
pub fn grover_optimal_iterations(num_qubits: usize) -> usize {
    let k = (PI / (4.0 * grover_angle(num_qubits)) - 0.5).round();
    k.max(0.0) as usize
}
