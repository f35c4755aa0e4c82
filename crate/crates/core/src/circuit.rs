//! Circuit representation and execution.
//!
//! [`apply`] and [`apply_density`] run an in-place stride kernel that updates
//! amplitude pairs (or quadruples) per gate. [`unitary_of`] builds the full
//! matrix from brute-force [`embed`]dings and serves as the reference the
//! kernel is tested against.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::limits::Limits;
use crate::numerics::{matmul, ComplexMatrix, C64};
use crate::qstate::{bit_position, DensityMatrix, StateVector};

/// Below this many amplitudes the kernel stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 14;

/// One gate placed on specific wires. For CNOT, `wires[0]` is the control.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instruction {
    gate: Gate,
    wires: Vec<usize>,
}

impl Instruction {
    pub fn gate(&self) -> Gate {
        self.gate
    }

    pub fn wires(&self) -> &[usize] {
        &self.wires
    }
}

/// Ordered gate instructions over a fixed number of qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: usize,
    instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(Self {
            num_qubits,
            instructions: Vec::new(),
        })
    }

    /// Appends `gate` on `wires` after validating arity and wire bounds.
    pub fn push(&mut self, gate: Gate, wires: &[usize]) -> Result<&mut Self> {
        validate_wires(gate, wires, self.num_qubits)?;
        self.instructions.push(Instruction {
            gate,
            wires: wires.to_vec(),
        });
        Ok(self)
    }

    /// Builder form of [`Circuit::push`].
    pub fn with(mut self, gate: Gate, wires: &[usize]) -> Result<Self> {
        self.push(gate, wires)?;
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }
}

fn validate_wires(gate: Gate, wires: &[usize], num_qubits: usize) -> Result<()> {
    if wires.len() != gate.arity() {
        return Err(Error::ArityMismatch {
            gate: gate.label(),
            expected: gate.arity(),
            found: wires.len(),
        });
    }
    for (i, &w) in wires.iter().enumerate() {
        if w >= num_qubits {
            return Err(Error::WireOutOfRange {
                wire: w,
                num_qubits,
            });
        }
        if wires[..i].contains(&w) {
            return Err(Error::DuplicateWire(w));
        }
    }
    Ok(())
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Runs `c` on `s` with the default capacity limits.
pub fn apply(c: &Circuit, s: &StateVector) -> Result<StateVector> {
    apply_with_limits(c, s, &Limits::default())
}

pub fn apply_with_limits(c: &Circuit, s: &StateVector, limits: &Limits) -> Result<StateVector> {
    check_dims(c.num_qubits, s.num_qubits())?;
    Limits::check("state-vector qubits", c.num_qubits, limits.statevector)?;
    let mut out = s.clone();
    apply_in_place(c, &mut out);
    Ok(out)
}

pub(crate) fn apply_in_place(c: &Circuit, s: &mut StateVector) {
    let n = s.num_qubits();
    let amps = s.amplitudes_mut();
    for inst in &c.instructions {
        apply_gate(amps, n, inst.gate, &inst.wires, false);
    }
}

/// Evolves `rho` as `ρ → UρU†` for each instruction in order.
pub fn apply_density(c: &Circuit, rho: &DensityMatrix) -> Result<DensityMatrix> {
    apply_density_with_limits(c, rho, &Limits::default())
}

pub fn apply_density_with_limits(
    c: &Circuit,
    rho: &DensityMatrix,
    limits: &Limits,
) -> Result<DensityMatrix> {
    check_dims(c.num_qubits, rho.num_qubits())?;
    // The matrix is run through the kernel as a vector of 2n qubits.
    Limits::check("density-matrix qubits", c.num_qubits, limits.density.min(15))?;
    let n = c.num_qubits;
    let dim = rho.dim();
    let mut flat = rho.matrix().as_slice().to_vec();
    for inst in &c.instructions {
        // Row index occupies the leading n qubits: U acting there is U·ρ.
        apply_gate(&mut flat, 2 * n, inst.gate, &inst.wires, false);
        // Column index is the trailing n qubits: conj(U) there is ρ·U†.
        let shifted: Vec<usize> = inst.wires.iter().map(|w| w + n).collect();
        apply_gate(&mut flat, 2 * n, inst.gate, &shifted, true);
    }
    let matrix = ComplexMatrix::from_vec(dim, dim, flat)?;
    Ok(DensityMatrix::from_raw(n, matrix))
}

fn conj2(m: [[C64; 2]; 2]) -> [[C64; 2]; 2] {
    m.map(|r| r.map(|z| z.conj()))
}

fn conj4(m: [[C64; 4]; 4]) -> [[C64; 4]; 4] {
    m.map(|r| r.map(|z| z.conj()))
}

/// Applies `gate` (or its entrywise conjugate) to the listed wires of an
/// `n`-qubit amplitude array.
pub(crate) fn apply_gate(amps: &mut [C64], n: usize, gate: Gate, wires: &[usize], conjugate: bool) {
    if let Some(m) = gate.single_qubit_matrix() {
        let m = if conjugate { conj2(m) } else { m };
        apply_single(amps, bit_position(wires[0], n), &m);
    } else if let Some(m) = gate.two_qubit_matrix() {
        let m = if conjugate { conj4(m) } else { m };
        apply_two(
            amps,
            bit_position(wires[0], n),
            bit_position(wires[1], n),
            &m,
        );
    }
}

/// Pairwise update of amplitudes that differ only in bit `bit`.
pub(crate) fn apply_single(amps: &mut [C64], bit: usize, m: &[[C64; 2]; 2]) {
    let stride = 1usize << bit;
    let update = |lo: &mut C64, hi: &mut C64| {
        let (a, b) = (*lo, *hi);
        *lo = m[0][0] * a + m[0][1] * b;
        *hi = m[1][0] * a + m[1][1] * b;
    };
    let block = |chunk: &mut [C64]| {
        let (lo, hi) = chunk.split_at_mut(stride);
        lo.iter_mut().zip(hi).for_each(|(a, b)| update(a, b));
    };
    if amps.len() < PARALLEL_THRESHOLD {
        amps.chunks_mut(2 * stride).for_each(block);
    } else if amps.len() / (2 * stride) >= 64 {
        amps.par_chunks_mut(2 * stride).for_each(block);
    } else {
        for chunk in amps.chunks_mut(2 * stride) {
            let (lo, hi) = chunk.split_at_mut(stride);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .for_each(|(a, b)| update(a, b));
        }
    }
}

/// Quadruple update for a two-qubit gate. `bit_a` is the bit of the gate's
/// leading (first listed) wire.
pub(crate) fn apply_two(amps: &mut [C64], bit_a: usize, bit_b: usize, m: &[[C64; 4]; 4]) {
    let (mask_a, mask_b) = (1usize << bit_a, 1usize << bit_b);
    let (low, high) = (bit_a.min(bit_b), bit_a.max(bit_b));
    let quarter = amps.len() >> 2;
    for k in 0..quarter {
        // Spread k around two zero bits at positions `low` and `high`.
        let mut base = k;
        base = (base >> low << (low + 1)) | (base & ((1 << low) - 1));
        base = (base >> high << (high + 1)) | (base & ((1 << high) - 1));
        let idx = [base, base | mask_b, base | mask_a, base | mask_a | mask_b];
        let v = idx.map(|i| amps[i]);
        for (r, &i) in idx.iter().enumerate() {
            amps[i] = m[r]
                .iter()
                .zip(&v)
                .filter(|(g, _)| **g != C64::new(0.0, 0.0))
                .map(|(g, a)| g * a)
                .sum();
        }
    }
}

/// Full `2ⁿ×2ⁿ` matrix acting as `g` on `wires` (in listed order) and as the
/// identity elsewhere, built entry by entry.
pub fn embed(g: Gate, wires: &[usize], num_qubits: usize) -> Result<ComplexMatrix> {
    validate_wires(g, wires, num_qubits)?;
    Limits::check("embedding qubits", num_qubits, 12)?;
    let dim = 1usize << num_qubits;
    let local = g.matrix();
    let masks: Vec<usize> = wires
        .iter()
        .map(|&w| 1usize << bit_position(w, num_qubits))
        .collect();
    let wire_mask: usize = masks.iter().sum();
    let local_index = |i: usize| {
        masks
            .iter()
            .fold(0usize, |acc, &m| acc << 1 | usize::from(i & m != 0))
    };
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            if i & !wire_mask == j & !wire_mask {
                out[(i, j)] = local[(local_index(i), local_index(j))];
            }
        }
    }
    Ok(out)
}

/// Product of the embedded instruction unitaries, first instruction
/// rightmost.
pub fn unitary_of(c: &Circuit) -> Result<ComplexMatrix> {
    unitary_of_with_limits(c, &Limits::default())
}

pub fn unitary_of_with_limits(c: &Circuit, limits: &Limits) -> Result<ComplexMatrix> {
    Limits::check("unitary qubits", c.num_qubits, limits.unitary.min(12))?;
    let mut u = ComplexMatrix::identity(1 << c.num_qubits);
    for inst in &c.instructions {
        let e = embed(inst.gate, &inst.wires, c.num_qubits)?;
        u = matmul(&e, &u)?;
    }
    Ok(u)
}
