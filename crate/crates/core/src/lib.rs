//! Dense quantum circuit simulation.
//!
//! The crate covers pure states ([`qstate::StateVector`]) and mixed states
//! ([`qstate::DensityMatrix`]), a fixed library of gates, circuit execution
//! with an in-place stride kernel, Born-rule measurement with reproducible
//! sampling, observables, entanglement diagnostics, Schrödinger evolution
//! and a Grover search demonstrator. Circuits are read from and written to
//! a small text format ([`qcf`]).
//!
//! ```
//! use qsim_core::{algorithms::bell_circuit, circuit::apply, measure::probabilities, qstate::StateVector};
//!
//! let out = apply(&bell_circuit(), &StateVector::zero(2).unwrap()).unwrap();
//! let p = probabilities(&out).probabilities;
//! assert!((p[0] - 0.5).abs() < 1e-12 && (p[3] - 0.5).abs() < 1e-12);
//! ```
//!
//! Qubit 0 is the most significant bit of a basis index and the leftmost
//! character of an outcome label.

pub mod algorithms;
pub mod circuit;
pub mod entangle;
pub mod error;
pub mod evolve;
pub mod gates;
pub mod limits;
pub mod measure;
pub mod numerics;
pub mod observables;
pub mod qcf;
pub mod qstate;

pub use error::{Error, Result};
pub use numerics::{ComplexMatrix, C64};
