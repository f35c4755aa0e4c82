//! The fixed gate library: X, Y, Z, S, T, H, SWAP and CNOT.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C64};
use crate::qstate::{parse_basis_label, StateVector};

/// A gate from the standard library.
///
/// Two-qubit gate matrices are written in the basis `|ab⟩` where `a` is the
/// first listed wire. For CNOT the first wire is the control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    X,
    Y,
    Z,
    S,
    T,
    H,
    Swap,
    Cnot,
}

impl Gate {
    pub const ALL: [Gate; 8] = [
        Gate::X,
        Gate::Y,
        Gate::Z,
        Gate::S,
        Gate::T,
        Gate::H,
        Gate::Swap,
        Gate::Cnot,
    ];

    /// Upper-case name, e.g. `"CNOT"`.
    pub fn label(self) -> &'static str {
        match self {
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::S => "S",
            Gate::T => "T",
            Gate::H => "H",
            Gate::Swap => "SWAP",
            Gate::Cnot => "CNOT",
        }
    }

    /// Number of qubits the gate acts on.
    pub fn arity(self) -> usize {
        match self {
            Gate::Swap | Gate::Cnot => 2,
            _ => 1,
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        match self.single_qubit_matrix() {
            Some(m) => ComplexMatrix::from_rows(&m),
            None => ComplexMatrix::from_rows(&self.two_qubit_matrix().unwrap()),
        }
    }

    /// Entries of a single-qubit gate, `None` for two-qubit gates.
    pub fn single_qubit_matrix(self) -> Option<[[C64; 2]; 2]> {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let r = C64::new(FRAC_1_SQRT_2, 0.0);
        Some(match self {
            Gate::X => [[o, l], [l, o]],
            Gate::Y => [[o, -i], [i, o]],
            Gate::Z => [[l, o], [o, -l]],
            Gate::S => [[l, o], [o, i]],
            Gate::T => [[l, o], [o, C64::from_polar(1.0, FRAC_PI_4)]],
            Gate::H => [[r, r], [r, -r]],
            Gate::Swap | Gate::Cnot => return None,
        })
    }

    /// Entries of a two-qubit gate, `None` for single-qubit gates.
    pub fn two_qubit_matrix(self) -> Option<[[C64; 4]; 4]> {
        let perm: [usize; 4] = match self {
            Gate::Swap => [0, 2, 1, 3],
            Gate::Cnot => [0, 1, 3, 2],
            _ => return None,
        };
        let mut m = [[C64::new(0.0, 0.0); 4]; 4];
        for (row, &col) in perm.iter().enumerate() {
            m[row][col] = C64::new(1.0, 0.0);
        }
        Some(m)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Gate {
    type Err = Error;

    /// Case-insensitive lookup by label.
    fn from_str(s: &str) -> Result<Self> {
        Gate::ALL
            .into_iter()
            .find(|g| g.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownGate(s.to_string()))
    }
}

/// Looks up a library gate by label (`"X"`, `"swap"`, …).
pub fn standard_gate(label: &str) -> Result<Gate> {
    label.parse()
}

/// Applies a two-qubit gate to the basis state named by a two-bit label.
pub fn apply_two_qubit_truth_table(g: Gate, basis_label: &str) -> Result<StateVector> {
    if g.arity() != 2 {
        return Err(Error::ArityMismatch {
            gate: g.label(),
            expected: g.arity(),
            found: 2,
        });
    }
    if basis_label.len() != 2 {
        return Err(Error::InvalidLabel(basis_label.to_string()));
    }
    let input = StateVector::basis(2, parse_basis_label(basis_label)?)?;
    let out = g.matrix().apply(input.amplitudes())?;
    StateVector::from_amplitudes(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{is_unitary, matmul};

    #[test]
    fn lookup() {
        assert_eq!(standard_gate("H").unwrap(), Gate::H);
        assert_eq!(standard_gate("cnot").unwrap(), Gate::Cnot);
        assert_eq!(standard_gate("Swap").unwrap(), Gate::Swap);
        assert!(matches!(standard_gate("Q"), Err(Error::UnknownGate(_))));
        for g in Gate::ALL {
            assert_eq!(standard_gate(g.label()).unwrap(), g);
            assert_eq!(g.matrix().rows(), 1 << g.arity());
        }
    }

    #[test]
    fn single_qubit_actions() {
        let zero = StateVector::basis(1, 0).unwrap();
        let h0 = Gate::H.matrix().apply(zero.amplitudes()).unwrap();
        assert_eq!(h0, vec![C64::new(FRAC_1_SQRT_2, 0.0); 2]);
        let x0 = Gate::X.matrix().apply(zero.amplitudes()).unwrap();
        assert_eq!(x0, StateVector::basis(1, 1).unwrap().into_amplitudes());
    }

    #[test]
    fn truth_tables() {
        let cases = [
            (Gate::Cnot, "10", "11"),
            (Gate::Swap, "01", "10"),
            (Gate::Cnot, "00", "00"),
        ];
        for (g, input, output) in cases {
            assert_eq!(
                apply_two_qubit_truth_table(g, input).unwrap(),
                StateVector::from_label(output).unwrap()
            );
        }
        assert!(matches!(
            apply_two_qubit_truth_table(Gate::H, "00"),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(apply_two_qubit_truth_table(Gate::Cnot, "0").is_err());
    }

    #[test]
    fn algebraic_identities() {
        let id2 = ComplexMatrix::identity(2);
        let id4 = ComplexMatrix::identity(4);
        for g in Gate::ALL {
            assert!(is_unitary(&g.matrix(), 1e-12).unwrap(), "{g}");
        }
        for g in [Gate::H, Gate::X, Gate::Y, Gate::Z] {
            assert!(matmul(&g.matrix(), &g.matrix()).unwrap().approx_eq(&id2, 1e-12));
        }
        for g in [Gate::Swap, Gate::Cnot] {
            assert!(matmul(&g.matrix(), &g.matrix()).unwrap().approx_eq(&id4, 1e-12));
        }
        let ss = matmul(&Gate::S.matrix(), &Gate::S.matrix()).unwrap();
        assert!(ss.approx_eq(&Gate::Z.matrix(), 1e-12));
        let tt = matmul(&Gate::T.matrix(), &Gate::T.matrix()).unwrap();
        assert!(tt.approx_eq(&Gate::S.matrix(), 1e-12));

        let h = Gate::H.matrix();
        let hxh = matmul(&matmul(&h, &Gate::X.matrix()).unwrap(), &h).unwrap();
        assert!(hxh.approx_eq(&Gate::Z.matrix(), 1e-12));
        let hzh = matmul(&matmul(&h, &Gate::Z.matrix()).unwrap(), &h).unwrap();
        assert!(hzh.approx_eq(&Gate::X.matrix(), 1e-12));
    }
}
