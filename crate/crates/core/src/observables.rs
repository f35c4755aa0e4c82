//! Hermitian observables, expectation values and the Robertson uncertainty
//! relation.

use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::numerics::{is_hermitian, matmul, ComplexMatrix, C64, DEFAULT_TOL};
use crate::qstate::{DensityMatrix, StateVector};

/// Slack allowed when checking `ΔA·ΔB ≥ ½|⟨[A,B]⟩|`.
pub const ROBERTSON_SLACK: f64 = 1e-9;

/// A Hermitian operator with a display label.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    label: String,
    matrix: ComplexMatrix,
}

impl Observable {
    /// Fails with `NotHermitian` unless `matrix` is Hermitian within 1e-10.
    pub fn new(label: impl Into<String>, matrix: ComplexMatrix) -> Result<Self> {
        if !is_hermitian(&matrix, DEFAULT_TOL)? {
            let deviation = matrix.distance(&crate::numerics::adjoint(&matrix));
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            label: label.into(),
            matrix,
        })
    }

    pub fn pauli_x() -> Self {
        Self::from_gate(Gate::X)
    }

    pub fn pauli_y() -> Self {
        Self::from_gate(Gate::Y)
    }

    pub fn pauli_z() -> Self {
        Self::from_gate(Gate::Z)
    }

    fn from_gate(g: Gate) -> Self {
        Self {
            label: g.label().to_string(),
            matrix: g.matrix(),
        }
    }

    /// `αA + βB` for real coefficients, which stays Hermitian.
    pub fn linear_combination(alpha: f64, a: &Self, beta: f64, b: &Self) -> Result<Self> {
        let matrix = a
            .matrix
            .scale(C64::new(alpha, 0.0))
            .add(&b.matrix.scale(C64::new(beta, 0.0)))?;
        Self::new(format!("{alpha}*{}+{beta}*{}", a.label, b.label), matrix)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: dim,
            });
        }
        Ok(())
    }
}

fn quadratic_form(m: &ComplexMatrix, s: &StateVector) -> Result<C64> {
    let amps = s.amplitudes();
    let applied = m.apply(amps)?;
    Ok(amps.iter().zip(&applied).map(|(a, b)| a.conj() * b).sum())
}

/// `⟨s|A|s⟩`, which is real for Hermitian `A`.
pub fn expectation(a: &Observable, s: &StateVector) -> Result<f64> {
    a.require_dim(s.dim())?;
    let value = quadratic_form(&a.matrix, s)?;
    debug_assert!(
        value.im.abs() < DEFAULT_TOL * a.matrix.max_norm().max(1.0),
        "imaginary expectation {value}"
    );
    Ok(value.re)
}

/// `Re Tr(ρA)`.
pub fn expectation_density(a: &Observable, rho: &DensityMatrix) -> Result<f64> {
    a.require_dim(rho.dim())?;
    let r = rho.matrix();
    let n = rho.dim();
    // Tr(ρA) = Σᵢⱼ ρᵢⱼ Aⱼᵢ
    let mut trace = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            trace += r[(i, j)] * a.matrix[(j, i)];
        }
    }
    Ok(trace.re)
}

/// `AB − BA`.
pub fn commutator(a: &Observable, b: &Observable) -> Result<ComplexMatrix> {
    a.require_dim(b.dim())?;
    matmul(&a.matrix, &b.matrix)?.sub(&matmul(&b.matrix, &a.matrix)?)
}

/// `⟨A²⟩ − ⟨A⟩²`.
pub fn variance(a: &Observable, s: &StateVector) -> Result<f64> {
    a.require_dim(s.dim())?;
    let mean = expectation(a, s)?;
    // ⟨A²⟩ = ‖A|s⟩‖² for Hermitian A.
    let applied = a.matrix.apply(s.amplitudes())?;
    let second: f64 = applied.iter().map(|z| z.norm_sqr()).sum();
    Ok(second - mean * mean)
}

/// Both sides of the Robertson inequality and whether it holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobertsonCheck {
    /// `ΔA·ΔB`
    pub lhs: f64,
    /// `½|⟨[A,B]⟩|`
    pub rhs: f64,
    pub holds: bool,
}

pub fn robertson_check(a: &Observable, b: &Observable, s: &StateVector) -> Result<RobertsonCheck> {
    let lhs = variance(a, s)?.max(0.0).sqrt() * variance(b, s)?.max(0.0).sqrt();
    let rhs = 0.5 * quadratic_form(&commutator(a, b)?, s)?.norm();
    Ok(RobertsonCheck {
        lhs,
        rhs,
        holds: lhs >= rhs - ROBERTSON_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus() -> StateVector {
        StateVector::normalize(vec![C64::new(1.0, 0.0); 2]).unwrap()
    }

    fn zero() -> StateVector {
        StateVector::zero(1).unwrap()
    }

    #[test]
    fn construction_requires_hermitian() {
        assert!(matches!(
            Observable::new("S", Gate::S.matrix()),
            Err(Error::NotHermitian { .. })
        ));
        assert!(Observable::new("H", Gate::H.matrix()).is_ok());
        assert!(matches!(
            Observable::new("bad", ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn expectation_examples() {
        let (x, z) = (Observable::pauli_x(), Observable::pauli_z());
        assert_eq!(expectation(&z, &zero()).unwrap(), 1.0);
        assert!((expectation(&x, &plus()).unwrap() - 1.0).abs() < 1e-15);
        assert!(expectation(&z, &plus()).unwrap().abs() < 1e-15);
        assert!(matches!(
            expectation(&z, &StateVector::zero(2).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn density_expectation_examples() {
        let (x, z) = (Observable::pauli_x(), Observable::pauli_z());
        let mixed = DensityMatrix::new(ComplexMatrix::from_real_rows(&[[0.5, 0.0], [0.0, 0.5]])).unwrap();
        assert_eq!(expectation_density(&z, &mixed).unwrap(), 0.0);
        let rho0 = crate::qstate::to_density(&zero());
        assert_eq!(expectation_density(&z, &rho0).unwrap(), 1.0);
        let ex2 = crate::qstate::to_density(&plus());
        assert!((expectation_density(&x, &ex2).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn commutator_examples() {
        let (x, y, z) = (Observable::pauli_x(), Observable::pauli_y(), Observable::pauli_z());
        assert_eq!(commutator(&x, &x).unwrap(), ComplexMatrix::zeros(2, 2));
        let two_i = C64::new(0.0, 2.0);
        assert_eq!(commutator(&x, &y).unwrap(), z.matrix().scale(two_i));
        assert_eq!(commutator(&z, &x).unwrap(), y.matrix().scale(two_i));
        let big = Observable::new("I4", ComplexMatrix::identity(4)).unwrap();
        assert!(commutator(&x, &big).is_err());
    }

    #[test]
    fn variance_examples() {
        let (x, z) = (Observable::pauli_x(), Observable::pauli_z());
        assert_eq!(variance(&z, &zero()).unwrap(), 0.0);
        assert!((variance(&z, &plus()).unwrap() - 1.0).abs() < 1e-15);
        assert!(variance(&x, &plus()).unwrap().abs() < 1e-15);
    }

    #[test]
    fn robertson_examples() {
        let (x, y, z) = (Observable::pauli_x(), Observable::pauli_y(), Observable::pauli_z());
        let r = robertson_check(&z, &z, &plus()).unwrap();
        assert_eq!(r.rhs, 0.0);
        assert!(r.holds);

        let r = robertson_check(&x, &z, &zero()).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert_eq!(r.rhs, 0.0);
        assert!(r.holds);

        let r = robertson_check(&x, &y, &zero()).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-15);
        assert!((r.rhs - 1.0).abs() < 1e-15);
        assert!(r.holds);
    }

    #[test]
    fn linear_combination_is_linear() {
        let (x, z) = (Observable::pauli_x(), Observable::pauli_z());
        let combo = Observable::linear_combination(0.3, &x, -2.0, &z).unwrap();
        let s = StateVector::normalize(vec![C64::new(0.6, 0.1), C64::new(-0.2, 0.7)]).unwrap();
        let lhs = expectation(&combo, &s).unwrap();
        let rhs = 0.3 * expectation(&x, &s).unwrap() - 2.0 * expectation(&z, &s).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }
}
