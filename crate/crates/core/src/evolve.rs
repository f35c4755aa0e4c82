//! Closed-system time evolution under a time-independent Hamiltonian.

use crate::error::{Error, Result};
use crate::numerics::{adjoint, is_hermitian, matexp_skew_hermitian, matmul, ComplexMatrix, DEFAULT_TOL};
use crate::qstate::{DensityMatrix, StateVector};

/// A Hermitian generator of time evolution. `hbar` defaults to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    matrix: ComplexMatrix,
    hbar: f64,
}

impl Hamiltonian {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_hbar(matrix, 1.0)
    }

    pub fn with_hbar(matrix: ComplexMatrix, hbar: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::NonFinite("hbar must be a positive finite number"));
        }
        if !is_hermitian(&matrix, DEFAULT_TOL)? {
            return Err(Error::NotHermitian {
                deviation: matrix.distance(&adjoint(&matrix)),
            });
        }
        Ok(Self { matrix, hbar })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `exp(−i·H·t/ħ)`.
    pub fn propagator(&self, params: EvolutionParams) -> Result<ComplexMatrix> {
        matexp_skew_hermitian(&self.matrix, params.duration / self.hbar)
    }

    fn require_dim(&self, dim: usize) -> Result<()> {
        if self.matrix.rows() != dim {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.rows(),
                found: dim,
            });
        }
        Ok(())
    }
}

/// Evolution time in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    pub duration: f64,
}

impl EvolutionParams {
    pub fn new(duration: f64) -> Result<Self> {
        if !duration.is_finite() {
            return Err(Error::NonFinite("duration"));
        }
        Ok(Self { duration })
    }
}

/// `exp(−iHt/ħ)|s⟩`.
pub fn evolve(h: &Hamiltonian, t: EvolutionParams, s: &StateVector) -> Result<StateVector> {
    h.require_dim(s.dim())?;
    let u = h.propagator(t)?;
    StateVector::from_amplitudes(u.apply(s.amplitudes())?)
}

/// `UρU†` with `U = exp(−iHt/ħ)`.
pub fn evolve_density(h: &Hamiltonian, t: EvolutionParams, rho: &DensityMatrix) -> Result<DensityMatrix> {
    h.require_dim(rho.dim())?;
    let u = h.propagator(t)?;
    let evolved = matmul(&matmul(&u, rho.matrix())?, &adjoint(&u))?;
    Ok(DensityMatrix::from_raw(rho.num_qubits(), evolved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::Gate;
    use crate::numerics::C64;
    use crate::qstate::{purity, to_density};
    use std::f64::consts::FRAC_PI_2;

    fn t(d: f64) -> EvolutionParams {
        EvolutionParams::new(d).unwrap()
    }

    #[test]
    fn construction() {
        assert!(Hamiltonian::new(Gate::S.matrix()).is_err());
        assert!(Hamiltonian::with_hbar(Gate::Z.matrix(), 0.0).is_err());
        assert!(EvolutionParams::new(f64::NAN).is_err());
    }

    #[test]
    fn evolve_examples() {
        let hx = Hamiltonian::new(Gate::X.matrix()).unwrap();
        let hz = Hamiltonian::new(Gate::Z.matrix()).unwrap();
        let zero = StateVector::zero(1).unwrap();

        let s = StateVector::normalize(vec![C64::new(0.3, 0.2), C64::new(-0.5, 0.1)]).unwrap();
        assert!(evolve(&hx, t(0.0), &s).unwrap().approx_eq(&s, 1e-15));

        let time = 0.8;
        let out = evolve(&hz, t(time), &zero).unwrap();
        assert!((out.amplitudes()[0] - C64::from_polar(1.0, -time)).norm() < 1e-12);
        assert!(out.amplitudes()[1].norm() < 1e-12);

        let out = evolve(&hx, t(FRAC_PI_2), &zero).unwrap();
        assert!(out.amplitudes()[0].norm() < 1e-12);
        assert!((out.amplitudes()[1] - C64::new(0.0, -1.0)).norm() < 1e-12);

        assert!(matches!(
            evolve(&hx, t(1.0), &StateVector::zero(2).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hbar_rescales_time() {
        let h1 = Hamiltonian::new(Gate::X.matrix()).unwrap();
        let h2 = Hamiltonian::with_hbar(Gate::X.matrix(), 2.0).unwrap();
        let s = StateVector::zero(1).unwrap();
        let a = evolve(&h1, t(0.5), &s).unwrap();
        let b = evolve(&h2, t(1.0), &s).unwrap();
        assert!(a.approx_eq(&b, 1e-14));
    }

    #[test]
    fn evolve_density_examples() {
        let hx = Hamiltonian::new(Gate::X.matrix()).unwrap();
        let hz = Hamiltonian::new(Gate::Z.matrix()).unwrap();
        let rho0 = to_density(&StateVector::zero(1).unwrap());

        assert!(evolve_density(&hx, t(0.0), &rho0).unwrap().approx_eq(&rho0, 1e-15));
        assert!(evolve_density(&hz, t(2.3), &rho0).unwrap().approx_eq(&rho0, 1e-14));
        let rho1 = to_density(&StateVector::basis(1, 1).unwrap());
        let out = evolve_density(&hx, t(FRAC_PI_2), &rho0).unwrap();
        assert!(out.approx_eq(&rho1, 1e-12));
        assert!((purity(&out) - 1.0).abs() < 1e-10);
    }
}
