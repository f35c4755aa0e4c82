//! Pure and mixed state representations.
//!
//! Qubit 0 is the leftmost symbol of a ket and the most significant bit of
//! the basis index: `|q₀q₁…qₙ₋₁⟩` has index `Σ qₖ·2^(n−1−k)`.

use crate::error::{Error, Result};
use crate::numerics::{eig_hermitian, ComplexMatrix, C64, DEFAULT_TOL};

/// Lowest eigenvalue a density matrix may have before it is rejected as not
/// positive semidefinite.
pub const PSD_FLOOR: f64 = -1e-9;

/// Bit position (from the least significant end) of `qubit` in an
/// `num_qubits`-qubit basis index.
#[inline]
pub fn bit_position(qubit: usize, num_qubits: usize) -> usize {
    num_qubits - 1 - qubit
}

/// Bitstring label of basis index `index`, qubit 0 first.
pub fn basis_label(index: usize, num_qubits: usize) -> String {
    (0..num_qubits)
        .map(|q| {
            if index >> bit_position(q, num_qubits) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Inverse of [`basis_label`].
pub fn parse_basis_label(label: &str) -> Result<usize> {
    if label.is_empty() || label.len() >= usize::BITS as usize {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    label.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok(acc << 1 | 1),
        _ => Err(Error::InvalidLabel(label.to_string())),
    })
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Normalized pure state over `2ⁿ` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Accepts amplitudes that are already normalized; never renormalizes.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("amplitude"));
        }
        let norm_sqr = norm_sqr(&amplitudes);
        if (norm_sqr - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Scales arbitrary nonzero amplitudes to unit norm.
    pub fn normalize(mut amplitudes: Vec<C64>) -> Result<Self> {
        qubits_for_len(amplitudes.len())?;
        let norm = norm_sqr(&amplitudes).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
            });
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Self::from_amplitudes(amplitudes)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = dimension(num_qubits)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    /// Basis state from a bitstring such as `"01"`.
    pub fn from_label(label: &str) -> Result<Self> {
        let index = parse_basis_label(label)?;
        Self::basis(label.len(), index)
    }

    /// Tensor product `a ⊗ b`; `a`'s qubits come first.
    pub fn kron(a: &Self, b: &Self) -> Result<Self> {
        let num_qubits = a.num_qubits + b.num_qubits;
        dimension(num_qubits)?;
        let amplitudes = a
            .amplitudes
            .iter()
            .flat_map(|&x| b.amplitudes.iter().map(move |&y| x * y))
            .collect();
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub(crate) fn from_raw(num_qubits: usize, amplitudes: Vec<C64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << num_qubits);
        Self {
            num_qubits,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amplitudes).sqrt()
    }

    /// Largest amplitude-wise distance to `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

fn norm_sqr(amplitudes: &[C64]) -> f64 {
    amplitudes.iter().map(|z| z.norm_sqr()).sum()
}

fn dimension(num_qubits: usize) -> Result<usize> {
    if num_qubits >= usize::BITS as usize - 1 {
        return Err(Error::CapacityExceeded {
            what: "qubits",
            requested: num_qubits,
            limit: usize::BITS as usize - 2,
        });
    }
    Ok(1 << num_qubits)
}

/// `⟨a|b⟩ = Σ conj(aᵢ)·bᵢ`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<C64> {
    if a.num_qubits != b.num_qubits {
        return Err(Error::DimensionMismatch {
            expected: a.num_qubits,
            found: b.num_qubits,
        });
    }
    Ok(a
        .amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Hermitian, unit-trace, positive semidefinite `2ⁿ×2ⁿ` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates every density-matrix invariant, including positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let num_qubits = qubits_for_len(matrix.rows())?;
        let trace = matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > DEFAULT_TOL {
            return Err(Error::InvalidDensity(format!("trace is {trace}")));
        }
        // eig_hermitian rejects non-Hermitian input at DEFAULT_TOL.
        let eig = eig_hermitian(&matrix)?;
        let lowest = eig.eigenvalues[0];
        if lowest < PSD_FLOOR {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self { num_qubits, matrix })
    }

    pub(crate) fn from_raw(num_qubits: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), 1 << num_qubits);
        Self { num_qubits, matrix }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.matrix.approx_eq(&other.matrix, tol)
    }
}

/// Probability-weighted collection of pure states.
#[derive(Debug, Clone)]
pub struct MixedEnsemble {
    entries: Vec<(f64, StateVector)>,
}

impl MixedEnsemble {
    pub fn new(entries: Vec<(f64, StateVector)>) -> Result<Self> {
        let Some((_, first)) = entries.first() else {
            return Err(Error::ProbabilitiesInvalid("empty ensemble".into()));
        };
        let num_qubits = first.num_qubits();
        let mut total = 0.0;
        for (p, state) in &entries {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::ProbabilitiesInvalid(format!(
                    "probability {p} outside [0, 1]"
                )));
            }
            if state.num_qubits() != num_qubits {
                return Err(Error::DimensionMismatch {
                    expected: num_qubits,
                    found: state.num_qubits(),
                });
            }
            total += p;
        }
        if (total - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::ProbabilitiesInvalid(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(f64, StateVector)] {
        &self.entries
    }
}

/// `|ψ⟩⟨ψ|`.
pub fn to_density(s: &StateVector) -> DensityMatrix {
    DensityMatrix {
        num_qubits: s.num_qubits,
        matrix: ComplexMatrix::outer(&s.amplitudes, &s.amplitudes),
    }
}

/// `Σ pᵢ|ψᵢ⟩⟨ψᵢ|`.
pub fn from_ensemble(e: &MixedEnsemble) -> DensityMatrix {
    let (_, first) = &e.entries[0];
    let dim = first.dim();
    let mut matrix = ComplexMatrix::zeros(dim, dim);
    for (p, state) in &e.entries {
        let amps = state.amplitudes();
        for i in 0..dim {
            for j in 0..dim {
                matrix[(i, j)] += amps[i] * amps[j].conj() * *p;
            }
        }
    }
    DensityMatrix {
        num_qubits: first.num_qubits(),
        matrix,
    }
}

/// `Tr(ρ²)`, computed as `Σ|ρᵢⱼ|²` since ρ is Hermitian.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
}

/// Zeroes every off-diagonal entry, keeping the populations.
pub fn dephase(rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix {
        num_qubits: rho.num_qubits,
        matrix: ComplexMatrix::diag(&rho.matrix.diagonal()),
    }
}
