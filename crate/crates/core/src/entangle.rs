//! Bipartite entanglement diagnostics for pure states.

use crate::error::{Error, Result};
use crate::numerics::{eig_hermitian, ComplexMatrix, C64};
use crate::qstate::{bit_position, purity, DensityMatrix, StateVector};

/// Reduced-matrix eigenvalues below this are treated as zero in the entropy.
pub const EIGENVALUE_CLAMP: f64 = 1e-12;

/// A split of the qubits into two non-empty complementary sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    subsystem_a: Vec<usize>,
    subsystem_b: Vec<usize>,
}

impl Bipartition {
    /// `subsystem_a` is sorted; the complement becomes subsystem B.
    pub fn new(subsystem_a: &[usize], num_qubits: usize) -> Result<Self> {
        let a = validate_subsystem(subsystem_a, num_qubits)?;
        let b = (0..num_qubits).filter(|q| !a.contains(q)).collect();
        Ok(Self {
            subsystem_a: a,
            subsystem_b: b,
        })
    }

    pub fn subsystem_a(&self) -> &[usize] {
        &self.subsystem_a
    }

    pub fn subsystem_b(&self) -> &[usize] {
        &self.subsystem_b
    }

    pub fn num_qubits(&self) -> usize {
        self.subsystem_a.len() + self.subsystem_b.len()
    }

    /// The same split with the roles of A and B exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            subsystem_a: self.subsystem_b.clone(),
            subsystem_b: self.subsystem_a.clone(),
        }
    }
}

fn validate_subsystem(keep: &[usize], num_qubits: usize) -> Result<Vec<usize>> {
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() {
        return Err(Error::InvalidSubsystem("repeated qubit index".into()));
    }
    if sorted.is_empty() {
        return Err(Error::InvalidSubsystem("subsystem is empty".into()));
    }
    if let Some(&q) = sorted.iter().find(|&&q| q >= num_qubits) {
        return Err(Error::InvalidSubsystem(format!(
            "qubit {q} out of range for {num_qubits} qubit(s)"
        )));
    }
    if sorted.len() == num_qubits {
        return Err(Error::InvalidSubsystem(
            "subsystem must be a strict subset of the qubits".into(),
        ));
    }
    Ok(sorted)
}

/// Maps (kept index, traced index) pairs to full basis indices.
struct Split {
    kept_masks: Vec<usize>,
    traced_masks: Vec<usize>,
}

impl Split {
    fn new(keep: &[usize], num_qubits: usize) -> Self {
        let mask = |q: usize| 1usize << bit_position(q, num_qubits);
        Self {
            kept_masks: keep.iter().map(|&q| mask(q)).collect(),
            traced_masks: (0..num_qubits)
                .filter(|q| !keep.contains(q))
                .map(mask)
                .collect(),
        }
    }

    fn scatter(masks: &[usize], local: usize) -> usize {
        let width = masks.len();
        masks
            .iter()
            .enumerate()
            .filter(|(i, _)| local >> (width - 1 - i) & 1 == 1)
            .map(|(_, &m)| m)
            .sum()
    }

    fn index(&self, kept: usize, traced: usize) -> usize {
        Self::scatter(&self.kept_masks, kept) | Self::scatter(&self.traced_masks, traced)
    }

    fn kept_dim(&self) -> usize {
        1 << self.kept_masks.len()
    }

    fn traced_dim(&self) -> usize {
        1 << self.traced_masks.len()
    }
}

/// Traces out every qubit not in `keep`. The kept qubits keep their relative
/// order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    let keep = validate_subsystem(keep, n)?;
    let split = Split::new(&keep, n);
    let m = rho.matrix();
    let dim = split.kept_dim();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(i, j)] = (0..split.traced_dim())
                .map(|t| m[(split.index(i, t), split.index(j, t))])
                .sum();
        }
    }
    Ok(DensityMatrix::from_raw(keep.len(), out))
}

/// Reduced density matrix of a pure state on `keep`, without forming the
/// full `|ψ⟩⟨ψ|`.
pub fn reduced_density(s: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let n = s.num_qubits();
    let keep = validate_subsystem(keep, n)?;
    let split = Split::new(&keep, n);
    let amps = s.amplitudes();
    let dim = split.kept_dim();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for t in 0..split.traced_dim() {
        let column: Vec<C64> = (0..dim).map(|i| amps[split.index(i, t)]).collect();
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] += column[i] * column[j].conj();
            }
        }
    }
    Ok(DensityMatrix::from_raw(keep.len(), out))
}

/// Von Neumann entropy (base 2) of the reduced state on subsystem A.
pub fn entanglement_entropy(s: &StateVector, part: &Bipartition) -> Result<f64> {
    check_partition(s, part)?;
    let reduced = reduced_density(s, &part.subsystem_a)?;
    let eig = eig_hermitian(reduced.matrix())?;
    Ok(eig
        .eigenvalues
        .iter()
        .filter(|&&l| l > EIGENVALUE_CLAMP)
        .map(|&l| -l * l.log2())
        .sum::<f64>()
        .max(0.0))
}

/// True iff the reduced state on subsystem A has purity below `1 − tol`.
pub fn is_entangled(s: &StateVector, part: &Bipartition, tol: f64) -> Result<bool> {
    check_partition(s, part)?;
    let reduced = reduced_density(s, &part.subsystem_a)?;
    Ok(purity(&reduced) < 1.0 - tol)
}

fn check_partition(s: &StateVector, part: &Bipartition) -> Result<()> {
    if part.num_qubits() != s.num_qubits() {
        return Err(Error::InvalidSubsystem(format!(
            "bipartition covers {} qubit(s), state has {}",
            part.num_qubits(),
            s.num_qubits()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::to_density;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell_state() -> StateVector {
        let r = C64::new(FRAC_1_SQRT_2, 0.0);
        let o = C64::new(0.0, 0.0);
        StateVector::from_amplitudes(vec![r, o, o, r]).unwrap()
    }

    #[test]
    fn bipartition_validation() {
        let p = Bipartition::new(&[2, 0], 4).unwrap();
        assert_eq!(p.subsystem_a(), &[0, 2]);
        assert_eq!(p.subsystem_b(), &[1, 3]);
        assert!(Bipartition::new(&[], 2).is_err());
        assert!(Bipartition::new(&[0, 1], 2).is_err());
        assert!(Bipartition::new(&[0, 0], 3).is_err());
        assert!(Bipartition::new(&[5], 3).is_err());
    }

    #[test]
    fn partial_trace_examples() {
        let r = partial_trace(&to_density(&bell_state()), &[0]).unwrap();
        let half = ComplexMatrix::from_real_rows(&[[0.5, 0.0], [0.0, 0.5]]);
        assert!(r.matrix().approx_eq(&half, 1e-15));

        let r = partial_trace(&to_density(&StateVector::from_label("00").unwrap()), &[0]).unwrap();
        assert_eq!(r.into_matrix(), ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]));

        assert!(matches!(
            partial_trace(&to_density(&bell_state()), &[0, 1]),
            Err(Error::InvalidSubsystem(_))
        ));
    }

    #[test]
    fn partial_trace_keeps_the_right_factor() {
        // |0⟩ ⊗ |1⟩ ⊗ |+⟩: keeping {2} must give |+⟩⟨+|, keeping {1} |1⟩⟨1|.
        let plus = StateVector::normalize(vec![C64::new(1.0, 0.0); 2]).unwrap();
        let s = StateVector::kron(&StateVector::from_label("01").unwrap(), &plus).unwrap();
        let rho = to_density(&s);
        assert!(partial_trace(&rho, &[2]).unwrap().approx_eq(&to_density(&plus), 1e-15));
        let one = to_density(&StateVector::basis(1, 1).unwrap());
        assert!(partial_trace(&rho, &[1]).unwrap().approx_eq(&one, 1e-15));
        for keep in [&[0usize][..], &[1, 2], &[0, 2]] {
            assert!(reduced_density(&s, keep)
                .unwrap()
                .approx_eq(&partial_trace(&rho, keep).unwrap(), 1e-15));
        }
    }

    #[test]
    fn entropy_examples() {
        let part = Bipartition::new(&[0], 2).unwrap();
        assert!((entanglement_entropy(&bell_state(), &part).unwrap() - 1.0).abs() < 1e-12);
        let s = StateVector::from_label("00").unwrap();
        assert_eq!(entanglement_entropy(&s, &part).unwrap(), 0.0);
        let r = C64::new(FRAC_1_SQRT_2, 0.0);
        let o = C64::new(0.0, 0.0);
        let s = StateVector::from_amplitudes(vec![r, r, o, o]).unwrap();
        assert!(entanglement_entropy(&s, &part).unwrap().abs() < 1e-12);
        let wrong = Bipartition::new(&[0], 3).unwrap();
        assert!(entanglement_entropy(&s, &wrong).is_err());
    }

    #[test]
    fn is_entangled_examples() {
        let part = Bipartition::new(&[0], 2).unwrap();
        assert!(is_entangled(&bell_state(), &part, 1e-9).unwrap());
        assert!(!is_entangled(&StateVector::from_label("01").unwrap(), &part, 1e-9).unwrap());
    }
}
