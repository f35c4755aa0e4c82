use crate::error::{Error, Result};

/// Environment variable that overrides every qubit cap with one integer.
pub const MAX_QUBITS_ENV: &str = "QSIM_MAX_QUBITS";

/// Qubit-count caps for each backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub statevector: usize,
    pub density: usize,
    pub unitary: usize,
    pub grover: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            statevector: 24,
            density: 10,
            unitary: 12,
            grover: 20,
        }
    }
}

impl Limits {
    /// The same cap for every backend.
    pub fn uniform(max_qubits: usize) -> Self {
        Self {
            statevector: max_qubits,
            density: max_qubits,
            unitary: max_qubits,
            grover: max_qubits,
        }
    }

    /// Defaults, or a uniform cap taken from `QSIM_MAX_QUBITS` when set.
    pub fn from_env() -> std::result::Result<Self, String> {
        match std::env::var(MAX_QUBITS_ENV) {
            Ok(v) => v
                .trim()
                .parse::<usize>()
                .map(Self::uniform)
                .map_err(|_| format!("{MAX_QUBITS_ENV} must be a non-negative integer, got '{v}'")),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn check(what: &'static str, requested: usize, limit: usize) -> Result<()> {
        // Beyond 30 qubits dense storage no longer fits in memory anyway, and
        // shifts by the qubit count must stay in range.
        let limit = limit.min(30);
        if requested > limit {
            return Err(Error::CapacityExceeded {
                what,
                requested,
                limit,
            });
        }
        Ok(())
    }
}
