//! Born-rule probabilities, projective measurement and seeded sampling.
//!
//! Sampling uses ChaCha8 with one stream per shot: shot `i` draws from
//! stream `i` of the generator seeded by the master seed, so the histogram
//! depends only on `(circuit, shots, seed)` and never on thread scheduling.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{apply_with_limits, Circuit};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numerics::C64;
use crate::qstate::{basis_label, bit_position, DensityMatrix, StateVector};

/// Probabilities below this are treated as impossible outcomes.
pub const PROBABILITY_EPS: f64 = 1e-12;

/// Probability of each computational basis outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    pub num_qubits: usize,
    pub probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// `(label, probability)` pairs in index order.
    pub fn labelled(&self) -> impl Iterator<Item = (String, f64)> + '_ {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(k, &p)| (basis_label(k, self.num_qubits), p))
    }
}

/// Counts per outcome label from repeated runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotHistogram {
    pub counts: BTreeMap<String, u64>,
    pub shots: u64,
    pub seed: u64,
}

impl ShotHistogram {
    pub fn count(&self, label: &str) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }

    /// `{"counts": {label: count, …}, "shots": N, "seed": S}` on one line.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("histogram serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// `label,count` rows after a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,count\n");
        for (label, count) in &self.counts {
            let _ = writeln!(out, "{label},{count}");
        }
        out
    }

    /// Aligned two-column table.
    pub fn to_text(&self) -> String {
        let width = self
            .counts
            .keys()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max("outcome".len());
        let count_width = self.shots.to_string().len().max("count".len());
        let mut out = format!("{:<width$}  {:>count_width$}\n", "outcome", "count");
        for (label, count) in &self.counts {
            let _ = writeln!(out, "{label:<width$}  {count:>count_width$}");
        }
        let _ = writeln!(out, "shots={} seed={}", self.shots, self.seed);
        out
    }
}

/// Outcome of a projective measurement and the collapsed state.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub outcome: String,
    pub post_state: StateVector,
}

/// `|amplitude_k|²` for each basis state.
pub fn probabilities(s: &StateVector) -> OutcomeDistribution {
    OutcomeDistribution {
        num_qubits: s.num_qubits(),
        probabilities: s.amplitudes().iter().map(|z| z.norm_sqr()).collect(),
    }
}

/// Real parts of the diagonal of `rho`.
pub fn probabilities_density(rho: &DensityMatrix) -> OutcomeDistribution {
    OutcomeDistribution {
        num_qubits: rho.num_qubits(),
        probabilities: rho.matrix().diagonal().iter().map(|z| z.re).collect(),
    }
}

/// Least `k` whose cumulative probability exceeds `draw`.
///
/// The draw is scaled by the total so roundoff in the squared amplitudes
/// does not shift bucket boundaries. If the total still ends up at or
/// below the draw, the last outcome with non-negligible probability wins.
fn select_outcome(probs: &[f64], draw: f64) -> usize {
    let draw = draw * probs.iter().sum::<f64>();
    let mut cumulative = 0.0;
    let mut last_possible = 0;
    for (k, &p) in probs.iter().enumerate() {
        if p > PROBABILITY_EPS {
            last_possible = k;
        }
        cumulative += p;
        if cumulative > draw && p > PROBABILITY_EPS {
            return k;
        }
    }
    last_possible
}

/// Measures every qubit; the state collapses to a basis vector.
pub fn measure_all(s: &StateVector, rng_draw: f64) -> MeasurementRecord {
    let probs = probabilities(s).probabilities;
    let k = select_outcome(&probs, rng_draw);
    MeasurementRecord {
        outcome: basis_label(k, s.num_qubits()),
        post_state: StateVector::basis(s.num_qubits(), k).expect("index in range"),
    }
}

/// Measures one qubit and renormalizes the projected state.
pub fn measure_qubit(s: &StateVector, qubit: usize, rng_draw: f64) -> Result<MeasurementRecord> {
    let n = s.num_qubits();
    if qubit >= n {
        return Err(Error::WireOutOfRange {
            wire: qubit,
            num_qubits: n,
        });
    }
    let mask = 1usize << bit_position(qubit, n);
    let mut split = [0.0f64; 2];
    for (k, z) in s.amplitudes().iter().enumerate() {
        split[usize::from(k & mask != 0)] += z.norm_sqr();
    }
    let bit = select_outcome(&split, rng_draw);
    let scale = 1.0 / split[bit].sqrt();
    let amplitudes = s
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(k, &z)| {
            if usize::from(k & mask != 0) == bit {
                z * scale
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(MeasurementRecord {
        outcome: bit.to_string(),
        post_state: StateVector::normalize(amplitudes)?,
    })
}

/// Uniform draw in `[0, 1)` for shot `shot` under `seed`.
pub fn shot_draw(seed: u64, shot: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng.gen::<f64>()
}

/// Runs `c` from `|0…0⟩` and measures all qubits `shots` times.
///
/// The circuit is deterministic, so the final state is computed once and
/// each shot only draws its own measurement.
pub fn sample(c: &Circuit, shots: u64, seed: u64) -> Result<ShotHistogram> {
    sample_with_limits(c, shots, seed, &Limits::default())
}

pub fn sample_with_limits(
    c: &Circuit,
    shots: u64,
    seed: u64,
    limits: &Limits,
) -> Result<ShotHistogram> {
    if shots == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    Limits::check("state-vector qubits", c.num_qubits(), limits.statevector)?;
    let state = apply_with_limits(c, &StateVector::zero(c.num_qubits())?, limits)?;
    let probs = probabilities(&state).probabilities;
    let cdf_select = |shot: u64| select_outcome(&probs, shot_draw(seed, shot));

    let counts_by_index: BTreeMap<usize, u64> = (0..shots)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, shot| {
            *acc.entry(cdf_select(shot)).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let counts = counts_by_index
        .into_iter()
        .map(|(k, v)| (basis_label(k, c.num_qubits()), v))
        .collect();
    Ok(ShotHistogram {
        counts,
        shots,
        seed,
    })
}

/// [`sample`] on a dedicated pool of `threads` worker threads.
pub fn sample_with_threads(
    c: &Circuit,
    shots: u64,
    seed: u64,
    threads: usize,
) -> Result<ShotHistogram> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| sample(c, shots, seed))
}
