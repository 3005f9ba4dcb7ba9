use std::collections::BTreeMap;

use serde::Serialize;

use super::{weight_dot, DiagonalState};
use crate::error::{Error, Result};
use crate::lattice::YoungFrame;
use crate::logspace::{log_sum_exp, LogValue};

pub const KOSTKA_MAX_D: usize = 4;
pub const KOSTKA_MAX_N: u32 = 12;

/// Weights `μ` of `π_Y` with their multiplicities `m(μ)` (Kostka numbers).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightTable {
    shape: YoungFrame,
    entries: BTreeMap<Vec<u32>, u64>,
}

impl WeightTable {
    pub fn shape(&self) -> &YoungFrame {
        &self.shape
    }

    pub fn entries(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, mu: &[u32]) -> u64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }

    /// `Σ_μ m(μ)`, which must equal `dim R_Y`.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }
}

/// Counts semistandard tableaux of shape `Y` over `{1..d}` by content.
///
/// Tableaux are enumerated as Gelfand–Tsetlin patterns: a chain of shapes
/// `Y = λ^(d) ⊇ λ^(d-1) ⊇ … ⊇ λ^(0) = ∅` with consecutive shapes interlacing;
/// `μ_k = |λ^(k)| - |λ^(k-1)|` is the number of entries equal to `k`.
pub fn weight_multiplicities(y: &YoungFrame, d: usize) -> Result<WeightTable> {
    if d > KOSTKA_MAX_D {
        return Err(Error::ResourceLimit {
            what: "d for weight enumeration",
            limit: KOSTKA_MAX_D as u64,
            requested: d as u64,
        });
    }
    if y.size() > KOSTKA_MAX_N {
        return Err(Error::ResourceLimit {
            what: "N for weight enumeration",
            limit: u64::from(KOSTKA_MAX_N),
            requested: u64::from(y.size()),
        });
    }
    let shape = YoungFrame::with_rows(y.rows(), d)?;
    let mut entries = BTreeMap::new();
    let mut content = vec![0u32; d];
    descend(shape.rows(), d, &mut content, &mut entries);
    Ok(WeightTable { shape, entries })
}

fn descend(lambda: &[u32], level: usize, content: &mut [u32], out: &mut BTreeMap<Vec<u32>, u64>) {
    if level == 0 {
        *out.entry(content.to_vec()).or_insert(0) += 1;
        return;
    }
    // μ_i ∈ [λ_{i+1}, λ_i] for i < level - 1.
    let mut mu = vec![0u32; level - 1];
    choose(lambda, level, 0, &mut mu, content, out);
}

fn choose(
    lambda: &[u32],
    level: usize,
    i: usize,
    mu: &mut Vec<u32>,
    content: &mut [u32],
    out: &mut BTreeMap<Vec<u32>, u64>,
) {
    if i == level - 1 {
        let outer: u32 = lambda[..level].iter().sum();
        let inner: u32 = mu.iter().sum();
        content[level - 1] = outer - inner;
        let next = mu.clone();
        descend(&next, level - 1, content, out);
        return;
    }
    for v in lambda[i + 1]..=lambda[i] {
        mu[i] = v;
        choose(lambda, level, i + 1, mu, content, out);
    }
}

/// `ln Σ_μ m(μ) e^{μ·h}`.
pub fn character_from_weights(table: &WeightTable, h: &DiagonalState) -> Result<LogValue> {
    if h.d() != table.shape.d() {
        return Err(Error::DimensionMismatch {
            expected: table.shape.d(),
            got: h.d(),
        });
    }
    let hs = h.log_eigenvalues();
    Ok(LogValue::from_ln(log_sum_exp(
        table
            .entries
            .iter()
            .map(|(mu, &m)| (m as f64).ln() + weight_dot(mu, hs)),
    )))
}
