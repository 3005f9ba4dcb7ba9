//! Characters of `GL(d)` evaluated at a density operator's spectrum.
//!
//! The character `χ_Y(ρ)` of the irrep with highest weight `Y` equals the Schur
//! polynomial `s_Y(r_1, …, r_d)`. The primary evaluator is the positive
//! branching recursion in [`branching`]; [`bialternant`] and [`weights`] give
//! independent routes used for cross-checks, and [`symmetric`] rebuilds frame
//! probabilities from symmetric-group characters.

mod bialternant;
mod branching;
mod symmetric;
mod weights;

pub use bialternant::schur_log_bialternant;
pub use symmetric::{brute_force_frame_probability, class_size, cycle_types, power_sum, sn_character, ORACLE_MAX_N};
pub use weights::{character_from_weights, weight_multiplicities, WeightTable, KOSTKA_MAX_D, KOSTKA_MAX_N};

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{ln_dim_unitary_irrep, Spectrum, YoungFrame, SPECTRUM_SUM_TOL};
use crate::logspace::LogValue;
use branching::{check_packable, evaluate, pack, Key, Universe};

/// Slack allowed when checking the character sandwich bounds.
pub const BOUNDS_SLACK: f64 = 1e-10;

/// `ρ_h = diag(exp h_1, …, exp h_d)` with `h` non-increasing; `-inf` marks a zero eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalState {
    log_eigenvalues: Vec<f64>,
}

impl DiagonalState {
    pub fn new(log_eigenvalues: Vec<f64>) -> Result<Self> {
        if log_eigenvalues.is_empty() {
            return Err(Error::Domain("empty diagonal state".into()));
        }
        if log_eigenvalues.iter().any(|h| h.is_nan() || *h == f64::INFINITY) {
            return Err(Error::Domain("log-eigenvalues must be finite or -inf".into()));
        }
        if log_eigenvalues.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain("log-eigenvalues must be non-increasing".into()));
        }
        let total: f64 = log_eigenvalues.iter().map(|h| h.exp()).sum();
        if (total - 1.0).abs() > SPECTRUM_SUM_TOL {
            return Err(Error::Domain(format!("trace is {total}, not 1")));
        }
        Ok(DiagonalState { log_eigenvalues })
    }

    pub fn from_spectrum(r: &Spectrum) -> Self {
        DiagonalState {
            log_eigenvalues: r.log_values(),
        }
    }

    pub fn log_eigenvalues(&self) -> &[f64] {
        &self.log_eigenvalues
    }

    pub fn d(&self) -> usize {
        self.log_eigenvalues.len()
    }

    pub fn to_spectrum(&self) -> Result<Spectrum> {
        Spectrum::new(self.log_eigenvalues.iter().map(|h| h.exp()).collect())
    }
}

/// `μ · h`, treating `0 · (-inf)` as `0`.
pub fn weight_dot(mu: &[u32], h: &[f64]) -> f64 {
    mu.iter()
        .zip(h)
        .filter(|(&m, _)| m > 0)
        .map(|(&m, &hj)| f64::from(m) * hj)
        .sum()
}

fn check_frame(y: &YoungFrame, d: usize) -> Result<Vec<u32>> {
    if y.length() > d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: y.length(),
        });
    }
    let mut rows: Vec<u32> = y.rows().iter().copied().take(d).collect();
    rows.resize(d, 0);
    Ok(rows)
}

/// `ln s_Y(r)` by the branching recursion; [`LogValue::ZERO`] when `Y` has more
/// non-empty rows than `r` has non-zero entries.
pub fn schur_log(y: &YoungFrame, r: &Spectrum) -> Result<LogValue> {
    let rows = check_frame(y, r.d())?;
    let rank = r.rank();
    if y.length() > rank {
        return Ok(LogValue::ZERO);
    }
    if y.size() == 0 {
        return Ok(LogValue::ONE);
    }
    let sub = &rows[..rank];
    check_packable(rank, sub[0])?;
    let log_x: Vec<f64> = r.values()[..rank].iter().map(|v| v.ln()).collect();
    let table = evaluate(&log_x, &Universe::Within(sub.to_vec()));
    Ok(LogValue::from_ln(table[&pack(sub)]))
}

/// `ln s_Y(r)` for every frame `Y` with `n` boxes and at most `d` rows, sharing
/// one branching table across all of them.
#[derive(Debug, Clone)]
pub struct SchurTable {
    d: usize,
    n: u32,
    rank: usize,
    values: FxHashMap<Key, f64>,
}

impl SchurTable {
    pub fn build(r: &Spectrum, n: u32) -> Result<Self> {
        let d = r.d();
        let rank = r.rank();
        check_packable(rank, n)?;
        let log_x: Vec<f64> = r.values()[..rank].iter().map(|v| v.ln()).collect();
        let values = evaluate(&log_x, &Universe::Size(n));
        Ok(SchurTable { d, n, rank, values })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn get(&self, y: &YoungFrame) -> Result<LogValue> {
        let rows = check_frame(y, self.d)?;
        if y.size() != self.n {
            return Err(Error::Domain(format!(
                "frame {y} has {} boxes; table built for {}",
                y.size(),
                self.n
            )));
        }
        if y.length() > self.rank {
            return Ok(LogValue::ZERO);
        }
        let key = pack(&rows[..self.rank]);
        Ok(LogValue::from_ln(
            self.values.get(&key).copied().unwrap_or(f64::NEG_INFINITY),
        ))
    }
}

/// The sandwich `e^{Y·h} ≤ χ_Y(ρ_h) ≤ dim R_Y · e^{Y·h}` evaluated at one frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharacterBounds {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub holds: bool,
}

fn le_with_slack(a: f64, b: f64) -> bool {
    a == b || a <= b + BOUNDS_SLACK
}

pub fn character_bounds_check(y: &YoungFrame, h: &DiagonalState) -> Result<CharacterBounds> {
    let r = h.to_spectrum()?;
    let rows = check_frame(y, h.d())?;
    let lower = weight_dot(&rows, h.log_eigenvalues());
    let upper = lower + ln_dim_unitary_irrep(y, h.d())?;
    let value = schur_log(y, &r)?.ln();
    let holds = le_with_slack(lower, value) && le_with_slack(value, upper);
    Ok(CharacterBounds {
        lower,
        value,
        upper,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_frames;

    fn frame(rows: &[u32]) -> YoungFrame {
        YoungFrame::new(rows.to_vec()).unwrap()
    }

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn schur_log_examples() {
        for r in [
            spec(&[1.0]),
            spec(&[0.5, 0.5]),
            spec(&[0.6, 0.3, 0.1]),
            spec(&[0.4, 0.3, 0.2, 0.1]),
        ] {
            let y = YoungFrame::with_rows(&[1], r.d()).unwrap();
            assert!(schur_log(&y, &r).unwrap().ln().abs() < 1e-15);
        }
        let v = schur_log(&frame(&[1, 1]), &spec(&[0.6, 0.4])).unwrap();
        assert!((v.ln() - 0.24f64.ln()).abs() < 1e-14);
        let third = 1.0 / 3.0;
        let v = schur_log(&frame(&[2, 1, 0]), &spec(&[third, third, third])).unwrap();
        assert!((v.ln() - (8.0f64 / 27.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn zero_eigenvalues_reduce_dimension() {
        let r = spec(&[0.7, 0.3, 0.0]);
        assert!(schur_log(&frame(&[1, 1, 1]), &r).unwrap().is_zero());
        let v = schur_log(&frame(&[1, 1, 0]), &r).unwrap();
        assert!((v.ln() - 0.21f64.ln()).abs() < 1e-14);
        let pure = spec(&[1.0, 0.0, 0.0]);
        assert_eq!(schur_log(&frame(&[5, 0, 0]), &pure).unwrap().ln(), 0.0);
        assert!(schur_log(&frame(&[4, 1, 0]), &pure).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(matches!(
            schur_log(&frame(&[1, 1, 1]), &spec(&[0.5, 0.5])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn table_agrees_with_single_frame() {
        let r = spec(&[0.5, 0.25, 0.15, 0.1]);
        let table = SchurTable::build(&r, 14).unwrap();
        for y in enumerate_frames(4, 14).unwrap() {
            let a = table.get(&y).unwrap().ln();
            let b = schur_log(&y, &r).unwrap().ln();
            assert!((a - b).abs() < 1e-12, "{y}: {a} vs {b}");
        }
        let degenerate = spec(&[0.5, 0.5, 0.0]);
        let table = SchurTable::build(&degenerate, 4).unwrap();
        assert!(table.get(&frame(&[2, 1, 1])).unwrap().is_zero());
        assert!((table.get(&frame(&[2, 2, 0])).unwrap().value() - 0.0625).abs() < 1e-15);
    }

    #[test]
    fn bounds_examples() {
        let h = DiagonalState::from_spectrum(&spec(&[1.0, 0.0, 0.0]));
        let b = character_bounds_check(&frame(&[6, 0, 0]), &h).unwrap();
        assert_eq!(b.lower, 0.0);
        assert_eq!(b.value, 0.0);
        assert!(b.holds);

        let h = DiagonalState::from_spectrum(&spec(&[0.6, 0.3, 0.1]));
        assert!(character_bounds_check(&frame(&[2, 1, 0]), &h).unwrap().holds);

        let h = DiagonalState::from_spectrum(&spec(&[0.5, 0.5]));
        let b = character_bounds_check(&frame(&[1, 1]), &h).unwrap();
        for v in [b.lower, b.value, b.upper] {
            assert!((v - 0.25f64.ln()).abs() < 1e-14);
        }
        assert!(b.holds);
    }

    #[test]
    fn diagonal_state_validation() {
        assert!(DiagonalState::new(vec![0.3f64.ln(), 0.7f64.ln()]).is_err());
        assert!(DiagonalState::new(vec![0.5f64.ln(), 0.4f64.ln()]).is_err());
        assert!(DiagonalState::new(vec![0.0, f64::NEG_INFINITY]).is_ok());
        assert_eq!(weight_dot(&[3, 0], &[0.0, f64::NEG_INFINITY]), 0.0);
    }
}
