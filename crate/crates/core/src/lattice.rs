//! Young frames, spectra and the dimension combinatorics of both.

use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};

/// Absolute tolerance on the total mass of a [`Spectrum`].
pub const SPECTRUM_SUM_TOL: f64 = 1e-12;

/// Row lengths of a Young frame with exactly `d` rows (trailing zeros kept).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungFrame {
    rows: Vec<u32>,
}

impl YoungFrame {
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("rows {rows:?} are not non-increasing")));
        }
        Ok(YoungFrame { rows })
    }

    /// Pads `rows` with zeros to length `d`.
    pub fn with_rows(rows: &[u32], d: usize) -> Result<Self> {
        let nonzero = rows.iter().rposition(|&r| r > 0).map_or(0, |p| p + 1);
        if nonzero > d {
            return Err(Error::Domain(format!(
                "frame {rows:?} has {nonzero} non-empty rows, more than d = {d}"
            )));
        }
        let mut padded: Vec<u32> = rows[..nonzero].to_vec();
        padded.resize(d, 0);
        YoungFrame::new(padded)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u32>) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0] >= w[1]));
        YoungFrame { rows }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    /// Total number of boxes.
    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// Number of non-empty rows.
    pub fn length(&self) -> usize {
        self.rows.iter().take_while(|&&r| r > 0).count()
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Vec<u32> {
        let width = self.rows.first().copied().unwrap_or(0);
        (0..width)
            .map(|c| self.rows.iter().filter(|&&r| r > c).count() as u32)
            .collect()
    }

    /// `true` if every prefix sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &[u32]) -> bool {
        let mut a = 0u64;
        let mut b = 0u64;
        for k in 0..self.rows.len().max(other.len()) {
            a += u64::from(self.rows.get(k).copied().unwrap_or(0));
            b += u64::from(other.get(k).copied().unwrap_or(0));
            if b > a {
                return false;
            }
        }
        true
    }

    /// The estimate `Y / N` in exact rational form.
    pub fn estimate_exact(&self) -> Result<Vec<Ratio<u64>>> {
        let n = u64::from(self.size());
        if n == 0 {
            return Err(Error::Domain("estimate of the empty frame".into()));
        }
        Ok(self.rows.iter().map(|&r| Ratio::new(u64::from(r), n)).collect())
    }
}

impl fmt::Display for YoungFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// A point of the closed ordered probability simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Validates an already ordered probability vector.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidSpectrum(format!("entry {bad} is not a probability")));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpectrum(format!(
                "entries {values:?} are not in non-increasing order"
            )));
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > SPECTRUM_SUM_TOL {
            return Err(Error::InvalidSpectrum(format!("entries sum to {total}, not 1")));
        }
        Ok(Spectrum { values })
    }

    /// Sorts into non-increasing order, then validates.
    pub fn canonicalize(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidSpectrum("NaN entry".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum::new(values)
    }

    /// Rescales non-negative weights to unit mass, then sorts.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::InvalidSpectrum(format!("weights sum to {total}")));
        }
        Spectrum::canonicalize(weights.into_iter().map(|w| w / total).collect())
    }

    pub fn uniform(d: usize) -> Self {
        Spectrum {
            values: vec![1.0 / d as f64; d],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn d(&self) -> usize {
        self.values.len()
    }

    /// Number of strictly positive entries (a prefix, by ordering).
    pub fn rank(&self) -> usize {
        self.values.iter().take_while(|&&v| v > 0.0).count()
    }

    pub fn is_interior(&self) -> bool {
        self.rank() == self.d()
    }

    /// Log-eigenvalues `h_j = ln r_j`.
    pub fn log_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.ln()).collect()
    }
}

/// Every partition of `n` into at most `d` parts, as frames of length `d`,
/// in lexicographically decreasing order.
pub fn enumerate_frames(d: usize, n: u32) -> Result<Vec<YoungFrame>> {
    if d == 0 {
        if n > 0 {
            return Err(Error::Domain(format!("no frame with 0 rows holds {n} boxes")));
        }
        return Ok(vec![YoungFrame { rows: Vec::new() }]);
    }
    let mut out = Vec::new();
    let mut rows = vec![0u32; d];
    fill_rows(&mut rows, 0, n, n, &mut out);
    Ok(out)
}

fn fill_rows(rows: &mut [u32], idx: usize, remaining: u32, cap: u32, out: &mut Vec<YoungFrame>) {
    let left = (rows.len() - idx) as u32;
    if left == 1 {
        if remaining <= cap {
            rows[idx] = remaining;
            out.push(YoungFrame { rows: rows.to_vec() });
        }
        return;
    }
    // Smallest admissible row: the rest can hold at most `left - 1` copies of it.
    let lo = remaining.div_ceil(left);
    let hi = cap.min(remaining);
    for v in (lo..=hi).rev() {
        rows[idx] = v;
        fill_rows(rows, idx + 1, remaining - v, v, out);
    }
}

/// Number of partitions of `n` into at most `d` parts.
pub fn count_frames(d: usize, n: u32) -> u64 {
    // p(n, k) = p(n, k - 1) + p(n - k, k)
    let n = n as usize;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for k in 1..=d {
        for m in k..=n {
            table[m] += table[m - k];
        }
    }
    table[n]
}

/// Hook lengths of all cells, row by row.
pub fn hook_lengths(y: &YoungFrame) -> Vec<u32> {
    let cols = y.conjugate();
    let mut hooks = Vec::with_capacity(y.size() as usize);
    for (i, &len) in y.rows().iter().enumerate() {
        for (j, &col) in cols.iter().enumerate().take(len as usize) {
            hooks.push(len - j as u32 + col - i as u32 - 1);
        }
    }
    hooks
}

/// `dim S_Y`: the number of standard tableaux of shape `Y`, by the hook-length formula.
pub fn dim_symmetric_irrep(y: &YoungFrame) -> BigUint {
    let mut num = BigUint::one();
    for k in 2..=y.size() {
        num *= k;
    }
    let mut den = BigUint::one();
    for h in hook_lengths(y) {
        den *= h;
    }
    num / den
}

/// `ln dim S_Y` in floating point, `O(d^2)` per frame.
pub fn ln_dim_symmetric_irrep(y: &YoungFrame) -> f64 {
    let d = y.d();
    let shifted: Vec<u64> = y
        .rows()
        .iter()
        .enumerate()
        .map(|(i, &r)| u64::from(r) + (d - 1 - i) as u64)
        .collect();
    let mut acc = ln_factorial(u64::from(y.size()));
    for i in 0..d {
        for j in i + 1..d {
            acc += ((shifted[i] - shifted[j]) as f64).ln();
        }
        acc -= ln_factorial(shifted[i]);
    }
    acc
}

fn check_rows_fit(y: &YoungFrame, d: usize) -> Result<()> {
    if y.length() > d {
        return Err(Error::Domain(format!("frame {y} has more than {d} non-empty rows")));
    }
    Ok(())
}

fn padded_row(y: &YoungFrame, i: usize) -> i64 {
    i64::from(y.rows().get(i).copied().unwrap_or(0))
}

/// `dim R_Y` for `GL(d)` by the Weyl dimension formula, exactly.
pub fn dim_unitary_irrep(y: &YoungFrame, d: usize) -> Result<BigUint> {
    check_rows_fit(y, d)?;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d {
        for j in i + 1..d {
            let gap = padded_row(y, i) - padded_row(y, j) + (j - i) as i64;
            num *= gap as u64;
            den *= (j - i) as u64;
        }
    }
    Ok(num / den)
}

pub fn ln_dim_unitary_irrep(y: &YoungFrame, d: usize) -> Result<f64> {
    check_rows_fit(y, d)?;
    let mut acc = 0.0;
    for i in 0..d {
        for j in i + 1..d {
            let gap = padded_row(y, i) - padded_row(y, j) + (j - i) as i64;
            acc += (gap as f64).ln() - ((j - i) as f64).ln();
        }
    }
    Ok(acc)
}

/// `(N + 1)^(d(d-1)/2)`, a uniform upper bound on `dim R_Y` over frames with `N` boxes.
pub fn dim_poly_bound(d: usize, n: u32) -> BigUint {
    let pairs = (d * d.saturating_sub(1) / 2) as u32;
    BigUint::from(n + 1).pow(pairs)
}

pub fn ln_dim_poly_bound(d: usize, n: u32) -> f64 {
    let pairs = (d * d.saturating_sub(1) / 2) as f64;
    pairs * f64::from(n + 1).ln()
}

/// The estimate `Y / N`.
pub fn frame_to_estimate(y: &YoungFrame) -> Result<Spectrum> {
    let n = y.size();
    if n == 0 {
        return Err(Error::Domain("estimate of the empty frame (N = 0)".into()));
    }
    let n = f64::from(n);
    Ok(Spectrum {
        values: y.rows().iter().map(|&r| f64::from(r) / n).collect(),
    })
}

/// Floating-point view of a big integer's natural log.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn frame(rows: &[u32]) -> YoungFrame {
        YoungFrame::new(rows.to_vec()).unwrap()
    }

    /// Independent partition enumerator: all non-increasing d-tuples by brute force.
    fn brute_partitions(d: usize, n: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let total = (n as usize + 1).pow(d as u32);
        for code in 0..total {
            let mut c = code;
            let mut rows = Vec::with_capacity(d);
            for _ in 0..d {
                rows.push((c % (n as usize + 1)) as u32);
                c /= n as usize + 1;
            }
            if rows.iter().sum::<u32>() == n && rows.windows(2).all(|w| w[0] >= w[1]) {
                out.push(rows);
            }
        }
        out.sort();
        out.reverse();
        out
    }

    #[test]
    fn enumerate_small_cases() {
        let f = enumerate_frames(2, 2).unwrap();
        assert_eq!(f, vec![frame(&[2, 0]), frame(&[1, 1])]);
        assert_eq!(enumerate_frames(1, 5).unwrap(), vec![frame(&[5])]);
        let f = enumerate_frames(3, 3).unwrap();
        assert_eq!(f, vec![frame(&[3, 0, 0]), frame(&[2, 1, 0]), frame(&[1, 1, 1])]);
        assert!(enumerate_frames(0, 1).is_err());
        assert_eq!(enumerate_frames(3, 0).unwrap(), vec![frame(&[0, 0, 0])]);
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for d in 1..=4 {
            for n in 0..=12 {
                let got: Vec<Vec<u32>> = enumerate_frames(d, n).unwrap().into_iter().map(|f| f.rows).collect();
                assert_eq!(got, brute_partitions(d, n), "d={d} n={n}");
                assert_eq!(got.len() as u64, count_frames(d, n));
            }
        }
    }

    #[test]
    fn enumerate_count_and_uniqueness_larger() {
        for (d, n) in [(3usize, 60u32), (4, 40), (2, 401)] {
            let f = enumerate_frames(d, n).unwrap();
            assert_eq!(f.len() as u64, count_frames(d, n));
            assert!(f.windows(2).all(|w| w[0] > w[1]), "strictly decreasing, hence unique");
        }
    }

    #[test]
    fn symmetric_dims() {
        assert_eq!(dim_symmetric_irrep(&frame(&[2, 1])), BigUint::from(2u32));
        assert_eq!(dim_symmetric_irrep(&frame(&[7])), BigUint::from(1u32));
        assert_eq!(dim_symmetric_irrep(&frame(&[1, 1, 1])), BigUint::from(1u32));
        assert_eq!(dim_symmetric_irrep(&frame(&[3, 2, 0])), BigUint::from(5u32));
        assert_eq!(dim_symmetric_irrep(&frame(&[4, 2, 1, 0])), BigUint::from(35u32));
    }

    #[test]
    fn symmetric_dim_exact_and_log_paths_agree() {
        for d in 1..=4 {
            for n in [1u32, 5, 20, 60, 170] {
                for y in enumerate_frames(d, n).unwrap().iter().step_by(7) {
                    let exact = ln_biguint(&dim_symmetric_irrep(y));
                    let log = ln_dim_symmetric_irrep(y);
                    assert!((exact - log).abs() <= 1e-10 * exact.abs().max(1.0), "{y}");
                }
            }
        }
    }

    #[test]
    fn unitary_dims() {
        let d3 = |r: &[u32]| dim_unitary_irrep(&frame(r), 3).unwrap();
        assert_eq!(d3(&[2, 1, 0]), BigUint::from(8u32));
        assert_eq!(d3(&[1, 1, 1]), BigUint::from(1u32));
        assert_eq!(d3(&[3, 0, 0]), BigUint::from(10u32));
        for n in 0..20u32 {
            assert_eq!(dim_unitary_irrep(&frame(&[n, 0]), 2).unwrap(), BigUint::from(n + 1));
        }
        assert!(dim_unitary_irrep(&frame(&[1, 1, 1]), 2).is_err());
        let ln = ln_dim_unitary_irrep(&frame(&[2, 1, 0]), 3).unwrap();
        assert!((ln - 8f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn schur_weyl_dimension_count() {
        for d in 1..=4usize {
            for n in 0..=30u32 {
                let mut total = BigUint::from(0u32);
                for y in enumerate_frames(d, n).unwrap() {
                    total += dim_symmetric_irrep(&y) * dim_unitary_irrep(&y, d).unwrap();
                }
                assert_eq!(total, BigUint::from(d).pow(n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn poly_bound_dominates_dims() {
        assert_eq!(dim_poly_bound(2, 10), BigUint::from(11u32));
        assert_eq!(dim_poly_bound(1, 99), BigUint::from(1u32));
        assert_eq!(dim_poly_bound(3, 3), BigUint::from(64u32));
        for d in 1..=4usize {
            for n in 0..=60u32 {
                let bound = dim_poly_bound(d, n);
                for y in enumerate_frames(d, n).unwrap() {
                    assert!(dim_unitary_irrep(&y, d).unwrap() <= bound);
                }
            }
        }
    }

    #[test]
    fn estimates() {
        let s = frame_to_estimate(&frame(&[72, 36, 12])).unwrap();
        let want = [0.6, 0.3, 0.1];
        for (a, b) in s.values().iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(
            frame_to_estimate(&frame(&[9, 0, 0])).unwrap().values(),
            &[1.0, 0.0, 0.0]
        );
        assert_eq!(frame_to_estimate(&frame(&[1, 1])).unwrap().values(), &[0.5, 0.5]);
        assert!(frame_to_estimate(&frame(&[0, 0])).is_err());
    }

    #[test]
    fn spectrum_validation() {
        assert!(Spectrum::new(vec![0.3, 0.7]).is_err());
        assert!(Spectrum::new(vec![0.7, 0.2]).is_err());
        assert!(Spectrum::new(vec![1.1, -0.1]).is_err());
        let s = Spectrum::canonicalize(vec![0.1, 0.6, 0.3]).unwrap();
        assert_eq!(s.values(), &[0.6, 0.3, 0.1]);
        let s = Spectrum::normalized(vec![2.0, 1.0, 1.0]).unwrap();
        assert_eq!(s.values(), &[0.5, 0.25, 0.25]);
        assert_eq!(Spectrum::new(vec![1.0, 0.0, 0.0]).unwrap().rank(), 1);
    }

    #[test]
    fn padding_and_dominance() {
        let y = YoungFrame::with_rows(&[2, 1], 4).unwrap();
        assert_eq!(y.rows(), &[2, 1, 0, 0]);
        assert!(YoungFrame::with_rows(&[1, 1, 1], 2).is_err());
        assert!(y.dominates(&[1, 1, 1, 0]));
        assert!(!frame(&[1, 1, 1]).dominates(&[2, 1, 0]));
    }

    proptest! {
        #[test]
        fn estimate_is_ordered_and_sums_to_one(d in 1usize..5, n in 1u32..80, pick in 0usize..1000) {
            let frames = enumerate_frames(d, n).unwrap();
            let y = &frames[pick % frames.len()];
            let exact = y.estimate_exact().unwrap();
            prop_assert!(exact.windows(2).all(|w| w[0] >= w[1]));
            let total = exact.iter().fold(Ratio::from_integer(0u64), |acc, x| acc + x);
            prop_assert_eq!(total, Ratio::from_integer(1u64));
            let s = frame_to_estimate(y).unwrap();
            prop_assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
