//! Exact sampling of frame outcomes by RSK row insertion of i.i.d. letters.
//!
//! The insertion tableau of a word whose letters are drawn i.i.d. from `r`
//! has a shape distributed exactly as the frame measurement on `ρ^{⊗N}`.
//! Semistandard rows over `d` letters are runs of equal letters, so a tableau
//! is stored as a `d × d` count matrix and each insertion costs `O(d²)`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::lattice::{Spectrum, YoungFrame};
use crate::measure::SchurWeylDistribution;

/// Upper bound on `samples × N`, the number of letters inserted per request.
pub const MAX_SAMPLED_LETTERS: u64 = 1 << 40;

/// `counts[i * d + j]` = number of letters `j` in row `i` (zero unless `j >= i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactTableau {
    d: usize,
    counts: Vec<u64>,
    row_len: Vec<u64>,
}

impl CompactTableau {
    pub fn new(d: usize) -> Self {
        CompactTableau {
            d,
            counts: vec![0; d * d],
            row_len: vec![0; d],
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn count(&self, row: usize, letter: usize) -> u64 {
        self.counts[row * self.d + letter]
    }

    pub fn row_lengths(&self) -> &[u64] {
        &self.row_len
    }

    pub fn size(&self) -> u64 {
        self.row_len.iter().sum()
    }

    pub fn clear(&mut self) {
        self.counts.iter_mut().for_each(|c| *c = 0);
        self.row_len.iter_mut().for_each(|c| *c = 0);
    }

    /// Row-inserts `letter` (0-based, `< d`).
    pub fn insert_letter(&mut self, letter: usize) -> Result<()> {
        if letter >= self.d {
            return Err(Error::Domain(format!(
                "letter {letter} outside alphabet of size {}",
                self.d
            )));
        }
        self.insert_unchecked(letter);
        Ok(())
    }

    #[inline]
    fn insert_unchecked(&mut self, mut x: usize) {
        let d = self.d;
        for i in 0..d {
            let row = &mut self.counts[i * d..(i + 1) * d];
            // Leftmost entry strictly greater than x is the smallest such letter.
            match (x + 1..d).find(|&y| row[y] > 0) {
                Some(y) => {
                    row[y] -= 1;
                    row[x] += 1;
                    x = y;
                }
                None => {
                    row[x] += 1;
                    self.row_len[i] += 1;
                    return;
                }
            }
        }
        unreachable!("letter {x} bumped past the last row");
    }

    pub fn shape(&self) -> YoungFrame {
        YoungFrame::from_rows_unchecked(self.row_len.iter().map(|&l| l as u32).collect())
    }

    /// Rows weakly increase by construction; checks shape order and column strictness.
    pub fn is_semistandard(&self) -> bool {
        let d = self.d;
        for i in 0..d {
            for j in 0..i {
                if self.count(i, j) != 0 {
                    return false;
                }
            }
            let total: u64 = (0..d).map(|j| self.count(i, j)).sum();
            if total != self.row_len[i] {
                return false;
            }
        }
        for i in 0..d.saturating_sub(1) {
            if self.row_len[i + 1] > self.row_len[i] {
                return false;
            }
            // #(entries ≤ k in row i+1) ≤ #(entries ≤ k-1 in row i), for every k.
            let mut upper_below = 0u64;
            let mut lower_upto = 0u64;
            for k in 0..d {
                lower_upto += self.count(i + 1, k);
                if lower_upto > upper_below {
                    return false;
                }
                upper_below += self.count(i, k);
            }
        }
        true
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SamplerConfig {
    pub d: usize,
    pub n: u32,
    pub spectrum: Spectrum,
    pub seed: u64,
    pub chains: u32,
}

impl SamplerConfig {
    pub fn new(spectrum: Spectrum, n: u32, seed: u64, chains: u32) -> Result<Self> {
        if chains == 0 {
            return Err(Error::Domain("at least one chain is required".into()));
        }
        Ok(SamplerConfig {
            d: spectrum.d(),
            n,
            spectrum,
            seed,
            chains,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.spectrum.d() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: self.spectrum.d(),
            });
        }
        if self.chains == 0 {
            return Err(Error::Domain("at least one chain is required".into()));
        }
        Ok(())
    }

    /// Independent stream `chain` of the counter-based generator keyed by `seed`.
    pub fn chain_rng(&self, chain: u32) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(u64::from(chain));
        rng
    }

    /// Samples assigned to `chain` when `total` are split over all chains.
    pub fn chain_share(&self, chain: u32, total: u64) -> u64 {
        let chains = u64::from(self.chains);
        total / chains + u64::from(u64::from(chain) < total % chains)
    }
}

/// Inverse-CDF letter draws.
#[derive(Debug, Clone)]
struct LetterSampler {
    cumulative: Vec<f64>,
    last: usize,
}

impl LetterSampler {
    fn new(r: &Spectrum) -> Self {
        let mut acc = 0.0;
        let mut cumulative: Vec<f64> = r
            .values()
            .iter()
            .map(|&p| {
                acc += p;
                acc
            })
            .collect();
        let last = r.rank().max(1) - 1;
        for c in cumulative.iter_mut().skip(last) {
            *c = f64::INFINITY;
        }
        LetterSampler { cumulative, last }
    }

    #[inline]
    fn draw<R: Rng>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        self.cumulative.partition_point(|&c| c <= u).min(self.last)
    }
}

fn run_chain(cfg: &SamplerConfig, chain: u32, samples: u64) -> BTreeMap<YoungFrame, u64> {
    let letters = LetterSampler::new(&cfg.spectrum);
    let mut rng = cfg.chain_rng(chain);
    let mut tableau = CompactTableau::new(cfg.d);
    let mut counts = BTreeMap::new();
    for _ in 0..samples {
        tableau.clear();
        for _ in 0..cfg.n {
            tableau.insert_unchecked(letters.draw(&mut rng));
        }
        *counts.entry(tableau.shape()).or_insert(0) += 1;
    }
    counts
}

/// One outcome: the shape after inserting `N` letters from chain 0.
pub fn sample_frame(cfg: &SamplerConfig) -> Result<YoungFrame> {
    cfg.validate()?;
    let counts = run_chain(cfg, 0, 1);
    Ok(counts.into_keys().next().expect("one sample"))
}

/// Outcome counts over `samples` draws split across the configured chains.
///
/// Chains run in parallel; merging is an integer sum, so the result does not
/// depend on the thread count.
pub fn sample_frames(cfg: &SamplerConfig, samples: u64) -> Result<BTreeMap<YoungFrame, u64>> {
    cfg.validate()?;
    let letters = samples.saturating_mul(u64::from(cfg.n));
    if letters > MAX_SAMPLED_LETTERS {
        return Err(Error::ResourceLimit {
            what: "sampled letters (samples x N)",
            limit: MAX_SAMPLED_LETTERS,
            requested: letters,
        });
    }
    let per_chain: Vec<BTreeMap<YoungFrame, u64>> = (0..cfg.chains)
        .into_par_iter()
        .map(|c| run_chain(cfg, c, cfg.chain_share(c, samples)))
        .collect();
    let mut merged = BTreeMap::new();
    for counts in per_chain {
        for (y, k) in counts {
            *merged.entry(y).or_insert(0) += k;
        }
    }
    Ok(merged)
}

/// Comparison of sampled frequencies with the exact law.
#[derive(Debug, Clone, Serialize)]
pub struct GoodnessOfFit {
    pub total_variation: f64,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalDistribution {
    pub samples: u64,
    pub counts: BTreeMap<YoungFrame, u64>,
    pub fit: Option<GoodnessOfFit>,
}

impl EmpiricalDistribution {
    pub fn frequency(&self, y: &YoungFrame) -> f64 {
        self.counts.get(y).copied().unwrap_or(0) as f64 / self.samples as f64
    }

    /// Frequencies in canonical (lexicographically decreasing) order.
    pub fn frequencies(&self) -> Vec<(YoungFrame, f64)> {
        self.counts
            .iter()
            .rev()
            .map(|(y, &k)| (y.clone(), k as f64 / self.samples as f64))
            .collect()
    }

    /// Mean and standard deviation of each coordinate of `Y/N`.
    pub fn estimate_moments(&self) -> (Vec<f64>, Vec<f64>) {
        let d = self.counts.keys().next().map_or(0, |y| y.d());
        let mut mean = vec![0.0; d];
        let mut second = vec![0.0; d];
        for (y, &k) in self.counts.iter().rev() {
            let n = f64::from(y.size().max(1));
            let w = k as f64 / self.samples as f64;
            for (j, &part) in y.rows().iter().enumerate() {
                let e = f64::from(part) / n;
                mean[j] += w * e;
                second[j] += w * e * e;
            }
        }
        let sd = mean
            .iter()
            .zip(&second)
            .map(|(m, s)| (s - m * m).max(0.0).sqrt())
            .collect();
        (mean, sd)
    }
}

/// Minimum expected count for a frame to get its own chi-square bin.
pub const CHI_SQUARE_MIN_EXPECTED: f64 = 5.0;

pub fn goodness_of_fit(
    counts: &BTreeMap<YoungFrame, u64>,
    samples: u64,
    exact: &SchurWeylDistribution,
) -> GoodnessOfFit {
    let total = samples as f64;
    let mut tv = 0.0;
    let mut chi = 0.0;
    let mut bins = 0usize;
    let (mut pooled_obs, mut pooled_exp) = (0.0, 0.0);
    for (y, p) in exact.iter() {
        let obs = counts.get(y).copied().unwrap_or(0) as f64;
        tv += (obs / total - p).abs();
        let expected = p * total;
        if expected >= CHI_SQUARE_MIN_EXPECTED {
            chi += (obs - expected).powi(2) / expected;
            bins += 1;
        } else {
            pooled_obs += obs;
            pooled_exp += expected;
        }
    }
    for (y, &k) in counts {
        if exact.probability(y).is_none() {
            tv += k as f64 / total;
            pooled_obs += k as f64;
        }
    }
    if pooled_exp >= CHI_SQUARE_MIN_EXPECTED {
        chi += (pooled_obs - pooled_exp).powi(2) / pooled_exp;
        bins += 1;
    }
    let dof = bins.saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64).map(|dist| dist.sf(chi)).unwrap_or(f64::NAN)
    };
    GoodnessOfFit {
        total_variation: 0.5 * tv,
        chi_square: chi,
        degrees_of_freedom: dof,
        p_value,
    }
}

pub fn empirical_distribution(
    cfg: &SamplerConfig,
    samples: u64,
    exact: Option<&SchurWeylDistribution>,
) -> Result<EmpiricalDistribution> {
    if samples == 0 {
        return Err(Error::Domain("at least one sample is required".into()));
    }
    let counts = sample_frames(cfg, samples)?;
    let fit = exact.map(|dist| goodness_of_fit(&counts, samples, dist));
    Ok(EmpiricalDistribution { samples, counts, fit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::exact_distribution;

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn insertion_examples() {
        let mut t = CompactTableau::new(3);
        t.insert_letter(0).unwrap();
        assert_eq!(t.count(0, 0), 1);
        assert_eq!(t.shape().rows(), &[1, 0, 0]);

        let mut t = CompactTableau::new(2);
        t.insert_letter(1).unwrap();
        t.insert_letter(0).unwrap();
        assert_eq!(t.count(0, 0), 1);
        assert_eq!(t.count(1, 1), 1);
        assert_eq!(t.shape().rows(), &[1, 1]);

        let mut t = CompactTableau::new(3);
        for x in [2, 0, 1, 2, 2] {
            t.insert_letter(x).unwrap();
        }
        assert_eq!(t.size(), 5);
        assert!(t.is_semistandard());
        assert!(t.insert_letter(3).is_err());
    }

    #[test]
    fn matches_explicit_row_insertion() {
        // Plain-vector RSK as an independent reference.
        fn rows_insert(rows: &mut Vec<Vec<usize>>, mut x: usize) {
            for row in rows.iter_mut() {
                match row.iter().position(|&y| y > x) {
                    Some(p) => std::mem::swap(&mut row[p], &mut x),
                    None => {
                        row.push(x);
                        return;
                    }
                }
            }
            rows.push(vec![x]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let d = rng.gen_range(1..6);
            let mut t = CompactTableau::new(d);
            let mut rows: Vec<Vec<usize>> = Vec::new();
            for _ in 0..rng.gen_range(0..40) {
                let x = rng.gen_range(0..d);
                t.insert_letter(x).unwrap();
                rows_insert(&mut rows, x);
            }
            for (i, row) in rows.iter().enumerate() {
                assert_eq!(t.row_lengths()[i], row.len() as u64);
                for j in 0..d {
                    assert_eq!(t.count(i, j), row.iter().filter(|&&y| y == j).count() as u64);
                }
            }
        }
    }

    #[test]
    fn pure_and_single_letter() {
        let cfg = SamplerConfig::new(spec(&[1.0, 0.0, 0.0]), 50, 3, 4).unwrap();
        let counts = sample_frames(&cfg, 100).unwrap();
        assert_eq!(counts.len(), 1);
        assert_eq!(counts.keys().next().unwrap().rows(), &[50, 0, 0]);
        let cfg = SamplerConfig::new(spec(&[1.0]), 9, 3, 1).unwrap();
        assert_eq!(sample_frame(&cfg).unwrap().rows(), &[9]);
    }

    #[test]
    fn determinism_and_chain_split() {
        let cfg = SamplerConfig::new(spec(&[0.5, 0.3, 0.2]), 30, 99, 5).unwrap();
        let a = sample_frames(&cfg, 1003).unwrap();
        let b = sample_frames(&cfg, 1003).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.values().sum::<u64>(), 1003);
        let shares: u64 = (0..5).map(|c| cfg.chain_share(c, 1003)).sum();
        assert_eq!(shares, 1003);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = pool.install(|| sample_frames(&cfg, 1003).unwrap());
        assert_eq!(a, c);
        let other = SamplerConfig::new(spec(&[0.5, 0.3, 0.2]), 30, 100, 5).unwrap();
        assert_ne!(a, sample_frames(&other, 1003).unwrap());
    }

    #[test]
    fn one_sample_is_a_point_mass() {
        let cfg = SamplerConfig::new(spec(&[0.6, 0.4]), 10, 1, 3).unwrap();
        let emp = empirical_distribution(&cfg, 1, None).unwrap();
        assert_eq!(emp.counts.len(), 1);
        assert_eq!(emp.frequencies()[0].1, 1.0);
        assert!(empirical_distribution(&cfg, 0, None).is_err());
    }

    #[test]
    fn small_fit_is_consistent() {
        let r = spec(&[0.5, 0.5]);
        let exact = exact_distribution(2, 2, &r).unwrap();
        let cfg = SamplerConfig::new(r, 2, 11, 4).unwrap();
        let emp = empirical_distribution(&cfg, 200_000, Some(&exact)).unwrap();
        let fit = emp.fit.clone().unwrap();
        assert_eq!(fit.degrees_of_freedom, 1);
        let f11 = emp.frequency(&YoungFrame::new(vec![1, 1]).unwrap());
        // 0.25 ± 3σ with σ = sqrt(0.25·0.75/2e5)
        assert!((f11 - 0.25).abs() < 3.0 * (0.1875f64 / 2e5).sqrt());
        assert!(fit.total_variation < 0.01);
    }
}
