//! The Young-frame measurement on `ρ^{⊗N}`: outcome law and region probabilities.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{decimal_rational, frame_ratio};
use crate::lattice::{
    dim_symmetric_irrep, enumerate_frames, frame_to_estimate, ln_biguint, ln_dim_symmetric_irrep, Spectrum, YoungFrame,
};
use crate::logspace::log_sum_exp;
use crate::schur::SchurTable;

pub const MAX_EXACT_D: usize = 4;
pub const MAX_EXACT_N: u32 = 400;
/// Above this `N`, `ln dim S_Y` comes from the log-space path instead of big integers.
pub const EXACT_DIM_MAX_N: u32 = 170;

type PointPredicate = dyn Fn(&[f64]) -> bool + Send + Sync;

#[derive(Clone)]
enum RegionKind {
    /// `{s : max_j |s_j - c_j| > ε}`
    BallComplement {
        center: Vec<BigRational>,
        radius: BigRational,
        center_f: Vec<f64>,
        radius_f: f64,
    },
    /// `{s : n·s ≥ b}`
    HalfSpace {
        normal: Vec<BigRational>,
        offset: BigRational,
        normal_f: Vec<f64>,
        offset_f: f64,
    },
    Frames(BTreeSet<YoungFrame>),
    Predicate(Arc<PointPredicate>),
}

/// A subset `Δ` of the closed ordered simplex.
#[derive(Clone)]
pub struct Region {
    kind: RegionKind,
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RegionKind::BallComplement { center_f, radius_f, .. } => f
                .debug_struct("BallComplement")
                .field("center", center_f)
                .field("radius", radius_f)
                .finish(),
            RegionKind::HalfSpace { normal_f, offset_f, .. } => f
                .debug_struct("HalfSpace")
                .field("normal", normal_f)
                .field("offset", offset_f)
                .finish(),
            RegionKind::Frames(set) => f.debug_tuple("Frames").field(&set.len()).finish(),
            RegionKind::Predicate(_) => f.write_str("Predicate"),
        }
    }
}

impl Region {
    /// Complement of the closed sup-norm ball of radius `radius` around `center`.
    ///
    /// Boundary data are taken as the decimals the doubles print as.
    pub fn ball_complement(center: &Spectrum, radius: f64) -> Result<Region> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::Domain(format!("radius {radius} must be finite and >= 0")));
        }
        let c: Vec<BigRational> = center.values().iter().map(|&v| decimal_rational(v)).collect();
        Ok(Self::ball_complement_exact(c, decimal_rational(radius)))
    }

    pub fn ball_complement_exact(center: Vec<BigRational>, radius: BigRational) -> Region {
        let center_f = center.iter().map(rat_to_f64).collect();
        let radius_f = rat_to_f64(&radius);
        Region {
            kind: RegionKind::BallComplement {
                center,
                radius,
                center_f,
                radius_f,
            },
        }
    }

    /// `{s : normal · s ≥ offset}`.
    pub fn half_space(normal: &[f64], offset: f64) -> Region {
        let normal_q: Vec<BigRational> = normal.iter().map(|&v| decimal_rational(v)).collect();
        Region {
            kind: RegionKind::HalfSpace {
                normal: normal_q,
                offset: decimal_rational(offset),
                normal_f: normal.to_vec(),
                offset_f: offset,
            },
        }
    }

    /// The whole simplex.
    pub fn whole(d: usize) -> Region {
        Region::half_space(&vec![0.0; d], 0.0)
    }

    pub fn frames<I: IntoIterator<Item = YoungFrame>>(frames: I) -> Region {
        Region {
            kind: RegionKind::Frames(frames.into_iter().collect()),
        }
    }

    pub fn predicate<F>(f: F) -> Region
    where
        F: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        Region {
            kind: RegionKind::Predicate(Arc::new(f)),
        }
    }

    /// Whether the interior is dense in the closure, as far as the kind lets us know.
    ///
    /// Finite frame lists have empty interior; predicates carry no guarantee.
    pub fn has_small_boundary(&self) -> bool {
        matches!(
            self.kind,
            RegionKind::BallComplement { .. } | RegionKind::HalfSpace { .. }
        )
    }

    /// Membership of the estimate `Y/N`, decided exactly for rational regions.
    pub fn contains_frame(&self, y: &YoungFrame) -> bool {
        let n = y.size();
        match &self.kind {
            RegionKind::BallComplement { center, radius, .. } => y
                .rows()
                .iter()
                .zip(center)
                .any(|(&part, c)| (frame_ratio(part, n) - c).abs() > *radius),
            RegionKind::HalfSpace { normal, offset, .. } => {
                let dot = y
                    .rows()
                    .iter()
                    .zip(normal)
                    .fold(BigRational::zero(), |acc, (&part, w)| acc + frame_ratio(part, n) * w);
                dot >= *offset
            }
            RegionKind::Frames(set) => set.contains(y),
            RegionKind::Predicate(f) => match frame_to_estimate(y) {
                Ok(s) => f(s.values()),
                Err(_) => false,
            },
        }
    }

    /// Floating-point membership of an arbitrary simplex point.
    pub fn contains_point(&self, s: &[f64]) -> bool {
        match &self.kind {
            RegionKind::BallComplement { center_f, radius_f, .. } => {
                s.iter().zip(center_f).any(|(a, c)| (a - c).abs() > *radius_f)
            }
            RegionKind::HalfSpace { normal_f, offset_f, .. } => {
                s.iter().zip(normal_f).map(|(a, w)| a * w).sum::<f64>() >= *offset_f
            }
            RegionKind::Frames(set) => set.iter().any(|y| {
                frame_to_estimate(y)
                    .map(|e| e.values().iter().zip(s).all(|(a, b)| (a - b).abs() < 1e-12))
                    .unwrap_or(false)
            }),
            RegionKind::Predicate(f) => f(s),
        }
    }

    /// The listed frames, for finite regions.
    pub fn frame_list(&self) -> Option<&BTreeSet<YoungFrame>> {
        match &self.kind {
            RegionKind::Frames(set) => Some(set),
            _ => None,
        }
    }
}

fn rat_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// The exact law `K_N({Y}) = s_Y(r) · dim S_Y` over frames, in canonical order.
#[derive(Debug, Clone, Serialize)]
pub struct SchurWeylDistribution {
    d: usize,
    n: u32,
    spectrum: Spectrum,
    frames: Vec<YoungFrame>,
    log_probs: Vec<f64>,
}

/// `ln dim S_Y`, exact below [`EXACT_DIM_MAX_N`] boxes.
pub fn ln_dim_symmetric(y: &YoungFrame) -> f64 {
    if y.size() <= EXACT_DIM_MAX_N {
        ln_biguint(&dim_symmetric_irrep(y))
    } else {
        ln_dim_symmetric_irrep(y)
    }
}

pub fn check_exact_caps(d: usize, n: u32) -> Result<()> {
    if d > MAX_EXACT_D {
        return Err(Error::ResourceLimit {
            what: "d for exact distribution (frame count = partitions of N into at most d parts)",
            limit: MAX_EXACT_D as u64,
            requested: d as u64,
        });
    }
    if n > MAX_EXACT_N {
        return Err(Error::ResourceLimit {
            what: "N for exact distribution (frame count = partitions of N into at most d parts)",
            limit: u64::from(MAX_EXACT_N),
            requested: u64::from(n),
        });
    }
    Ok(())
}

/// Builds the outcome distribution of the frame measurement on `n` copies.
pub fn exact_distribution(d: usize, n: u32, r: &Spectrum) -> Result<SchurWeylDistribution> {
    if r.d() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: r.d(),
        });
    }
    if n == 0 {
        return Err(Error::Domain("at least one copy is required".into()));
    }
    check_exact_caps(d, n)?;
    let table = SchurTable::build(r, n)?;
    let frames = enumerate_frames(d, n)?;
    let log_probs = frames
        .iter()
        .map(|y| {
            let s = table.get(y)?;
            Ok(if s.is_zero() {
                f64::NEG_INFINITY
            } else {
                s.ln() + ln_dim_symmetric(y)
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SchurWeylDistribution {
        d,
        n,
        spectrum: r.clone(),
        frames,
        log_probs,
    })
}

impl SchurWeylDistribution {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn frames(&self) -> &[YoungFrame] {
        &self.frames
    }

    pub fn log_probs(&self) -> &[f64] {
        &self.log_probs
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// `(frame, probability)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&YoungFrame, f64)> {
        self.frames.iter().zip(&self.log_probs).map(|(y, &lp)| (y, lp.exp()))
    }

    pub fn log_probability(&self, y: &YoungFrame) -> Option<f64> {
        // Canonical order is lexicographically decreasing.
        self.frames
            .binary_search_by(|f| y.cmp(f))
            .ok()
            .map(|i| self.log_probs[i])
    }

    pub fn probability(&self, y: &YoungFrame) -> Option<f64> {
        self.log_probability(y).map(f64::exp)
    }

    /// `ln Σ_Y K_N({Y})`; zero up to rounding.
    pub fn total_log_mass(&self) -> f64 {
        log_sum_exp(self.log_probs.iter().copied())
    }
}

/// `ln K_N(Δ)`.
pub fn region_log_probability(dist: &SchurWeylDistribution, region: &Region) -> f64 {
    log_sum_exp(
        dist.frames
            .iter()
            .zip(&dist.log_probs)
            .filter(|(y, _)| region.contains_frame(y))
            .map(|(_, &lp)| lp),
    )
}

/// `K_N(Δ) = Σ_{Y : Y/N ∈ Δ} K_N({Y})`.
pub fn region_probability(dist: &SchurWeylDistribution, region: &Region) -> f64 {
    region_log_probability(dist, region).exp()
}

/// Most probable frame; ties go to the earlier (lexicographically larger) frame.
pub fn distribution_mode(dist: &SchurWeylDistribution) -> Result<&YoungFrame> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &lp) in dist.log_probs.iter().enumerate() {
        if best.is_none_or(|(_, b)| lp > b) {
            best = Some((i, lp));
        }
    }
    best.map(|(i, _)| &dist.frames[i])
        .ok_or_else(|| Error::Domain("empty distribution".into()))
}

/// `Σ_Y f(Y/N) K_N({Y})`.
pub fn expectation_of<F: Fn(&[f64]) -> f64>(dist: &SchurWeylDistribution, f: F) -> f64 {
    let n = f64::from(dist.n);
    let mut est = vec![0.0; dist.d];
    let mut acc = 0.0;
    for (y, &lp) in dist.frames.iter().zip(&dist.log_probs) {
        if lp == f64::NEG_INFINITY {
            continue;
        }
        for (e, &part) in est.iter_mut().zip(y.rows()) {
            *e = f64::from(part) / n;
        }
        acc += f(&est) * lp.exp();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(rows: &[u32]) -> YoungFrame {
        YoungFrame::new(rows.to_vec()).unwrap()
    }

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn two_copies_of_maximally_mixed_qubit() {
        let dist = exact_distribution(2, 2, &spec(&[0.5, 0.5])).unwrap();
        assert_eq!(dist.frames(), &[frame(&[2, 0]), frame(&[1, 1])]);
        assert!((dist.probability(&frame(&[2, 0])).unwrap() - 0.75).abs() < 1e-15);
        assert!((dist.probability(&frame(&[1, 1])).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn three_qutrits_maximally_mixed() {
        let t = 1.0 / 3.0;
        let dist = exact_distribution(3, 3, &spec(&[t, t, t])).unwrap();
        let want = [10.0 / 27.0, 16.0 / 27.0, 1.0 / 27.0];
        for ((_, p), w) in dist.iter().zip(want) {
            assert!((p - w).abs() < 1e-14);
        }
    }

    #[test]
    fn single_row() {
        let dist = exact_distribution(1, 10, &spec(&[1.0])).unwrap();
        assert_eq!(dist.len(), 1);
        assert_eq!(dist.log_probs()[0], 0.0);
    }

    #[test]
    fn caps_and_errors() {
        let r = Spectrum::uniform(5);
        assert!(matches!(exact_distribution(5, 3, &r), Err(Error::ResourceLimit { .. })));
        let r = Spectrum::uniform(2);
        assert!(matches!(
            exact_distribution(2, 401, &r),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            exact_distribution(3, 3, &r),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(exact_distribution(2, 0, &r).is_err());
    }

    #[test]
    fn region_examples() {
        let dist = exact_distribution(2, 2, &spec(&[0.5, 0.5])).unwrap();
        assert!((region_probability(&dist, &Region::whole(2)) - 1.0).abs() < 1e-15);
        let upper = Region::half_space(&[1.0, 0.0], 0.9);
        assert!((region_probability(&dist, &upper) - 0.75).abs() < 1e-15);
        let empty = Region::ball_complement(&spec(&[0.5, 0.5]), 1.0).unwrap();
        assert_eq!(region_probability(&dist, &empty), 0.0);
        let listed = Region::frames([frame(&[1, 1])]);
        assert!((region_probability(&dist, &listed) - 0.25).abs() < 1e-15);
        assert!(!listed.has_small_boundary());
        let pred = Region::predicate(|s| s[0] > 0.6);
        assert!((region_probability(&dist, &pred) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn ball_boundary_is_decided_in_decimal() {
        // (32, 8)/40 = (0.8, 0.2) sits exactly at distance 0.1 from (0.7, 0.3):
        // on the ball, so outside the complement.
        let region = Region::ball_complement(&spec(&[0.7, 0.3]), 0.1).unwrap();
        assert!(!region.contains_frame(&frame(&[32, 8])));
        assert!(!region.contains_frame(&frame(&[24, 16])));
        assert!(region.contains_frame(&frame(&[33, 7])));
        assert!(region.contains_frame(&frame(&[23, 17])));
        let zero = Region::ball_complement(&spec(&[0.7, 0.3]), 0.0).unwrap();
        assert!(!zero.contains_frame(&frame(&[28, 12])));
        assert!(zero.contains_frame(&frame(&[29, 11])));
    }

    #[test]
    fn mode_and_expectation() {
        let dist = exact_distribution(2, 2, &spec(&[0.9, 0.1])).unwrap();
        assert_eq!(distribution_mode(&dist).unwrap(), &frame(&[2, 0]));
        let dist = exact_distribution(1, 7, &spec(&[1.0])).unwrap();
        assert_eq!(distribution_mode(&dist).unwrap(), &frame(&[7]));

        let dist = exact_distribution(2, 2, &spec(&[0.5, 0.5])).unwrap();
        assert!((expectation_of(&dist, |_| 1.0) - 1.0).abs() < 1e-15);
        assert!((expectation_of(&dist, |s| s[0]) - 0.875).abs() < 1e-15);
    }

    #[test]
    fn mode_ties_prefer_earlier_frame() {
        // Equal masses: the canonically first frame wins.
        let dist = SchurWeylDistribution {
            d: 2,
            n: 2,
            spectrum: spec(&[0.5, 0.5]),
            frames: vec![frame(&[2, 0]), frame(&[1, 1])],
            log_probs: vec![0.5f64.ln(), 0.5f64.ln()],
        };
        assert_eq!(distribution_mode(&dist).unwrap(), &frame(&[2, 0]));
    }

    #[test]
    fn pure_state_concentrates() {
        let dist = exact_distribution(3, 12, &spec(&[1.0, 0.0, 0.0])).unwrap();
        assert_eq!(dist.probability(&frame(&[12, 0, 0])), Some(1.0));
        assert!(dist.iter().filter(|(y, _)| y.rows()[1] > 0).all(|(_, p)| p == 0.0));
    }
}
