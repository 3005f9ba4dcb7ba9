//! Rate function, cumulant generating function, and their Legendre duality.
//!
//! For spectrum `r`, the error probabilities decay as
//! `K_N(Δ) ≈ exp(-N inf_{s∈Δ} I(s))` with `I(s) = Σ_j s_j ln(s_j / r_j)`,
//! the Legendre transform of `c(η) = ln Σ_j r_j e^{η_j}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{count_frames, enumerate_frames, frame_to_estimate, Spectrum};
use crate::logspace::log_sum_exp;
use crate::measure::{exact_distribution, region_log_probability, Region, SchurWeylDistribution};
use crate::schur::weight_dot;

pub const LEGENDRE_MAX_ITER: usize = 1000;
pub const LEGENDRE_GRAD_TOL: f64 = 1e-10;
/// Grid points per unit length used to seed the region infimum.
pub const INF_GRID_RESOLUTION: u32 = 200;
const INF_GRID_MAX_POINTS: u64 = 1_000_000;
const INF_SEEDS: usize = 8;

/// `Σ_j s_j (ln s_j - ln r_j)` with `0 ln 0 = 0`; `+inf` off the support of `r`.
pub fn relative_entropy(s: &[f64], r: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (&a, &b) in s.iter().zip(r) {
        if a <= 0.0 {
            continue;
        }
        if b <= 0.0 {
            return f64::INFINITY;
        }
        acc += a * (a.ln() - b.ln());
    }
    // Non-negative exactly; near `s = r` the sum is rounding noise of either sign.
    acc.max(0.0)
}

/// The rate function `I(s)`.
pub fn rate(s: &Spectrum, r: &Spectrum) -> Result<f64> {
    if s.d() != r.d() {
        return Err(Error::DimensionMismatch {
            expected: r.d(),
            got: s.d(),
        });
    }
    Ok(relative_entropy(s.values(), r.values()))
}

/// `I(·)` for a fixed reference spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct RateFunction {
    r: Spectrum,
}

impl RateFunction {
    pub fn new(r: Spectrum) -> Self {
        RateFunction { r }
    }

    pub fn reference(&self) -> &Spectrum {
        &self.r
    }

    pub fn eval(&self, s: &[f64]) -> f64 {
        relative_entropy(s, self.r.values())
    }
}

/// `c(η) = ln Σ_j r_j e^{η_j}`.
pub fn cgf(eta: &[f64], r: &Spectrum) -> Result<f64> {
    if eta.len() != r.d() {
        return Err(Error::DimensionMismatch {
            expected: r.d(),
            got: eta.len(),
        });
    }
    Ok(log_sum_exp(r.values().iter().zip(eta).map(|(&rj, &e)| rj.ln() + e)))
}

/// The scaled cumulant generating function of a fixed spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct Cgf {
    r: Spectrum,
}

impl Cgf {
    pub fn new(r: Spectrum) -> Self {
        Cgf { r }
    }

    pub fn eval(&self, eta: &[f64]) -> Result<f64> {
        cgf(eta, &self.r)
    }

    /// `∇c(η)`: the tilted distribution `r_j e^{η_j} / Σ_k r_k e^{η_k}`.
    pub fn gradient(&self, eta: &[f64]) -> Result<Vec<f64>> {
        let c = self.eval(eta)?;
        Ok(self
            .r
            .values()
            .iter()
            .zip(eta)
            .map(|(&rj, &e)| (rj.ln() + e - c).exp())
            .collect())
    }
}

/// Outcome of the numerical Legendre transform.
#[derive(Debug, Clone, Serialize)]
pub struct LegendreResult {
    pub value: f64,
    /// Optimizing `η` on `Σ η_j = 0` over the support of `s`; `-inf` off it.
    pub eta: Vec<f64>,
    pub iterations: usize,
    pub grad_norm: f64,
    /// Sup-norm distance of `eta` from the closed-form optimizer `ln(s_j/r_j)` (both centred).
    pub certificate_gap: f64,
}

/// `sup_η (η·s - c(η))` by damped Newton ascent on the hyperplane `Σ η_j = 0`.
///
/// Coordinates with `s_j = 0` are optimized in the limit `η_j → -inf`, i.e.
/// dropped from the problem; `r` is not renormalized on the remaining support.
pub fn legendre_of_cgf(s: &Spectrum, r: &Spectrum) -> Result<LegendreResult> {
    if s.d() != r.d() {
        return Err(Error::DimensionMismatch {
            expected: r.d(),
            got: s.d(),
        });
    }
    let support: Vec<usize> = (0..s.d()).filter(|&j| s.values()[j] > 0.0).collect();
    if support.iter().any(|&j| r.values()[j] <= 0.0) {
        return Err(Error::Domain(
            "s charges an eigenvalue that r gives zero weight; the supremum is +inf".into(),
        ));
    }
    let sv: Vec<f64> = support.iter().map(|&j| s.values()[j]).collect();
    let lr: Vec<f64> = support.iter().map(|&j| r.values()[j].ln()).collect();
    let k = sv.len();

    let objective = |eta: &[f64]| -> f64 {
        let dot: f64 = eta.iter().zip(&sv).map(|(e, s)| e * s).sum();
        dot - log_sum_exp(eta.iter().zip(&lr).map(|(e, l)| e + l))
    };
    let tilted = |eta: &[f64]| -> Vec<f64> {
        let c = log_sum_exp(eta.iter().zip(&lr).map(|(e, l)| e + l));
        eta.iter().zip(&lr).map(|(e, l)| (e + l - c).exp()).collect()
    };

    let mut eta = vec![0.0; k];
    let mut value = objective(&eta);
    let mut iterations = 0;
    let mut grad_norm;
    loop {
        let q = tilted(&eta);
        let grad: Vec<f64> = sv.iter().zip(&q).map(|(s, q)| s - q).collect();
        grad_norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if grad_norm <= LEGENDRE_GRAD_TOL {
            break;
        }
        if iterations == LEGENDRE_MAX_ITER {
            return Err(Error::NonConvergence {
                iterations,
                grad_norm,
                last: eta,
            });
        }
        iterations += 1;

        // (diag q - q qᵀ) δ = g is solved by δ = g / q up to a multiple of 1.
        let mut step: Vec<f64> = grad.iter().zip(&q).map(|(g, q)| g / q).collect();
        let mean = step.iter().sum::<f64>() / k as f64;
        step.iter_mut().for_each(|x| *x -= mean);
        let slope: f64 = grad.iter().zip(&step).map(|(g, d)| g * d).sum();

        let mut t = 1.0;
        loop {
            let trial: Vec<f64> = eta.iter().zip(&step).map(|(e, d)| e + t * d).collect();
            let v = objective(&trial);
            if v >= value + 1e-4 * t * slope - 1e-15 * value.abs().max(1.0) {
                eta = trial;
                value = v;
                break;
            }
            t *= 0.5;
            if t < 1e-16 {
                return Err(Error::NonConvergence {
                    iterations,
                    grad_norm,
                    last: eta,
                });
            }
        }
    }

    let analytic: Vec<f64> = sv.iter().zip(&lr).map(|(s, l)| s.ln() - l).collect();
    let centre = |v: &[f64]| -> Vec<f64> {
        let m = v.iter().sum::<f64>() / v.len() as f64;
        v.iter().map(|x| x - m).collect()
    };
    let certificate_gap = centre(&eta)
        .iter()
        .zip(centre(&analytic))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let mut full = vec![f64::NEG_INFINITY; s.d()];
    for (pos, &j) in support.iter().enumerate() {
        full[j] = eta[pos];
    }
    Ok(LegendreResult {
        value,
        eta: full,
        iterations,
        grad_norm,
        certificate_gap,
    })
}

fn check_eta(eta: &[f64], d: usize) -> Result<()> {
    if eta.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: eta.len(),
        });
    }
    if eta.iter().any(|e| !e.is_finite()) {
        return Err(Error::Domain("tilt vector must be finite".into()));
    }
    Ok(())
}

/// `(1/N) ln Σ_Y K_N({Y}) e^{η·Y}` for a built distribution.
pub fn empirical_cgf_of(dist: &SchurWeylDistribution, eta: &[f64]) -> Result<f64> {
    check_eta(eta, dist.d())?;
    let total = log_sum_exp(
        dist.frames()
            .iter()
            .zip(dist.log_probs())
            .map(|(y, &lp)| lp + weight_dot(y.rows(), eta)),
    );
    Ok(total / f64::from(dist.n()))
}

pub fn empirical_cgf(d: usize, n: u32, r: &Spectrum, eta: &[f64]) -> Result<f64> {
    empirical_cgf_of(&exact_distribution(d, n, r)?, eta)
}

/// `(1/N)(ln J - ln J')` with `J = Σ_Y χ_Y(ρ_h) e^{η·Y} dim S_Y` and
/// `J' = Σ_Y e^{(h+η)·Y} dim S_Y`, `h = ln r`.
///
/// The character sandwich bounds put this in `[0, (1/N) ln p(N)]`.
pub fn j_equivalence_gap(d: usize, n: u32, r: &Spectrum, eta: &[f64]) -> Result<f64> {
    check_eta(eta, d)?;
    if eta.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Domain("tilt vector must be non-increasing".into()));
    }
    let dist = exact_distribution(d, n, r)?;
    let h = r.log_values();
    let shifted: Vec<f64> = h.iter().zip(eta).map(|(a, b)| a + b).collect();
    let ln_j = log_sum_exp(
        dist.frames()
            .iter()
            .zip(dist.log_probs())
            .map(|(y, &lp)| lp + weight_dot(y.rows(), eta)),
    );
    let ln_j_prime = log_sum_exp(dist.frames().iter().map(|y| {
        let dot = weight_dot(y.rows(), &shifted);
        if dot == f64::NEG_INFINITY {
            dot
        } else {
            dot + crate::measure::ln_dim_symmetric(y)
        }
    }));
    Ok((ln_j - ln_j_prime) / f64::from(n))
}

/// Infimum of the rate function over a region, with a feasible near-minimizer.
#[derive(Debug, Clone, Serialize)]
pub struct InfRate {
    pub value: f64,
    pub minimizer: Spectrum,
}

fn grid_resolution(d: usize) -> u32 {
    let mut m = INF_GRID_RESOLUTION;
    while m > 1 && count_frames(d, m) > INF_GRID_MAX_POINTS {
        m -= 1;
    }
    m
}

fn in_ordered_simplex(s: &[f64]) -> bool {
    s.iter().all(|&v| v >= 0.0) && s.windows(2).all(|w| w[0] >= w[1])
}

/// `inf_{s∈Δ} I(s)` over the closed ordered simplex.
///
/// Seeds from the grid of spacing `1/200`, then refines the best seeds by pulling
/// each toward `r` along the segment and a compass search over the directions
/// `e_i - e_j`, which keep the total mass fixed.
pub fn inf_rate_over_region(region: &Region, r: &Spectrum) -> Result<InfRate> {
    let d = r.d();
    let rate_at = |s: &[f64]| relative_entropy(s, r.values());

    if let Some(frames) = region.frame_list() {
        let mut best: Option<(f64, Spectrum)> = None;
        for y in frames {
            if y.d() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: y.d(),
                });
            }
            let s = frame_to_estimate(y)?;
            let v = rate_at(s.values());
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, s));
            }
        }
        let (value, minimizer) = best.ok_or(Error::EmptyRegion)?;
        return Ok(InfRate { value, minimizer });
    }

    if region.contains_point(r.values()) {
        return Ok(InfRate {
            value: 0.0,
            minimizer: r.clone(),
        });
    }

    let m = grid_resolution(d);
    let mut seeds: Vec<(f64, Vec<f64>)> = enumerate_frames(d, m)?
        .into_iter()
        .map(|y| frame_to_estimate(&y).expect("m >= 1").values().to_vec())
        .filter(|s| region.contains_point(s))
        .map(|s| (rate_at(&s), s))
        .filter(|(v, _)| v.is_finite())
        .collect();
    if seeds.is_empty() {
        return Err(Error::EmptyRegion);
    }
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));
    seeds.truncate(INF_SEEDS);

    let feasible = |s: &[f64]| in_ordered_simplex(s) && region.contains_point(s);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for (_, seed) in seeds {
        let mut s = pull_toward(&seed, r.values(), &feasible);
        s = compass_search(s, step_init(m), &feasible, &rate_at);
        s = pull_toward(&s, r.values(), &feasible);
        let v = rate_at(&s);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, s));
        }
    }
    let (value, s) = best.expect("at least one seed");
    Ok(InfRate {
        value,
        minimizer: Spectrum::canonicalize(s.clone()).or_else(|_| Spectrum::normalized(s))?,
    })
}

const COMPASS_MIN_GAIN: f64 = 1e-16;
const COMPASS_MAX_MOVES: usize = 1_000_000;

fn step_init(m: u32) -> f64 {
    1.0 / f64::from(m)
}

/// Closest feasible point to `r` on the segment `[r, s]`, by bisection.
fn pull_toward(s: &[f64], r: &[f64], feasible: &impl Fn(&[f64]) -> bool) -> Vec<f64> {
    let at = |t: f64| -> Vec<f64> { r.iter().zip(s).map(|(a, b)| a + t * (b - a)).collect() };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(&at(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let p = at(hi);
    if feasible(&p) {
        p
    } else {
        s.to_vec()
    }
}

fn compass_search(
    mut s: Vec<f64>,
    mut step: f64,
    feasible: &impl Fn(&[f64]) -> bool,
    objective: &impl Fn(&[f64]) -> f64,
) -> Vec<f64> {
    let d = s.len();
    let mut value = objective(&s);
    let mut moves = 0;
    while step > 1e-14 && moves < COMPASS_MAX_MOVES {
        let mut improved = false;
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let mut trial = s.clone();
                trial[i] += step;
                trial[j] -= step;
                if !feasible(&trial) {
                    continue;
                }
                let v = objective(&trial);
                // Gains below rounding level would let the search wander on noise.
                if v < value - COMPASS_MIN_GAIN * (1.0 + value.abs()) {
                    s = trial;
                    value = v;
                    improved = true;
                    moves += 1;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    s
}

/// One scanned copy count.
#[derive(Debug, Clone, Serialize)]
pub struct RateSample {
    pub n: u32,
    pub log_probability: f64,
    pub probability: f64,
    /// `-(1/N) ln K_N(Δ)`; `+inf` when `K_N(Δ) = 0`.
    pub a_n: f64,
    pub infinite: bool,
}

/// Finite-`N` decay exponents of `K_N(Δ)` against the limiting rate.
#[derive(Debug, Clone, Serialize)]
pub struct RateProfile {
    #[serde(skip)]
    pub region: Region,
    pub samples: Vec<RateSample>,
    /// `inf_Δ I`, `+inf` when `Δ` misses the simplex.
    pub target: f64,
    pub minimizer: Option<Spectrum>,
}

pub fn rate_scan(d: usize, r: &Spectrum, region: &Region, n_list: &[u32]) -> Result<RateProfile> {
    if r.d() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: r.d(),
        });
    }
    let samples = n_list
        .par_iter()
        .map(|&n| {
            let dist = exact_distribution(d, n, r)?;
            let log_probability = region_log_probability(&dist, region);
            let infinite = log_probability == f64::NEG_INFINITY;
            let a_n = if infinite {
                f64::INFINITY
            } else {
                -log_probability / f64::from(n)
            };
            Ok(RateSample {
                n,
                log_probability,
                probability: log_probability.exp(),
                a_n,
                infinite,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (target, minimizer) = match inf_rate_over_region(region, r) {
        Ok(inf) => (inf.value, Some(inf.minimizer)),
        Err(Error::EmptyRegion) => (f64::INFINITY, None),
        Err(e) => return Err(e),
    };
    Ok(RateProfile {
        region: region.clone(),
        samples,
        target,
        minimizer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    /// Binary relative entropy written out by hand.
    fn kl2(s: f64, r: f64) -> f64 {
        s * (s / r).ln() + (1.0 - s) * ((1.0 - s) / (1.0 - r)).ln()
    }

    #[test]
    fn rate_examples() {
        let r = spec(&[0.6, 0.3, 0.1]);
        assert_eq!(rate(&r, &r).unwrap(), 0.0);
        let v = rate(&spec(&[1.0, 0.0]), &spec(&[0.5, 0.5])).unwrap();
        assert!((v - std::f64::consts::LN_2).abs() < 1e-15);
        let v = rate(&spec(&[0.8, 0.2]), &spec(&[0.6, 0.4])).unwrap();
        assert!((v - 0.091515).abs() < 2e-6);
        assert!((v - kl2(0.8, 0.6)).abs() < 1e-15);
        let inf = rate(&spec(&[0.5, 0.5]), &spec(&[1.0, 0.0])).unwrap();
        assert_eq!(inf, f64::INFINITY);
    }

    #[test]
    fn cgf_examples() {
        let r = spec(&[0.6, 0.3, 0.1]);
        assert!(cgf(&[0.0; 3], &r).unwrap().abs() < 1e-15);
        let e = std::f64::consts::E;
        let want = (0.6 * e + 0.3 + 0.1 / e).ln();
        assert!((cgf(&[1.0, 0.0, -1.0], &r).unwrap() - want).abs() < 1e-15);
        let u = spec(&[0.5, 0.5]);
        for t in [-3.0f64, -0.5, 0.7, 4.0] {
            let want = ((t.exp() + 1.0) / 2.0).ln();
            assert!((cgf(&[t, 0.0], &u).unwrap() - want).abs() < 1e-14);
        }
        let grad = Cgf::new(u).gradient(&[0.0, 0.0]).unwrap();
        assert!((grad[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn legendre_examples() {
        let r = spec(&[0.6, 0.3, 0.1]);
        let res = legendre_of_cgf(&r, &r).unwrap();
        assert!(res.value.abs() < 1e-14);
        assert!(res.eta.iter().all(|e| e.abs() < 1e-12));

        let res = legendre_of_cgf(&spec(&[0.8, 0.2]), &spec(&[0.6, 0.4])).unwrap();
        assert!((res.value - kl2(0.8, 0.6)).abs() < 1e-8);
        assert!(res.certificate_gap < 1e-8);

        let u = Spectrum::uniform(3);
        let s = spec(&[0.5, 0.3, 0.2]);
        let entropy: f64 = -s.values().iter().map(|p| p * p.ln()).sum::<f64>();
        let res = legendre_of_cgf(&s, &u).unwrap();
        assert!((res.value - (3f64.ln() - entropy)).abs() < 1e-8);
    }

    #[test]
    fn legendre_on_the_boundary() {
        let r = spec(&[0.5, 0.3, 0.2]);
        let s = spec(&[0.7, 0.3, 0.0]);
        let res = legendre_of_cgf(&s, &r).unwrap();
        assert!((res.value - relative_entropy(s.values(), r.values())).abs() < 1e-8);
        assert_eq!(res.eta[2], f64::NEG_INFINITY);
        assert!(legendre_of_cgf(&spec(&[0.5, 0.5]), &spec(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn inf_rate_examples() {
        let r = spec(&[0.7, 0.3]);
        let inside = Region::half_space(&[1.0, 0.0], 0.6);
        let inf = inf_rate_over_region(&inside, &r).unwrap();
        assert_eq!(inf.value, 0.0);

        let u = spec(&[0.5, 0.5]);
        let upper = Region::half_space(&[1.0, 0.0], 0.6);
        let inf = inf_rate_over_region(&upper, &u).unwrap();
        assert!((inf.value - 0.020136).abs() < 1e-6);
        assert!((inf.value - kl2(0.6, 0.5)).abs() < 1e-10);
        assert!(upper.contains_point(inf.minimizer.values()));

        let ball = Region::ball_complement(&r, 0.1).unwrap();
        let inf = inf_rate_over_region(&ball, &r).unwrap();
        let want = kl2(0.6, 0.7).min(kl2(0.8, 0.7));
        assert!((want - 0.0225824).abs() < 1e-7);
        assert!((inf.value - want).abs() < 1e-10, "{} vs {}", inf.value, want);
        assert!((inf.minimizer.values()[0] - 0.6).abs() < 1e-9);
    }

    #[test]
    fn inf_rate_three_dims_matches_face_closed_form() {
        // On the face s_1 = c, the minimum of I puts the remaining mass proportionally to r.
        let r = spec(&[0.5, 0.3, 0.2]);
        let region = Region::half_space(&[1.0, 0.0, 0.0], 0.7);
        let inf = inf_rate_over_region(&region, &r).unwrap();
        let c = 0.7;
        let s = [c, (1.0 - c) * 0.6, (1.0 - c) * 0.4];
        let want = relative_entropy(&s, r.values());
        assert!((inf.value - want).abs() < 1e-9, "{} vs {want}", inf.value);
    }

    #[test]
    fn empty_regions() {
        let r = spec(&[0.7, 0.3]);
        let none = Region::ball_complement(&r, 1.0).unwrap();
        assert_eq!(inf_rate_over_region(&none, &r).unwrap_err(), Error::EmptyRegion);
        let profile = rate_scan(2, &r, &none, &[10, 20]).unwrap();
        assert!(profile.samples.iter().all(|s| s.infinite && s.a_n == f64::INFINITY));
        assert_eq!(profile.target, f64::INFINITY);
    }

    #[test]
    fn scan_of_whole_simplex_is_zero() {
        let r = spec(&[0.6, 0.3, 0.1]);
        let profile = rate_scan(3, &r, &Region::whole(3), &[5, 10]).unwrap();
        for s in &profile.samples {
            assert!(s.a_n.abs() < 1e-12);
        }
        assert_eq!(profile.target, 0.0);
        let one = rate_scan(
            1,
            &spec(&[1.0]),
            &Region::ball_complement(&spec(&[1.0]), 0.1).unwrap(),
            &[3],
        )
        .unwrap();
        assert!(one.samples[0].infinite);
    }

    #[test]
    fn empirical_cgf_examples() {
        let r = spec(&[0.7, 0.3]);
        assert!(empirical_cgf(2, 30, &r, &[0.0, 0.0]).unwrap().abs() < 1e-15);
        let one = spec(&[1.0]);
        for n in [1u32, 7, 40] {
            assert!((empirical_cgf(1, n, &one, &[0.8]).unwrap() - 0.8).abs() < 1e-15);
        }
        let want = cgf(&[0.5, 0.0], &r).unwrap();
        let got = empirical_cgf(2, 200, &r, &[0.5, 0.0]).unwrap();
        assert!((got - want).abs() < 0.02);
    }

    #[test]
    fn j_gap_examples() {
        assert_eq!(j_equivalence_gap(1, 9, &spec(&[1.0]), &[0.3]).unwrap(), 0.0);
        let r = spec(&[0.7, 0.3]);
        let mut prev = f64::INFINITY;
        for n in [25u32, 50, 100] {
            let gap = j_equivalence_gap(2, n, &r, &[0.2, 0.0]).unwrap();
            assert!(gap >= -1e-12);
            assert!(gap <= f64::from(n + 1).ln() / f64::from(n) + 1e-12);
            assert!(gap.abs() < prev);
            prev = gap.abs();
        }
        assert!(j_equivalence_gap(2, 10, &r, &[0.0, 0.2]).is_err());
    }
}
