//! Invariant suites behind the `verify` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::{enumerate_frames, Spectrum};
use crate::ldp::{legendre_of_cgf, relative_entropy};
use crate::measure::exact_distribution;
use crate::rsk::{empirical_distribution, SamplerConfig};
use crate::schur::{
    brute_force_frame_probability, character_bounds_check, character_from_weights, schur_log, schur_log_bialternant,
    weight_multiplicities, DiagonalState,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

/// Deliberate defects for negative-control runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Fault {
    /// Scales the rate function checked against the Legendre transform.
    Duality,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

/// A uniformly random point of the ordered simplex (sorted flat Dirichlet).
pub fn random_spectrum<R: Rng>(rng: &mut R, d: usize) -> Spectrum {
    let w: Vec<f64> = (0..d).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    Spectrum::normalized(w).expect("positive weights")
}

/// Random spectrum whose entries and pairwise gaps all exceed `min_gap`.
pub fn random_separated_spectrum<R: Rng>(rng: &mut R, d: usize, min_gap: f64) -> Spectrum {
    loop {
        let s = random_spectrum(rng, d);
        let v = s.values();
        if v[d - 1] > min_gap && v.windows(2).all(|w| w[0] - w[1] > min_gap) {
            return s;
        }
    }
}

fn check(name: &'static str, cases: u64, worst: f64, tol: f64, note: String) -> CheckResult {
    CheckResult {
        name,
        passed: worst <= tol,
        cases,
        detail: format!("worst {worst:.3e} vs tolerance {tol:.0e}{note}"),
    }
}

fn normalization(level: Level) -> CheckResult {
    let (ns, reps): (Vec<u32>, usize) = match level {
        Level::Quick => (vec![1, 2, 5, 10, 20, 40, 60], 3),
        Level::Full => ((1..=60).collect(), 20),
    };
    let jobs: Vec<(usize, u32, usize)> = (2..=4)
        .flat_map(|d| ns.iter().flat_map(move |&n| (0..reps).map(move |k| (d, n, k))))
        .collect();
    let worst = jobs
        .par_iter()
        .map(|&(d, n, k)| {
            let mut rng = ChaCha8Rng::seed_from_u64(1_000 * d as u64 + 10 * u64::from(n) + k as u64);
            let r = random_spectrum(&mut rng, d);
            let dist = exact_distribution(d, n, &r).expect("within caps");
            let total: f64 = dist.iter().map(|(_, p)| p).sum();
            (total - 1.0).abs()
        })
        .reduce(|| 0.0, f64::max);
    check("normalization", jobs.len() as u64, worst, 1e-10, String::new())
}

fn duality(level: Level, tampered: bool) -> CheckResult {
    let pairs = match level {
        Level::Quick => 50,
        Level::Full => 200,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xD0A1);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for k in 0..pairs {
        let d = 2 + k % 3;
        let s = random_separated_spectrum(&mut rng, d, 1e-6);
        let r = random_separated_spectrum(&mut rng, d, 1e-6);
        let mut rate = relative_entropy(s.values(), r.values());
        if tampered {
            rate = rate * 1.01 + 1e-6;
        }
        match legendre_of_cgf(&s, &r) {
            Ok(res) => worst = worst.max((res.value - rate).abs()),
            Err(_) => failures += 1,
        }
    }
    let mut c = check(
        "duality",
        pairs as u64,
        worst,
        1e-8,
        format!("; {failures} non-converged"),
    );
    c.passed &= failures == 0;
    c
}

fn character_bounds(level: Level) -> CheckResult {
    let (max_n, reps) = match level {
        Level::Quick => (10, 5),
        Level::Full => (20, 20),
    };
    let mut cases = 0;
    let mut violations = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0D5);
    for _ in 0..reps {
        for d in 1..=3 {
            let h = DiagonalState::from_spectrum(&random_spectrum(&mut rng, d));
            for n in 0..=max_n {
                for y in enumerate_frames(d, n).expect("d >= 1") {
                    cases += 1;
                    if !character_bounds_check(&y, &h).map(|b| b.holds).unwrap_or(false) {
                        violations += 1;
                    }
                }
            }
        }
    }
    CheckResult {
        name: "character_bounds",
        passed: violations == 0,
        cases,
        detail: format!("{violations} violations"),
    }
}

fn oracle_equivalence() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0AC1E);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for d in 1..=3 {
        for n in 1..=7 {
            let r = random_spectrum(&mut rng, d);
            let dist = exact_distribution(d, n, &r).expect("within caps");
            for (y, p) in dist.iter() {
                let q = brute_force_frame_probability(y, &r).expect("N <= 8");
                worst = worst.max((p - q).abs());
                cases += 1;
            }
        }
    }
    check("oracle_equivalence", cases, worst, 1e-10, String::new())
}

fn weight_expansion(level: Level) -> CheckResult {
    let reps = match level {
        Level::Quick => 3,
        Level::Full => 20,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x3E16);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for _ in 0..reps {
        for d in 1..=3 {
            let r = random_spectrum(&mut rng, d);
            let h = DiagonalState::from_spectrum(&r);
            for n in 0..=10 {
                for y in enumerate_frames(d, n).expect("d >= 1") {
                    let table = weight_multiplicities(&y, d).expect("within caps");
                    let a = character_from_weights(&table, &h).expect("same d").ln();
                    let b = schur_log(&y, &r).expect("same d").ln();
                    worst = worst.max((a.exp() - b.exp()).abs());
                    cases += 1;
                }
            }
        }
    }
    check("weight_expansion", cases, worst, 1e-10, String::new())
}

fn evaluator_agreement(level: Level) -> CheckResult {
    let spectra = match level {
        Level::Quick => 20,
        Level::Full => 100,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xB1A1);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for k in 0..spectra {
        let d = 2 + k % 3;
        let r = random_separated_spectrum(&mut rng, d, 1e-3);
        let n = rng.gen_range(1..=40);
        let frames = enumerate_frames(d, n).expect("d >= 1");
        for y in frames.iter().step_by(1 + frames.len() / 25) {
            let a = schur_log(y, &r).expect("same d").ln();
            let b = schur_log_bialternant(y, &r).expect("separated").ln();
            worst = worst.max(((a - b).exp() - 1.0).abs());
            cases += 1;
        }
    }
    check("evaluator_agreement", cases, worst, 1e-9, String::new())
}

fn sampler_equivalence(level: Level) -> CheckResult {
    let samples: u64 = match level {
        Level::Quick => 100_000,
        Level::Full => 1_000_000,
    };
    let mut notes = Vec::new();
    let mut passed = true;
    let cases: [(Vec<f64>, u32); 2] = [(vec![0.7, 0.3], 10), (vec![0.5, 0.3, 0.2], 8)];
    for (values, n) in cases {
        let r = Spectrum::new(values).expect("valid");
        let d = r.d();
        let exact = exact_distribution(d, n, &r).expect("within caps");
        let cfg = SamplerConfig::new(r, n, 0x5A3 + u64::from(n), 8).expect("chains > 0");
        let emp = empirical_distribution(&cfg, samples, Some(&exact)).expect("samples > 0");
        let fit = emp.fit.expect("exact supplied");
        passed &= fit.p_value > 1e-3;
        notes.push(format!("d={d} N={n}: p={:.4}", fit.p_value));
    }
    if level == Level::Full {
        let r = Spectrum::new(vec![0.6, 0.3, 0.1]).expect("valid");
        let exact = exact_distribution(3, 20, &r).expect("within caps");
        let cfg = SamplerConfig::new(r, 20, 0x5A3 + 20, 8).expect("chains > 0");
        let emp = empirical_distribution(&cfg, samples, Some(&exact)).expect("samples > 0");
        let tv = emp.fit.expect("exact supplied").total_variation;
        passed &= tv < 0.01;
        notes.push(format!("d=3 N=20: TV={tv:.4}"));
    }
    CheckResult {
        name: "sampler_equivalence",
        passed,
        cases: samples,
        detail: notes.join("; "),
    }
}

pub fn run_verification(level: Level, faults: &[Fault]) -> VerifyReport {
    let checks = vec![
        normalization(level),
        duality(level, faults.contains(&Fault::Duality)),
        character_bounds(level),
        oracle_equivalence(),
        weight_expansion(level),
        evaluator_agreement(level),
        sampler_equivalence(level),
    ];
    VerifyReport { level, checks }
}
