//! Symmetric-group route to frame probabilities, for tiny `N` only.
//!
//! With `P_Y = (dim S_Y / N!) Σ_p χ̂_Y(p) S_p` and
//! `tr(ρ^{⊗N} S_p) = Π_cycles p_{len}(r)` where `p_k(r) = Σ_j r_j^k`,
//! the probability of frame `Y` is a sum over cycle types.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{dim_symmetric_irrep, enumerate_frames, Spectrum, YoungFrame};

pub const ORACLE_MAX_N: u32 = 8;

fn check_oracle_size(n: u32) -> Result<()> {
    if n > ORACLE_MAX_N {
        return Err(Error::ResourceLimit {
            what: "N for symmetric-group oracle",
            limit: u64::from(ORACLE_MAX_N),
            requested: u64::from(n),
        });
    }
    Ok(())
}

/// All cycle types of `S_n` (partitions of `n`, zero parts dropped).
pub fn cycle_types(n: u32) -> Vec<Vec<u32>> {
    enumerate_frames(n.max(1) as usize, n)
        .expect("n >= 0")
        .into_iter()
        .map(|f| f.rows().iter().copied().filter(|&p| p > 0).collect())
        .collect()
}

fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

/// Number of permutations with the given cycle type, `n! / z_ρ`.
pub fn class_size(cycle_type: &[u32]) -> u64 {
    let n: u32 = cycle_type.iter().sum();
    let mut z = 1u64;
    let mut counts = std::collections::BTreeMap::new();
    for &len in cycle_type {
        *counts.entry(len).or_insert(0u32) += 1;
    }
    for (&len, &mult) in &counts {
        z *= u64::from(len).pow(mult) * factorial(mult);
    }
    factorial(n) / z
}

/// `p_k(r) = Σ_j r_j^k`.
pub fn power_sum(r: &[f64], k: u32) -> f64 {
    r.iter().map(|x| x.powi(k as i32)).sum()
}

/// Character of the `S_N` irrep labelled by `Y` at the class of `cycle_type`,
/// by the Murnaghan–Nakayama rule on beta-sets.
pub fn sn_character(y: &YoungFrame, cycle_type: &[u32]) -> Result<i64> {
    let n = y.size();
    check_oracle_size(n)?;
    let total: u32 = cycle_type.iter().sum();
    if total != n || cycle_type.contains(&0) {
        return Err(Error::Domain(format!(
            "cycle type {cycle_type:?} is not a partition of {n}"
        )));
    }
    let len = y.length();
    // Beta-set: distinct positions λ_i + (ℓ - 1 - i).
    let beads: Vec<u32> = (0..len).map(|i| y.rows()[i] + (len - 1 - i) as u32).collect();
    Ok(mn_beads(&beads, cycle_type))
}

fn mn_beads(beads: &[u32], cycles: &[u32]) -> i64 {
    let Some((&k, rest)) = cycles.split_first() else {
        return 1;
    };
    let mut total = 0i64;
    for (idx, &b) in beads.iter().enumerate() {
        if b < k || beads.contains(&(b - k)) {
            continue;
        }
        // Removing a rim hook of length k moves bead b to b - k; its height is
        // the number of beads jumped over.
        let height = beads.iter().filter(|&&c| c > b - k && c < b).count();
        let mut next = beads.to_vec();
        next[idx] = b - k;
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_beads(&next, rest);
    }
    total
}

/// `tr(ρ^{⊗N} P_Y)` from symmetric-group characters and power sums.
pub fn brute_force_frame_probability(y: &YoungFrame, r: &Spectrum) -> Result<f64> {
    let n = y.size();
    check_oracle_size(n)?;
    let x = r.values();
    let mut acc = 0.0;
    for ct in cycle_types(n) {
        let chi = sn_character(y, &ct)?;
        if chi == 0 {
            continue;
        }
        let trace: f64 = ct.iter().map(|&k| power_sum(x, k)).product();
        acc += class_size(&ct) as f64 * chi as f64 * trace;
    }
    let dim = dim_symmetric_irrep(y).to_f64().expect("small dimension");
    Ok(dim / factorial(n) as f64 * acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(rows: &[u32]) -> YoungFrame {
        YoungFrame::new(rows.to_vec()).unwrap()
    }

    fn sign(ct: &[u32]) -> i64 {
        let transpositions: u32 = ct.iter().map(|&k| k - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn trivial_and_sign_representations() {
        for n in 1..=8u32 {
            let trivial = frame(&[n]);
            let column = YoungFrame::new(vec![1; n as usize]).unwrap();
            for ct in cycle_types(n) {
                assert_eq!(sn_character(&trivial, &ct).unwrap(), 1);
                assert_eq!(sn_character(&column, &ct).unwrap(), sign(&ct), "{ct:?}");
            }
        }
    }

    #[test]
    fn identity_class_gives_dimension() {
        assert_eq!(sn_character(&frame(&[2, 1]), &[1, 1, 1]).unwrap(), 2);
        for y in enumerate_frames(8, 8).unwrap() {
            let dim = dim_symmetric_irrep(&y).to_i64().unwrap();
            assert_eq!(sn_character(&y, &[1; 8]).unwrap(), dim);
        }
    }

    #[test]
    fn column_orthogonality_and_class_sizes() {
        // Σ_ρ |C_ρ| χ^λ(ρ) χ^μ(ρ) = n! δ_{λμ}
        let n = 6;
        let frames = enumerate_frames(n as usize, n).unwrap();
        let types = cycle_types(n);
        assert_eq!(types.iter().map(|c| class_size(c)).sum::<u64>(), 720);
        for a in &frames {
            for b in &frames {
                let s: i64 = types
                    .iter()
                    .map(|c| class_size(c) as i64 * sn_character(a, c).unwrap() * sn_character(b, c).unwrap())
                    .sum();
                assert_eq!(s, if a == b { 720 } else { 0 });
            }
        }
    }

    #[test]
    fn known_character_values() {
        // χ^(2,1) on a 3-cycle is -1; χ^(2,2) on a transposition is 0.
        assert_eq!(sn_character(&frame(&[2, 1]), &[3]).unwrap(), -1);
        assert_eq!(sn_character(&frame(&[2, 2]), &[2, 1, 1]).unwrap(), 0);
        assert_eq!(sn_character(&frame(&[3, 1]), &[2, 2]).unwrap(), -1);
        assert!(sn_character(&frame(&[9]), &[9]).is_err());
        assert!(sn_character(&frame(&[2, 1]), &[2]).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let r = Spectrum::new(vec![0.5, 0.5]).unwrap();
        let p = brute_force_frame_probability(&frame(&[1, 1]), &r).unwrap();
        assert!((p - 0.25).abs() < 1e-15);
        let p = brute_force_frame_probability(&frame(&[2, 0]), &r).unwrap();
        assert!((p - 0.75).abs() < 1e-15);
        let one = Spectrum::new(vec![1.0]).unwrap();
        for n in 1..=8 {
            let p = brute_force_frame_probability(&frame(&[n]), &one).unwrap();
            assert!((p - 1.0).abs() < 1e-12);
        }
    }
}
