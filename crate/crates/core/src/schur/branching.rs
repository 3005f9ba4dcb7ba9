//! Branching-rule evaluation of Schur polynomials in log space.
//!
//! `s_λ(x_1..x_k) = Σ_μ s_μ(x_1..x_{k-1}) x_k^{|λ|-|μ|}` over `μ` interlacing `λ`.
//! The interlacing sum is peeled one row at a time: with `F(ν, i)` the partial
//! sum in which rows above `i` are frozen at `ν`,
//!
//! ```text
//! F(ν, k-1) = x_k^{ν_{k-1}} s_{(ν_0..ν_{k-2})}(x_1..x_{k-1})
//! F(ν, i)   = F(ν, i+1) + x_k F(ν - e_i, i)      if ν_i > ν_{i+1}
//! ```
//!
//! so each partition costs `O(k)` positive log-additions and no term cancels.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::logspace::log_add_exp;

pub(crate) const MAX_PACKED_ROWS: usize = 8;
pub(crate) const MAX_PACKED_ROW_LEN: u32 = u16::MAX as u32;

pub(crate) type Key = u128;

#[inline]
pub(crate) fn pack(rows: &[u32]) -> Key {
    let mut key = 0u128;
    for (i, &r) in rows.iter().enumerate() {
        key |= (r as u128) << (16 * i);
    }
    key
}

pub(crate) fn check_packable(rows: usize, max_row: u32) -> Result<()> {
    if rows > MAX_PACKED_ROWS {
        return Err(Error::ResourceLimit {
            what: "rows in branching evaluator",
            limit: MAX_PACKED_ROWS as u64,
            requested: rows as u64,
        });
    }
    if max_row > MAX_PACKED_ROW_LEN {
        return Err(Error::ResourceLimit {
            what: "row length in branching evaluator",
            limit: u64::from(MAX_PACKED_ROW_LEN),
            requested: u64::from(max_row),
        });
    }
    Ok(())
}

/// Which partitions the recursion visits.
#[derive(Debug, Clone)]
pub(crate) enum Universe {
    /// All partitions contained in the given shape (single-frame evaluation).
    Within(Vec<u32>),
    /// All partitions with at most `n` boxes; only size-`n` results are kept at the top level.
    Size(u32),
}

impl Universe {
    fn max_size(&self) -> u32 {
        match self {
            Universe::Within(rows) => rows.iter().sum(),
            Universe::Size(n) => *n,
        }
    }

    fn caps(&self, m: usize) -> Option<&[u32]> {
        match self {
            Universe::Within(rows) => Some(&rows[..m]),
            Universe::Size(_) => None,
        }
    }
}

/// Partitions of `size` into at most `m` parts, row `i` capped by `caps[i]`.
fn layer(m: usize, size: u32, caps: Option<&[u32]>, out: &mut Vec<Vec<u32>>) {
    out.clear();
    let mut rows = vec![0u32; m];
    layer_rec(&mut rows, 0, size, u32::MAX, caps, out);
}

fn layer_rec(rows: &mut [u32], idx: usize, remaining: u32, prev: u32, caps: Option<&[u32]>, out: &mut Vec<Vec<u32>>) {
    let m = rows.len();
    let cap = caps.map_or(u32::MAX, |c| c[idx]).min(prev);
    if idx == m - 1 {
        if remaining <= cap {
            rows[idx] = remaining;
            out.push(rows.to_vec());
        }
        return;
    }
    let left = (m - idx) as u32;
    let lo = remaining.div_ceil(left);
    let hi = cap.min(remaining);
    if lo > hi {
        return;
    }
    for v in (lo..=hi).rev() {
        rows[idx] = v;
        layer_rec(rows, idx + 1, remaining - v, v, caps, out);
    }
}

/// Runs the recursion over `log_x.len()` strictly positive variables (all finite logs).
///
/// Returns `ln s_ν(x)` keyed by packed rows (length `k = log_x.len()`).
pub(crate) fn evaluate(log_x: &[f64], universe: &Universe) -> FxHashMap<Key, f64> {
    let k = log_x.len();
    assert!(k >= 1);
    let max_size = universe.max_size();

    // Level 1: s_(a)(x_1) = x_1^a.
    let top1 = match universe {
        Universe::Within(rows) => rows[0],
        Universe::Size(n) => *n,
    };
    let mut lower: FxHashMap<Key, f64> = FxHashMap::default();
    for a in 0..=top1 {
        lower.insert(pack(&[a]), f64::from(a) * log_x[0]);
    }
    if k == 1 {
        if let Universe::Size(n) = universe {
            lower.retain(|key, _| *key == pack(&[*n]));
        }
        return lower;
    }

    let mut buf = Vec::new();
    for m in 2..=k {
        let lx = log_x[m - 1];
        let is_top = m == k;
        let caps = universe.caps(m);
        let mut current: FxHashMap<Key, f64> = FxHashMap::default();

        // Rolling layers of F(ν, ·): key -> offset into a flat buffer of `m` values.
        let mut prev_index: FxHashMap<Key, usize> = FxHashMap::default();
        let mut prev_vals: Vec<f64> = Vec::new();

        for size in 0..=max_size {
            layer(m, size, caps, &mut buf);
            let mut idx: FxHashMap<Key, usize> = FxHashMap::with_capacity_and_hasher(buf.len(), Default::default());
            let mut vals: Vec<f64> = Vec::with_capacity(buf.len() * m);

            for nu in buf.iter_mut() {
                let base = vals.len();
                vals.resize(base + m, f64::NEG_INFINITY);

                let last = nu[m - 1];
                let head = pack(&nu[..m - 1]);
                let below = lower.get(&head).copied().unwrap_or(f64::NEG_INFINITY);
                vals[base + m - 1] = if last == 0 { below } else { f64::from(last) * lx + below };

                for i in (0..m - 1).rev() {
                    let mut acc = vals[base + i + 1];
                    if nu[i] > nu[i + 1] {
                        nu[i] -= 1;
                        let shrunk = pack(nu);
                        nu[i] += 1;
                        if let Some(&off) = prev_index.get(&shrunk) {
                            acc = log_add_exp(acc, lx + prev_vals[off + i]);
                        }
                    }
                    vals[base + i] = acc;
                }

                let key = pack(nu);
                let keep = match universe {
                    Universe::Size(n) => !is_top || size == *n,
                    Universe::Within(_) => true,
                };
                if keep {
                    current.insert(key, vals[base]);
                }
                idx.insert(key, base);
            }
            prev_index = idx;
            prev_vals = vals;
        }
        lower = current;
    }
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_schur_2(a: u32, b: u32, x: f64, y: f64) -> f64 {
        // s_(a,b)(x, y) = (xy)^b h_{a-b}(x, y)
        let h: f64 = (0..=a - b).map(|i| x.powi(i as i32) * y.powi((a - b - i) as i32)).sum();
        (x * y).powi(b as i32) * h
    }

    #[test]
    fn two_variables_match_closed_form() {
        let (x, y) = (0.7f64, 0.3f64);
        let table = evaluate(&[x.ln(), y.ln()], &Universe::Size(9));
        assert_eq!(table.len(), 5);
        for b in 0..=4u32 {
            let got = table[&pack(&[9 - b, b])];
            let want = direct_schur_2(9 - b, b, x, y).ln();
            assert!((got - want).abs() < 1e-13, "b={b}");
        }
    }

    #[test]
    fn within_universe_keeps_subshapes() {
        let table = evaluate(
            &[0.5f64.ln(), 0.3f64.ln(), 0.2f64.ln()],
            &Universe::Within(vec![2, 1, 0]),
        );
        // s_(1)(x) = x_1 + x_2 + x_3 = 1
        assert!(table[&pack(&[1, 0, 0])].abs() < 1e-15);
        // s_(1,1)(x) = e_2(x)
        let e2: f64 = 0.5 * 0.3 + 0.5 * 0.2 + 0.3 * 0.2;
        assert!((table[&pack(&[1, 1, 0])] - e2.ln()).abs() < 1e-14);
        assert!(!table.contains_key(&pack(&[3, 0, 0])));
    }

    #[test]
    fn layers_respect_caps() {
        let mut out = Vec::new();
        layer(3, 3, Some(&[2, 1, 1]), &mut out);
        assert_eq!(out, vec![vec![2, 1, 0], vec![1, 1, 1]]);
        layer(2, 4, None, &mut out);
        assert_eq!(out, vec![vec![4, 0], vec![3, 1], vec![2, 2]]);
    }
}
