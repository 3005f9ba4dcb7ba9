use num_bigint::{BigInt, Sign};
use num_traits::{Float, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{ln_biguint, Spectrum, YoungFrame};
use crate::logspace::LogValue;

/// Minimum pairwise gap (and minimum entry) accepted by the bialternant evaluator.
pub const BIALTERNANT_MIN_GAP: f64 = 1e-9;

/// `ln s_Y(r)` as the ratio `det(r_i^{Y_j + d - j}) / det(r_i^{d - j})`.
///
/// The determinants are taken exactly over the dyadic rationals that the
/// input doubles represent, so the only rounding is in the final logarithms.
/// Only meant as a cross-check of [`super::schur_log`].
pub fn schur_log_bialternant(y: &YoungFrame, r: &Spectrum) -> Result<LogValue> {
    let d = r.d();
    if y.length() > d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: y.length(),
        });
    }
    let x = r.values();
    let mut min_gap = x[d - 1];
    for w in x.windows(2) {
        min_gap = min_gap.min(w[0] - w[1]);
    }
    if min_gap <= BIALTERNANT_MIN_GAP {
        return Err(Error::NearDegenerate { min_gap });
    }

    // Every double is m · 2^e; over a common exponent the matrices become integral.
    let decoded: Vec<(u64, i16)> = x
        .iter()
        .map(|&v| {
            let (mantissa, exponent, _) = v.integer_decode();
            (mantissa, exponent)
        })
        .collect();
    let e_min = decoded.iter().map(|&(_, e)| e).min().expect("d >= 1");
    let ms: Vec<BigInt> = decoded
        .iter()
        .map(|&(m, e)| BigInt::from(m) << (e - e_min) as usize)
        .collect();
    let mut rows: Vec<u32> = y.rows().to_vec();
    rows.resize(d, 0);

    let numer: Vec<Vec<BigInt>> = ms
        .iter()
        .map(|mi| {
            (0..d)
                .map(|j| num_traits::pow(mi.clone(), rows[j] as usize + d - 1 - j))
                .collect()
        })
        .collect();
    let num = determinant(numer);

    let mut vandermonde = BigInt::one();
    for i in 0..d {
        for j in i + 1..d {
            vandermonde *= &ms[i] - &ms[j];
        }
    }
    if !num.is_positive() || !vandermonde.is_positive() {
        return Err(Error::Domain(format!(
            "bialternant ratio {num}/{vandermonde} is not positive"
        )));
    }
    // det(x_i^{k_j}) / Vandermonde(x) = (integer ratio) · 2^{e_min · |Y|}
    let scale = f64::from(e_min) * f64::from(y.size()) * std::f64::consts::LN_2;
    Ok(LogValue::from_ln(ln_bigint(&num) - ln_bigint(&vandermonde) + scale))
}

fn ln_bigint(x: &BigInt) -> f64 {
    debug_assert_eq!(x.sign(), Sign::Plus);
    ln_biguint(x.magnitude())
}

/// Fraction-free (Bareiss) elimination; every division is exact.
fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != k {
            a.swap(pivot, k);
            sign_flip = !sign_flip;
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            for j in k + 1..n {
                row[j] = (&row[j] * &pivot_row[k] - &row[k] * &pivot_row[j]) / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }
    if sign_flip {
        -prev
    } else {
        prev
    }
}
