//! Log-space accumulation of non-negative quantities.

use std::fmt;
use std::ops::{Add, Mul};

/// `ln(exp(a) + exp(b))` without overflow; `-inf` is the additive zero.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a >= b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// Max-shifted log-sum-exp, summed left to right in iteration order.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let sum: f64 = terms.iter().map(|&t| (t - max).exp()).sum();
    max + sum.ln()
}

/// Natural logarithm of a positive quantity; `-inf` encodes exact zero.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogValue(f64);

impl LogValue {
    pub const ZERO: LogValue = LogValue(f64::NEG_INFINITY);
    pub const ONE: LogValue = LogValue(0.0);

    pub fn from_ln(ln: f64) -> Self {
        debug_assert!(!ln.is_nan());
        LogValue(ln)
    }

    pub fn from_value(x: f64) -> Self {
        debug_assert!(x >= 0.0);
        LogValue(x.ln())
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0.exp()
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn sum<I: IntoIterator<Item = LogValue>>(items: I) -> LogValue {
        LogValue(log_sum_exp(items.into_iter().map(|v| v.0)))
    }
}

impl Add for LogValue {
    type Output = LogValue;
    fn add(self, rhs: LogValue) -> LogValue {
        LogValue(log_add_exp(self.0, rhs.0))
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        if self.is_zero() || rhs.is_zero() {
            LogValue::ZERO
        } else {
            LogValue(self.0 + rhs.0)
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_exp_large_arguments() {
        // ln(e^1234 + e^1232) = 1232 + ln(e^2 + 1)
        let got = log_add_exp(1234.0, 1232.0);
        assert!((got - 1234.126928011043).abs() < 1e-12);
        assert!((1234f64.exp() + 1232f64.exp()).ln().is_infinite());
    }

    #[test]
    fn zero_is_identity() {
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 2.5), 2.5);
        assert_eq!(log_add_exp(-3.0, f64::NEG_INFINITY), -3.0);
        assert_eq!(log_sum_exp(Vec::<f64>::new()), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp([f64::NEG_INFINITY, f64::NEG_INFINITY]), f64::NEG_INFINITY);
    }

    #[test]
    fn sum_matches_direct() {
        let xs = [0.1f64, 0.2, 0.3, 0.4];
        let got = log_sum_exp(xs.iter().map(|x| x.ln()));
        assert!(got.abs() < 1e-15);
        let v = LogValue::from_value(0.25) + LogValue::from_value(0.5);
        assert!((v.value() - 0.75).abs() < 1e-15);
        assert!((LogValue::from_value(0.5) * LogValue::from_value(0.5)).value() == 0.25);
        assert!((LogValue::ZERO * LogValue::ONE).is_zero());
    }
}
