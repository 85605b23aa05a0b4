//! Summation and exact-integer helpers shared by the numeric modules.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Neumaier-compensated sum.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Pairwise (tree) summation. A slice of 2^k identical values sums exactly.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        len => {
            let mid = len.next_power_of_two() / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Mean of a slice via pairwise summation.
pub fn pairwise_mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    pairwise_sum(values) / values.len() as f64
}

/// `base^exp` with the convention `0^exp = 0` for every `exp >= 0`.
#[inline]
pub fn pow_zero_is_zero(base: f64, exp: f64) -> f64 {
    if base == 0.0 {
        0.0
    } else {
        base.powf(exp)
    }
}

/// Binomial coefficient in arbitrary precision.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient as `u64`; panics only if the value overflows.
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    binomial(n, k).to_u64().expect("binomial overflows u64")
}

/// Ratio of two big integers as `f64`, dividing last.
pub fn big_ratio(num: &BigUint, den: &BigUint) -> f64 {
    // Scale so both fit comfortably in f64 before the single division.
    let bits = num.bits().max(den.bits());
    let shift = bits.saturating_sub(1000);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}
