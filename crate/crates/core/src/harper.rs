//! Exact minimum edge boundary at fixed cardinality and the initial-segment
//! sets that attain it. Integer arithmetic only.

use serde::{Deserialize, Serialize};

use crate::cube::{edge_boundary_size, CubeSet, Dimension};
use crate::error::{Error, Result};

/// `min_{|A| = m} E h_A` as the exact rational `numerator / 2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarperValue {
    pub n: Dimension,
    pub m: u64,
    pub numerator: u64,
    pub value: f64,
}

/// Number of ones in the binary representation of `j`.
#[inline]
pub fn digit_sum(j: u64) -> u64 {
    j.count_ones() as u64
}

fn check_m(n: Dimension, m: u64) -> Result<()> {
    let max = n.vertex_count() as u64;
    if m > max {
        return Err(Error::out_of_range("m", m, format!("need 0 <= m <= 2^{n} = {max}")));
    }
    Ok(())
}

/// `n m - 2 sum_{j=1}^{m-1} s(j)` over `2^n`.
pub fn harper_min(n: Dimension, m: u64) -> Result<HarperValue> {
    check_m(n, m)?;
    let digits: u64 = (1..m).map(digit_sum).sum();
    let numerator = n.get() as u64 * m - 2 * digits;
    Ok(HarperValue {
        n,
        m,
        numerator,
        value: numerator as f64 / n.vertex_count() as f64,
    })
}

/// All values `m = 0..=2^n`, accumulating the digit sums once.
pub fn harper_table(n: Dimension) -> Vec<HarperValue> {
    let total = n.vertex_count() as u64;
    let mut digits = 0u64;
    let mut rows = Vec::with_capacity(total as usize + 1);
    for m in 0..=total {
        if m >= 2 {
            digits += digit_sum(m - 1);
        }
        let numerator = n.get() as u64 * m - 2 * digits;
        rows.push(HarperValue {
            n,
            m,
            numerator,
            value: numerator as f64 / total as f64,
        });
    }
    rows
}

/// The initial segment `{0, 1, ..., m-1}`; its edge boundary is checked
/// against [`harper_min`].
pub fn harper_set(n: Dimension, m: u64) -> Result<CubeSet> {
    let expected = harper_min(n, m)?;
    let set = CubeSet::from_vertices(n, 0..m as u32)?;
    let got = edge_boundary_size(&set);
    if got != expected.numerator {
        return Err(Error::Domain(format!(
            "initial segment of size {m} has |∇A| = {got}, formula gives {}",
            expected.numerator
        )));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitmask::{edge_boundary, first_combination, full_mask, gosper_next};

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    /// Brute-force minimum of |∇A| over all |A| = m.
    fn brute_min_boundary(n: u32, m: u32) -> u64 {
        let bits = 1u32 << n;
        let mut x = first_combination(m);
        let mut best = edge_boundary(x & full_mask(n), n);
        while let Some(nx) = gosper_next(x, bits) {
            best = best.min(edge_boundary(nx, n));
            x = nx;
        }
        best
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(0), 0);
        assert_eq!(digit_sum(3), 2);
        assert_eq!(digit_sum(7), 3);
    }

    #[test]
    fn harper_examples() {
        let v = harper_min(dim(2), 2).unwrap();
        assert_eq!((v.numerator, v.value), (2, 0.5));
        assert_eq!(brute_min_boundary(2, 2), 2);
        let v = harper_min(dim(3), 4).unwrap();
        assert_eq!((v.numerator, v.value), (4, 0.5));
        for n in 1..=6 {
            assert_eq!(harper_min(dim(n), 0).unwrap().numerator, 0);
        }
        assert!(harper_min(dim(3), 9).is_err());
    }

    #[test]
    fn harper_set_examples() {
        let s = harper_set(dim(2), 2).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(harper_set(dim(4), 16).unwrap(), CubeSet::full(dim(4)));
        let s = harper_set(dim(3), 1).unwrap();
        assert_eq!(edge_boundary_size(&s), 3);
        assert_eq!(harper_min(dim(3), 1).unwrap().value, 3.0 / 8.0);
    }

    #[test]
    fn formula_matches_brute_force() {
        for n in 1..=4u32 {
            for m in 0..=(1u32 << n) {
                assert_eq!(
                    harper_min(dim(n), m as u64).unwrap().numerator,
                    brute_min_boundary(n, m),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn table_matches_pointwise_and_is_complement_symmetric() {
        for n in 1..=10 {
            let table = harper_table(dim(n));
            let total = 1u64 << n;
            for row in &table {
                assert_eq!(*row, harper_min(dim(n), row.m).unwrap());
                assert_eq!(row.numerator, table[(total - row.m) as usize].numerator);
            }
            for k in 0..=n {
                let v = table[(total >> k) as usize].value;
                assert!(v <= k as f64 * 2f64.powi(-(k as i32)) + 1e-15);
            }
        }
    }

    #[test]
    fn initial_segments_are_optimal_up_to_n10() {
        for n in 1..=10 {
            for m in (0..=(1u64 << n)).step_by(7) {
                harper_set(dim(n), m).unwrap();
            }
        }
    }
}
