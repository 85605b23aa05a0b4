//! Hamming-ball constructions showing that exponents below 1/2 fail.
//!
//! For even `n` the ball `B(0, n/2)` has `h = n/2` on its outer sphere and
//! zero elsewhere, so its `h^beta` moment is `(n/2)^beta C(n, n/2) / 2^n`,
//! which tends to zero when `beta < 1/2`. For odd `n` the ball
//! `A = B(0, (n-1)/2)` has measure exactly `1/2`; with `W` its outer sphere
//! and `B` the rest there are no `A`-`B` edges.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cube::{hamming_ball, hamming_sphere, moment, CubeSet, Dimension, Side, Vertex};
use crate::error::{Error, Result};
use crate::numeric::{big_ratio, binomial};
use crate::search::{Label, Partition};

/// Largest `n` for the closed forms; binomials are exact at any size but
/// tables are kept to a range where `f64` output is meaningful.
pub const MAX_CLOSED_FORM_DIM: u32 = 60;

fn check_beta(beta: f64) -> Result<()> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::out_of_range("beta", beta, "must be finite and >= 0"));
    }
    Ok(())
}

fn check_n(n: u32, odd: bool) -> Result<()> {
    if n == 0 || n > MAX_CLOSED_FORM_DIM {
        return Err(Error::out_of_range("n", n, format!("need 1 <= n <= {MAX_CLOSED_FORM_DIM}")));
    }
    if (n % 2 == 1) != odd {
        let want = if odd { "odd" } else { "even" };
        return Err(Error::out_of_range("n", n, format!("need {want} n")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub n: u32,
    pub beta: f64,
    /// `C(n, n/2)` as a decimal string.
    pub sphere_size: String,
    /// `(n/2)^beta C(n, n/2) / 2^n`.
    pub value: f64,
}

pub fn ball_moment_closed_form(n: u32, beta: f64) -> Result<DecayRow> {
    check_n(n, false)?;
    check_beta(beta)?;
    let sphere = binomial(n as u64, n as u64 / 2);
    let mu = big_ratio(&sphere, &(BigUint::one() << n));
    Ok(DecayRow {
        n,
        beta,
        sphere_size: sphere.to_string(),
        value: (n as f64 / 2.0).powf(beta) * mu,
    })
}

/// `E h^beta` of `B(0, n/2)` computed from the set itself.
pub fn ball_moment_direct(n: u32, beta: f64) -> Result<f64> {
    check_n(n, false)?;
    let dim = Dimension::new(n)?;
    Ok(moment(&hamming_ball(dim, 0, (n / 2) as f64)?, beta, Side::OneSidedH)?.value)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayTable {
    pub beta: f64,
    pub rows: Vec<DecayRow>,
    /// Smallest tabulated `n` from which the values strictly decrease to
    /// the end of the table.
    pub decreasing_from: Option<u32>,
}

/// Rows for even `n = 2, 4, ..., n_max`.
pub fn decay_table(beta: f64, n_max: u32) -> Result<DecayTable> {
    check_beta(beta)?;
    if !(2..=MAX_CLOSED_FORM_DIM).contains(&n_max) {
        return Err(Error::out_of_range("n_max", n_max, format!("need 2 <= n_max <= {MAX_CLOSED_FORM_DIM}")));
    }
    let rows = (2..=n_max)
        .step_by(2)
        .map(|n| ball_moment_closed_form(n, beta))
        .collect::<Result<Vec<_>>>()?;
    let mut start = rows.len() - 1;
    while start > 0 && rows[start - 1].value > rows[start].value {
        start -= 1;
    }
    let decreasing_from = (start + 1 < rows.len()).then(|| rows[start].n);
    Ok(DecayTable { beta, rows, decreasing_from })
}

/// Integer data of the odd-`n` ball partition, available for every odd
/// `n <= 60` without building the cube.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallPartitionCounts {
    pub n: u32,
    /// `|A| = sum_{i <= (n-1)/2} C(n, i)`.
    pub a_size: String,
    /// `|W| = C(n, (n+1)/2)`.
    pub w_size: String,
    /// `|A| = 2^{n-1}`, checked in exact integers.
    pub half_measure: bool,
}

pub fn ball_partition_counts(n: u32) -> Result<BallPartitionCounts> {
    check_n(n, true)?;
    let r = (n as u64 - 1) / 2;
    let a: BigUint = (0..=r).map(|i| binomial(n as u64, i)).sum();
    let w = binomial(n as u64, r + 1);
    Ok(BallPartitionCounts {
        n,
        half_measure: a == BigUint::one() << (n - 1),
        a_size: a.to_string(),
        w_size: w.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub n: u32,
    pub beta: f64,
    pub k: f64,
    /// `K |W| n^beta / 2^{n-1}`; below 1 means the inequality fails.
    pub ratio: f64,
}

/// Ratios for odd `n = 1, 3, ..., n_max`.
pub fn ball_partition_ratios(beta: f64, k: f64, n_max: u32) -> Result<Vec<RatioRow>> {
    check_beta(beta)?;
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::out_of_range("K", k, "must be finite and >= 0"));
    }
    (1..=n_max)
        .step_by(2)
        .map(|n| {
            check_n(n, true)?;
            let w = binomial(n as u64, (n as u64).div_ceil(2));
            let frac = big_ratio(&w, &(BigUint::one() << (n - 1)));
            Ok(RatioRow { n, beta, k, ratio: k * (n as f64).powf(beta) * frac })
        })
        .collect()
}

/// The partition `A = B(0, (n-1)/2)`, `W = S(0, (n+1)/2)`, `B` the rest.
pub fn ball_partition(n: Dimension) -> Result<Partition> {
    let nn = n.get();
    if nn.is_multiple_of(2) {
        return Err(Error::out_of_range("n", nn, "ball partition needs odd n"));
    }
    let a = hamming_ball(n, 0, ((nn - 1) / 2) as f64)?;
    let w = hamming_sphere(n, 0, nn.div_ceil(2))?;
    Partition::from_a_and_w(&a, &w)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationCheck {
    pub n: u32,
    pub beta: f64,
    pub k: f64,
    pub cross_edges: u64,
    pub w_size: u64,
    /// `|∇(A,B)| + K n^beta |W| - 2^{n-1}`.
    pub margin: f64,
    /// `E(h_{B∪W}^beta 1_B)`.
    pub b_part: f64,
    /// `E(h_{B∪W}^beta 1_W)`.
    pub w_part: f64,
}

pub fn separation_lower_bound_check(p: &Partition, beta: f64, k: f64) -> Result<SeparationCheck> {
    check_beta(beta)?;
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::out_of_range("K", k, "must be finite and >= 0"));
    }
    let dim = p.dim();
    let n = dim.get();
    let a = p.part(Label::A);
    if 2 * a.len() != dim.vertex_count() as u64 {
        return Err(Error::SideCondition(format!(
            "mu(A) = {}/{} is not 1/2",
            a.len(),
            dim.vertex_count()
        )));
    }
    let w_size = p.labels().iter().filter(|&&l| l == Label::W).count() as u64;
    let cross_edges = p.cross_edges();
    let half = (dim.vertex_count() / 2) as f64;
    let margin = cross_edges as f64 + k * (n as f64).powf(beta) * w_size as f64 - half;

    // On B ∪ W, h counts neighbours in A.
    let rest: CubeSet = a.complement();
    let mut b_sum = 0.0;
    let mut w_sum = 0.0;
    for v in rest.iter() {
        let h = (0..n).filter(|&j| a.contains(v ^ (1 as Vertex) << j)).count();
        if h == 0 {
            continue;
        }
        let term = (h as f64).powf(beta);
        match p.labels()[v as usize] {
            Label::B => b_sum += term,
            Label::W => w_sum += term,
            Label::A => unreachable!(),
        }
    }
    let scale = dim.vertex_count() as f64;
    Ok(SeparationCheck {
        n,
        beta,
        k,
        cross_edges,
        w_size,
        margin,
        b_part: b_sum / scale,
        w_part: w_sum / scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::min_partition_functional;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ball_moment_closed_form(2, 1.0).unwrap().value, 0.5);
        assert_eq!(ball_moment_closed_form(4, 0.0).unwrap().value, 0.375);
        let a = ball_moment_closed_form(4, 0.4).unwrap().value;
        let b = ball_moment_closed_form(24, 0.4).unwrap().value;
        assert!(b < a);
        assert!(ball_moment_closed_form(5, 0.5).is_err());
        assert!(ball_moment_closed_form(62, 0.5).is_err());
    }

    #[test]
    fn closed_form_matches_direct_moment() {
        for n in (2..=12).step_by(2) {
            for beta in [0.0, 0.3, 0.5, 0.53, 1.0] {
                let c = ball_moment_closed_form(n, beta).unwrap().value;
                let d = ball_moment_direct(n, beta).unwrap();
                assert!((c - d).abs() < 1e-12, "n = {n}, beta = {beta}");
            }
        }
    }

    #[test]
    fn decay_below_one_half() {
        let t = decay_table(0.4, 60).unwrap();
        let from = t.decreasing_from.unwrap();
        assert!(from <= 4, "{from}");
        assert!(t.rows.last().unwrap().value < t.rows[1].value);
        // At beta = 1/2 the values increase towards sqrt(1/pi).
        let t = decay_table(0.5, 60).unwrap();
        assert_eq!(t.decreasing_from, None);
        assert!(t.rows.last().unwrap().value < (1.0 / std::f64::consts::PI).sqrt());
    }

    #[test]
    fn odd_balls_have_half_measure() {
        for n in (1..=59).step_by(2) {
            assert!(ball_partition_counts(n).unwrap().half_measure, "n = {n}");
        }
        assert!(ball_partition_counts(4).is_err());
    }

    #[test]
    fn ball_partition_at_three() {
        let p = ball_partition(dim(3)).unwrap();
        assert_eq!(p.part(Label::A).len(), 4);
        assert_eq!(p.part(Label::W).len(), 3);
        assert_eq!(p.cross_edges(), 0);
        let c = separation_lower_bound_check(&p, 0.53, 1.0).unwrap();
        assert!((p.functional(0.53, 1.0) - 3.0 * 3f64.powf(0.53)).abs() < 1e-12);
        assert!((c.margin - (3.0 * 3f64.powf(0.53) - 4.0)).abs() < 1e-12);
        assert!((c.margin - 1.37).abs() < 0.01);
        assert!(ball_partition(dim(4)).is_err());
    }

    #[test]
    fn ball_partition_separates_a_from_b() {
        for n in [1, 3, 5, 7, 9, 11] {
            let p = ball_partition(dim(n)).unwrap();
            assert_eq!(p.cross_edges(), 0);
            let a = p.part(Label::A);
            let b = p.part(Label::B);
            for u in a.iter() {
                for v in b.iter() {
                    assert!((u ^ v).count_ones() >= 2);
                }
            }
            let counts = ball_partition_counts(n).unwrap();
            assert_eq!(counts.w_size, p.part(Label::W).len().to_string());
        }
    }

    #[test]
    fn half_cube_margin_is_zero() {
        for n in 1..=6 {
            let d = dim(n);
            let a = crate::fourier::corpus::half_cube(d, 0).unwrap();
            let p = Partition::from_a_and_w(&a, &CubeSet::empty(d)).unwrap();
            let c = separation_lower_bound_check(&p, 0.53, 1.0).unwrap();
            assert_eq!(c.margin, 0.0);
            assert_eq!(c.w_size, 0);
            assert_eq!(c.b_part, c.cross_edges as f64 / d.vertex_count() as f64);
        }
        let a = CubeSet::from_vertices(dim(2), [0]).unwrap();
        let p = Partition::from_a_and_w(&a, &CubeSet::empty(dim(2))).unwrap();
        assert!(matches!(separation_lower_bound_check(&p, 0.5, 1.0), Err(Error::SideCondition(_))));
    }

    #[test]
    fn exhaustive_optimum_at_four_is_non_negative() {
        let opt = min_partition_functional(dim(4), 0.53, 1.0).unwrap();
        let c = separation_lower_bound_check(&opt.witness, 0.53, 1.0).unwrap();
        assert!((c.margin - (opt.min_value - 8.0)).abs() < 1e-12);
        assert!(c.margin >= 0.0);
    }

    #[test]
    fn ratios_fall_below_one_for_small_beta() {
        let rows = ball_partition_ratios(0.2, 1.0, 59).unwrap();
        assert!(rows.last().unwrap().ratio < 1.0);
        // At beta = 0.4 the ratios already decrease, but stay above 1 this early.
        let rows = ball_partition_ratios(0.4, 1.0, 59).unwrap();
        assert!(rows.windows(2).skip(3).all(|w| w[1].ratio < w[0].ratio));
        let rows = ball_partition_ratios(0.53, 1.0, 59).unwrap();
        assert!(rows.iter().all(|r| r.ratio >= 1.0));
    }
}
