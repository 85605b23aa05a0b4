//! Set-level inequalities `E f^beta >= R(mu(A))` evaluated on explicit sets.
//!
//! Every check returns the margin, left side minus right side. Side
//! conditions on the measure are enforced and reported as
//! [`Error::SideCondition`].

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::CandidateBound;
use super::constants::{beta0, c_beta, gamma, CUBIC_BETA};
use crate::bitmask::{h_histogram, w_histogram};
use crate::cube::{h_profile, moment_from_histogram, w_profile, CubeSet, Dimension};
use crate::error::{Error, Result};

/// Largest dimension for [`sweep_theorem`] (all `2^{2^n}` sets).
pub const MAX_SWEEP_DIM: u32 = 4;
/// A sweep passes when no margin is below `-SET_TOLERANCE`.
pub const SET_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "snake_case")]
pub enum Theorem {
    /// `E h >= mu* log2(1/mu*)`.
    Classical,
    /// `E h^{beta0} >= mu* (log2(1/mu*))^{beta0}`.
    Logarithmic,
    /// `E h^beta >= mu (log2(1/mu))^beta` for `beta >= beta0`, `mu <= 1/2`.
    LogarithmicPower { beta: f64 },
    /// `E h >= (mu/mu(dA))^gamma mu log2(1/mu)` for `mu <= 1/2`.
    VertexBoundary,
    /// `E h^beta >= C_beta mu (1 - mu)` for `1/2 <= beta <= beta0`.
    Quadratic { beta: f64 },
    /// `E h^{0.53} >= P(mu)` with the cubic `P` at `alpha = 1/2`.
    Cubic,
    /// `E h^{0.53} >= 2 mu (1 - mu)` for `mu >= 1/2`.
    LargeMeasure,
    /// `E w^beta >= 1` for `mu = 1/2` and `beta >= 0.53`; below 0.53 the
    /// right side is `sqrt(2^{beta+1} - 2)`.
    TwoSidedHalf { beta: f64 },
}

impl Theorem {
    pub fn name(&self) -> &'static str {
        match self {
            Theorem::Classical => "classical",
            Theorem::Logarithmic => "logarithmic",
            Theorem::LogarithmicPower { .. } => "logarithmic_power",
            Theorem::VertexBoundary => "vertex_boundary",
            Theorem::Quadratic { .. } => "quadratic",
            Theorem::Cubic => "cubic",
            Theorem::LargeMeasure => "large_measure",
            Theorem::TwoSidedHalf { .. } => "two_sided_half",
        }
    }

    pub const NAMES: [&'static str; 8] = [
        "classical",
        "logarithmic",
        "logarithmic_power",
        "vertex_boundary",
        "quadratic",
        "cubic",
        "large_measure",
        "two_sided_half",
    ];

    /// Builds a theorem from its name; `beta` is required by the
    /// parameterised ones and rejected by the others.
    pub fn parse(name: &str, beta: Option<f64>) -> Result<Self> {
        let need = |b: Option<f64>| {
            b.ok_or_else(|| Error::Parse(format!("theorem {name} needs --beta")))
        };
        let none = |t: Theorem| match beta {
            None => Ok(t),
            Some(_) => Err(Error::Parse(format!("theorem {name} has a fixed exponent; drop --beta"))),
        };
        match name {
            "classical" => none(Theorem::Classical),
            "logarithmic" => none(Theorem::Logarithmic),
            "logarithmic_power" => Ok(Theorem::LogarithmicPower { beta: need(beta)? }),
            "vertex_boundary" => none(Theorem::VertexBoundary),
            "quadratic" => Ok(Theorem::Quadratic { beta: need(beta)? }),
            "cubic" => none(Theorem::Cubic),
            "large_measure" => none(Theorem::LargeMeasure),
            "two_sided_half" => Ok(Theorem::TwoSidedHalf { beta: need(beta)? }),
            _ => Err(Error::Parse(format!(
                "unknown theorem {name:?}; expected one of {}",
                Self::NAMES.join(", ")
            ))),
        }
    }

    /// Parameter ranges independent of the set.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Theorem::LogarithmicPower { beta } if !(beta.is_finite() && beta >= beta0()) => {
                Err(Error::out_of_range("beta", beta, "needs beta >= log2(3/2)"))
            }
            Theorem::Quadratic { beta } if !(0.5..=beta0()).contains(&beta) => {
                Err(Error::out_of_range("beta", beta, "needs 1/2 <= beta <= log2(3/2)"))
            }
            Theorem::TwoSidedHalf { beta } if !(beta.is_finite() && beta >= 0.5) => {
                Err(Error::out_of_range("beta", beta, "needs beta >= 1/2"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theorem::LogarithmicPower { beta } | Theorem::Quadratic { beta } | Theorem::TwoSidedHalf { beta } => {
                write!(f, "{}(beta={beta})", self.name())
            }
            t => f.write_str(t.name()),
        }
    }
}

/// What the inequalities need to know about a set.
#[derive(Debug, Clone)]
pub struct SetStats {
    pub dim: Dimension,
    pub size: u64,
    /// Histogram of `h_A` (index = value).
    pub h_counts: Vec<u64>,
    /// Histogram of `w_A`.
    pub w_counts: Vec<u64>,
}

impl SetStats {
    pub fn of(a: &CubeSet) -> Self {
        SetStats {
            dim: a.dim(),
            size: a.len(),
            h_counts: h_profile(a).histogram(),
            w_counts: w_profile(a).histogram(),
        }
    }

    fn of_mask(dim: Dimension, mask: u64) -> Self {
        let n = dim.get();
        SetStats {
            dim,
            size: mask.count_ones() as u64,
            h_counts: h_histogram(mask, n)[..=n as usize].to_vec(),
            w_counts: w_histogram(mask, n)[..=n as usize].to_vec(),
        }
    }

    pub fn measure(&self) -> f64 {
        self.size as f64 / self.dim.vertex_count() as f64
    }

    /// `|dA|`, vertices of `A` with a neighbour outside.
    pub fn vertex_boundary_size(&self) -> u64 {
        self.h_counts.iter().skip(1).sum()
    }

    fn h_moment(&self, beta: f64) -> f64 {
        moment_from_histogram(self.dim, &self.h_counts, beta)
    }
}

fn log_term(t: f64, beta: f64) -> f64 {
    CandidateBound::Logarithmic { beta }.value(t)
}

fn side(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::SideCondition(what()))
    }
}

/// Margin of `theorem` for a set with the given statistics.
pub fn theorem_margin(stats: &SetStats, theorem: Theorem) -> Result<f64> {
    theorem.validate()?;
    let mu = stats.measure();
    let mu_star = mu.min(1.0 - mu);
    let at_most_half = || side(2 * stats.size <= stats.dim.vertex_count() as u64, || format!("needs mu(A) <= 1/2, got {mu}"));
    Ok(match theorem {
        Theorem::Classical => stats.h_moment(1.0) - log_term(mu_star, 1.0),
        Theorem::Logarithmic => stats.h_moment(beta0()) - log_term(mu_star, beta0()),
        Theorem::LogarithmicPower { beta } => {
            at_most_half()?;
            stats.h_moment(beta) - log_term(mu, beta)
        }
        Theorem::VertexBoundary => {
            at_most_half()?;
            if stats.size == 0 {
                0.0
            } else {
                let ratio = stats.size as f64 / stats.vertex_boundary_size() as f64;
                stats.h_moment(1.0) - ratio.powf(gamma()) * log_term(mu, 1.0)
            }
        }
        Theorem::Quadratic { beta } => stats.h_moment(beta) - c_beta(beta) * mu * (1.0 - mu),
        Theorem::Cubic => stats.h_moment(CUBIC_BETA) - CandidateBound::half_cubic().value(mu),
        Theorem::LargeMeasure => {
            side(2 * stats.size >= stats.dim.vertex_count() as u64, || format!("needs mu(A) >= 1/2, got {mu}"))?;
            stats.h_moment(CUBIC_BETA) - 2.0 * mu * (1.0 - mu)
        }
        Theorem::TwoSidedHalf { beta } => {
            side(2 * stats.size == stats.dim.vertex_count() as u64, || format!("needs mu(A) = 1/2, got {mu}"))?;
            let rhs = if beta >= CUBIC_BETA {
                1.0
            } else {
                (2f64.powf(beta + 1.0) - 2.0).sqrt()
            };
            moment_from_histogram(stats.dim, &stats.w_counts, beta) - rhs
        }
    })
}

/// Margin of `theorem` on the set `a`.
pub fn verify_theorem_on_set(a: &CubeSet, theorem: Theorem) -> Result<f64> {
    theorem_margin(&SetStats::of(a), theorem)
}

/// `E h_A^beta - c mu (1 - mu)` with no restriction on `c` or `beta`.
pub fn quadratic_set_margin(a: &CubeSet, beta: f64, c: f64) -> f64 {
    let s = SetStats::of(a);
    let mu = s.measure();
    s.h_moment(beta) - c * mu * (1.0 - mu)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremSweep {
    pub n: Dimension,
    pub theorem: Theorem,
    pub sets_checked: u64,
    /// Sets excluded by the theorem's measure condition.
    pub sets_outside_condition: u64,
    pub min_margin: Option<f64>,
    pub argmin: Option<CubeSet>,
    pub passed: bool,
}

/// Evaluates `theorem` on every subset of `{0,1}^n`, `n <= 4`.
pub fn sweep_theorem(n: Dimension, theorem: Theorem) -> Result<TheoremSweep> {
    theorem.validate()?;
    if n.get() > MAX_SWEEP_DIM {
        return Err(Error::ResourceRefusal(format!(
            "a sweep over all subsets needs n <= {MAX_SWEEP_DIM}, got n = {n}"
        )));
    }
    let masks = 1u64 << (1u32 << n.get());
    let chunk = 1u64 << 10;
    let parts: Vec<Result<(u64, u64, Option<(f64, u64)>)>> = (0..masks.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let (mut checked, mut outside, mut best) = (0u64, 0u64, None::<(f64, u64)>);
            for mask in c * chunk..((c + 1) * chunk).min(masks) {
                match theorem_margin(&SetStats::of_mask(n, mask), theorem) {
                    Ok(m) => {
                        checked += 1;
                        if best.is_none_or(|(b, _)| m < b) {
                            best = Some((m, mask));
                        }
                    }
                    Err(Error::SideCondition(_)) => outside += 1,
                    Err(e) => return Err(e),
                }
            }
            Ok((checked, outside, best))
        })
        .collect();
    let (mut checked, mut outside, mut best) = (0u64, 0u64, None::<(f64, u64)>);
    for p in parts {
        let (c, o, b) = p?;
        checked += c;
        outside += o;
        if let Some((m, mask)) = b {
            if best.is_none_or(|(bm, _)| m < bm) {
                best = Some((m, mask));
            }
        }
    }
    Ok(TheoremSweep {
        n,
        theorem,
        sets_checked: checked,
        sets_outside_condition: outside,
        min_margin: best.map(|b| b.0),
        argmin: best.map(|b| CubeSet::from_mask(n, b.1)).transpose()?,
        passed: best.is_none_or(|b| b.0 >= -SET_TOLERANCE),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{hamming_ball, subcube};

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn subcubes_are_equality_cases() {
        for n in 1..=10 {
            for k in 0..=n {
                let a = subcube(dim(n), k).unwrap();
                let m = verify_theorem_on_set(&a, Theorem::Logarithmic).unwrap();
                assert!(m.abs() < 1e-12, "n={n} k={k} margin={m}");
                if k >= 1 {
                    let m = verify_theorem_on_set(&a, Theorem::VertexBoundary).unwrap();
                    assert!(m.abs() < 1e-12, "n={n} k={k} margin={m}");
                    let m = verify_theorem_on_set(&a, Theorem::LogarithmicPower { beta: 0.8 }).unwrap();
                    assert!(m.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn half_cube_two_sided_is_one() {
        for n in 1..=8 {
            let a = subcube(dim(n), 1).unwrap();
            let m = verify_theorem_on_set(&a, Theorem::TwoSidedHalf { beta: 0.53 }).unwrap();
            assert!(m.abs() < 1e-15);
        }
    }

    #[test]
    fn codim_two_subcube_refutes_quadratic_two_at_half() {
        let a = subcube(dim(4), 2).unwrap();
        let m = quadratic_set_margin(&a, 0.5, 2.0);
        assert!((m - (2f64.sqrt() / 4.0 - 0.375)).abs() < 1e-15);
        assert!(m < 0.0);
    }

    #[test]
    fn side_conditions() {
        let big = subcube(dim(3), 0).unwrap();
        assert!(matches!(
            verify_theorem_on_set(&big, Theorem::VertexBoundary),
            Err(Error::SideCondition(_))
        ));
        let small = subcube(dim(3), 2).unwrap();
        assert!(matches!(
            verify_theorem_on_set(&small, Theorem::LargeMeasure),
            Err(Error::SideCondition(_))
        ));
        assert!(matches!(
            verify_theorem_on_set(&small, Theorem::TwoSidedHalf { beta: 0.6 }),
            Err(Error::SideCondition(_))
        ));
        assert!(matches!(
            verify_theorem_on_set(&small, Theorem::Quadratic { beta: 0.7 }),
            Err(Error::OutOfRange { .. })
        ));
        assert!(Theorem::parse("quadratic", None).is_err());
        assert!(Theorem::parse("cubic", Some(0.5)).is_err());
        assert_eq!(Theorem::parse("quadratic", Some(0.5)).unwrap(), Theorem::Quadratic { beta: 0.5 });
        assert!(sweep_theorem(dim(5), Theorem::Classical).is_err());
    }

    #[test]
    fn hamming_balls_satisfy_the_inequalities() {
        for n in [5u32, 7, 9] {
            let a = hamming_ball(dim(n), 0, ((n - 1) / 2) as f64).unwrap();
            assert!(verify_theorem_on_set(&a, Theorem::Logarithmic).unwrap() >= 0.0);
            assert!(verify_theorem_on_set(&a, Theorem::Cubic).unwrap() >= 0.0);
            assert!(verify_theorem_on_set(&a, Theorem::TwoSidedHalf { beta: 0.53 }).unwrap() >= 0.0);
        }
    }

    #[test]
    fn exhaustive_sweeps_at_small_n() {
        let thms = [
            Theorem::Classical,
            Theorem::Logarithmic,
            Theorem::LogarithmicPower { beta: beta0() },
            Theorem::VertexBoundary,
            Theorem::Quadratic { beta: 0.5 },
            Theorem::Quadratic { beta: beta0() },
            Theorem::Cubic,
            Theorem::LargeMeasure,
            Theorem::TwoSidedHalf { beta: 0.53 },
        ];
        for n in 1..=3 {
            for t in thms {
                let s = sweep_theorem(dim(n), t).unwrap();
                assert!(s.passed, "{s:?}");
                assert_eq!(s.sets_checked + s.sets_outside_condition, 1 << (1 << n));
            }
        }
    }

    #[test]
    fn mask_and_set_statistics_agree() {
        let d = dim(4);
        for mask in (0..=0xFFFFu64).step_by(97) {
            let a = CubeSet::from_mask(d, mask).unwrap();
            for t in [Theorem::Classical, Theorem::Cubic, Theorem::Quadratic { beta: 0.55 }] {
                assert_eq!(
                    theorem_margin(&SetStats::of_mask(d, mask), t).unwrap(),
                    verify_theorem_on_set(&a, t).unwrap()
                );
            }
        }
    }
}
