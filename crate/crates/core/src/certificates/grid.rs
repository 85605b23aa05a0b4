//! The two-point condition and its verification on dyadic grids.
//!
//! A scan is grid-level evidence only: it reports the smallest margin found
//! among the sampled points, never a proof for the continuum.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::CandidateBound;
use crate::error::{Error, Result};

/// A scan passes when its minimum margin is at least `-PASS_TOLERANCE`.
pub const PASS_TOLERANCE: f64 = 1e-9;
/// Margins below `-VIOLATION_THRESHOLD` are genuine violations.
pub const VIOLATION_THRESHOLD: f64 = 1e-6;
/// Branch values this close count as a tie, reported as the power branch.
pub const BRANCH_TIE: f64 = 1e-15;
pub const MIN_RESOLUTION: u32 = 64;
pub const MAX_RESOLUTION: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `((y-x)^{1/beta} + B(y)^{1/beta})^beta`
    #[serde(rename = "power_branch")]
    Power,
    /// `y - x + (2^beta - 1) B(y)`
    #[serde(rename = "linear_branch")]
    Linear,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Power => "power_branch",
            Branch::Linear => "linear_branch",
        })
    }
}

#[inline]
fn power_term(gap: f64, b: f64, beta: f64) -> f64 {
    (gap.powf(1.0 / beta) + b.max(0.0).powf(1.0 / beta)).powf(beta)
}

#[inline]
fn linear_term(gap: f64, b: f64, beta: f64) -> f64 {
    gap + (2f64.powf(beta) - 1.0) * b
}

/// Which expression a region tests.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Expression {
    Max,
    Power,
    Linear,
    /// Power term built from `B(x)`, with `B(y)` added instead.
    PowerSwapped,
}

#[inline]
fn margin_of(expr: Expression, c: &CandidateBound, beta: f64, x: f64, y: f64) -> (f64, Branch) {
    let gap = y - x;
    let (bx, by, bm) = (c.value(x), c.value(y), c.value(0.5 * (x + y)));
    match expr {
        Expression::Max => {
            let p = power_term(gap, by, beta);
            let l = linear_term(gap, by, beta);
            if p >= l - BRANCH_TIE {
                (p.max(l) + bx - 2.0 * bm, Branch::Power)
            } else {
                (l + bx - 2.0 * bm, Branch::Linear)
            }
        }
        Expression::Power => (power_term(gap, by, beta) + bx - 2.0 * bm, Branch::Power),
        Expression::Linear => (linear_term(gap, by, beta) + bx - 2.0 * bm, Branch::Linear),
        Expression::PowerSwapped => (power_term(gap, bx, beta) + by - 2.0 * bm, Branch::Power),
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.5..=1.0).contains(&beta) {
        return Err(Error::out_of_range("beta", beta, "the two-point condition needs 1/2 <= beta <= 1"));
    }
    Ok(())
}

/// Left side minus right side of the two-point condition
/// `max{P, L} + B(x) >= 2 B((x+y)/2)` and the branch attaining the max.
pub fn sami_margin(candidate: &CandidateBound, beta: f64, x: f64, y: f64) -> Result<(f64, Branch)> {
    candidate.validate()?;
    check_beta(beta)?;
    if !(0.0 <= x && x <= y && y <= 1.0) {
        return Err(Error::Domain(format!("need 0 <= x <= y <= 1, got x = {x}, y = {y}")));
    }
    Ok(margin_of(Expression::Max, candidate, beta, x, y))
}

/// Set of `(x, y)` pairs to scan and the expression tested there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "region", rename_all = "snake_case")]
pub enum Region {
    /// `0 <= x <= y <= 1`, full condition.
    FullTriangle,
    /// `0 <= x <= y <= 1/2`, power term only.
    LowerHalf,
    /// `0 <= x <= y <= 1/2`, power term built from `B(x)` plus `B(y)`.
    LowerHalfSwapped,
    /// `0 <= x <= y - B(y)`, linear term only.
    LinearBranch,
    /// `max(y - B(y), 0) <= x <= y`, power term only.
    PowerBranch,
    /// The box intersected with `x <= y`, full condition.
    Custom { x_min: f64, x_max: f64, y_min: f64, y_max: f64 },
}

impl Region {
    pub fn name(&self) -> &'static str {
        match self {
            Region::FullTriangle => "full_triangle",
            Region::LowerHalf => "lower_half",
            Region::LowerHalfSwapped => "lower_half_swapped",
            Region::LinearBranch => "linear_branch",
            Region::PowerBranch => "power_branch",
            Region::Custom { .. } => "custom",
        }
    }

    fn expression(&self) -> Expression {
        match self {
            Region::FullTriangle | Region::Custom { .. } => Expression::Max,
            Region::LowerHalf | Region::PowerBranch => Expression::Power,
            Region::LowerHalfSwapped => Expression::PowerSwapped,
            Region::LinearBranch => Expression::Linear,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Region::Custom { x_min, x_max, y_min, y_max } = *self {
            let ok = [x_min, x_max, y_min, y_max].iter().all(|v| (0.0..=1.0).contains(v))
                && x_min <= x_max
                && y_min <= y_max
                && x_min <= y_max;
            if !ok {
                return Err(Error::Domain(format!(
                    "custom region needs 0 <= x_min <= x_max <= 1, 0 <= y_min <= y_max <= 1 and x_min <= y_max; \
                     got x in [{x_min}, {x_max}], y in [{y_min}, {y_max}]"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Custom { x_min, x_max, y_min, y_max } => {
                write!(f, "custom:{x_min},{x_max},{y_min},{y_max}")
            }
            r => f.write_str(r.name()),
        }
    }
}

impl FromStr for Region {
    type Err = Error;

    /// Named regions, or `custom:x_min,x_max,y_min,y_max`.
    fn from_str(s: &str) -> Result<Self> {
        let r = match s {
            "full_triangle" => Region::FullTriangle,
            "lower_half" => Region::LowerHalf,
            "lower_half_swapped" => Region::LowerHalfSwapped,
            "linear_branch" => Region::LinearBranch,
            "power_branch" => Region::PowerBranch,
            _ => {
                let body = s.strip_prefix("custom:").ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown region {s:?}; expected full_triangle, lower_half, lower_half_swapped, \
                         linear_branch, power_branch or custom:x_min,x_max,y_min,y_max"
                    ))
                })?;
                let v: Vec<f64> = body
                    .split(',')
                    .map(|p| p.trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::Parse(format!("custom region {body:?}: {e}")))?;
                if v.len() != 4 {
                    return Err(Error::Parse(format!("custom region needs 4 numbers, got {}", v.len())));
                }
                Region::Custom { x_min: v[0], x_max: v[1], y_min: v[2], y_max: v[3] }
            }
        };
        r.validate()?;
        Ok(r)
    }
}

/// The endpoint hypotheses `B(0) = B(1) = 0`, `B(1/2) <= 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndpointConditions {
    pub b_at_0: f64,
    pub b_at_half: f64,
    pub b_at_1: f64,
    pub satisfied: bool,
}

pub fn endpoint_conditions(candidate: &CandidateBound) -> EndpointConditions {
    let (b0, bh, b1) = (candidate.value(0.0), candidate.value(0.5), candidate.value(1.0));
    EndpointConditions {
        b_at_0: b0,
        b_at_half: bh,
        b_at_1: b1,
        satisfied: b0.abs() <= PASS_TOLERANCE && b1.abs() <= PASS_TOLERANCE && bh <= 0.5 + PASS_TOLERANCE,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub candidate: CandidateBound,
    pub beta: f64,
    pub grid_resolution: u32,
    pub region: Region,
    pub points_examined: u64,
    pub min_margin: f64,
    pub argmin: (f64, f64),
    pub active_branch: Branch,
    pub passed: bool,
    /// `min_margin < -VIOLATION_THRESHOLD`.
    pub violation: bool,
    pub endpoint_conditions: EndpointConditions,
}

#[derive(Clone, Copy)]
struct Best {
    margin: f64,
    x: f64,
    y: f64,
    branch: Branch,
}

impl Best {
    fn take(self, other: Best) -> Best {
        // Earlier points win ties so the result does not depend on scheduling.
        if other.margin < self.margin {
            other
        } else {
            self
        }
    }
}

/// Scans the region's dyadic grid with `resolution` steps per axis.
///
/// Grid points: the triangle uses `x = j/R, y = i/R`; the lower-half regions
/// use step `1/(2R)`; branch regions put `y = i/R` and walk `x` from `y` to
/// the far edge in `R` equal steps; a custom box uses `R` steps per side.
/// Grids at resolutions `R` and `kR` nest, so finer scans never report a
/// larger minimum.
pub fn certify_grid(
    candidate: &CandidateBound,
    beta: f64,
    resolution: u32,
    region: Region,
) -> Result<CertificateReport> {
    candidate.validate()?;
    check_beta(beta)?;
    region.validate()?;
    if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&resolution) {
        return Err(Error::out_of_range(
            "resolution",
            resolution,
            format!("need {MIN_RESOLUTION} <= resolution <= {MAX_RESOLUTION}"),
        ));
    }
    let r = resolution as f64;
    let expr = region.expression();
    let rows: Vec<(Option<Best>, u64, Option<(f64, f64)>)> = (0..=resolution)
        .into_par_iter()
        .map(|i| {
            let mut best: Option<Best> = None;
            let mut count = 0u64;
            let mut nan = None;
            let mut visit = |x: f64, y: f64| {
                let (margin, branch) = margin_of(expr, candidate, beta, x, y);
                if margin.is_nan() {
                    nan.get_or_insert((x, y));
                    return;
                }
                let p = Best { margin, x, y, branch };
                count += 1;
                best = Some(match best {
                    None => p,
                    Some(b) => b.take(p),
                });
            };
            match region {
                Region::FullTriangle => {
                    let y = i as f64 / r;
                    for j in 0..=i {
                        visit(j as f64 / r, y);
                    }
                }
                Region::LowerHalf | Region::LowerHalfSwapped => {
                    let y = i as f64 / (2.0 * r);
                    for j in 0..=i {
                        visit(j as f64 / (2.0 * r), y);
                    }
                }
                Region::LinearBranch => {
                    let y = i as f64 / r;
                    let hi = y - candidate.value(y);
                    if hi >= 0.0 {
                        for j in 0..=resolution {
                            visit(j as f64 / r * hi, y);
                        }
                    }
                }
                Region::PowerBranch => {
                    let y = i as f64 / r;
                    let lo = (y - candidate.value(y)).max(0.0);
                    for j in 0..=resolution {
                        visit(y - j as f64 / r * (y - lo), y);
                    }
                }
                Region::Custom { x_min, x_max, y_min, y_max } => {
                    let y = y_min + i as f64 / r * (y_max - y_min);
                    for j in 0..=resolution {
                        let x = x_min + j as f64 / r * (x_max - x_min);
                        if x <= y {
                            visit(x, y);
                        }
                    }
                }
            }
            (best, count, nan)
        })
        .collect();

    let mut best: Option<Best> = None;
    let mut points = 0u64;
    for (row, count, nan) in rows {
        points += count;
        if let Some((x, y)) = nan {
            return Err(Error::Domain(format!(
                "margin is not a number at x = {x}, y = {y} for {candidate}"
            )));
        }
        if let Some(p) = row {
            best = Some(match best {
                None => p,
                Some(b) => b.take(p),
            });
        }
    }
    let best = best.ok_or_else(|| Error::Domain(format!("region {region} contains no grid points")))?;
    Ok(CertificateReport {
        candidate: candidate.clone(),
        beta,
        grid_resolution: resolution,
        region,
        points_examined: points,
        min_margin: best.margin,
        argmin: (best.x, best.y),
        active_branch: best.branch,
        passed: best.margin >= -PASS_TOLERANCE,
        violation: best.margin < -VIOLATION_THRESHOLD,
        endpoint_conditions: endpoint_conditions(candidate),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::constants::{beta0, c_beta_ceiling, CUBIC_BETA};
    use proptest::prelude::*;

    #[test]
    fn sami_examples() {
        let q2 = CandidateBound::Quadratic { c: 2.0 };
        // On the diagonal the power branch is active and the margin vanishes.
        let (m, b) = sami_margin(&q2, beta0(), 0.5, 0.5).unwrap();
        assert_eq!(b, Branch::Power);
        assert!(m.abs() < 1e-15, "{m}");
        let (m, b) = sami_margin(&q2, beta0(), 0.0, 1.0).unwrap();
        assert_eq!(b, Branch::Power);
        assert!(m.abs() < 1e-15);
        let log = CandidateBound::Logarithmic { beta: 0.5 };
        let (m, _) = sami_margin(&log, 0.5, 0.0, 0.5).unwrap();
        assert!(m.abs() < 1e-15, "{m}");
    }

    #[test]
    fn sami_domain_errors() {
        let q2 = CandidateBound::Quadratic { c: 2.0 };
        assert!(matches!(sami_margin(&q2, 0.5, 0.6, 0.5), Err(Error::Domain(_))));
        assert!(sami_margin(&q2, 0.4, 0.1, 0.5).is_err());
        assert!(sami_margin(&q2, 0.5, -0.1, 0.5).is_err());
    }

    #[test]
    fn log_quadratic_max_passes_and_refines_monotonically() {
        let b = CandidateBound::log_quadratic_max();
        let mut last = f64::INFINITY;
        for res in [64, 256, 1024] {
            let rep = certify_grid(&b, beta0(), res, Region::FullTriangle).unwrap();
            assert!(rep.passed, "{rep:?}");
            assert!(rep.endpoint_conditions.satisfied);
            assert!(rep.min_margin <= last);
            last = rep.min_margin;
        }
    }

    #[test]
    fn optimal_quadratic_passes_both_branch_regions() {
        for beta in [0.5, 0.55, beta0()] {
            let q = CandidateBound::optimal_quadratic(beta);
            for region in [Region::LinearBranch, Region::PowerBranch] {
                let rep = certify_grid(&q, beta, 256, region).unwrap();
                assert!(rep.passed, "beta={beta} {rep:?}");
            }
        }
    }

    #[test]
    fn quadratic_above_the_ceiling_fails() {
        for beta in [0.5, 0.55, beta0()] {
            let q = CandidateBound::Quadratic { c: c_beta_ceiling(beta) + 0.01 };
            let rep = certify_grid(&q, beta, 256, Region::FullTriangle).unwrap();
            assert!(!rep.passed && rep.violation, "beta={beta} {rep:?}");
        }
    }

    #[test]
    fn quadratic_two_at_half_is_located_violation() {
        let rep = certify_grid(&CandidateBound::Quadratic { c: 2.0 }, 0.5, 256, Region::FullTriangle).unwrap();
        assert!(!rep.passed && rep.violation);
        let (x, y) = rep.argmin;
        let (m, _) = sami_margin(&rep.candidate, 0.5, x, y).unwrap();
        assert_eq!(m, rep.min_margin);
    }

    #[test]
    fn half_cubic_passes_branch_regions() {
        let c = CandidateBound::half_cubic();
        for region in [Region::LinearBranch, Region::PowerBranch] {
            let rep = certify_grid(&c, CUBIC_BETA, 512, region).unwrap();
            assert!(rep.passed, "{rep:?}");
            assert!(rep.endpoint_conditions.satisfied);
        }
    }

    #[test]
    fn logarithmic_lower_half_regions() {
        for beta in [0.5, 0.55, beta0(), 0.9] {
            let rep = certify_grid(&CandidateBound::Logarithmic { beta }, beta, 256, Region::LowerHalf).unwrap();
            assert!(rep.passed, "beta={beta} {rep:?}");
        }
        for beta in [0.5, 0.6, std::f64::consts::LN_2] {
            let rep =
                certify_grid(&CandidateBound::Logarithmic { beta }, beta, 256, Region::LowerHalfSwapped).unwrap();
            assert!(rep.passed, "beta={beta} {rep:?}");
        }
    }

    #[test]
    fn region_parsing_and_errors() {
        assert_eq!("power_branch".parse::<Region>().unwrap(), Region::PowerBranch);
        let c: Region = "custom:0,0.5,0.25,1".parse().unwrap();
        assert_eq!(c.to_string().parse::<Region>().unwrap(), c);
        assert!(matches!("diagonal".parse::<Region>(), Err(Error::Parse(_))));
        assert!("custom:0,1".parse::<Region>().is_err());
        assert!("custom:0.8,0.9,0.1,0.2".parse::<Region>().is_err());
        let q = CandidateBound::Quadratic { c: 2.0 };
        assert!(certify_grid(&q, 0.5, 32, Region::FullTriangle).is_err());
    }

    #[test]
    fn scan_is_deterministic() {
        let q = CandidateBound::Quadratic { c: 2.0 };
        let a = certify_grid(&q, 0.5, 128, Region::FullTriangle).unwrap();
        let b = certify_grid(&q, 0.5, 128, Region::FullTriangle).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.points_examined, 129 * 130 / 2);
    }

    proptest! {
        #[test]
        fn diagonal_margin_is_literal(x in 0.0f64..=1.0, beta in 0.5f64..=1.0, c in 0.1f64..3.0) {
            let q = CandidateBound::Quadratic { c };
            let (m, _) = sami_margin(&q, beta, x, x).unwrap();
            let b = q.value(x);
            let expected = b.max((2f64.powf(beta) - 1.0) * b) + b - 2.0 * b;
            prop_assert!((m - expected).abs() < 1e-12);
            prop_assert!(m >= -1e-12);
        }
    }
}
