//! The ten reproduction checks behind `all-checks`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::appendix::{
    ball_moment_closed_form, ball_moment_direct, ball_partition_counts, separation_lower_bound_check,
};
use crate::bitmask::full_mask;
use crate::certificates::theorems::quadratic_set_margin;
use crate::certificates::{
    beta0, certify_grid, proof_polynomials_report, reference_constants, sweep_theorem, CandidateBound,
    Region, Theorem, CUBIC_BETA,
};
use crate::cube::{h_profile, is_subcube, moment, subcube, w_profile, CubeSet, Dimension, Side};
use crate::error::Result;
use crate::fourier::{
    check_semigroup_identity, corpus, fbound_ratio, gradient_norms, inverse_walsh, noise_stability_suite,
    spectral_stats, walsh_transform, CubeFunction,
};
use crate::harper::harper_min;
use crate::search::{min_moment, min_partition_functional, Method, Partition, SearchConfig};

/// Seed for the random functions used by the Fourier checks.
pub const CHECK_SEED: u64 = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    /// `PASS 3 name: detail` or `FAIL ...`.
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

fn dim(n: u32) -> Result<Dimension> {
    Dimension::new(n)
}

/// Collects failure messages; a check passes when none were recorded.
#[derive(Default)]
struct Failures(Vec<String>);

impl Failures {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    fn finish(self, id: u32, name: &str, summary: String) -> Check {
        let passed = self.0.is_empty();
        let detail = if passed {
            summary
        } else {
            let shown: Vec<_> = self.0.iter().take(3).cloned().collect();
            format!("{} failure(s): {}", self.0.len(), shown.join("; "))
        };
        Check { id, name: name.into(), passed, detail }
    }
}

fn guard(id: u32, name: &str, body: impl FnOnce() -> Result<Check>) -> Check {
    body().unwrap_or_else(|e| Check { id, name: name.into(), passed: false, detail: format!("error: {e}") })
}

pub fn harper_agreement() -> Check {
    guard(1, "harper_agreement", || {
        let mut f = Failures::default();
        let mut cases = 0;
        for n in 1..=4 {
            let d = dim(n)?;
            for m in 0..=d.vertex_count() as u64 {
                let formula = harper_min(d, m)?.numerator;
                let r = min_moment(d, m, 1.0, Side::OneSidedH, Method::Exhaustive, &SearchConfig::default())?;
                let scaled = r.min_value * d.vertex_count() as f64;
                let exact = scaled.round();
                f.require(scaled == exact && exact as u64 == formula, || {
                    format!("n={n} m={m}: formula {formula}, search {scaled}")
                });
                cases += 1;
            }
        }
        Ok(f.finish(1, "harper_agreement", format!("{cases} (n, m) pairs agree exactly")))
    })
}

pub fn subcube_equality() -> Check {
    guard(2, "subcube_equality", || {
        let b0 = beta0();
        let mut f = Failures::default();
        for n in 1..=10 {
            for k in 0..=n {
                let v = moment(&subcube(dim(n)?, k)?, b0, Side::OneSidedH)?.value;
                let expected = (k as f64).powf(b0) / (1u64 << k) as f64;
                f.require((v - expected).abs() <= 1e-12, || format!("n={n} k={k}: {v} vs {expected}"));
            }
        }
        for n in 1..=4 {
            let d = dim(n)?;
            for k in 0..=n {
                let m = 1u64 << (n - k);
                let r = min_moment(d, m, b0, Side::OneSidedH, Method::Exhaustive, &SearchConfig::default())?;
                let expected = (k as f64).powf(b0) / (1u64 << k) as f64;
                f.require((r.min_value - expected).abs() <= 1e-12, || {
                    format!("n={n} t=2^-{k}: minimum {} vs subcube {expected}", r.min_value)
                });
            }
        }
        Ok(f.finish(2, "subcube_equality", "subcubes attain the bound, n <= 10; minima match, n <= 4".into()))
    })
}

pub fn quadratic_sharpness() -> Check {
    guard(3, "quadratic_sharpness", || {
        let b0 = beta0();
        let mut f = Failures::default();
        for n in 2..=8 {
            for (k, target) in [(1u32, 0.5), (2, 0.375)] {
                let a = subcube(dim(n)?, k)?;
                let v = moment(&a, b0, Side::OneSidedH)?.value;
                let mu = a.measure();
                f.require((v - target).abs() <= 1e-15 && (2.0 * mu * (1.0 - mu) - target).abs() <= 1e-15, || {
                    format!("n={n} codim {k}: E h = {v}, 2mu(1-mu) = {}", 2.0 * mu * (1.0 - mu))
                });
            }
        }
        Ok(f.finish(3, "quadratic_sharpness", "codim 1: 1/2 = 1/2, codim 2: 3/8 = 3/8".into()))
    })
}

pub fn certificate_suite() -> Check {
    guard(4, "certificate_suite", || {
        let b0 = beta0();
        let mut f = Failures::default();
        let mut worst = f64::INFINITY;
        let mut run = |f: &mut Failures, c: &CandidateBound, beta: f64, res: u32, region: Region| -> Result<()> {
            let r = certify_grid(c, beta, res, region)?;
            worst = worst.min(r.min_margin);
            f.require(r.passed, || format!("{c} at beta={beta} on {region}: {}", r.min_margin));
            Ok(())
        };
        for res in [256, 1024] {
            run(&mut f, &CandidateBound::log_quadratic_max(), b0, res, Region::FullTriangle)?;
        }
        for beta in [0.5, 0.55, b0] {
            for region in [Region::LinearBranch, Region::PowerBranch] {
                run(&mut f, &CandidateBound::optimal_quadratic(beta), beta, 1024, region)?;
            }
        }
        for region in [Region::LinearBranch, Region::PowerBranch] {
            run(&mut f, &CandidateBound::half_cubic(), CUBIC_BETA, 1024, region)?;
        }
        let neg = certify_grid(&CandidateBound::Quadratic { c: 2.0 }, 0.5, 256, Region::FullTriangle)?;
        f.require(neg.violation, || format!("Quadratic(2) at 1/2 not rejected: {}", neg.min_margin));
        let set = subcube(dim(2)?, 2)?;
        let set_margin = quadratic_set_margin(&set, 0.5, 2.0);
        f.require(set_margin < 0.0, || format!("codim-2 set margin {set_margin} is not negative"));
        Ok(f.finish(
            4,
            "certificate_suite",
            format!(
                "all grids pass (worst {worst:.3e}); Quadratic(2) fails at {:?} with {:.3e}; 2^0.5/4 - 3/8 = {set_margin:.6}",
                neg.argmin, neg.min_margin
            ),
        ))
    })
}

pub fn constants_reproduced() -> Check {
    let t = reference_constants();
    let bad: Vec<String> = t
        .constants
        .iter()
        .filter(|c| !c.matches_printed)
        .map(|c| c.name.clone())
        .chain(t.comparisons.iter().filter(|c| !c.holds).map(|c| format!("{} > {}", c.lhs, c.rhs)))
        .collect();
    Check {
        id: 5,
        name: "constants".into(),
        passed: t.passed,
        detail: if t.passed {
            format!("{} constants, {} comparisons", t.constants.len(), t.comparisons.len())
        } else {
            format!("mismatch: {}", bad.join(", "))
        },
    }
}

pub fn polynomial_facts() -> Check {
    let r = proof_polynomials_report();
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    Check {
        id: 6,
        name: "polynomial_facts".into(),
        passed: r.passed,
        detail: if r.passed {
            format!("{} checks", r.checks.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

/// Theorems swept in check 7.
pub fn swept_theorems() -> Vec<Theorem> {
    let b0 = beta0();
    vec![
        Theorem::Classical,
        Theorem::Logarithmic,
        Theorem::LogarithmicPower { beta: b0 },
        Theorem::LogarithmicPower { beta: 1.0 },
        Theorem::VertexBoundary,
        Theorem::Quadratic { beta: 0.5 },
        Theorem::Quadratic { beta: b0 },
        Theorem::Cubic,
        Theorem::LargeMeasure,
    ]
}

pub fn theorem_sweeps() -> Check {
    guard(7, "theorem_sweeps", || {
        let mut f = Failures::default();
        let mut sets = 0;
        for t in swept_theorems() {
            for n in 1..=4 {
                let s = sweep_theorem(dim(n)?, t)?;
                sets += s.sets_checked;
                f.require(s.passed, || {
                    format!("{t} at n={n}: margin {:?} at {:?}", s.min_margin, s.argmin)
                });
            }
        }
        Ok(f.finish(7, "theorem_sweeps", format!("{sets} (set, inequality) pairs, all margins >= -1e-12")))
    })
}

pub fn two_sided_and_partition() -> Check {
    guard(8, "two_sided_and_partition", || {
        let mut f = Failures::default();
        for n in 1..=4 {
            let d = dim(n)?;
            let half = d.vertex_count() as u64 / 2;
            let r = min_moment(d, half, CUBIC_BETA, Side::TwoSidedW, Method::Exhaustive, &SearchConfig::default())?;
            f.require((r.min_value - 1.0).abs() <= 1e-12, || format!("n={n}: min E w^0.53 = {}", r.min_value));
            f.require(r.witnesses.iter().any(|a| is_subcube(a) && a.len() == half), || {
                format!("n={n}: no half-cube among minimisers")
            });
            let opt = min_partition_functional(d, CUBIC_BETA, 1.0)?;
            f.require(opt.min_value >= half as f64 - 1e-12, || format!("n={n}: functional {}", opt.min_value));
            let a = corpus::half_cube(d, 0)?;
            let p = Partition::from_a_and_w(&a, &CubeSet::empty(d))?;
            let c = separation_lower_bound_check(&p, CUBIC_BETA, 1.0)?;
            f.require(c.margin == 0.0 && opt.min_value == half as f64, || {
                format!("n={n}: half-cube margin {}, optimum {}", c.margin, opt.min_value)
            });
        }
        Ok(f.finish(8, "two_sided_and_partition", "min E w^0.53 = 1 and min functional = 2^(n-1), n <= 4".into()))
    })
}

fn random_function(n: u32, rng: &mut ChaCha8Rng) -> Result<CubeFunction> {
    CubeFunction::from_fn(dim(n)?, |_| rng.gen_range(-1.0..1.0))
}

pub fn fourier_suite() -> Check {
    guard(9, "fourier_suite", || {
        let mut f = Failures::default();
        let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
        for n in 1..=10 {
            let g = random_function(n, &mut rng)?;
            let s = walsh_transform(&g);
            let l2 = g.norm(2.0)?;
            f.require((s.energy() - l2 * l2).abs() <= 1e-12, || format!("Parseval at n={n}"));
            let back = inverse_walsh(&s);
            let err = back.values().iter().zip(g.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            f.require(err <= 1e-12, || format!("round trip at n={n}: {err}"));
        }
        for n in 1..=4 {
            let d = dim(n)?;
            for mask in 0..=full_mask(n) {
                let a = CubeSet::from_mask(d, mask)?;
                let g = gradient_norms(&CubeFunction::indicator(&a)?);
                let (h, w) = (h_profile(&a), w_profile(&a));
                let ok = (0..d.vertex_count()).all(|v| {
                    g.upper_sq[v] * 4.0 == h.values()[v] as f64 && g.gradient_sq[v] * 4.0 == w.values()[v] as f64
                });
                f.require(ok, || format!("gradient identity fails for {a}"));
            }
        }
        let mut worst_identity: f64 = 0.0;
        for n in 1..=6 {
            let g = random_function(n, &mut rng)?;
            for t in [0.1, 0.5, 1.0] {
                let e = check_semigroup_identity(&g, t)?;
                worst_identity = worst_identity.max(e);
                f.require(e < 1e-9, || format!("semigroup identity at n={n} t={t}: {e}"));
            }
        }
        let members = [
            corpus::dictator(dim(3)?, 0)?,
            corpus::majority(dim(3)?)?,
            corpus::parity(dim(4)?)?,
            corpus::tribes(dim(4)?, 2)?,
        ];
        let mut worst_hyper: f64 = 0.0;
        for g in &members {
            for t in [0.1, 1.0] {
                let r = noise_stability_suite(g, 1.0, 2.0, t, None)?;
                worst_hyper = worst_hyper.max(r.hypercontractive_ratio);
                f.require(r.hypercontractive_ok, || format!("hypercontractive ratio {}", r.hypercontractive_ratio));
            }
        }
        for n in 1..=6 {
            for g in [corpus::dictator(dim(n)?, 0)?, corpus::parity(dim(n)?)?] {
                let r = fbound_ratio(&g, 1.0)?;
                f.require(r.ratio == Some(1.0), || format!("fbound ratio {:?} at n={n}", r.ratio));
            }
        }
        let w = spectral_stats(&corpus::majority(dim(3)?)?).w;
        f.require((w - 0.75).abs() <= 1e-12, || format!("W(Maj3) = {w}"));
        Ok(f.finish(
            9,
            "fourier_suite",
            format!("identity error {worst_identity:.2e}, hypercontractive ratio <= {worst_hyper:.6}, W(Maj3) = {w}"),
        ))
    })
}

pub fn appendix_checks() -> Check {
    guard(10, "appendix", || {
        let mut f = Failures::default();
        for n in (2..=12).step_by(2) {
            for beta in [0.25, 0.4, 0.5, 1.0] {
                let c = ball_moment_closed_form(n, beta)?.value;
                let d = ball_moment_direct(n, beta)?;
                f.require((c - d).abs() <= 1e-12, || format!("n={n} beta={beta}: {c} vs {d}"));
            }
        }
        for n in (1..=25).step_by(2) {
            f.require(ball_partition_counts(n)?.half_measure, || format!("mu(ball) != 1/2 at n={n}"));
        }
        let v4 = ball_moment_closed_form(4, 0.4)?.value;
        let v24 = ball_moment_closed_form(24, 0.4)?.value;
        f.require(v24 < v4, || format!("no decay: {v24} >= {v4}"));
        Ok(f.finish(10, "appendix", format!("beta = 0.4: value(24) = {v24:.6} < value(4) = {v4:.6}")))
    })
}

/// All ten checks in order.
pub fn all_checks() -> Vec<Check> {
    vec![
        harper_agreement(),
        subcube_equality(),
        quadratic_sharpness(),
        certificate_suite(),
        constants_reproduced(),
        polynomial_facts(),
        theorem_sweeps(),
        two_sided_and_partition(),
        fourier_suite(),
        appendix_checks(),
    ]
}
