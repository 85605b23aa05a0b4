//! Numerical checks around the heat semigroup: the random-sign
//! representation of its time derivative, a noise stability bound and the
//! hypercontractive step behind it.

use serde::{Deserialize, Serialize};

use super::talagrand::{talagrand_df_norm, TalagrandMode, TalagrandNorm};
use super::{check_p, gradient_norms, heat, lp_norm, spectral_stats, walsh_transform, CubeFunction};
use crate::error::{Error, Result};
use crate::numeric::pairwise_mean;

/// Largest `n` for the exact expectation over `ξ(t)`.
pub const MAX_SEMIGROUP_DIM: u32 = 6;

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::out_of_range("t", t, "need finite t > 0"));
    }
    Ok(())
}

/// Maximum over vertices of the gap between `Δ e^{-tΔ} f(x)` and
/// `(e^{2t} - 1)^{-1/2} E_ξ sum_j δ_j D_j f(ξx)`, where the `ξ_j` are
/// independent signs with mean `e^{-t}` and `δ_j` is `ξ_j` standardised.
pub fn check_semigroup_identity(f: &CubeFunction, t: f64) -> Result<f64> {
    check_t(t)?;
    let n = f.dim().get();
    if n > MAX_SEMIGROUP_DIM {
        return Err(Error::out_of_range(
            "n",
            n,
            format!("exact expectation over ξ is limited to n <= {MAX_SEMIGROUP_DIM}"),
        ));
    }
    let size = f.dim().vertex_count();
    let lhs = walsh_transform(f).multiply_by_level(|k| k as f64 * (-t * k as f64).exp());
    let lhs = super::inverse_walsh(&lhs);

    let rho = (-t).exp();
    let sd = (1.0 - rho * rho).sqrt();
    // Index 0 is ξ_j = +1 (bit clear), index 1 is ξ_j = -1.
    let prob = [(1.0 + rho) / 2.0, (1.0 - rho) / 2.0];
    let delta = [(1.0 - rho) / sd, (-1.0 - rho) / sd];
    let scale = 1.0 / (2.0 * t).exp_m1().sqrt();

    let diffs: Vec<Vec<f64>> = (0..n)
        .map(|j| super::partial_difference(f, j).map(|d| d.values().to_vec()))
        .collect::<Result<_>>()?;
    let weights: Vec<f64> = (0..size)
        .map(|u| (0..n).map(|j| prob[u >> j & 1]).product())
        .collect();

    let mut worst: f64 = 0.0;
    for x in 0..size {
        let mut rhs = 0.0;
        for (u, w) in weights.iter().enumerate() {
            // ξx is the vertex x with the bits of u flipped.
            let inner: f64 = (0..n as usize).map(|j| delta[u >> j & 1] * diffs[j][x ^ u]).sum();
            rhs += w * inner;
        }
        worst = worst.max((lhs.get(x) - scale * rhs).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailCheck {
    pub d: u32,
    /// `||f - e^{-Δ/d} f||_p`.
    pub deviation_norm: f64,
    /// `(sum_{|S| >= d} f^(S)^2)^{1/p}`.
    pub tail_root: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseSensitivity {
    pub delta: f64,
    /// `P(f(x) != f(y))` for `δ`-correlated `(x, y)`.
    pub value: f64,
    /// `sqrt(δ) E|∇f|`.
    pub upper_shape: f64,
    /// `Var(f) (1 - (W(f)/Var(f))^{δ/(2-δ)})`; absent for constant `f`.
    pub lower_shape: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub p: f64,
    pub q: f64,
    pub t: f64,
    /// `||f - e^{-tΔ} f||_p`.
    pub deviation_norm: f64,
    pub df_norm: TalagrandNorm,
    /// `deviation_norm / ((1 - e^{-2t})^{1/q} ||Df||_p)`, or 0 when `f` is constant.
    pub stability_ratio: f64,
    pub epsilon: f64,
    /// `||e^{-tΔ} f||_2 / (||f||_2 (||f||_1/||f||_2)^{ε/(2-ε)})`.
    pub hypercontractive_ratio: f64,
    pub hypercontractive_ok: bool,
    /// Present for `±1`-valued `f`, with `δ = (1 - e^{-t})/2`.
    pub noise_sensitivity: Option<NoiseSensitivity>,
    pub tail_check: Option<TailCheck>,
}

pub const HYPERCONTRACTIVE_SLACK: f64 = 1e-9;

/// Runs the suite at Lebesgue exponent `p`, target exponent `q = 2`, time
/// `t`, and optionally the tail comparison at level `d`.
pub fn noise_stability_suite(
    f: &CubeFunction,
    p: f64,
    q: f64,
    t: f64,
    d: Option<u32>,
) -> Result<StabilityReport> {
    check_p(p)?;
    check_t(t)?;
    if q != 2.0 {
        return Err(Error::out_of_range("q", q, "only q = 2 is supported"));
    }
    let l2 = f.norm(2.0)?;
    if l2 == 0.0 {
        return Err(Error::Domain("||f||_2 = 0".into()));
    }
    let l1 = f.norm(1.0)?;
    let ht = heat(f, t)?;
    let deviation_norm = f.sub(&ht)?.norm(p)?;
    let df_norm = talagrand_df_norm(f, p, TalagrandMode::Auto)?;
    let decay = -(-2.0 * t).exp_m1();
    let stability_ratio = if df_norm.value == 0.0 {
        0.0
    } else {
        deviation_norm / (decay.powf(1.0 / q) * df_norm.value)
    };
    let epsilon = decay;
    let bound = l2 * (l1 / l2).powf(epsilon / (2.0 - epsilon));
    let hypercontractive_ratio = ht.norm(2.0)? / bound;

    let noise_sensitivity = if f.is_boolean() {
        let delta = -(-t).exp_m1() / 2.0;
        let rho = (-t).exp();
        let spec = walsh_transform(f);
        let stab: f64 = spec
            .level_weights()
            .iter()
            .enumerate()
            .map(|(k, w)| rho.powi(k as i32) * w)
            .sum();
        let stats = spectral_stats(f);
        let mean_grad = pairwise_mean(&gradient_norms(f).gradient());
        Some(NoiseSensitivity {
            delta,
            value: (1.0 - stab) / 2.0,
            upper_shape: delta.sqrt() * mean_grad,
            lower_shape: (stats.variance > 0.0).then(|| {
                stats.variance * (1.0 - (stats.w / stats.variance).powf(delta / (2.0 - delta)))
            }),
        })
    } else {
        None
    };

    let tail_check = match d {
        None => None,
        Some(0) => return Err(Error::out_of_range("d", 0, "need d >= 1")),
        Some(d) => {
            let tails = walsh_transform(f).tails();
            let level = (d as usize).min(tails.len() - 1);
            Some(TailCheck {
                d,
                deviation_norm: lp_norm(f.sub(&heat(f, 1.0 / d as f64)?)?.values(), p)?,
                tail_root: tails[level].powf(1.0 / p),
            })
        }
    };

    Ok(StabilityReport {
        p,
        q,
        t,
        deviation_norm,
        df_norm,
        stability_ratio,
        epsilon,
        hypercontractive_ratio,
        hypercontractive_ok: hypercontractive_ratio <= 1.0 + HYPERCONTRACTIVE_SLACK,
        noise_sensitivity,
        tail_check,
    })
}
