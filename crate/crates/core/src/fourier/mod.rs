//! Fourier-Walsh analysis of functions on the signed cube `{-1,1}^n`.
//!
//! Vertex `v` is the point whose coordinate `x_j` is `+1` when bit `j` of
//! `v` is 0 and `-1` when it is 1, so `x^S(v) = (-1)^{|S & v|}`. Coefficients
//! are taken against the uniform probability measure.

pub mod corpus;
pub mod semigroup;
pub mod talagrand;

use serde::{Deserialize, Serialize};

use crate::cube::{CubeSet, Dimension};
use crate::error::{Error, Result};
use crate::numeric::pairwise_mean;

pub use corpus::CorpusFunction;
pub use semigroup::{check_semigroup_identity, noise_stability_suite, StabilityReport};
pub use talagrand::{talagrand_df_norm, talagrand_df_norm_vector, TalagrandMode, TalagrandNorm};

/// Largest dimension accepted for dense functions.
pub const MAX_FOURIER_DIM: u32 = 20;

fn check_dim(dim: Dimension) -> Result<()> {
    if dim.get() > MAX_FOURIER_DIM {
        return Err(Error::out_of_range(
            "n",
            dim.get(),
            format!("dense cube functions support n <= {MAX_FOURIER_DIM}"),
        ));
    }
    Ok(())
}

/// `x^S(v)`.
#[inline]
pub fn character(s: usize, v: usize) -> f64 {
    if (s & v).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// A real function given by its values on all `2^n` vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubeFunction {
    dim: Dimension,
    values: Vec<f64>,
}

impl CubeFunction {
    pub fn new(dim: Dimension, values: Vec<f64>) -> Result<Self> {
        check_dim(dim)?;
        if values.len() != dim.vertex_count() {
            return Err(Error::out_of_range(
                "values",
                values.len(),
                format!("need exactly 2^{dim} = {} values", dim.vertex_count()),
            ));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("function value {v} is not finite")));
        }
        Ok(CubeFunction { dim, values })
    }

    pub fn from_fn(dim: Dimension, f: impl FnMut(usize) -> f64) -> Result<Self> {
        check_dim(dim)?;
        Self::new(dim, (0..dim.vertex_count()).map(f).collect())
    }

    pub fn constant(dim: Dimension, c: f64) -> Result<Self> {
        Self::from_fn(dim, |_| c)
    }

    /// `1_A` with values 0 and 1.
    pub fn indicator(a: &CubeSet) -> Result<Self> {
        Self::from_fn(a.dim(), |v| if a.contains(v as u32) { 1.0 } else { 0.0 })
    }

    /// `-1` on `A` and `+1` off it, i.e. `1 - 2 * 1_A`. The set
    /// `{bit j = 1}` becomes the dictator `x_j`.
    pub fn signed(a: &CubeSet) -> Result<Self> {
        Self::from_fn(a.dim(), |v| if a.contains(v as u32) { -1.0 } else { 1.0 })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn mean(&self) -> f64 {
        pairwise_mean(&self.values)
    }

    /// `(E|f|^p)^{1/p}` for finite `p >= 1`, `max |f|` for `p = inf`.
    pub fn norm(&self, p: f64) -> Result<f64> {
        lp_norm(&self.values, p)
    }

    /// Whether every value is `+1` or `-1`.
    pub fn is_boolean(&self) -> bool {
        self.values.iter().all(|&v| v == 1.0 || v == -1.0)
    }

    pub fn sub(&self, other: &CubeFunction) -> Result<CubeFunction> {
        if self.dim != other.dim {
            return Err(Error::Domain(format!("dimension mismatch: {} vs {}", self.dim, other.dim)));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(CubeFunction { dim: self.dim, values })
    }
}

pub(crate) fn lp_norm(values: &[f64], p: f64) -> Result<f64> {
    if p == f64::INFINITY {
        return Ok(values.iter().fold(0.0, |m, v| m.max(v.abs())));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::out_of_range("p", p, "need p >= 1"));
    }
    let powers: Vec<f64> = values.iter().map(|v| v.abs().powf(p)).collect();
    Ok(pairwise_mean(&powers).powf(1.0 / p))
}

/// A function with values in `R^d`, `d <= 8`, stored vertex-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorFunction {
    dim: Dimension,
    components: usize,
    values: Vec<f64>,
}

pub const MAX_VECTOR_COMPONENTS: usize = 8;

impl VectorFunction {
    /// Stacks scalar functions as the coordinates of a vector function.
    pub fn from_components(parts: &[CubeFunction]) -> Result<Self> {
        let d = parts.len();
        if d == 0 || d > MAX_VECTOR_COMPONENTS {
            return Err(Error::out_of_range(
                "components",
                d,
                format!("need 1 <= d <= {MAX_VECTOR_COMPONENTS}"),
            ));
        }
        let dim = parts[0].dim;
        if parts.iter().any(|p| p.dim != dim) {
            return Err(Error::Domain("components have different dimensions".into()));
        }
        let mut values = Vec::with_capacity(dim.vertex_count() * d);
        for v in 0..dim.vertex_count() {
            values.extend(parts.iter().map(|p| p.values[v]));
        }
        Ok(VectorFunction { dim, components: d, values })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// The value at `v` as a slice of length `d`.
    pub fn at(&self, v: usize) -> &[f64] {
        &self.values[v * self.components..(v + 1) * self.components]
    }
}

/// Fourier-Walsh coefficients indexed by subset mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    dim: Dimension,
    coefficients: Vec<f64>,
}

impl Spectrum {
    pub fn new(dim: Dimension, coefficients: Vec<f64>) -> Result<Self> {
        let f = CubeFunction::new(dim, coefficients)?;
        Ok(Spectrum { dim, coefficients: f.values })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn coefficient(&self, s: usize) -> f64 {
        self.coefficients[s]
    }

    /// `sum_{|S| = k} f^(S)^2` for `k = 0..=n`.
    pub fn level_weights(&self) -> Vec<f64> {
        let n = self.dim.get() as usize;
        let mut w = vec![0.0; n + 1];
        for (s, c) in self.coefficients.iter().enumerate() {
            w[s.count_ones() as usize] += c * c;
        }
        w
    }

    /// `tail[d] = sum_{|S| >= d} f^(S)^2` for `d = 0..=n+1`.
    pub fn tails(&self) -> Vec<f64> {
        let w = self.level_weights();
        let mut t = vec![0.0; w.len() + 1];
        for d in (0..w.len()).rev() {
            t[d] = t[d + 1] + w[d];
        }
        t
    }

    /// `sum_S f^(S)^2`.
    pub fn energy(&self) -> f64 {
        self.tails()[0]
    }

    /// `sum_{S != ∅} f^(S)^2`.
    pub fn variance(&self) -> f64 {
        self.tails()[1]
    }

    /// Multiplies the coefficient at `S` by `m(|S|)`.
    pub fn multiply_by_level(&self, m: impl Fn(u32) -> f64) -> Spectrum {
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(s, c)| c * m(s.count_ones()))
            .collect();
        Spectrum { dim: self.dim, coefficients }
    }
}

fn fwht(a: &mut [f64]) {
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, w) = (*x, *y);
                *x = u + w;
                *y = u - w;
            }
        }
        h *= 2;
    }
}

pub fn walsh_transform(f: &CubeFunction) -> Spectrum {
    let mut c = f.values.clone();
    fwht(&mut c);
    let scale = 1.0 / f.dim.vertex_count() as f64;
    c.iter_mut().for_each(|x| *x *= scale);
    Spectrum { dim: f.dim, coefficients: c }
}

pub fn inverse_walsh(s: &Spectrum) -> CubeFunction {
    let mut v = s.coefficients.clone();
    fwht(&mut v);
    CubeFunction { dim: s.dim, values: v }
}

fn check_coordinate(f: &CubeFunction, j: u32) -> Result<()> {
    if j >= f.dim.get() {
        return Err(Error::out_of_range("j", j, format!("need 0 <= j < n = {}", f.dim)));
    }
    Ok(())
}

/// `D_j f(x) = (f(x) - f(x with x_j negated)) / 2`.
pub fn partial_difference(f: &CubeFunction, j: u32) -> Result<CubeFunction> {
    check_coordinate(f, j)?;
    let bit = 1usize << j;
    let values = (0..f.values.len())
        .map(|v| 0.5 * (f.values[v] - f.values[v ^ bit]))
        .collect();
    Ok(CubeFunction { dim: f.dim, values })
}

/// Squared pointwise gradient norms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradientNorms {
    /// `|∇f|^2 = sum_j (D_j f)^2`.
    pub gradient_sq: Vec<f64>,
    /// `|Mf|^2 = sum_j ((D_j f)_+)^2`.
    pub upper_sq: Vec<f64>,
}

impl GradientNorms {
    pub fn gradient(&self) -> Vec<f64> {
        self.gradient_sq.iter().map(|v| v.sqrt()).collect()
    }

    pub fn upper(&self) -> Vec<f64> {
        self.upper_sq.iter().map(|v| v.sqrt()).collect()
    }
}

pub fn gradient_norms(f: &CubeFunction) -> GradientNorms {
    let n = f.dim.get();
    let len = f.values.len();
    let mut gradient_sq = vec![0.0; len];
    let mut upper_sq = vec![0.0; len];
    for j in 0..n {
        let bit = 1usize << j;
        for v in 0..len {
            let d = 0.5 * (f.values[v] - f.values[v ^ bit]);
            gradient_sq[v] += d * d;
            if d > 0.0 {
                upper_sq[v] += d * d;
            }
        }
    }
    GradientNorms { gradient_sq, upper_sq }
}

/// `e^{-t Δ} f`: the coefficient at `S` is scaled by `e^{-t|S|}`.
pub fn heat(f: &CubeFunction, t: f64) -> Result<CubeFunction> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::out_of_range("t", t, "heat time must be finite and >= 0"));
    }
    if t == 0.0 {
        return Ok(f.clone());
    }
    Ok(inverse_walsh(&walsh_transform(f).multiply_by_level(|k| (-t * k as f64).exp())))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralStats {
    pub variance: f64,
    /// `W(f) = sum_j (E|D_j f|)^2`.
    pub w: f64,
    /// `tail[d] = sum_{|S| >= d} f^(S)^2`, `d = 0..=n+1`.
    pub tail: Vec<f64>,
    pub level_weights: Vec<f64>,
}

pub fn spectral_stats(f: &CubeFunction) -> SpectralStats {
    let spec = walsh_transform(f);
    let w = (0..f.dim.get())
        .map(|j| {
            let d = partial_difference(f, j).expect("j < n");
            let abs: Vec<f64> = d.values.iter().map(|v| v.abs()).collect();
            let m = pairwise_mean(&abs);
            m * m
        })
        .sum();
    SpectralStats {
        variance: spec.variance(),
        w,
        tail: spec.tails(),
        level_weights: spec.level_weights(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FboundRatio {
    pub p: f64,
    /// `||∇f||_p`.
    pub lhs: f64,
    /// `max_d tail(d)^{1/p} sqrt(d)`.
    pub rhs: f64,
    /// `lhs / rhs`; absent when `rhs = 0`.
    pub ratio: Option<f64>,
    pub argmax_d: u32,
}

fn check_p(p: f64) -> Result<()> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::out_of_range("p", p, "need 1 <= p <= 2"));
    }
    Ok(())
}

/// Compares `||∇f||_p` with the spectral tail bound for `±1`-valued `f`.
pub fn fbound_ratio(f: &CubeFunction, p: f64) -> Result<FboundRatio> {
    check_p(p)?;
    if !f.is_boolean() {
        return Err(Error::Domain("fbound ratio needs a ±1-valued function".into()));
    }
    let lhs = lp_norm(&gradient_norms(f).gradient(), p)?;
    let tail = walsh_transform(f).tails();
    let (mut rhs, mut argmax_d) = (0.0, 0u32);
    for d in 1..=f.dim.get() {
        let r = tail[d as usize].powf(1.0 / p) * (d as f64).sqrt();
        if r > rhs {
            rhs = r;
            argmax_d = d;
        }
    }
    Ok(FboundRatio {
        p,
        lhs,
        rhs,
        ratio: (rhs > 0.0).then(|| lhs / rhs),
        argmax_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitmask::{full_mask, h_histogram};
    use crate::cube::{h_profile, w_profile};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn random_function(n: u32, seed: u64) -> CubeFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CubeFunction::from_fn(dim(n), |_| rng.gen_range(-1.0..1.0)).unwrap()
    }

    #[test]
    fn transform_examples() {
        let par = corpus::parity(dim(4)).unwrap();
        let s = walsh_transform(&par);
        for (i, c) in s.coefficients().iter().enumerate() {
            assert_eq!(*c, if i == 15 { 1.0 } else { 0.0 });
        }
        let k = CubeFunction::constant(dim(3), 2.5).unwrap();
        assert_eq!(walsh_transform(&k).coefficient(0), 2.5);
        let maj = corpus::majority(dim(3)).unwrap();
        let s = walsh_transform(&maj);
        assert_eq!(s.coefficients(), &[0.0, 0.5, 0.5, 0.0, 0.5, 0.0, 0.0, -0.5]);
    }

    #[test]
    fn parseval_and_round_trip() {
        for n in 1..=10 {
            let f = random_function(n, n as u64);
            let s = walsh_transform(&f);
            let l2 = f.norm(2.0).unwrap();
            assert!((s.energy() - l2 * l2).abs() < 1e-12);
            let g = inverse_walsh(&s);
            for (a, b) in f.values().iter().zip(g.values()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn partial_difference_examples() {
        let d = dim(3);
        let x0 = corpus::dictator(d, 0).unwrap();
        let d0 = partial_difference(&x0, 0).unwrap();
        assert_eq!(d0, x0);
        assert!(d0.values().iter().all(|v| v.abs() == 1.0));
        assert!(partial_difference(&x0, 1).unwrap().values().iter().all(|&v| v == 0.0));
        let par = corpus::parity(d).unwrap();
        for j in 0..3 {
            assert_eq!(partial_difference(&par, j).unwrap(), par);
        }
        let half = CubeFunction::indicator(&corpus::half_cube(d, 0).unwrap()).unwrap();
        assert!(partial_difference(&half, 0).unwrap().values().iter().all(|v| v.abs() == 0.5));
        assert!(partial_difference(&par, 3).is_err());
    }

    #[test]
    fn partial_difference_is_a_spectral_projection() {
        let f = random_function(7, 11);
        let s = walsh_transform(&f);
        for j in 0..7 {
            let pointwise = walsh_transform(&partial_difference(&f, j).unwrap());
            for (i, (a, b)) in pointwise.coefficients().iter().zip(s.coefficients()).enumerate() {
                let expected = if i >> j & 1 == 1 { *b } else { 0.0 };
                assert!((a - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gradient_examples() {
        let a = CubeSet::from_vertices(dim(1), [0]).unwrap();
        let g = gradient_norms(&CubeFunction::indicator(&a).unwrap());
        assert_eq!(g.gradient_sq, vec![0.25, 0.25]);
        let par = corpus::parity(dim(5)).unwrap();
        assert!(gradient_norms(&par).gradient().iter().all(|&v| v == 5f64.sqrt()));
    }

    #[test]
    fn indicator_gradients_are_boundary_counts_at_n4() {
        let d = dim(4);
        for mask in 0..=full_mask(4) {
            let a = CubeSet::from_mask(d, mask).unwrap();
            let g = gradient_norms(&CubeFunction::indicator(&a).unwrap());
            let h = h_profile(&a);
            let w = w_profile(&a);
            for v in 0..16 {
                assert_eq!(g.upper_sq[v] * 4.0, h.values()[v] as f64);
                assert_eq!(g.gradient_sq[v] * 4.0, w.values()[v] as f64);
            }
            let hist = h_histogram(mask, 4);
            assert_eq!(hist.iter().sum::<u64>(), 16);
        }
    }

    #[test]
    fn heat_examples() {
        let f = random_function(6, 3);
        assert_eq!(heat(&f, 0.0).unwrap(), f);
        let par = corpus::parity(dim(4)).unwrap();
        let h = heat(&par, 0.3).unwrap();
        for (a, b) in h.values().iter().zip(par.values()) {
            assert!((a - (-1.2f64).exp() * b).abs() < 1e-15);
        }
        assert!(heat(&f, -1.0).is_err());
    }

    #[test]
    fn spectral_stats_examples() {
        let par = spectral_stats(&corpus::parity(dim(4)).unwrap());
        assert_eq!(par.variance, 1.0);
        assert_eq!(par.tail, vec![1.0, 1.0, 1.0, 1.0, 1.0, 0.0]);
        let maj = spectral_stats(&corpus::majority(dim(3)).unwrap());
        assert!((maj.w - 0.75).abs() < 1e-12);
        assert!(maj.w <= maj.variance);
    }

    #[test]
    fn fbound_examples() {
        for n in 1..=6 {
            let r = fbound_ratio(&corpus::dictator(dim(n), 0).unwrap(), 1.0).unwrap();
            assert_eq!((r.lhs, r.rhs, r.ratio, r.argmax_d), (1.0, 1.0, Some(1.0), 1));
            let r = fbound_ratio(&corpus::parity(dim(n)).unwrap(), 1.0).unwrap();
            assert_eq!(r.ratio, Some(1.0));
            assert_eq!(r.argmax_d, n);
        }
        let r = fbound_ratio(&corpus::majority(dim(3)).unwrap(), 1.0).unwrap();
        assert!(r.ratio.unwrap() > 0.0);
        let k = CubeFunction::constant(dim(2), 1.0).unwrap();
        assert_eq!(fbound_ratio(&k, 1.0).unwrap().ratio, None);
        assert!(fbound_ratio(&random_function(3, 1), 1.0).is_err());
    }

    proptest! {
        #[test]
        fn heat_is_a_semigroup_and_contraction(n in 1u32..=8, seed in any::<u64>(), s in 0.0f64..2.0, t in 0.0f64..2.0) {
            let f = random_function(n, seed);
            let a = heat(&heat(&f, s).unwrap(), t).unwrap();
            let b = heat(&f, s + t).unwrap();
            for (x, y) in a.values().iter().zip(b.values()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
            for p in [1.0, 2.0, f64::INFINITY] {
                prop_assert!(b.norm(p).unwrap() <= f.norm(p).unwrap() + 1e-12);
            }
        }

        #[test]
        fn tails_are_non_increasing(n in 1u32..=8, seed in any::<u64>()) {
            let t = walsh_transform(&random_function(n, seed)).tails();
            for w in t.windows(2) {
                prop_assert!(w[1] <= w[0]);
            }
        }
    }
}
