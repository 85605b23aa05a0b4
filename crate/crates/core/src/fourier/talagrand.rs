//! The mixed norm `||Df||_p = (E_{x,x'} |sum_j x'_j D_j f(x)|^p)^{1/p}` with
//! `x'` an independent uniform point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_p, CubeFunction, VectorFunction};
use crate::error::{Error, Result};
use crate::numeric::pairwise_mean;

/// Largest `n` for the exact `4^n` double sum.
pub const MAX_EXACT_DIM: u32 = 13;
pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum TalagrandMode {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
    /// Exact up to [`MAX_EXACT_DIM`], Monte Carlo with defaults above it.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TalagrandNorm {
    pub p: f64,
    pub mode: TalagrandMode,
    /// `||Df||_p`.
    pub value: f64,
    /// `||Df||_p^p`, the quantity actually averaged.
    pub pth_moment: f64,
    /// Standard error of `pth_moment`; zero in exact mode.
    pub moment_standard_error: f64,
    /// Delta-method standard error of `value`.
    pub standard_error: f64,
}

/// Pointwise data: `n` vectors of length `d` per vertex, `D_j f(x)`.
struct Differences<'a> {
    n: u32,
    d: usize,
    values: &'a [f64],
}

impl Differences<'_> {
    /// `D_j f(x)` as a slice of length `d`, written into `out`.
    fn at(&self, x: usize, j: u32, out: &mut [f64]) {
        let y = x ^ (1 << j);
        for k in 0..self.d {
            out[k] = 0.5 * (self.values[x * self.d + k] - self.values[y * self.d + k]);
        }
    }

    /// `E_{x'} |sum_j x'_j D_j f(x)|^p`, listing all sign patterns by doubling.
    fn inner_exact(&self, x: usize, p: f64) -> f64 {
        let d = self.d;
        let mut sums = vec![0.0; (1usize << self.n) * d];
        let mut g = vec![0.0; d];
        for j in 0..self.n {
            self.at(x, j, &mut g);
            let half = 1usize << j;
            for k in 0..half {
                for c in 0..d {
                    let s = sums[k * d + c];
                    sums[(k + half) * d + c] = s - g[c];
                    sums[k * d + c] = s + g[c];
                }
            }
        }
        let powers: Vec<f64> = sums.chunks(d).map(|v| euclid(v).powf(p)).collect();
        pairwise_mean(&powers)
    }

    fn sample(&self, x: usize, signs: u64, p: f64) -> f64 {
        let mut acc = vec![0.0; self.d];
        let mut g = vec![0.0; self.d];
        for j in 0..self.n {
            self.at(x, j, &mut g);
            let s = if signs >> j & 1 == 0 { 1.0 } else { -1.0 };
            acc.iter_mut().zip(&g).for_each(|(a, b)| *a += s * b);
        }
        euclid(&acc).powf(p)
    }
}

fn euclid(v: &[f64]) -> f64 {
    if v.len() == 1 {
        v[0].abs()
    } else {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

fn compute(diffs: Differences<'_>, p: f64, mode: TalagrandMode) -> Result<TalagrandNorm> {
    check_p(p)?;
    let n = diffs.n;
    let mode = match mode {
        TalagrandMode::Auto if n <= MAX_EXACT_DIM => TalagrandMode::Exact,
        TalagrandMode::Auto => TalagrandMode::MonteCarlo { samples: DEFAULT_SAMPLES, seed: DEFAULT_SEED },
        m => m,
    };
    let (moment, moment_se) = match mode {
        TalagrandMode::Exact => {
            if n > MAX_EXACT_DIM {
                return Err(Error::ResourceRefusal(format!(
                    "exact ||Df||_p needs 4^n work; n = {n} exceeds {MAX_EXACT_DIM}, use Monte Carlo"
                )));
            }
            let per_x: Vec<f64> = (0..1usize << n)
                .into_par_iter()
                .map(|x| diffs.inner_exact(x, p))
                .collect();
            (pairwise_mean(&per_x), 0.0)
        }
        TalagrandMode::MonteCarlo { samples, seed } => {
            if samples < 2 {
                return Err(Error::out_of_range("samples", samples, "need at least 2 samples"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mask = (1u64 << n) - 1;
            let draws: Vec<f64> = (0..samples)
                .map(|_| {
                    let x = (rng.gen::<u64>() & mask) as usize;
                    let signs = rng.gen::<u64>();
                    diffs.sample(x, signs, p)
                })
                .collect();
            let mean = pairwise_mean(&draws);
            let sq: Vec<f64> = draws.iter().map(|v| (v - mean) * (v - mean)).collect();
            let var = pairwise_mean(&sq) * samples as f64 / (samples - 1) as f64;
            (mean, (var / samples as f64).sqrt())
        }
        TalagrandMode::Auto => unreachable!(),
    };
    let value = moment.powf(1.0 / p);
    let standard_error = if moment > 0.0 {
        moment_se * value / (p * moment)
    } else {
        0.0
    };
    Ok(TalagrandNorm {
        p,
        mode,
        value,
        pth_moment: moment,
        moment_standard_error: moment_se,
        standard_error,
    })
}

pub fn talagrand_df_norm(f: &CubeFunction, p: f64, mode: TalagrandMode) -> Result<TalagrandNorm> {
    compute(Differences { n: f.dim().get(), d: 1, values: f.values() }, p, mode)
}

/// Same norm with the Euclidean norm on `R^d`.
pub fn talagrand_df_norm_vector(
    f: &VectorFunction,
    p: f64,
    mode: TalagrandMode,
) -> Result<TalagrandNorm> {
    compute(
        Differences { n: f.dim().get(), d: f.components(), values: &f.values },
        p,
        mode,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Dimension;
    use crate::fourier::corpus;
    use proptest::prelude::*;
    use rand::Rng;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn random_function(n: u32, seed: u64) -> CubeFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CubeFunction::from_fn(dim(n), |_| rng.gen_range(-1.0..1.0)).unwrap()
    }

    /// Direct double loop over `(x, x')`.
    fn brute(f: &CubeFunction, p: f64) -> f64 {
        let n = f.dim().get();
        let size = 1usize << n;
        let mut total = 0.0;
        for x in 0..size {
            for xp in 0..size {
                let s: f64 = (0..n)
                    .map(|j| {
                        let sign = if xp >> j & 1 == 0 { 1.0 } else { -1.0 };
                        sign * 0.5 * (f.get(x) - f.get(x ^ (1 << j)))
                    })
                    .sum();
                total += s.abs().powf(p);
            }
        }
        (total / (size * size) as f64).powf(1.0 / p)
    }

    #[test]
    fn examples() {
        for n in 1..=5 {
            for p in [1.0, 1.5, 2.0] {
                let r = talagrand_df_norm(&corpus::dictator(dim(n), 0).unwrap(), p, TalagrandMode::Exact)
                    .unwrap();
                assert!((r.value - 1.0).abs() < 1e-15);
            }
            let r = talagrand_df_norm(&corpus::parity(dim(n)).unwrap(), 2.0, TalagrandMode::Exact).unwrap();
            assert!((r.value - (n as f64).sqrt()).abs() < 1e-12);
        }
        let r = talagrand_df_norm(&corpus::parity(dim(2)).unwrap(), 1.0, TalagrandMode::Exact).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn matches_direct_double_loop() {
        for n in 1..=6 {
            let f = random_function(n, 40 + n as u64);
            for p in [1.0, 1.3, 2.0] {
                let r = talagrand_df_norm(&f, p, TalagrandMode::Exact).unwrap();
                assert!((r.value - brute(&f, p)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn refusals_and_ranges() {
        let f = CubeFunction::constant(dim(14), 1.0).unwrap();
        assert!(matches!(
            talagrand_df_norm(&f, 1.0, TalagrandMode::Exact),
            Err(Error::ResourceRefusal(_))
        ));
        let g = corpus::parity(dim(2)).unwrap();
        assert!(talagrand_df_norm(&g, 0.5, TalagrandMode::Exact).is_err());
        assert!(talagrand_df_norm(&g, 2.5, TalagrandMode::Exact).is_err());
    }

    #[test]
    fn monte_carlo_agrees_with_exact() {
        let f = corpus::majority(dim(9)).unwrap();
        for p in [1.0, 2.0] {
            let exact = talagrand_df_norm(&f, p, TalagrandMode::Exact).unwrap();
            let mc = talagrand_df_norm(&f, p, TalagrandMode::MonteCarlo { samples: DEFAULT_SAMPLES, seed: 7 })
                .unwrap();
            assert!(mc.standard_error > 0.0);
            assert!((mc.value - exact.value).abs() <= 4.0 * mc.standard_error);
            let again = talagrand_df_norm(&f, p, TalagrandMode::MonteCarlo { samples: DEFAULT_SAMPLES, seed: 7 })
                .unwrap();
            assert_eq!(mc, again);
        }
    }

    #[test]
    fn vector_mode_reduces_to_scalar_and_orthogonal_sum() {
        let f = random_function(5, 1);
        let scalar = talagrand_df_norm(&f, 1.5, TalagrandMode::Exact).unwrap();
        let vf = VectorFunction::from_components(std::slice::from_ref(&f)).unwrap();
        let vector = talagrand_df_norm_vector(&vf, 1.5, TalagrandMode::Exact).unwrap();
        assert!((scalar.value - vector.value).abs() < 1e-14);
        // At p = 2 the squared norms of the components add.
        let g = random_function(5, 2);
        let pair = VectorFunction::from_components(&[f.clone(), g.clone()]).unwrap();
        let both = talagrand_df_norm_vector(&pair, 2.0, TalagrandMode::Exact).unwrap().value;
        let a = talagrand_df_norm(&f, 2.0, TalagrandMode::Exact).unwrap().value;
        let b = talagrand_df_norm(&g, 2.0, TalagrandMode::Exact).unwrap().value;
        assert!((both * both - a * a - b * b).abs() < 1e-12);
        assert!(VectorFunction::from_components(&vec![f; 9]).is_err());
    }

    #[test]
    fn auto_switches_to_monte_carlo() {
        let f = corpus::dictator(dim(14), 3).unwrap();
        let r = talagrand_df_norm(&f, 1.0, TalagrandMode::Auto).unwrap();
        assert!(matches!(r.mode, TalagrandMode::MonteCarlo { .. }));
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn monotone_in_p(n in 1u32..=6, seed in any::<u64>(), p in 1.0f64..2.0, dp in 0.0f64..1.0) {
            let f = random_function(n, seed);
            let q = (p + dp).min(2.0);
            let a = talagrand_df_norm(&f, p, TalagrandMode::Exact).unwrap().value;
            let b = talagrand_df_norm(&f, q, TalagrandMode::Exact).unwrap().value;
            prop_assert!(a <= b + 1e-12);
        }
    }
}
