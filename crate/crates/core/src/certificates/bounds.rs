//! Candidate lower-bound functions `B: [0,1] -> [0, inf)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::constants::{beta0, c_beta};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CandidateBound {
    /// `x (log2(1/x))^beta`.
    Logarithmic { beta: f64 },
    /// `t* (log2(1/t*))^beta` with `t* = min(t, 1 - t)`.
    SymmetricLogarithmic { beta: f64 },
    /// `c x (1 - x)`.
    Quadratic { c: f64 },
    /// `8x(1-x)[(1 - 2^{alpha+1}/3) x + (2^alpha/3 - 1/4)]`.
    Cubic { alpha: f64 },
    /// Pointwise maximum of the members.
    PiecewiseMax { members: Vec<CandidateBound> },
}

impl CandidateBound {
    /// `max{t*(log2(1/t*))^beta0, 2t(1-t)}`.
    pub fn log_quadratic_max() -> Self {
        CandidateBound::PiecewiseMax {
            members: vec![
                CandidateBound::SymmetricLogarithmic { beta: beta0() },
                CandidateBound::Quadratic { c: 2.0 },
            ],
        }
    }

    /// `Quadratic(2 sqrt(2^{beta+1} - 2))`.
    pub fn optimal_quadratic(beta: f64) -> Self {
        CandidateBound::Quadratic { c: c_beta(beta) }
    }

    /// The cubic with `alpha = 1/2`, paired with exponent
    /// [`CUBIC_BETA`](super::constants::CUBIC_BETA).
    pub fn half_cubic() -> Self {
        CandidateBound::Cubic { alpha: 0.5 }
    }

    pub const NAMES: [&'static str; 7] = [
        "log_quadratic_max",
        "optimal_quadratic",
        "half_cubic",
        "logarithmic:<beta>",
        "symmetric_logarithmic:<beta>",
        "quadratic:<C>",
        "cubic:<alpha>",
    ];

    /// Parses a candidate name; `optimal_quadratic` takes its constant from
    /// `beta`. The result is validated.
    pub fn parse(s: &str, beta: f64) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s.trim(), None),
        };
        let num = || -> Result<f64> {
            let a = arg.ok_or_else(|| Error::Parse(format!("candidate {name} needs a parameter, e.g. {name}:0.5")))?;
            a.parse().map_err(|_| Error::Parse(format!("bad parameter {a:?} for candidate {name}")))
        };
        let c = match (name, arg) {
            ("log_quadratic_max", None) => Self::log_quadratic_max(),
            ("optimal_quadratic", None) => Self::optimal_quadratic(beta),
            ("half_cubic", None) => Self::half_cubic(),
            ("logarithmic", _) => CandidateBound::Logarithmic { beta: num()? },
            ("symmetric_logarithmic", _) => CandidateBound::SymmetricLogarithmic { beta: num()? },
            ("quadratic", _) => CandidateBound::Quadratic { c: num()? },
            ("cubic", _) => CandidateBound::Cubic { alpha: num()? },
            _ => {
                return Err(Error::Parse(format!(
                    "unknown candidate {s:?}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        };
        c.validate()?;
        Ok(c)
    }

    /// Family parameter ranges.
    ///
    /// The cubic stays non-negative on `[0,1]` exactly when
    /// `log2(3/4) <= alpha <= log2(9/4)`.
    pub fn validate(&self) -> Result<()> {
        match self {
            CandidateBound::Logarithmic { beta } | CandidateBound::SymmetricLogarithmic { beta } => {
                if !(beta.is_finite() && *beta > 0.0) {
                    return Err(Error::out_of_range("beta", beta, "logarithmic family needs beta > 0"));
                }
            }
            CandidateBound::Quadratic { c } => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::out_of_range("C", c, "quadratic family needs C > 0"));
                }
            }
            CandidateBound::Cubic { alpha } => {
                let (lo, hi) = (0.75f64.log2(), 2.25f64.log2());
                if !(alpha.is_finite() && *alpha >= lo && *alpha <= hi) {
                    return Err(Error::out_of_range(
                        "alpha",
                        alpha,
                        format!("cubic family needs {lo:.6} <= alpha <= {hi:.6}"),
                    ));
                }
            }
            CandidateBound::PiecewiseMax { members } => {
                if members.is_empty() {
                    return Err(Error::out_of_range("members", 0, "piecewise max needs a member"));
                }
                for m in members {
                    m.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Evaluation without range checks; `x` is assumed in `[0, 1]`.
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        match self {
            CandidateBound::Logarithmic { beta } => log_term(x, *beta),
            CandidateBound::SymmetricLogarithmic { beta } => log_term(x.min(1.0 - x), *beta),
            CandidateBound::Quadratic { c } => c * x * (1.0 - x),
            CandidateBound::Cubic { alpha } => {
                let p = 2f64.powf(*alpha);
                8.0 * x * (1.0 - x) * ((1.0 - 2.0 * p / 3.0) * x + (p / 3.0 - 0.25))
            }
            CandidateBound::PiecewiseMax { members } => {
                members.iter().map(|m| m.value(x)).fold(f64::NEG_INFINITY, f64::max)
            }
        }
    }
}

#[inline]
fn log_term(x: f64, beta: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * (-x.log2()).max(0.0).powf(beta)
    }
}

impl fmt::Display for CandidateBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateBound::Logarithmic { beta } => write!(f, "logarithmic(beta={beta})"),
            CandidateBound::SymmetricLogarithmic { beta } => write!(f, "symmetric_logarithmic(beta={beta})"),
            CandidateBound::Quadratic { c } => write!(f, "quadratic(C={c})"),
            CandidateBound::Cubic { alpha } => write!(f, "cubic(alpha={alpha})"),
            CandidateBound::PiecewiseMax { members } => {
                f.write_str("max{")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// `B(x)` for `x` in `[0, 1]`.
pub fn eval_bound(candidate: &CandidateBound, x: f64) -> Result<f64> {
    candidate.validate()?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::out_of_range("x", x, "need 0 <= x <= 1"));
    }
    Ok(candidate.value(x))
}
