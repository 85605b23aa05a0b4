//! Standard test functions. Boolean members take values `±1` with `+1`
//! meaning "true"; set members are subsets of the cube.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CubeFunction;
use crate::cube::{hamming_ball, CubeSet, Dimension};
use crate::error::{Error, Result};

fn x(v: usize, j: u32) -> f64 {
    if v >> j & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_coordinate(dim: Dimension, j: u32) -> Result<()> {
    if j >= dim.get() {
        return Err(Error::out_of_range("j", j, format!("need 0 <= j < n = {dim}")));
    }
    Ok(())
}

/// `x_j`.
pub fn dictator(dim: Dimension, j: u32) -> Result<CubeFunction> {
    check_coordinate(dim, j)?;
    CubeFunction::from_fn(dim, |v| x(v, j))
}

/// `x_1 x_2 ... x_n`.
pub fn parity(dim: Dimension) -> Result<CubeFunction> {
    CubeFunction::from_fn(dim, |v| if v.count_ones() % 2 == 0 { 1.0 } else { -1.0 })
}

/// `sign(x_1 + ... + x_n)` for odd `n`.
pub fn majority(dim: Dimension) -> Result<CubeFunction> {
    let n = dim.get();
    if n.is_multiple_of(2) {
        return Err(Error::out_of_range("n", n, "majority needs odd n"));
    }
    CubeFunction::from_fn(dim, |v| if 2 * v.count_ones() < n { 1.0 } else { -1.0 })
}

/// Coordinates split into consecutive blocks of `width`; `+1` when some
/// block is all `+1`, else `-1`.
pub fn tribes(dim: Dimension, width: u32) -> Result<CubeFunction> {
    let n = dim.get();
    if width == 0 || !n.is_multiple_of(width) {
        return Err(Error::out_of_range("width", width, format!("must divide n = {n}")));
    }
    let block = (1usize << width) - 1;
    CubeFunction::from_fn(dim, |v| {
        let hit = (0..n / width).any(|b| v >> (b * width) & block == 0);
        if hit {
            1.0
        } else {
            -1.0
        }
    })
}

/// `{x_j = +1}`, i.e. the vertices with bit `j` clear.
pub fn half_cube(dim: Dimension, j: u32) -> Result<CubeSet> {
    check_coordinate(dim, j)?;
    CubeSet::from_vertices(dim, (0..dim.vertex_count() as u32).filter(|v| v >> j & 1 == 0))
}

/// Radius-`r` ball around the all-`+1` point.
pub fn ball(dim: Dimension, r: u32) -> Result<CubeSet> {
    hamming_ball(dim, 0, r as f64)
}

/// A named corpus member, parsed from e.g. `dictator`, `majority`,
/// `tribes:2`, `half_cube:1`, `hamming_ball:2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum CorpusFunction {
    Dictator { j: u32 },
    Parity,
    Majority,
    Tribes { width: u32 },
    HalfCube { j: u32 },
    HammingBall { r: u32 },
}

impl CorpusFunction {
    pub const NAMES: [&'static str; 6] =
        ["dictator", "parity", "majority", "tribes", "half_cube", "hamming_ball"];

    /// The function on `n` coordinates. Set members give their indicator.
    pub fn build(self, dim: Dimension) -> Result<CubeFunction> {
        match self {
            CorpusFunction::Dictator { j } => dictator(dim, j),
            CorpusFunction::Parity => parity(dim),
            CorpusFunction::Majority => majority(dim),
            CorpusFunction::Tribes { width } => tribes(dim, width),
            CorpusFunction::HalfCube { j } => CubeFunction::indicator(&half_cube(dim, j)?),
            CorpusFunction::HammingBall { r } => CubeFunction::indicator(&ball(dim, r)?),
        }
    }

    /// Whether the built function is `±1`-valued.
    pub fn is_boolean(self) -> bool {
        !matches!(self, CorpusFunction::HalfCube { .. } | CorpusFunction::HammingBall { .. })
    }

    /// Whether the built function is non-decreasing in each `x_j`.
    pub fn is_monotone(self) -> bool {
        !matches!(self, CorpusFunction::Parity)
    }
}

impl fmt::Display for CorpusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusFunction::Dictator { j } => write!(f, "dictator:{j}"),
            CorpusFunction::Parity => write!(f, "parity"),
            CorpusFunction::Majority => write!(f, "majority"),
            CorpusFunction::Tribes { width } => write!(f, "tribes:{width}"),
            CorpusFunction::HalfCube { j } => write!(f, "half_cube:{j}"),
            CorpusFunction::HammingBall { r } => write!(f, "hamming_ball:{r}"),
        }
    }
}

impl FromStr for CorpusFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let num = |default: u32| -> Result<u32> {
            arg.map_or(Ok(default), |a| {
                a.trim().parse().map_err(|_| Error::Parse(format!("bad parameter in {s:?}")))
            })
        };
        let no_arg = |f: CorpusFunction| {
            if arg.is_some() {
                Err(Error::Parse(format!("{name} takes no parameter")))
            } else {
                Ok(f)
            }
        };
        match name.trim() {
            "dictator" => Ok(CorpusFunction::Dictator { j: num(0)? }),
            "parity" => no_arg(CorpusFunction::Parity),
            "majority" => no_arg(CorpusFunction::Majority),
            "tribes" => Ok(CorpusFunction::Tribes { width: num(2)? }),
            "half_cube" => Ok(CorpusFunction::HalfCube { j: num(0)? }),
            "hamming_ball" => Ok(CorpusFunction::HammingBall { r: num(1)? }),
            other => Err(Error::Parse(format!(
                "unknown corpus function {other:?}; expected one of {}",
                Self::NAMES.join(", ")
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{spectral_stats, walsh_transform};

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn tribes_of_width_two_on_four() {
        let t = tribes(dim(4), 2).unwrap();
        assert_eq!(t.get(0b0000), 1.0);
        assert_eq!(t.get(0b1100), 1.0);
        assert_eq!(t.get(0b0101), -1.0);
        assert!(tribes(dim(5), 2).is_err());
        // P(some block all +1) = 1 - (3/4)^2 = 7/16.
        assert_eq!(t.mean(), 7.0 / 16.0 - 9.0 / 16.0);
    }

    #[test]
    fn set_members() {
        assert_eq!(half_cube(dim(3), 1).unwrap().len(), 4);
        assert_eq!(ball(dim(5), 1).unwrap().len(), 6);
        assert!(majority(dim(4)).is_err());
        assert_eq!(majority(dim(1)).unwrap(), dictator(dim(1), 0).unwrap());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["dictator:2", "parity", "majority", "tribes:3", "half_cube:0", "hamming_ball:2"] {
            let c: CorpusFunction = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert_eq!("tribes".parse::<CorpusFunction>().unwrap(), CorpusFunction::Tribes { width: 2 });
        assert!("parity:1".parse::<CorpusFunction>().is_err());
        assert!("unknown".parse::<CorpusFunction>().is_err());
    }

    #[test]
    fn monotone_members_have_w_at_most_variance() {
        let members = [
            (CorpusFunction::Dictator { j: 0 }, 5),
            (CorpusFunction::Majority, 3),
            (CorpusFunction::Majority, 7),
            (CorpusFunction::Tribes { width: 2 }, 4),
            (CorpusFunction::Tribes { width: 3 }, 6),
        ];
        for (c, n) in members {
            let f = c.build(dim(n)).unwrap();
            assert!(c.is_monotone() && c.is_boolean());
            let s = spectral_stats(&f);
            // For monotone boolean f, E|D_j f| equals the level-one coefficient.
            let spec = walsh_transform(&f);
            let w_spec: f64 = (0..n).map(|j| spec.coefficient(1 << j).powi(2)).sum();
            assert!((s.w - w_spec).abs() < 1e-12, "{c}");
            assert!(s.w <= s.variance + 1e-12, "{c}");
        }
    }
}
