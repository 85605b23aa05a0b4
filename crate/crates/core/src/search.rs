//! Extremal search: the minimum of `E h_A^beta` over sets of fixed size, and
//! the minimum partition functional `|∇(A,B)| + K n^beta |W|`.
//!
//! Exhaustive search walks all `C(2^n, m)` masks in colex order (Gosper
//! successor). The rank space is cut into contiguous ranges reduced in
//! parallel; a second pass collects witnesses so the merge does not depend
//! on how the ranges were scheduled.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitmask::{
    colex_unrank, first_combination, full_mask, gosper_next, histogram, neighbor_mask, PowerTable,
};
use crate::cube::{is_hamming_ball, is_subcube, CubeSet, Dimension, Side, Vertex};
use crate::error::{Error, Result};
use crate::numeric::binomial;
use crate::symmetry::{HyperoctahedralGroup, MAX_SYMMETRY_DIM};

/// Two moments within this distance are ties.
pub const TIE_TOLERANCE: f64 = 1e-12;
/// Largest dimension for exhaustive enumeration.
pub const MAX_EXHAUSTIVE_DIM: u32 = 4;
pub const DEFAULT_BUDGET: u64 = 1 << 31;
pub const DEFAULT_WITNESS_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    SymmetryReduced,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::SymmetryReduced => "symmetry_reduced",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "symmetry_reduced" | "symmetry-reduced" | "symmetry" => Ok(Method::SymmetryReduced),
            _ => Err(Error::Parse(format!(
                "unknown method {s:?} (expected exhaustive or symmetry_reduced)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Refuse enumerations with more candidates than this.
    pub budget: u64,
    pub allow_over_budget: bool,
    pub witness_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            allow_over_budget: false,
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: Dimension,
    pub m: u64,
    pub beta: f64,
    pub side: Side,
    pub min_value: f64,
    /// Ascending by bitmask, capped.
    pub witnesses: Vec<CubeSet>,
    pub witness_is_subcube: bool,
    pub witness_is_hamming_ball: bool,
    pub method: Method,
    pub sets_examined: u64,
}

impl SearchResult {
    pub(crate) fn assemble(
        n: Dimension,
        m: u64,
        beta: f64,
        side: Side,
        method: Method,
        min_value: f64,
        witnesses: Vec<CubeSet>,
        sets_examined: u64,
    ) -> Self {
        SearchResult {
            n,
            m,
            beta,
            side,
            min_value,
            witness_is_subcube: witnesses.iter().any(is_subcube),
            witness_is_hamming_ball: witnesses.iter().any(is_hamming_ball),
            witnesses,
            method,
            sets_examined,
        }
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta >= 0.0 {
        Ok(())
    } else {
        Err(Error::out_of_range("beta", beta, "must be finite and >= 0"))
    }
}

/// `B(m / 2^n, beta, n)`: the minimum of `E f^beta` over `|A| = m` for the
/// selected boundary function.
pub fn min_moment(
    n: Dimension,
    m: u64,
    beta: f64,
    side: Side,
    method: Method,
    config: &SearchConfig,
) -> Result<SearchResult> {
    check_beta(beta)?;
    let verts = n.vertex_count() as u64;
    if m > verts {
        return Err(Error::out_of_range("m", m, format!("need 0 <= m <= 2^{n} = {verts}")));
    }
    match method {
        Method::Exhaustive => exhaustive(n, m as u32, beta, side, config),
        Method::SymmetryReduced => symmetry_reduced(n, m as u32, beta, side, config),
    }
}

fn exhaustive(n: Dimension, m: u32, beta: f64, side: Side, config: &SearchConfig) -> Result<SearchResult> {
    let nn = n.get();
    if nn > MAX_EXHAUSTIVE_DIM {
        return Err(Error::out_of_range(
            "n",
            nn,
            format!("exhaustive search requires n <= {MAX_EXHAUSTIVE_DIM}; use symmetry_reduced"),
        ));
    }
    let bits = 1u32 << nn;
    let total: u64 = binomial(bits as u64, m as u64).try_into().unwrap_or(u64::MAX);
    if total > config.budget && !config.allow_over_budget {
        return Err(Error::ResourceRefusal(format!(
            "{total} candidate sets exceed the budget of {}",
            config.budget
        )));
    }
    let table = PowerTable::new(beta);
    let eval = |mask: u64| table.moment(&histogram(mask, nn, side), nn);

    let chunk = (total / 64).max(1024);
    let ranges: Vec<(u64, u64)> = (0..total)
        .step_by(chunk as usize)
        .map(|start| (start, (start + chunk).min(total)))
        .collect();
    let walk = |start: u64, end: u64, f: &mut dyn FnMut(u64) -> bool| {
        let mut x = if m == 0 { 0 } else { colex_unrank(start, m) };
        for _ in start..end {
            if !f(x) {
                break;
            }
            match gosper_next(x, bits) {
                Some(nx) => x = nx,
                None => break,
            }
        }
    };

    let min_value = ranges
        .par_iter()
        .map(|&(s, e)| {
            let mut best = f64::INFINITY;
            walk(s, e, &mut |x| {
                best = best.min(eval(x));
                true
            });
            best
        })
        .reduce(|| f64::INFINITY, f64::min);

    let cap = config.witness_cap;
    let mut witnesses: Vec<u64> = ranges
        .par_iter()
        .map(|&(s, e)| {
            let mut found = Vec::new();
            walk(s, e, &mut |x| {
                if eval(x) <= min_value + TIE_TOLERANCE {
                    found.push(x);
                }
                found.len() < cap
            });
            found
        })
        .flatten()
        .collect();
    witnesses.sort_unstable();
    witnesses.truncate(cap);
    let witnesses = witnesses
        .into_iter()
        .map(|x| CubeSet::from_mask(n, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchResult::assemble(
        n,
        m as u64,
        beta,
        side,
        Method::Exhaustive,
        min_value,
        witnesses,
        total,
    ))
}

fn symmetry_reduced(n: Dimension, m: u32, beta: f64, side: Side, config: &SearchConfig) -> Result<SearchResult> {
    let nn = n.get();
    if nn > MAX_SYMMETRY_DIM {
        return Err(Error::out_of_range(
            "n",
            nn,
            format!("symmetry-reduced search requires n <= {MAX_SYMMETRY_DIM}"),
        ));
    }
    let group = HyperoctahedralGroup::new(nn)?;
    let budget = if config.allow_over_budget { u64::MAX } else { config.budget };
    let (reps, _tests) = group.representatives(m, budget)?;
    let table = PowerTable::new(beta);
    let values: Vec<f64> = reps
        .par_iter()
        .map(|&x| table.moment(&histogram(x, nn, side), nn))
        .collect();
    let min_value = values.iter().copied().fold(f64::INFINITY, f64::min);
    let witnesses = reps
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v <= min_value + TIE_TOLERANCE)
        .take(config.witness_cap)
        .map(|(&x, _)| CubeSet::from_mask(n, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchResult::assemble(
        n,
        m as u64,
        beta,
        side,
        Method::SymmetryReduced,
        min_value,
        witnesses,
        reps.len() as u64,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    A,
    B,
    W,
}

/// A labelling of every vertex by one of `A`, `B`, `W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    n: Dimension,
    labels: Vec<Label>,
}

impl Partition {
    pub fn new(n: Dimension, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != n.vertex_count() {
            return Err(Error::Domain(format!(
                "partition has {} labels, expected 2^{n}",
                labels.len()
            )));
        }
        Ok(Partition { n, labels })
    }

    /// Builds `(A, B, W)` from `A` and `W`; `B` is everything else.
    pub fn from_a_and_w(a: &CubeSet, w: &CubeSet) -> Result<Self> {
        if a.dim() != w.dim() || !a.is_disjoint(w) {
            return Err(Error::Domain("A and W must be disjoint subsets of one cube".into()));
        }
        let labels = (0..a.dim().vertex_count() as Vertex)
            .map(|v| {
                if a.contains(v) {
                    Label::A
                } else if w.contains(v) {
                    Label::W
                } else {
                    Label::B
                }
            })
            .collect();
        Partition::new(a.dim(), labels)
    }

    pub fn dim(&self) -> Dimension {
        self.n
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn part(&self, label: Label) -> CubeSet {
        let mut s = CubeSet::empty(self.n);
        for (v, &l) in self.labels.iter().enumerate() {
            if l == label {
                s.insert(v as Vertex);
            }
        }
        s
    }

    /// `|∇(A,B)|`: edges with one end in `A` and the other in `B`.
    pub fn cross_edges(&self) -> u64 {
        let n = self.n.get();
        let mut count = 0;
        for (v, &l) in self.labels.iter().enumerate() {
            if l != Label::A {
                continue;
            }
            for j in 0..n {
                if self.labels[v ^ (1 << j)] == Label::B {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn functional(&self, beta: f64, k: f64) -> f64 {
        let w = self.labels.iter().filter(|&&l| l == Label::W).count();
        self.cross_edges() as f64 + k * (self.n.get() as f64).powf(beta) * w as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionOptimum {
    pub n: Dimension,
    pub beta: f64,
    pub k: f64,
    pub min_value: f64,
    pub cross_edges: u64,
    pub w_size: u64,
    pub witness: Partition,
    pub a_sets_examined: u64,
}

/// Minimum of `|∇(A,B)| + K n^beta |W|` over partitions with `mu(A) = 1/2`.
///
/// For fixed `A` the objective separates over the vertices of `A^c`: a
/// vertex `u` costs `a(u)` (its number of `A`-neighbours) in `B` and
/// `K n^beta` in `W`, so the best colouring puts `u` in `B` iff
/// `a(u) <= K n^beta`.
pub fn min_partition_functional(n: Dimension, beta: f64, k: f64) -> Result<PartitionOptimum> {
    check_beta(beta)?;
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::out_of_range("K", k, "must be finite and >= 0"));
    }
    let nn = n.get();
    if nn > MAX_EXHAUSTIVE_DIM {
        return Err(Error::ResourceRefusal(format!(
            "partition functional is exhaustive and limited to n <= {MAX_EXHAUSTIVE_DIM}"
        )));
    }
    let bits = 1u32 << nn;
    let full = full_mask(nn);
    let penalty = k * (nn as f64).powf(beta);
    let mut best: Option<(f64, u64, u64, u64, u64)> = None;
    let mut examined = 0u64;
    let mut x = first_combination(bits / 2);
    loop {
        examined += 1;
        let rest = !x & full;
        // Bit-sliced count of A-neighbours per vertex.
        let (mut c0, mut c1, mut c2) = (0u64, 0u64, 0u64);
        for j in 0..nn {
            let e = neighbor_mask(x, j) & rest;
            let carry0 = c0 & e;
            c0 ^= e;
            let carry1 = c1 & carry0;
            c1 ^= carry0;
            c2 ^= carry1;
        }
        let mut cross = 0u64;
        let mut w_mask = 0u64;
        for count in 0..=nn as u64 {
            let mut sel = rest;
            for (b, plane) in [c0, c1, c2].iter().enumerate() {
                sel &= if count >> b & 1 == 1 { *plane } else { !*plane };
            }
            if count as f64 <= penalty {
                cross += count * sel.count_ones() as u64;
            } else {
                w_mask |= sel;
            }
        }
        let w_size = w_mask.count_ones() as u64;
        let value = cross as f64 + penalty * w_size as f64;
        if best.is_none_or(|(b, ..)| value < b) {
            best = Some((value, cross, w_size, x, w_mask));
        }
        match gosper_next(x, bits) {
            Some(nx) => x = nx,
            None => break,
        }
    }
    let (min_value, cross_edges, w_size, a_mask, w_mask) = best.expect("at least one half-size set");
    let witness = Partition::from_a_and_w(&CubeSet::from_mask(n, a_mask)?, &CubeSet::from_mask(n, w_mask)?)?;
    Ok(PartitionOptimum {
        n,
        beta,
        k,
        min_value,
        cross_edges,
        w_size,
        witness,
        a_sets_examined: examined,
    })
}
