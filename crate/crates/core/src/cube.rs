//! Subsets of the discrete cube `{0,1}^n` and their boundary functionals.
//!
//! Vertex `v` is an integer in `[0, 2^n)`; coordinate `j` is bit `j` of `v`
//! and the neighbour of `v` along `j` is `v ^ (1 << j)`. Sets are dense
//! membership bitmasks packed into `u64` words (vertex `v` is bit `v % 64`
//! of word `v / 64`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::neumaier_sum;

/// Number of cube coordinates, `1 <= n <= 24`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Dimension(u8);

impl Dimension {
    pub const MAX: u32 = 24;

    pub fn new(n: u32) -> Result<Self> {
        if (1..=Self::MAX).contains(&n) {
            Ok(Dimension(n as u8))
        } else {
            Err(Error::Dimension(n))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0 as u32
    }

    /// `2^n`.
    #[inline]
    pub fn vertex_count(self) -> usize {
        1usize << self.0
    }

    fn word_count(self) -> usize {
        (self.vertex_count() / 64).max(1)
    }

    /// Mask of valid bits in word 0 (all ones once `n >= 6`).
    fn low_word_mask(self) -> u64 {
        if self.0 >= 6 {
            u64::MAX
        } else {
            (1u64 << self.vertex_count()) - 1
        }
    }
}

impl<'de> Deserialize<'de> for Dimension {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = u32::deserialize(d)?;
        Dimension::new(n).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type Vertex = u32;

/// Bit masks selecting the vertices whose coordinate `j` is zero, for `j < 6`.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// Moves the bit of `v ^ (1 << j)` to position `v` inside one word (`j < 6`).
#[inline]
pub(crate) fn swap_within_word(w: u64, j: u32) -> u64 {
    let m = LOW_HALF[j as usize];
    let s = 1u32 << j;
    ((w & m) << s) | ((w >> s) & m)
}

/// A subset of `{0,1}^n` stored as a membership bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubeSet {
    dim: Dimension,
    words: Vec<u64>,
}

impl CubeSet {
    pub fn empty(dim: Dimension) -> Self {
        CubeSet {
            dim,
            words: vec![0; dim.word_count()],
        }
    }

    pub fn full(dim: Dimension) -> Self {
        let mut words = vec![u64::MAX; dim.word_count()];
        words[0] &= dim.low_word_mask();
        CubeSet { dim, words }
    }

    /// Builds a set from a single-word mask; requires `n <= 6`.
    pub fn from_mask(dim: Dimension, mask: u64) -> Result<Self> {
        if dim.get() > 6 {
            return Err(Error::out_of_range("n", dim, "single-word masks need n <= 6"));
        }
        if mask & !dim.low_word_mask() != 0 {
            return Err(Error::out_of_range(
                "mask",
                format!("{mask:#x}"),
                format!("bits beyond 2^{dim} vertices"),
            ));
        }
        Ok(CubeSet {
            dim,
            words: vec![mask],
        })
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(dim: Dimension, vertices: I) -> Result<Self> {
        let mut set = Self::empty(dim);
        for v in vertices {
            if v as usize >= dim.vertex_count() {
                return Err(Error::out_of_range("vertex", v, format!("n = {dim}")));
            }
            set.insert(v);
        }
        Ok(set)
    }

    /// Single-word mask when `n <= 6`.
    pub fn as_mask(&self) -> Option<u64> {
        (self.dim.get() <= 6).then(|| self.words[0])
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        let v = v as usize;
        v < self.dim.vertex_count() && (self.words[v >> 6] >> (v & 63)) & 1 == 1
    }

    pub fn insert(&mut self, v: Vertex) {
        let v = v as usize;
        assert!(v < self.dim.vertex_count(), "vertex out of range");
        self.words[v >> 6] |= 1 << (v & 63);
    }

    pub fn remove(&mut self, v: Vertex) {
        let v = v as usize;
        if v < self.dim.vertex_count() {
            self.words[v >> 6] &= !(1 << (v & 63));
        }
    }

    /// Cardinality `|A|`.
    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `mu(A) = |A| / 2^n`, always a dyadic rational.
    pub fn measure(&self) -> f64 {
        self.len() as f64 / self.dim.vertex_count() as f64
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        words[0] &= self.dim.low_word_mask();
        CubeSet {
            dim: self.dim,
            words,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        CubeSet {
            dim: self.dim,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        CubeSet {
            dim: self.dim,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Members in ascending vertex order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some((wi as u32) * 64 + b)
            })
        })
    }

    /// The set `{v : v ^ (1 << j) in A}`, i.e. `A` reflected along coordinate `j`.
    pub fn flip_coordinate(&self, j: u32) -> Self {
        assert!(j < self.dim.get());
        let words = if j < 6 {
            self.words.iter().map(|&w| swap_within_word(w, j)).collect()
        } else {
            let stride = 1usize << (j - 6);
            (0..self.words.len()).map(|w| self.words[w ^ stride]).collect()
        };
        CubeSet {
            dim: self.dim,
            words,
        }
    }

    /// XOR-translation `{v ^ shift : v in A}`.
    pub fn translate(&self, shift: Vertex) -> Self {
        let mut out = self.clone();
        for j in 0..self.dim.get() {
            if (shift >> j) & 1 == 1 {
                out = out.flip_coordinate(j);
            }
        }
        out
    }

    /// Image under the coordinate permutation sending coordinate `j` to `perm[j]`.
    pub fn permute_coordinates(&self, perm: &[u32]) -> Result<Self> {
        let n = self.dim.get() as usize;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| (p as usize) >= n || std::mem::replace(&mut seen[p as usize], true)) {
            return Err(Error::Domain(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let mapped = self.iter().map(|v| {
            (0..n).fold(0u32, |acc, j| acc | (((v >> j) & 1) << perm[j]))
        });
        Self::from_vertices(self.dim, mapped)
    }

    /// Lowercase hex of the bitmask, little-endian by vertex index, prefixed `n=<n>:`.
    pub fn to_hex(&self) -> String {
        let nbytes = (self.dim.vertex_count() / 8).max(1);
        let mut s = format!("n={}:", self.dim);
        for b in 0..nbytes {
            let byte = (self.words[b / 8] >> ((b % 8) * 8)) & 0xFF;
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("cube set {s:?}: {msg}"));
        let rest = s.strip_prefix("n=").ok_or_else(|| bad("missing `n=` prefix"))?;
        let (n, hex) = rest.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let n: u32 = n.parse().map_err(|_| bad("dimension is not an integer"))?;
        let dim = Dimension::new(n)?;
        let nbytes = (dim.vertex_count() / 8).max(1);
        if hex.len() != 2 * nbytes {
            return Err(bad(&format!("expected {} hex digits", 2 * nbytes)));
        }
        if hex.bytes().any(|c| !(c.is_ascii_digit() || (b'a'..=b'f').contains(&c))) {
            return Err(bad("expected lowercase hex digits"));
        }
        let mut set = Self::empty(dim);
        for b in 0..nbytes {
            let byte = u64::from_str_radix(&hex[2 * b..2 * b + 2], 16).map_err(|_| bad("invalid hex"))?;
            set.words[b / 8] |= byte << ((b % 8) * 8);
        }
        if set.words[0] & !dim.low_word_mask() != 0 {
            return Err(bad("bits set beyond the vertex range"));
        }
        Ok(set)
    }
}

impl fmt::Debug for CubeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Display for CubeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for CubeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_hex(s)
    }
}

impl Serialize for CubeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CubeSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Per-vertex integer boundary counts (`h_A`, `h_{A^c}` or `w_A`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryProfile {
    dim: Dimension,
    values: Vec<u8>,
}

impl BoundaryProfile {
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// `counts[k] = #{v : value(v) = k}` for `k = 0..=n`.
    pub fn histogram(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.dim.get() as usize + 1];
        for &v in &self.values {
            counts[v as usize] += 1;
        }
        counts
    }

    /// Sum of all values.
    pub fn total(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }

    /// Vertices with a nonzero value (for `h_A` this is the vertex boundary of `A`).
    pub fn support(&self) -> CubeSet {
        let mut s = CubeSet::empty(self.dim);
        for (v, &x) in self.values.iter().enumerate() {
            if x != 0 {
                s.insert(v as Vertex);
            }
        }
        s
    }

    fn add(&self, other: &Self) -> Self {
        BoundaryProfile {
            dim: self.dim,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Which boundary function a moment is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `h_A`.
    OneSidedH,
    /// `h_{A^c}`.
    OneSidedHComplement,
    /// `w_A = h_A + h_{A^c}`.
    TwoSidedW,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::OneSidedH => "h",
            Side::OneSidedHComplement => "hc",
            Side::TwoSidedW => "w",
        }
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h" | "one_sided_h" => Ok(Side::OneSidedH),
            "hc" | "one_sided_h_complement" => Ok(Side::OneSidedHComplement),
            "w" | "two_sided_w" => Ok(Side::TwoSidedW),
            _ => Err(Error::Parse(format!("unknown side {s:?} (expected h, hc or w)"))),
        }
    }
}

/// `E f^beta` of a boundary function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moment {
    pub value: f64,
    /// Present when `beta = 1`: `value = exact_numerator / 2^n`.
    pub exact_numerator: Option<u64>,
}

/// `h_A(v) = #{j : v in A, v ^ 2^j not in A}`, zero off `A`.
pub fn h_profile(a: &CubeSet) -> BoundaryProfile {
    let dim = a.dim();
    let mut values = vec![0u8; dim.vertex_count()];
    for j in 0..dim.get() {
        let nb = a.flip_coordinate(j);
        for (wi, (&w, &o)) in a.words().iter().zip(nb.words()).enumerate() {
            let mut e = w & !o;
            while e != 0 {
                let b = e.trailing_zeros() as usize;
                e &= e - 1;
                values[wi * 64 + b] += 1;
            }
        }
    }
    BoundaryProfile { dim, values }
}

/// `w_A = h_A + h_{A^c}` pointwise.
pub fn w_profile(a: &CubeSet) -> BoundaryProfile {
    h_profile(a).add(&h_profile(&a.complement()))
}

pub fn profile(a: &CubeSet, side: Side) -> BoundaryProfile {
    match side {
        Side::OneSidedH => h_profile(a),
        Side::OneSidedHComplement => h_profile(&a.complement()),
        Side::TwoSidedW => w_profile(a),
    }
}

/// `2^{-n} sum_k counts[k] k^beta` over `k >= 1`, compensated.
pub fn moment_from_histogram(dim: Dimension, counts: &[u64], beta: f64) -> f64 {
    let s = neumaier_sum(
        counts
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| c as f64 * (k as f64).powf(beta)),
    );
    s / dim.vertex_count() as f64
}

/// `E f^beta` for the selected boundary function, with `0^beta = 0`.
pub fn moment(a: &CubeSet, beta: f64, side: Side) -> Result<Moment> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::out_of_range("beta", beta, "must be finite and >= 0"));
    }
    let prof = profile(a, side);
    let counts = prof.histogram();
    let value = moment_from_histogram(a.dim(), &counts, beta);
    let exact_numerator = (beta == 1.0).then(|| prof.total());
    Ok(Moment {
        value,
        exact_numerator,
    })
}

/// `|∇A|`, the number of edges between `A` and `A^c`.
pub fn edge_boundary_size(a: &CubeSet) -> u64 {
    h_profile(a).total()
}

/// The subcube `{v : bits 0..k-1 of v are zero}` of co-dimension `k`.
pub fn subcube(dim: Dimension, k: u32) -> Result<CubeSet> {
    if k > dim.get() {
        return Err(Error::out_of_range("k", k, format!("co-dimension must be <= n = {dim}")));
    }
    let low = (1u32 << k) - 1;
    CubeSet::from_vertices(dim, (0..dim.vertex_count() as u32).filter(|v| v & low == 0))
}

/// Hamming ball `{v : |v ^ center| <= floor(r)}`; empty for `r < 0`.
pub fn hamming_ball(dim: Dimension, center: Vertex, r: f64) -> Result<CubeSet> {
    if center as usize >= dim.vertex_count() {
        return Err(Error::out_of_range("center", center, format!("n = {dim}")));
    }
    if r.is_nan() {
        return Err(Error::out_of_range("r", r, "radius is NaN"));
    }
    if r < 0.0 {
        return Ok(CubeSet::empty(dim));
    }
    let radius = r.floor().min(dim.get() as f64) as u32;
    CubeSet::from_vertices(
        dim,
        (0..dim.vertex_count() as u32).filter(|v| (v ^ center).count_ones() <= radius),
    )
}

/// Hamming sphere `{v : |v ^ center| = r}`.
pub fn hamming_sphere(dim: Dimension, center: Vertex, r: u32) -> Result<CubeSet> {
    if center as usize >= dim.vertex_count() {
        return Err(Error::out_of_range("center", center, format!("n = {dim}")));
    }
    CubeSet::from_vertices(
        dim,
        (0..dim.vertex_count() as u32).filter(|v| (v ^ center).count_ones() == r),
    )
}

/// Whether `A` is a subcube of some co-dimension, in any position.
pub fn is_subcube(a: &CubeSet) -> bool {
    let Some(first) = a.iter().next() else {
        return false;
    };
    let n = a.dim().get();
    let free: Vec<u32> = (0..n).filter(|&j| a.flip_coordinate(j) == *a).collect();
    if a.len() != 1u64 << free.len() {
        return false;
    }
    let free_mask: u32 = free.iter().map(|j| 1u32 << j).sum();
    a.iter().all(|v| (v ^ first) & !free_mask == 0)
}

/// Whether `A` equals some Hamming ball `B(c, r)`; brute force over centres.
pub fn is_hamming_ball(a: &CubeSet) -> bool {
    if a.is_empty() {
        return false;
    }
    let dim = a.dim();
    let size = a.len();
    (0..dim.vertex_count() as u32).any(|c| {
        if !a.contains(c) {
            return false;
        }
        let radius = a.iter().map(|v| (v ^ c).count_ones()).max().unwrap_or(0);
        let ball_size: u64 = (0..=radius)
            .map(|i| crate::numeric::binomial_u64(dim.get() as u64, i as u64))
            .sum();
        ball_size == size
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn set(n: u32, vs: &[u32]) -> CubeSet {
        CubeSet::from_vertices(dim(n), vs.iter().copied()).unwrap()
    }

    #[test]
    fn dimension_bounds() {
        assert!(Dimension::new(0).is_err());
        assert!(Dimension::new(25).is_err());
        assert_eq!(Dimension::new(24).unwrap().vertex_count(), 1 << 24);
    }

    #[test]
    fn h_profile_examples() {
        assert_eq!(h_profile(&set(2, &[0, 1])).values(), &[1, 1, 0, 0]);
        let single = h_profile(&set(3, &[0]));
        assert_eq!(single.values(), &[3, 0, 0, 0, 0, 0, 0, 0]);
        for n in 1..=8 {
            assert_eq!(h_profile(&CubeSet::full(dim(n))).total(), 0);
        }
    }

    #[test]
    fn w_profile_examples() {
        assert_eq!(w_profile(&set(2, &[0, 1])).values(), &[1, 1, 1, 1]);
        assert_eq!(w_profile(&CubeSet::empty(dim(3))).total(), 0);
        assert_eq!(w_profile(&set(2, &[0, 3])).values(), &[2, 2, 2, 2]);
    }

    #[test]
    fn moment_examples() {
        let beta0 = 1.5f64.log2();
        let m = moment(&set(2, &[0]), beta0, Side::OneSidedH).unwrap();
        assert!((m.value - 0.375).abs() < 1e-15);
        let half = subcube(dim(3), 1).unwrap();
        for beta in [0.0, 0.3, 0.5, 1.0, 2.0] {
            assert_eq!(moment(&half, beta, Side::OneSidedH).unwrap().value, 0.5);
        }
        let m = moment(&set(2, &[0, 1]), 1.0, Side::OneSidedH).unwrap();
        assert_eq!(m.value, 0.5);
        assert_eq!(m.exact_numerator, Some(2));
        assert!(moment(&half, -0.1, Side::OneSidedH).is_err());
    }

    #[test]
    fn beta_zero_ignores_interior() {
        // 0^0 = 0: beta = 0 measures the vertex boundary.
        let a = subcube(dim(4), 1).unwrap();
        assert_eq!(moment(&a, 0.0, Side::OneSidedH).unwrap().value, 0.5);
        assert_eq!(moment(&CubeSet::full(dim(4)), 0.0, Side::OneSidedH).unwrap().value, 0.0);
    }

    #[test]
    fn subcube_examples() {
        assert_eq!(subcube(dim(3), 0).unwrap(), CubeSet::full(dim(3)));
        assert_eq!(subcube(dim(3), 3).unwrap(), set(3, &[0]));
        let beta0 = 1.5f64.log2();
        let v = moment(&subcube(dim(4), 2).unwrap(), beta0, Side::OneSidedH).unwrap().value;
        assert!((v - 0.375).abs() < 1e-15);
        assert!(subcube(dim(3), 4).is_err());
        for n in 1..=9 {
            for k in 0..=n {
                let s = subcube(dim(n), k).unwrap();
                let p = h_profile(&s);
                for v in 0..(1u32 << n) {
                    assert_eq!(p.values()[v as usize] as u32, if s.contains(v) { k } else { 0 });
                }
            }
        }
    }

    #[test]
    fn hamming_ball_examples() {
        let b = hamming_ball(dim(3), 0, 1.0).unwrap();
        assert_eq!(b, set(3, &[0, 1, 2, 4]));
        assert_eq!(b.measure(), 0.5);
        assert_eq!(hamming_ball(dim(4), 5, 4.0).unwrap(), CubeSet::full(dim(4)));
        assert_eq!(hamming_ball(dim(4), 5, 9.5).unwrap(), CubeSet::full(dim(4)));
        assert_eq!(hamming_ball(dim(2), 0, 1.0).unwrap().len(), 3);
        assert_eq!(hamming_ball(dim(2), 0, 1.7).unwrap().len(), 3);
        assert!(hamming_ball(dim(2), 4, 1.0).is_err());
    }

    #[test]
    fn hex_format() {
        assert_eq!(set(2, &[0, 1]).to_hex(), "n=2:03");
        assert_eq!(set(4, &[0, 9]).to_hex(), "n=4:0102");
        let big = set(7, &[0, 64, 127]);
        let hex = big.to_hex();
        assert_eq!(hex.len(), "n=7:".len() + 32);
        assert_eq!(CubeSet::from_hex(&hex).unwrap(), big);
        assert!(CubeSet::from_hex("n=2:13").is_err());
        assert!(CubeSet::from_hex("n=2:0").is_err());
        assert!(CubeSet::from_hex("n=3:AB").is_err());
        assert!(CubeSet::from_hex("3:ab").is_err());
    }

    #[test]
    fn flips_across_word_boundaries() {
        let a = set(8, &[0, 3, 70, 200]);
        for j in 0..8 {
            let f = a.flip_coordinate(j);
            let expect: Vec<u32> = {
                let mut v: Vec<u32> = a.iter().map(|x| x ^ (1 << j)).collect();
                v.sort();
                v
            };
            assert_eq!(f.iter().collect::<Vec<_>>(), expect);
        }
    }

    #[test]
    fn subcube_and_ball_recognition() {
        assert!(is_subcube(&subcube(dim(4), 2).unwrap().translate(0b1010)));
        assert!(is_subcube(&set(3, &[5])));
        assert!(!is_subcube(&set(2, &[0, 3])));
        assert!(!is_subcube(&CubeSet::empty(dim(3))));
        assert!(is_hamming_ball(&hamming_ball(dim(4), 6, 1.0).unwrap()));
        assert!(is_hamming_ball(&set(3, &[2])));
        assert!(!is_hamming_ball(&set(3, &[0, 3])));
    }

    #[test]
    fn permutation_validation() {
        let a = set(3, &[1]);
        assert_eq!(a.permute_coordinates(&[2, 0, 1]).unwrap(), set(3, &[4]));
        assert!(a.permute_coordinates(&[0, 0, 1]).is_err());
        assert!(a.permute_coordinates(&[0, 1]).is_err());
    }
}
