//! Single-word kernels for cubes of dimension `n <= 6` (at most 64 vertices).
//!
//! Sets are plain `u64` masks. Boundary histograms are computed with a
//! bit-sliced counter over the `n` per-direction boundary masks, so a
//! full moment evaluation is a handful of word operations.

use crate::cube::{swap_within_word, Side};

/// Largest dimension handled by the single-word kernels.
pub const MAX_MASK_DIM: u32 = 6;

#[inline]
pub fn full_mask(n: u32) -> u64 {
    debug_assert!(n <= MAX_MASK_DIM);
    if n == 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

/// Next larger integer with the same popcount (Gosper's hack), or `None`
/// once the result would leave the low `bits` bits.
#[inline]
pub fn gosper_next(x: u64, bits: u32) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let (r, overflow) = x.overflowing_add(c);
    if overflow || r == 0 {
        return None;
    }
    let next = (((r ^ x) >> 2) / c) | r;
    if bits < 64 && next >> bits != 0 {
        None
    } else {
        Some(next)
    }
}

/// Smallest mask with `k` bits set.
#[inline]
pub fn first_combination(k: u32) -> u64 {
    if k == 0 {
        0
    } else if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Mask of colex rank `rank` among `k`-subsets (colex order = ascending integer order).
pub fn colex_unrank(mut rank: u64, k: u32) -> u64 {
    let mut mask = 0u64;
    for i in (1..=k as u64).rev() {
        // Largest c with C(c, i) <= rank.
        let mut c = i - 1;
        while choose(c + 1, i) <= rank {
            c += 1;
        }
        rank -= choose(c, i);
        mask |= 1u64 << c;
    }
    mask
}

/// Colex rank of a mask among masks of equal popcount.
pub fn colex_rank(mask: u64) -> u64 {
    let mut rank = 0;
    let mut m = mask;
    let mut i = 1u64;
    while m != 0 {
        let c = m.trailing_zeros() as u64;
        rank += choose(c, i);
        m &= m - 1;
        i += 1;
    }
    rank
}

/// Neighbour-membership mask: bit `v` is set iff `v ^ (1 << j)` is in `mask`.
#[inline]
pub fn neighbor_mask(mask: u64, j: u32) -> u64 {
    swap_within_word(mask, j)
}

/// Bit-sliced per-vertex counts of the `n` direction masks; returns the
/// three count bit-planes (counts never exceed 6).
#[inline]
fn bit_sliced_counts(mut direction: impl FnMut(u32) -> u64, n: u32) -> [u64; 3] {
    let (mut c0, mut c1, mut c2) = (0u64, 0u64, 0u64);
    for j in 0..n {
        let e = direction(j);
        let carry0 = c0 & e;
        c0 ^= e;
        let carry1 = c1 & carry0;
        c1 ^= carry0;
        c2 ^= carry1;
    }
    [c0, c1, c2]
}

#[inline]
fn histogram_from_planes(planes: [u64; 3], domain: u64, n: u32) -> [u64; 7] {
    let mut counts = [0u64; 7];
    for (k, slot) in counts.iter_mut().enumerate().take(n as usize + 1) {
        let mut sel = domain;
        for (b, plane) in planes.iter().enumerate() {
            sel &= if (k >> b) & 1 == 1 { *plane } else { !*plane };
        }
        *slot = sel.count_ones() as u64;
    }
    counts
}

/// Histogram of `h_A` over all vertices (`counts[0]` includes `A^c`).
#[inline]
pub fn h_histogram(mask: u64, n: u32) -> [u64; 7] {
    let planes = bit_sliced_counts(|j| mask & !neighbor_mask(mask, j), n);
    histogram_from_planes(planes, full_mask(n), n)
}

/// Histogram of `w_A` over all vertices.
#[inline]
pub fn w_histogram(mask: u64, n: u32) -> [u64; 7] {
    let planes = bit_sliced_counts(|j| mask ^ neighbor_mask(mask, j), n);
    histogram_from_planes(planes, full_mask(n), n)
}

#[inline]
pub fn histogram(mask: u64, n: u32, side: Side) -> [u64; 7] {
    match side {
        Side::OneSidedH => h_histogram(mask, n),
        Side::OneSidedHComplement => h_histogram(!mask & full_mask(n), n),
        Side::TwoSidedW => w_histogram(mask, n),
    }
}

/// `|∇A|` for a single-word set.
#[inline]
pub fn edge_boundary(mask: u64, n: u32) -> u64 {
    (0..n)
        .map(|j| (mask & !neighbor_mask(mask, j)).count_ones() as u64)
        .sum()
}

/// Precomputed `k^beta` for `k = 0..=6` with `0^beta = 0`.
#[derive(Debug, Clone, Copy)]
pub struct PowerTable([f64; 7]);

impl PowerTable {
    pub fn new(beta: f64) -> Self {
        let mut t = [0.0; 7];
        for (k, slot) in t.iter_mut().enumerate().skip(1) {
            *slot = (k as f64).powf(beta);
        }
        PowerTable(t)
    }

    /// Same value as [`crate::cube::moment_from_histogram`] for the same counts.
    #[inline]
    pub fn moment(&self, counts: &[u64; 7], n: u32) -> f64 {
        let s = crate::numeric::neumaier_sum(
            (1..=n as usize)
                .filter(|&k| counts[k] != 0)
                .map(|k| counts[k] as f64 * self.0[k]),
        );
        s / (1u64 << n) as f64
    }
}
