//! Symmetry reduction under the hyperoctahedral group (coordinate
//! permutations composed with XOR translations), for `n <= 5`.
//!
//! Orbit representatives are the sets whose ascending vertex list is
//! lexicographically least in the orbit. Under that order, deleting the
//! largest vertex of a representative leaves a representative, so every
//! representative of size `m` is reached from one of size `m - 1` by adding
//! a vertex above its maximum (orderly generation).

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::bitmask::neighbor_mask;
use crate::cube::{CubeSet, Dimension};
use crate::error::{Error, Result};

pub const MAX_SYMMETRY_DIM: u32 = 5;

/// `a` precedes `b` when the smallest vertex in exactly one of them lies in `a`.
/// Only meaningful for masks of equal popcount.
#[inline]
pub fn ascending_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & d & d.wrapping_neg() != 0
}

/// Coordinate permutations of `0..n` in lexicographic order.
fn permutations(n: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u32);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n as usize], &mut out);
    out
}

/// The signed permutation group acting on single-word sets.
pub struct HyperoctahedralGroup {
    n: u32,
    /// `tables[p][byte_index][byte]` = image of those vertices under permutation `p`.
    tables: Vec<Vec<[u64; 256]>>,
}

impl HyperoctahedralGroup {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_SYMMETRY_DIM {
            return Err(Error::out_of_range(
                "n",
                n,
                format!("symmetry reduction supports 1 <= n <= {MAX_SYMMETRY_DIM}"),
            ));
        }
        let nbytes = (1usize << n).div_ceil(8);
        let tables = permutations(n)
            .into_iter()
            .map(|perm| {
                (0..nbytes)
                    .map(|b| {
                        let mut t = [0u64; 256];
                        for (byte, slot) in t.iter_mut().enumerate() {
                            for i in 0..8 {
                                let v = (b * 8 + i) as u32;
                                if byte >> i & 1 == 1 && v < (1u32 << n) {
                                    let img = (0..n).fold(0u32, |acc, j| acc | ((v >> j & 1) << perm[j as usize]));
                                    *slot |= 1u64 << img;
                                }
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        Ok(HyperoctahedralGroup { n, tables })
    }

    pub fn order(&self) -> usize {
        self.tables.len() << self.n
    }

    #[inline]
    fn translate(&self, mut mask: u64, shift: u32) -> u64 {
        for j in 0..self.n {
            if shift >> j & 1 == 1 {
                mask = neighbor_mask(mask, j);
            }
        }
        mask
    }

    #[inline]
    fn permute(&self, table: &[[u64; 256]], mask: u64) -> u64 {
        table
            .iter()
            .enumerate()
            .fold(0, |acc, (b, t)| acc | t[(mask >> (8 * b) & 0xFF) as usize])
    }

    /// Least orbit element in ascending-list order.
    pub fn canonical_mask(&self, mask: u64) -> u64 {
        let mut best = mask;
        for shift in 0..(1u32 << self.n) {
            let t = self.translate(mask, shift);
            for table in &self.tables {
                let img = self.permute(table, t);
                if ascending_less(img, best) {
                    best = img;
                }
            }
        }
        best
    }

    /// Whether `mask` is its own orbit representative.
    pub fn is_canonical(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        // A representative contains vertex 0, and only translations moving a
        // member to 0 can produce a smaller image.
        if mask & 1 == 0 {
            return false;
        }
        let mut members = mask;
        while members != 0 {
            let s = members.trailing_zeros();
            members &= members - 1;
            let t = self.translate(mask, s);
            for table in &self.tables {
                if ascending_less(self.permute(table, t), mask) {
                    return false;
                }
            }
        }
        true
    }

    /// All orbit representatives with exactly `m` vertices, ascending as
    /// integers, plus the number of canonicity tests performed.
    pub fn representatives(&self, m: u32, budget: u64) -> Result<(Vec<u64>, u64)> {
        let vertices = 1u32 << self.n;
        if m > vertices {
            return Err(Error::out_of_range("m", m, format!("need m <= {vertices}")));
        }
        let tests = AtomicU64::new(0);
        let over = |tests: &AtomicU64, add: u64| -> Result<()> {
            let t = tests.fetch_add(add, Ordering::Relaxed) + add;
            if t > budget {
                Err(Error::ResourceRefusal(format!(
                    "symmetry-reduced enumeration exceeded the budget of {budget} canonicity tests"
                )))
            } else {
                Ok(())
            }
        };

        // Expand breadth-first to a frontier wide enough to parallelise, then
        // finish each subtree depth-first.
        let mut frontier = vec![0u64];
        let mut level = 0;
        while level < m && frontier.len() < 256 {
            let mut next = Vec::new();
            for &s in &frontier {
                self.children(s, level, m, &mut next);
            }
            over(&tests, next.len() as u64)?;
            next.retain(|&c| self.is_canonical(c));
            frontier = next;
            level += 1;
        }
        let chunks: Vec<Result<Vec<u64>>> = frontier
            .par_iter()
            .map(|&root| {
                let mut found = Vec::new();
                let mut stack = vec![(root, level)];
                let mut kids = Vec::new();
                while let Some((s, k)) = stack.pop() {
                    if k == m {
                        found.push(s);
                        continue;
                    }
                    kids.clear();
                    self.children(s, k, m, &mut kids);
                    over(&tests, kids.len() as u64)?;
                    for &c in kids.iter().rev() {
                        if self.is_canonical(c) {
                            stack.push((c, k + 1));
                        }
                    }
                }
                Ok(found)
            })
            .collect();
        let mut reps = Vec::new();
        for chunk in chunks {
            reps.extend(chunk?);
        }
        reps.sort_unstable();
        Ok((reps, tests.load(Ordering::Relaxed)))
    }

    /// Supersets of `s` (of size `k`) obtained by adding one vertex above its
    /// maximum, leaving room for `m - k - 1` further vertices.
    fn children(&self, s: u64, k: u32, m: u32, out: &mut Vec<u64>) {
        let vertices = 1u32 << self.n;
        let start = if s == 0 { 0 } else { 64 - s.leading_zeros() };
        let remaining = m - k - 1;
        let mut v = start;
        while v + remaining < vertices {
            out.push(s | 1u64 << v);
            v += 1;
        }
    }
}

/// Least element of the orbit of `a` under the hyperoctahedral group.
pub fn canonical_form(a: &CubeSet) -> Result<CubeSet> {
    let n = a.dim().get();
    let group = HyperoctahedralGroup::new(n)?;
    let mask = a.as_mask().expect("n <= 5 fits one word");
    CubeSet::from_mask(a.dim(), group.canonical_mask(mask))
}

/// Convenience wrapper for callers holding a [`Dimension`].
pub fn group_for(dim: Dimension) -> Result<HyperoctahedralGroup> {
    HyperoctahedralGroup::new(dim.get())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitmask::full_mask;
    use proptest::prelude::*;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    /// Burnside count of orbits on all subsets: average of 2^{cycles(g)}.
    fn burnside_total(n: u32) -> u64 {
        let verts = 1u32 << n;
        let mut sum: u64 = 0;
        for perm in permutations(n) {
            for shift in 0..verts {
                let map = |v: u32| (0..n).fold(0u32, |acc, j| acc | (((v ^ shift) >> j & 1) << perm[j as usize]));
                let mut seen = vec![false; verts as usize];
                let mut cycles = 0;
                for v in 0..verts {
                    if !seen[v as usize] {
                        cycles += 1;
                        let mut w = v;
                        while !seen[w as usize] {
                            seen[w as usize] = true;
                            w = map(w);
                        }
                    }
                }
                sum += 1u64 << cycles;
            }
        }
        sum / (permutations(n).len() as u64 * verts as u64)
    }

    #[test]
    fn canonical_form_examples() {
        let a = CubeSet::from_vertices(dim(2), [1]).unwrap();
        assert_eq!(canonical_form(&a).unwrap().iter().collect::<Vec<_>>(), vec![0]);
        // Both half-cubes of the square reduce to {00, 01}.
        for half in [[1u32, 3], [0, 2], [2, 3]] {
            let a = CubeSet::from_vertices(dim(2), half).unwrap();
            assert_eq!(canonical_form(&a).unwrap().iter().collect::<Vec<_>>(), vec![0, 1]);
        }
        // Diagonals: {0,3} precedes {1,2}.
        let d = CubeSet::from_vertices(dim(2), [1, 2]).unwrap();
        assert_eq!(canonical_form(&d).unwrap().iter().collect::<Vec<_>>(), vec![0, 3]);
        assert!(canonical_form(&CubeSet::empty(dim(6))).is_err());
    }

    #[test]
    fn group_order() {
        assert_eq!(HyperoctahedralGroup::new(3).unwrap().order(), 48);
        assert_eq!(HyperoctahedralGroup::new(5).unwrap().order(), 3840);
    }

    #[test]
    fn orbit_counts_match_burnside() {
        for n in 1..=4u32 {
            let g = HyperoctahedralGroup::new(n).unwrap();
            let total: usize = (0..=(1u32 << n))
                .map(|m| g.representatives(m, u64::MAX).unwrap().0.len())
                .sum();
            assert_eq!(total as u64, burnside_total(n), "n={n}");
        }
        assert_eq!(burnside_total(4), 402);
    }

    #[test]
    fn representatives_are_the_canonical_forms_of_all_sets() {
        let n = 3;
        let g = HyperoctahedralGroup::new(n).unwrap();
        for m in 0..=8 {
            let reps = g.representatives(m, u64::MAX).unwrap().0;
            let mut forms: Vec<u64> = (0..=full_mask(n))
                .filter(|x| x.count_ones() == m)
                .map(|x| g.canonical_mask(x))
                .collect();
            forms.sort_unstable();
            forms.dedup();
            assert_eq!(reps, forms);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = HyperoctahedralGroup::new(4).unwrap();
        assert!(matches!(g.representatives(8, 10), Err(Error::ResourceRefusal(_))));
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent_and_orbit_invariant(
            n in 1u32..=5, raw in any::<u64>(), shift in any::<u32>(), seed in any::<u64>()
        ) {
            let d = dim(n);
            let a = CubeSet::from_mask(d, raw & full_mask(n)).unwrap();
            let c = canonical_form(&a).unwrap();
            prop_assert_eq!(canonical_form(&c).unwrap(), c.clone());
            let mut perm: Vec<u32> = (0..n).collect();
            // Fisher-Yates driven by the seed.
            let mut s = seed;
            for i in (1..n as usize).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let b = a.translate(shift & ((1 << n) - 1)).permute_coordinates(&perm).unwrap();
            prop_assert_eq!(canonical_form(&b).unwrap(), c);
        }
    }
}
