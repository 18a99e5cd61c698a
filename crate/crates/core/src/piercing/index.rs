//! Rank-compressed piercing engine.
//!
//! Whether a family is `n`-pierceable depends only on the order of the
//! endpoints on each axis, so boxes are rewritten with per-axis ranks once
//! and every query afterwards runs on small integers. Witness points are
//! mapped back to the original rationals on the way out.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::bitset::BitSet;
use crate::geometry::{AxisBox, Point};
use crate::rational::Rational;

/// A point in rank coordinates.
pub(crate) type RankPoint = Vec<u32>;

/// Answers to `(members, budget)` sub-queries.
type Memo = BTreeMap<(BitSet, usize), Option<Vec<RankPoint>>>;

/// A list of boxes prepared for repeated piercing queries on its sub-families.
#[derive(Clone, Debug)]
pub struct PiercingIndex {
    dim: usize,
    len: usize,
    lo: Vec<u32>,
    hi: Vec<u32>,
    /// Distinct endpoint values per axis, ascending.
    values: Vec<Vec<Rational>>,
    /// `stab[j][v]`: boxes whose axis-`j` projection contains rank `v`.
    stab: Vec<Vec<BitSet>>,
    memo_cap: usize,
}

impl PiercingIndex {
    /// All boxes must share one dimension (checked by [`crate::Family`]).
    pub fn new(boxes: &[AxisBox]) -> Self {
        let dim = boxes.first().map_or(1, AxisBox::dim);
        let len = boxes.len();
        let mut values = Vec::with_capacity(dim);
        let mut lo = alloc::vec![0u32; len * dim];
        let mut hi = alloc::vec![0u32; len * dim];
        for j in 0..dim {
            let mut vals: Vec<Rational> =
                boxes.iter().flat_map(|b| [b.side(j).lo().clone(), b.side(j).hi().clone()]).collect();
            vals.sort();
            vals.dedup();
            for (i, b) in boxes.iter().enumerate() {
                lo[i * dim + j] = vals.binary_search(b.side(j).lo()).unwrap() as u32;
                hi[i * dim + j] = vals.binary_search(b.side(j).hi()).unwrap() as u32;
            }
            values.push(vals);
        }
        let stab = (0..dim)
            .map(|j| {
                (0..values[j].len() as u32)
                    .map(|v| {
                        BitSet::from_indices(len, (0..len).filter(|&i| lo[i * dim + j] <= v && v <= hi[i * dim + j]))
                    })
                    .collect()
            })
            .collect();
        PiercingIndex { dim, len, lo, hi, values, stab, memo_cap: 24 }
    }

    /// Sub-queries on at most `cap` boxes are memoized on the missed subset.
    pub fn with_memo_cap(mut self, cap: usize) -> Self {
        self.memo_cap = cap;
        self
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Decides whether the boxes at `members` are `n`-pierceable.
    pub fn is_pierceable(&self, members: &[usize], n: usize) -> bool {
        self.pierce(members, n).is_some()
    }

    /// A witness of at most `n` points for the boxes at `members`, if one exists.
    pub fn pierce(&self, members: &[usize], n: usize) -> Option<Vec<Point>> {
        self.pierce_set(&self.set_of(members), n).map(|pts| pts.iter().map(|p| self.point(p)).collect())
    }

    pub(crate) fn set_of(&self, members: &[usize]) -> BitSet {
        BitSet::from_indices(self.len, members.iter().copied())
    }

    pub(crate) fn point(&self, p: &[u32]) -> Point {
        Point(p.iter().enumerate().map(|(j, &v)| self.values[j][v as usize].clone()).collect())
    }

    #[inline]
    fn lo(&self, i: usize, j: usize) -> u32 {
        self.lo[i * self.dim + j]
    }

    #[inline]
    fn hi(&self, i: usize, j: usize) -> u32 {
        self.hi[i * self.dim + j]
    }

    /// Inclusion-maximal hit sets over the grid of lower endpoints, each with
    /// the first grid point (odometer order, last axis fastest) attaining it.
    /// Fails with the grid size when it exceeds `cap`.
    pub(crate) fn maximal_hit_sets(&self, set: &BitSet, cap: u64) -> Result<Vec<(RankPoint, BitSet)>, u64> {
        let axes: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| {
                let mut v: Vec<u32> = set.iter().map(|i| self.lo(i, j)).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let size = axes.iter().fold(1u64, |acc, a| acc.saturating_mul(a.len() as u64));
        if size > cap {
            return Err(size);
        }
        if set.is_empty() {
            return Ok(Vec::new());
        }
        let mut seen: BTreeSet<BitSet> = BTreeSet::new();
        let mut found: Vec<(RankPoint, BitSet)> = Vec::new();
        let mut odometer = alloc::vec![0usize; self.dim];
        loop {
            let mut hit = set.clone();
            for (j, &k) in odometer.iter().enumerate() {
                hit.intersect_with(&self.stab[j][axes[j][k] as usize]);
            }
            if seen.insert(hit.clone()) {
                found.push((odometer.iter().enumerate().map(|(j, &k)| axes[j][k]).collect(), hit));
            }
            let mut j = self.dim;
            loop {
                if j == 0 {
                    let maximal = found
                        .iter()
                        .filter(|(_, a)| !found.iter().any(|(_, b)| a != b && a.is_subset(b)))
                        .cloned()
                        .collect();
                    return Ok(maximal);
                }
                j -= 1;
                odometer[j] += 1;
                if odometer[j] < axes[j].len() {
                    break;
                }
                odometer[j] = 0;
            }
        }
    }

    pub(crate) fn intersects(&self, a: usize, b: usize) -> bool {
        (0..self.dim).all(|j| self.lo(a, j) <= self.hi(b, j) && self.lo(b, j) <= self.hi(a, j))
    }

    /// Point of per-axis maxima of lower ends, if it lies in every box.
    pub(crate) fn pierce1(&self, set: &BitSet) -> Option<RankPoint> {
        let mut p = alloc::vec![0u32; self.dim];
        let mut cap = alloc::vec![u32::MAX; self.dim];
        for i in set.iter() {
            for j in 0..self.dim {
                p[j] = p[j].max(self.lo(i, j));
                cap[j] = cap[j].min(self.hi(i, j));
            }
        }
        p.iter().zip(&cap).all(|(a, b)| a <= b).then_some(p)
    }

    /// Right-endpoint sweep for `d = 1`. Returns the stab points and the
    /// intervals that triggered them; the latter are pairwise disjoint.
    pub(crate) fn greedy_stab(&self, set: &BitSet) -> (Vec<RankPoint>, Vec<usize>) {
        debug_assert_eq!(self.dim, 1);
        let mut order: Vec<usize> = set.iter().collect();
        order.sort_by_key(|&i| (self.hi(i, 0), i));
        let mut points = Vec::new();
        let mut chosen = Vec::new();
        let mut last: Option<u32> = None;
        for i in order {
            if last.is_some_and(|x| self.lo(i, 0) <= x) {
                continue;
            }
            let x = self.hi(i, 0);
            points.push(alloc::vec![x]);
            chosen.push(i);
            last = Some(x);
        }
        (points, chosen)
    }

    pub(crate) fn pierce_set(&self, set: &BitSet, n: usize) -> Option<Vec<RankPoint>> {
        let mut memo = (set.len() <= self.memo_cap).then(BTreeMap::new);
        self.solve(set, n, &mut memo)
    }

    fn solve(&self, set: &BitSet, n: usize, memo: &mut Option<Memo>) -> Option<Vec<RankPoint>> {
        if set.is_empty() {
            return Some(Vec::new());
        }
        if n == 0 {
            return None;
        }
        if let Some(p) = self.pierce1(set) {
            return Some(alloc::vec![p]);
        }
        if n == 1 {
            return None;
        }
        if self.dim == 1 {
            let (points, _) = self.greedy_stab(set);
            return (points.len() <= n).then_some(points);
        }
        if let Some(m) = memo.as_ref() {
            if let Some(hit) = m.get(&(set.clone(), n)) {
                return hit.clone();
            }
        }
        let result = self.branch(set, n, memo);
        if let Some(m) = memo.as_mut() {
            m.insert((set.clone(), n), result.clone());
        }
        result
    }

    /// Some point must pierce the first box; after snapping it to the
    /// coordinate-wise max of the lower ends of the boxes it hits, each of its
    /// coordinates is a lower end lying inside that box's projection.
    fn branch(&self, set: &BitSet, n: usize, memo: &mut Option<Memo>) -> Option<Vec<RankPoint>> {
        let anchor = set.first()?;
        let candidates: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| {
                let (a, b) = (self.lo(anchor, j), self.hi(anchor, j));
                let mut c: Vec<u32> = set.iter().map(|i| self.lo(i, j)).filter(|&v| a <= v && v <= b).collect();
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        let mut odometer = alloc::vec![0usize; self.dim];
        let mut seen: BTreeSet<BitSet> = BTreeSet::new();
        loop {
            let mut hit = set.clone();
            for (j, &k) in odometer.iter().enumerate() {
                hit.intersect_with(&self.stab[j][candidates[j][k] as usize]);
            }
            let missed = set.difference(&hit);
            if seen.insert(missed.clone()) {
                if let Some(mut rest) = self.solve(&missed, n - 1, memo) {
                    let p = odometer.iter().enumerate().map(|(j, &k)| candidates[j][k]).collect();
                    rest.insert(0, p);
                    return Some(rest);
                }
            }
            let mut j = self.dim;
            loop {
                if j == 0 {
                    return None;
                }
                j -= 1;
                odometer[j] += 1;
                if odometer[j] < candidates[j].len() {
                    break;
                }
                odometer[j] = 0;
            }
        }
    }
}
