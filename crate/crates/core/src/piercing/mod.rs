//! Exact `n`-piercing decisions with certificates.
//!
//! A family is `n`-pierceable when some `n` points meet every box. Because
//! pairwise intersecting boxes always share a point, one-piercing reduces to
//! a coordinate-wise fold. Larger budgets are decided by [`PiercingIndex`],
//! which branches over a grid of lower endpoints.

pub(crate) mod bitset;
mod index;
mod interval_witness;

use alloc::vec::Vec;

pub use index::PiercingIndex;
pub use interval_witness::{interval_colorful_witness, IntervalCase, IntervalWitness};

use crate::caps::SearchCaps;
use crate::error::{Error, Result};
use crate::family::{colorful_tuples, ColorSystem, Family};
use crate::geometry::Point;
use bitset::BitSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pierceable,
    NotPierceable,
}

/// Outcome of a piercing query together with the evidence for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiercingCertificate {
    pub verdict: Verdict,
    pub n: usize,
    /// At most `n` points meeting every box (pierceable only).
    pub witness: Option<Vec<Point>>,
    /// Indices of a sub-family that is itself not `n`-pierceable.
    pub violation: Option<Vec<usize>>,
    /// Whether `violation` is the first smallest violating subset in the
    /// search order, rather than the whole-family fallback.
    pub violation_minimal: bool,
}

impl PiercingCertificate {
    pub fn is_pierceable(&self) -> bool {
        self.verdict == Verdict::Pierceable
    }

    fn pierceable(n: usize, witness: Vec<Point>) -> Self {
        PiercingCertificate {
            verdict: Verdict::Pierceable,
            n,
            witness: Some(witness),
            violation: None,
            violation_minimal: false,
        }
    }

    fn violated(n: usize, violation: Vec<usize>, minimal: bool) -> Self {
        PiercingCertificate {
            verdict: Verdict::NotPierceable,
            n,
            witness: None,
            violation: Some(violation),
            violation_minimal: minimal,
        }
    }

    /// Re-checks the certificate against `f` from scratch.
    pub fn validate(&self, f: &Family) -> Result<()> {
        match self.verdict {
            Verdict::Pierceable => {
                let w =
                    self.witness.as_ref().ok_or_else(|| Error::Certificate("pierceable without a witness".into()))?;
                check_witness(f, w, self.n)
            }
            Verdict::NotPierceable => {
                let v = self.violation.as_ref().ok_or_else(|| Error::Certificate("violation list missing".into()))?;
                if v.iter().any(|&i| i >= f.len()) {
                    return Err(Error::Certificate("violation index out of range".into()));
                }
                let index = PiercingIndex::new(f.boxes());
                if index.is_pierceable(v, self.n) {
                    return Err(Error::Certificate(alloc::format!(
                        "violating sub-tuple {v:?} is {}-pierceable",
                        self.n
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Checks that `w` has at most `n` points and every box of `f` contains one.
pub fn check_witness(f: &Family, w: &[Point], n: usize) -> Result<()> {
    if w.len() > n {
        return Err(Error::Certificate(alloc::format!("{} witness points exceed budget {n}", w.len())));
    }
    for (i, b) in f.boxes().iter().enumerate() {
        let mut hit = false;
        for p in w {
            if b.contains_point(p)? {
                hit = true;
                break;
            }
        }
        if !hit {
            return Err(Error::Certificate(alloc::format!("box {i} is missed by the witness")));
        }
    }
    Ok(())
}

/// Helly numbers `h(d, n)` for axis-parallel boxes where finite.
pub fn helly_number(d: usize, n: usize) -> Option<usize> {
    match (d, n) {
        (0, _) | (_, 0) => None,
        (_, 1) => Some(2),
        (1, n) => Some(n + 1),
        (d, 2) if d % 2 == 1 => Some(3 * d),
        (d, 2) => Some(3 * d - 1),
        (2, 3) => Some(16),
        _ => None,
    }
}

/// One-piercing by the coordinate-wise fold.
///
/// The witness is the point of per-axis maxima of the lower ends. On failure
/// the violation is the lexicographically first disjoint pair.
pub fn pierce1(f: &Family) -> Result<PiercingCertificate> {
    f.require_nonempty()?;
    let index = PiercingIndex::new(f.boxes());
    let all = BitSet::from_indices(f.len(), 0..f.len());
    if let Some(p) = index.pierce1(&all) {
        return Ok(PiercingCertificate::pierceable(1, alloc::vec![index.point(&p)]));
    }
    for a in 0..f.len() {
        for b in a + 1..f.len() {
            if !index.intersects(a, b) {
                return Ok(PiercingCertificate::violated(1, alloc::vec![a, b], true));
            }
        }
    }
    Err(Error::Certificate("fold failed but every pair intersects".into()))
}

/// Minimum number of points stabbing a family of intervals, with the points.
pub fn min_stab_intervals(f: &Family) -> Result<(usize, Vec<Point>)> {
    let d = f.require_nonempty()?;
    if d != 1 {
        return Err(Error::NotOneDimensional { dim: d });
    }
    let index = PiercingIndex::new(f.boxes());
    let (points, _) = index.greedy_stab(&BitSet::from_indices(f.len(), 0..f.len()));
    Ok((points.len(), points.iter().map(|p| index.point(p)).collect()))
}

/// Exact `n`-piercing decision with default search caps.
pub fn pierce_n(f: &Family, n: usize) -> Result<PiercingCertificate> {
    pierce_n_with(f, n, &SearchCaps::default())
}

pub fn pierce_n_with(f: &Family, n: usize, caps: &SearchCaps) -> Result<PiercingCertificate> {
    let d = f.require_nonempty()?;
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    if n == 1 {
        return pierce1(f);
    }
    let index = PiercingIndex::new(f.boxes()).with_memo_cap(caps.memo_family);
    let all = BitSet::from_indices(f.len(), 0..f.len());
    if let Some(w) = index.pierce_set(&all, n) {
        return Ok(PiercingCertificate::pierceable(n, w.iter().map(|p| index.point(p)).collect()));
    }
    if d == 1 {
        // The sweep's triggering intervals are pairwise disjoint, so any
        // n + 1 of them already need n + 1 points.
        let (_, chosen) = index.greedy_stab(&all);
        let mut v: Vec<usize> = chosen.into_iter().take(n + 1).collect();
        v.sort_unstable();
        return Ok(PiercingCertificate::violated(n, v, true));
    }
    let (v, minimal) = smallest_violation(&index, f.len(), n, d, caps);
    Ok(PiercingCertificate::violated(n, v, minimal))
}

/// Breadth-first over subset sizes, lexicographic within a size.
fn smallest_violation(index: &PiercingIndex, m: usize, n: usize, d: usize, caps: &SearchCaps) -> (Vec<usize>, bool) {
    let max_size = helly_number(d, n).map_or(m, |h| h.min(m));
    let mut budget = caps.violation_subsets;
    for size in n + 1..=max_size {
        let mut found = None;
        for_each_subset(m, size, &mut |subset| {
            if budget == 0 {
                return false;
            }
            budget -= 1;
            if index.pierce_set(&BitSet::from_indices(m, subset.iter().copied()), n).is_none() {
                found = Some(subset.to_vec());
                return false;
            }
            true
        });
        if let Some(v) = found {
            return (v, true);
        }
        if budget == 0 {
            break;
        }
    }
    ((0..m).collect(), false)
}

/// Calls `visit` on every `k`-subset of `0..m` in lexicographic order until it
/// returns `false`. Returns `true` when the enumeration ran to completion.
pub(crate) fn for_each_subset(m: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k > m {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < m - k + i {
                break;
            }
        }
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Piercing checks over the colorful tuples of one system, with the boxes
/// rank-compressed once.
#[derive(Clone, Debug)]
pub struct ColorfulChecker {
    index: PiercingIndex,
    offsets: Vec<usize>,
}

impl ColorfulChecker {
    pub fn new(c: &ColorSystem) -> Self {
        ColorfulChecker { index: PiercingIndex::new(c.flatten().boxes()), offsets: c.class_offsets() }
    }

    fn members(&self, tuple: &[usize]) -> Vec<usize> {
        tuple.iter().zip(&self.offsets).map(|(&i, &o)| o + i).collect()
    }

    pub fn tuple_pierceable(&self, tuple: &[usize], n: usize) -> bool {
        self.index.is_pierceable(&self.members(tuple), n)
    }

    pub fn tuple_witness(&self, tuple: &[usize], n: usize) -> Option<Vec<Point>> {
        self.index.pierce(&self.members(tuple), n)
    }
}

/// The lexicographically first colorful tuple that is not `n`-pierceable.
pub fn check_all_colorful(c: &ColorSystem, n: usize) -> Result<Option<Vec<usize>>> {
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    let checker = ColorfulChecker::new(c);
    Ok(colorful_tuples(c).find(|t| !checker.tuple_pierceable(t, n)))
}
