//! Constructive colorful Helly for intervals.
//!
//! Given `n + 1` classes of intervals whose colorful `(n + 1)`-tuples are all
//! `n`-pierceable, produce a class `i`, one representative from every other
//! class, and at most `n` points piercing class `i` together with the
//! representatives.
//!
//! If every colorful pair meets, a class with a common point exists and the
//! representatives (pairwise meeting) share a second point. Otherwise let `r`
//! be the size of the largest pairwise disjoint colorful tuple. Among all such
//! `r`-tuples, sorted left to right, fix the first slot to an interval with the
//! largest left end `a_1`, then among the survivors fix the second slot with the
//! largest left end `a_2`, and so on. The chosen intervals `J_1 < ... < J_r`
//! come from `r` classes; every remaining class is pierced by `{a_1, ..., a_r}`.

use alloc::vec::Vec;

use crate::caps::SearchCaps;
use crate::error::{Error, Result};
use crate::family::ColorSystem;
use crate::geometry::{common_intersection, Point};
use crate::rational::Rational;

use super::check_all_colorful;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalCase {
    /// Every colorful pair intersects.
    PairwiseIntersecting,
    /// A disjoint colorful pair exists; `r` is the largest disjoint colorful tuple.
    DisjointTuples { r: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalWitness {
    pub class: usize,
    /// `(class, index)` for every class other than `class`, ascending by class.
    pub representatives: Vec<(usize, usize)>,
    pub witness: Vec<Point>,
    pub case: IntervalCase,
}

#[derive(Clone, Debug)]
struct Item<'a> {
    class: usize,
    index: usize,
    lo: &'a Rational,
    hi: &'a Rational,
}

impl Item<'_> {
    fn key(&self) -> (usize, usize) {
        (self.class, self.index)
    }
}

pub fn interval_colorful_witness(c: &ColorSystem, n: usize) -> Result<IntervalWitness> {
    if c.dim() != 1 {
        return Err(Error::NotOneDimensional { dim: c.dim() });
    }
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    if c.num_classes() != n + 1 {
        return Err(Error::InvalidParameter(alloc::format!(
            "expected {} classes for n = {n}, got {}",
            n + 1,
            c.num_classes()
        )));
    }
    if let Some(tuple) = check_all_colorful(c, n)? {
        return Err(Error::PremiseViolated { tuple, n });
    }
    let items: Vec<Vec<Item<'_>>> = c
        .classes()
        .iter()
        .enumerate()
        .map(|(k, f)| {
            f.boxes()
                .iter()
                .enumerate()
                .map(|(i, b)| Item { class: k, index: i, lo: b.side(0).lo(), hi: b.side(0).hi() })
                .collect()
        })
        .collect();

    let out = if colorful_pairs_meet(&items) { pairwise_case(c, &items, n)? } else { disjoint_case(&items, n)? };
    verify(c, &out, n)?;
    Ok(out)
}

fn meets(a: &Item<'_>, b: &Item<'_>) -> bool {
    a.lo <= b.hi && b.lo <= a.hi
}

fn colorful_pairs_meet(items: &[Vec<Item<'_>>]) -> bool {
    items
        .iter()
        .enumerate()
        .all(|(k, ck)| items[k + 1..].iter().all(|cl| ck.iter().all(|a| cl.iter().all(|b| meets(a, b)))))
}

fn point1(x: &Rational) -> Point {
    Point(alloc::vec![x.clone()])
}

fn pairwise_case(c: &ColorSystem, items: &[Vec<Item<'_>>], n: usize) -> Result<IntervalWitness> {
    for (i, class) in c.classes().iter().enumerate() {
        let Some(common) = common_intersection(class.boxes())? else {
            continue;
        };
        let common = common.side(0).clone();
        let others = (0..items.len()).filter(|&k| k != i);
        if n == 1 {
            // Two classes: the representative must meet the common interval.
            let mut reps = Vec::new();
            let mut point = common.lo().clone();
            let mut ok = true;
            for k in others {
                match items[k].iter().find(|it| it.lo <= common.hi() && common.lo() <= it.hi) {
                    Some(it) => {
                        point = it.lo.max_ref(common.lo()).clone();
                        reps.push(it.key());
                    }
                    None => ok = false,
                }
            }
            if ok {
                return Ok(IntervalWitness {
                    class: i,
                    representatives: reps,
                    witness: alloc::vec![point1(&point)],
                    case: IntervalCase::PairwiseIntersecting,
                });
            }
            continue;
        }
        let reps: Vec<(usize, usize)> = others.map(|k| (k, 0)).collect();
        let mut witness = alloc::vec![point1(common.lo())];
        // Representatives are pairwise meeting intervals, so they share a point.
        let shared = reps.iter().map(|&(k, idx)| items[k][idx].lo).max();
        if let Some(b) = shared {
            if b != common.lo() {
                witness.push(point1(b));
            }
        }
        return Ok(IntervalWitness {
            class: i,
            representatives: reps,
            witness,
            case: IntervalCase::PairwiseIntersecting,
        });
    }
    Err(Error::Certificate("no class has a common point although all colorful pairs meet".into()))
}

/// All pairwise disjoint colorful tuples of maximum size, each sorted left to right.
fn largest_disjoint_tuples<'a>(items: &'a [Vec<Item<'a>>]) -> Result<Vec<Vec<&'a Item<'a>>>> {
    let work = items.iter().fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64 + 1));
    let cap = SearchCaps::default().subset_enumeration;
    if work > cap {
        return Err(Error::CapExceeded {
            what: "disjoint colorful tuple enumeration",
            size: work as usize,
            cap: cap as usize,
        });
    }
    let mut best: Vec<Vec<&Item<'_>>> = Vec::new();
    let mut best_len = 0;
    let mut chosen: Vec<&Item<'_>> = Vec::new();
    fn walk<'a>(
        items: &'a [Vec<Item<'a>>],
        k: usize,
        chosen: &mut Vec<&'a Item<'a>>,
        best: &mut Vec<Vec<&'a Item<'a>>>,
        best_len: &mut usize,
    ) {
        if k == items.len() {
            if chosen.len() > *best_len {
                *best_len = chosen.len();
                best.clear();
            }
            if chosen.len() == *best_len && !chosen.is_empty() {
                let mut t = chosen.clone();
                t.sort_by(|a, b| a.lo.cmp(b.lo));
                best.push(t);
            }
            return;
        }
        for it in &items[k] {
            if chosen.iter().all(|c| !meets(c, it)) {
                chosen.push(it);
                walk(items, k + 1, chosen, best, best_len);
                chosen.pop();
            }
        }
        walk(items, k + 1, chosen, best, best_len);
    }
    walk(items, 0, &mut chosen, &mut best, &mut best_len);
    Ok(best)
}

fn disjoint_case(items: &[Vec<Item<'_>>], n: usize) -> Result<IntervalWitness> {
    let mut pool = largest_disjoint_tuples(items)?;
    let r = pool.first().map_or(0, Vec::len);
    if r < 2 || r > n {
        return Err(Error::Certificate(alloc::format!("largest disjoint colorful tuple has size {r}")));
    }
    let mut anchors: Vec<Rational> = Vec::with_capacity(r);
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(r);
    for slot in 0..r {
        let a = pool.iter().map(|t| t[slot].lo).max().expect("non-empty pool").clone();
        let j = pool.iter().map(|t| t[slot]).filter(|it| *it.lo == a).map(Item::key).min().expect("maximum attained");
        pool.retain(|t| t[slot].key() == j);
        anchors.push(a);
        chosen.push(j);
    }
    let used: Vec<usize> = chosen.iter().map(|&(k, _)| k).collect();
    let class = (0..items.len()).find(|k| !used.contains(k)).expect("r <= n leaves a class");
    let mut representatives: Vec<(usize, usize)> = (0..items.len())
        .filter(|&k| k != class)
        .map(|k| chosen.iter().copied().find(|&(ck, _)| ck == k).unwrap_or((k, 0)))
        .collect();
    representatives.sort_unstable();
    Ok(IntervalWitness {
        class,
        representatives,
        witness: anchors.iter().map(point1).collect(),
        case: IntervalCase::DisjointTuples { r },
    })
}

fn verify(c: &ColorSystem, w: &IntervalWitness, n: usize) -> Result<()> {
    if w.witness.len() > n {
        return Err(Error::Certificate(alloc::format!("{} points exceed n = {n}", w.witness.len())));
    }
    let class_boxes = c.class(w.class).boxes().iter();
    let rep_boxes = w.representatives.iter().map(|&(k, i)| c.class(k).get(i));
    for b in class_boxes.chain(rep_boxes) {
        if !w.witness.iter().any(|p| b.contains_unchecked(p)) {
            return Err(Error::Certificate(alloc::format!("interval {b:?} is not pierced")));
        }
    }
    Ok(())
}
