//! Instance-level checks of the Helly-type statements.
//!
//! Each verifier evaluates the premise and the conclusion of a statement on a
//! concrete input independently, so a report with `premise_holds` and not
//! `conclusion_holds` is a counterexample (or a demonstration that a bound is
//! tight when the parameter is below the Helly number).

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::caps::SearchCaps;
use crate::error::{Error, Result};
use crate::family::{ColorSystem, Family};
use crate::geometry::Point;
use crate::piercing::bitset::BitSet;
use crate::piercing::{check_all_colorful, for_each_subset, pierce_n_with, PiercingIndex};
use crate::rational::Rational;

/// A class (if any), representatives from the other classes and the points
/// piercing their union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HellyCertificate {
    pub class: Option<usize>,
    /// `(class, index)` pairs, ascending by class.
    pub representatives: Vec<(usize, usize)>,
    pub witness: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HellyReport {
    pub premise_holds: bool,
    pub conclusion_holds: bool,
    /// Subset indices (monochromatic) or one box index per class (colorful).
    pub premise_violation: Option<Vec<usize>>,
    pub conclusion_certificate: Option<HellyCertificate>,
    /// Set when the number of classes differs from the one the colorful
    /// statement is made for.
    pub class_count_warning: bool,
}

pub(crate) fn binomial(m: usize, k: usize) -> u64 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

fn ensure_enumerable(what: &'static str, count: u64, cap: u64) -> Result<()> {
    if count > cap {
        return Err(Error::CapExceeded { what, size: count as usize, cap: cap as usize });
    }
    Ok(())
}

pub fn check_helly(f: &Family, h: usize, n: usize) -> Result<HellyReport> {
    check_helly_with(f, h, n, &SearchCaps::default())
}

/// Premise: every `h`-subset of `f` is `n`-pierceable (exhaustive).
/// Conclusion: `f` is `n`-pierceable.
pub fn check_helly_with(f: &Family, h: usize, n: usize, caps: &SearchCaps) -> Result<HellyReport> {
    f.require_nonempty()?;
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    if h == 0 || f.len() < h {
        return Err(Error::TooSmall { needed: h.max(1), got: f.len() });
    }
    ensure_enumerable("h-subsets", binomial(f.len(), h), caps.subset_enumeration)?;
    let index = PiercingIndex::new(f.boxes()).with_memo_cap(caps.memo_family);
    let mut premise_violation = None;
    for_each_subset(f.len(), h, &mut |s| {
        if index.is_pierceable(s, n) {
            return true;
        }
        premise_violation = Some(s.to_vec());
        false
    });
    let whole = pierce_n_with(f, n, caps)?;
    let conclusion_certificate =
        whole.witness.map(|witness| HellyCertificate { class: None, representatives: Vec::new(), witness });
    Ok(HellyReport {
        premise_holds: premise_violation.is_none(),
        conclusion_holds: conclusion_certificate.is_some(),
        premise_violation,
        conclusion_certificate,
        class_count_warning: false,
    })
}

/// Number of classes the colorful statement is made for, where known.
pub fn colorful_class_count(d: usize, n: usize) -> Option<usize> {
    match (d, n) {
        (0, _) | (_, 0) => None,
        (d, 1) => Some(d + 1),
        (1, n) => Some(n + 1),
        (d, 2) => Some(3 * d),
        _ => None,
    }
}

pub fn check_colorful_helly(c: &ColorSystem, n: usize, strong: bool) -> Result<HellyReport> {
    check_colorful_helly_with(c, n, strong, &SearchCaps::default())
}

/// Premise: every colorful tuple is `n`-pierceable. Weak conclusion: the
/// first `n`-pierceable class. Strong conclusion: the first class, in class
/// order, that stays `n`-pierceable after adding one representative from
/// every other class, with representatives tried in lexicographic order.
pub fn check_colorful_helly_with(c: &ColorSystem, n: usize, strong: bool, caps: &SearchCaps) -> Result<HellyReport> {
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    let premise_violation = check_all_colorful(c, n)?;
    let certificate = colorful_conclusion(c, n, strong, caps)?;
    Ok(HellyReport {
        premise_holds: premise_violation.is_none(),
        conclusion_holds: certificate.is_some(),
        premise_violation,
        conclusion_certificate: certificate,
        class_count_warning: colorful_class_count(c.dim(), n) != Some(c.num_classes()),
    })
}

/// The conclusion half of [`check_colorful_helly_with`], for callers that
/// establish the premise themselves.
pub fn colorful_conclusion(
    c: &ColorSystem,
    n: usize,
    strong: bool,
    caps: &SearchCaps,
) -> Result<Option<HellyCertificate>> {
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    let flat = c.flatten();
    let offsets = c.class_offsets();
    let index = PiercingIndex::new(flat.boxes()).with_memo_cap(caps.memo_family);
    for i in 0..c.num_classes() {
        let own: Vec<usize> = (offsets[i]..offsets[i] + c.class(i).len()).collect();
        let Some(witness) = index.pierce(&own, n) else {
            continue;
        };
        if !strong {
            return Ok(Some(HellyCertificate { class: Some(i), representatives: Vec::new(), witness }));
        }
        if let Some(found) = strong_representatives(c, &index, &offsets, i, &own, n, caps)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn strong_representatives(
    c: &ColorSystem,
    index: &PiercingIndex,
    offsets: &[usize],
    i: usize,
    own: &[usize],
    n: usize,
    caps: &SearchCaps,
) -> Result<Option<HellyCertificate>> {
    let others: Vec<usize> = (0..c.num_classes()).filter(|&k| k != i).collect();
    let combos = others.iter().fold(1u64, |acc, &k| acc.saturating_mul(c.class(k).len() as u64));
    ensure_enumerable("representative combinations", combos, caps.subset_enumeration)?;
    let mut pick = alloc::vec![0usize; others.len()];
    let mut members = own.to_vec();
    loop {
        members.truncate(own.len());
        members.extend(others.iter().zip(&pick).map(|(&k, &p)| offsets[k] + p));
        if let Some(witness) = index.pierce(&members, n) {
            return Ok(Some(HellyCertificate {
                class: Some(i),
                representatives: others.iter().zip(&pick).map(|(&k, &p)| (k, p)).collect(),
                witness,
            }));
        }
        let mut j = others.len();
        loop {
            if j == 0 {
                return Ok(None);
            }
            j -= 1;
            pick[j] += 1;
            if pick[j] < c.class(others[j]).len() {
                break;
            }
            pick[j] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FractionMode {
    Exhaustive,
    /// `k` independent draws, each a uniform `t`-subset.
    Sampled {
        k: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionReport {
    pub pierceable: u64,
    pub total: u64,
    /// `pierceable / total`; exact in exhaustive mode, an estimate otherwise.
    pub fraction: Rational,
    pub exact: bool,
}

fn ratio(a: u64, b: u64) -> Rational {
    Rational::from_big(BigInt::from(a), BigInt::from(b))
}

pub fn fraction_pierceable(f: &Family, t: usize, n: usize, mode: FractionMode) -> Result<FractionReport> {
    fraction_pierceable_with(f, t, n, mode, &SearchCaps::default())
}

/// Fraction of the `t`-subsets of `f` that are `n`-pierceable.
pub fn fraction_pierceable_with(
    f: &Family,
    t: usize,
    n: usize,
    mode: FractionMode,
    caps: &SearchCaps,
) -> Result<FractionReport> {
    f.require_nonempty()?;
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    if t == 0 || f.len() < t {
        return Err(Error::TooSmall { needed: t.max(1), got: f.len() });
    }
    let index = PiercingIndex::new(f.boxes()).with_memo_cap(caps.memo_family);
    match mode {
        FractionMode::Exhaustive => {
            let total = binomial(f.len(), t);
            ensure_enumerable("t-subsets", total, caps.subset_enumeration)?;
            let mut pierceable = 0u64;
            for_each_subset(f.len(), t, &mut |s| {
                pierceable += u64::from(index.is_pierceable(s, n));
                true
            });
            Ok(FractionReport { pierceable, total, fraction: ratio(pierceable, total), exact: true })
        }
        FractionMode::Sampled { k, seed } => {
            if k == 0 {
                return Err(Error::InvalidParameter("sample count k must be at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pierceable = 0u64;
            for _ in 0..k {
                let mut s = rand::seq::index::sample(&mut rng, f.len(), t).into_vec();
                s.sort_unstable();
                pierceable += u64::from(index.is_pierceable(&s, n));
            }
            Ok(FractionReport { pierceable, total: k as u64, fraction: ratio(pierceable, k as u64), exact: false })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PierceableSubfamily {
    /// Ascending indices into the family.
    pub indices: Vec<usize>,
    pub witness: Vec<Point>,
}

pub fn max_pierceable_subfamily(f: &Family, n: usize) -> Result<PierceableSubfamily> {
    max_pierceable_subfamily_with(f, n, &SearchCaps::default())
}

/// A largest `n`-pierceable subfamily. For `n <= 2` the search runs over
/// maximal hit sets of the lower-endpoint grid; larger budgets enumerate
/// subsets by decreasing size, up to `caps.exhaustive_family` boxes.
pub fn max_pierceable_subfamily_with(f: &Family, n: usize, caps: &SearchCaps) -> Result<PierceableSubfamily> {
    f.require_nonempty()?;
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    let m = f.len();
    let index = PiercingIndex::new(f.boxes()).with_memo_cap(caps.memo_family);
    let all = BitSet::from_indices(m, 0..m);
    if let Some(witness) = index.pierce(&(0..m).collect::<Vec<_>>(), n) {
        return Ok(PierceableSubfamily { indices: (0..m).collect(), witness });
    }
    if n <= 2 {
        let hits = index.maximal_hit_sets(&all, caps.subset_enumeration).map_err(|size| Error::CapExceeded {
            what: "candidate grid",
            size: size as usize,
            cap: caps.subset_enumeration as usize,
        })?;
        let (mut best, mut best_len) = ((0, 0), 0);
        for a in 0..hits.len() {
            let la = hits[a].1.len();
            if n == 1 {
                if la > best_len {
                    (best, best_len) = ((a, a), la);
                }
                continue;
            }
            for b in a + 1..hits.len() {
                let l = la + hits[b].1.difference(&hits[a].1).len();
                if l > best_len {
                    (best, best_len) = ((a, b), l);
                }
            }
        }
        let (a, b) = best;
        let mut chosen = hits[a].1.clone();
        let mut witness = alloc::vec![index.point(&hits[a].0)];
        if b != a {
            chosen = chosen_union(&chosen, &hits[b].1, m);
            witness.push(index.point(&hits[b].0));
        }
        return Ok(PierceableSubfamily { indices: chosen.iter().collect(), witness });
    }
    if m > caps.exhaustive_family {
        return Err(Error::CapExceeded { what: "exhaustive subfamily search", size: m, cap: caps.exhaustive_family });
    }
    for size in (1..m).rev() {
        let mut found = None;
        for_each_subset(m, size, &mut |s| match index.pierce(s, n) {
            Some(w) => {
                found = Some(PierceableSubfamily { indices: s.to_vec(), witness: w });
                false
            }
            None => true,
        });
        if let Some(found) = found {
            return Ok(found);
        }
    }
    unreachable!("a single box is always pierceable")
}

fn chosen_union(a: &BitSet, b: &BitSet, m: usize) -> BitSet {
    let mut out = BitSet::from_indices(m, a.iter());
    for i in b.iter() {
        out.insert(i);
    }
    out
}

/// `m` pairwise disjoint `t`-sets that are not `n`-pierceable and such that
/// every selection of one index per part spans a clique of the `t`-uniform
/// piercing hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MissingTuple {
    pub parts: Vec<Vec<usize>>,
    /// `m < t`: selections have fewer than `t` elements, so the clique
    /// condition holds vacuously.
    pub vacuous_cliques: bool,
}

pub fn find_complete_missing_tuple(f: &Family, t: usize, n: usize, m: usize) -> Result<Option<MissingTuple>> {
    find_complete_missing_tuple_with(f, t, n, m, &SearchCaps::default())
}

/// First complete `m`-tuple of missing edges in lexicographic order of the
/// parts. Absent when `m * t` exceeds the family size, since no `m` disjoint
/// `t`-sets exist then.
pub fn find_complete_missing_tuple_with(
    f: &Family,
    t: usize,
    n: usize,
    m: usize,
    caps: &SearchCaps,
) -> Result<Option<MissingTuple>> {
    f.require_nonempty()?;
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    if t == 0 || m == 0 {
        return Err(Error::InvalidParameter("t and m must be at least 1".into()));
    }
    let size = f.len();
    if m.saturating_mul(t) > size {
        return Ok(None);
    }
    if size > caps.missing_tuple_family {
        return Err(Error::CapExceeded { what: "missing-tuple search", size, cap: caps.missing_tuple_family });
    }
    let index = PiercingIndex::new(f.boxes()).with_memo_cap(caps.memo_family);
    let mut missing: Vec<Vec<usize>> = Vec::new();
    for_each_subset(size, t, &mut |s| {
        if !index.is_pierceable(s, n) {
            missing.push(s.to_vec());
        }
        true
    });
    let mut search = MissingSearch { index: &index, missing: &missing, t, n, m, parts: Vec::new() };
    Ok(search.extend(0).then(|| MissingTuple {
        parts: search.parts.iter().map(|&p| missing[p].clone()).collect(),
        vacuous_cliques: m < t,
    }))
}

struct MissingSearch<'a> {
    index: &'a PiercingIndex,
    missing: &'a [Vec<usize>],
    t: usize,
    n: usize,
    m: usize,
    parts: Vec<usize>,
}

impl MissingSearch<'_> {
    fn extend(&mut self, from: usize) -> bool {
        if self.parts.len() == self.m {
            return true;
        }
        for p in from..self.missing.len() {
            let candidate = &self.missing[p];
            let disjoint = self.parts.iter().all(|&q| self.missing[q].iter().all(|x| !candidate.contains(x)));
            if !disjoint || !self.transversals_ok(candidate) {
                continue;
            }
            self.parts.push(p);
            if self.extend(p + 1) {
                return true;
            }
            self.parts.pop();
        }
        false
    }

    /// Every `t`-set taking one element from `new` and one from each of
    /// `t - 1` earlier parts must be an edge.
    fn transversals_ok(&self, new: &[usize]) -> bool {
        if self.parts.len() + 1 < self.t {
            return true;
        }
        let earlier = self.parts.len();
        let mut ok = true;
        for_each_subset(earlier, self.t - 1, &mut |chosen_parts| {
            let lists: Vec<&[usize]> = chosen_parts.iter().map(|&k| &self.missing[self.parts[k]][..]).collect();
            let mut pick = alloc::vec![0usize; lists.len()];
            loop {
                for &x in new {
                    let mut members: Vec<usize> = lists.iter().zip(&pick).map(|(l, &i)| l[i]).collect();
                    members.push(x);
                    if !self.index.is_pierceable(&members, self.n) {
                        ok = false;
                        return false;
                    }
                }
                let mut j = lists.len();
                loop {
                    if j == 0 {
                        return true;
                    }
                    j -= 1;
                    pick[j] += 1;
                    if pick[j] < lists[j].len() {
                        break;
                    }
                    pick[j] = 0;
                }
            }
        });
        ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_interval_tight, gen_lowerbound_2piercing};
    use crate::geometry::{ibx, AxisBox};
    use crate::piercing::{check_witness, pierce_n};
    use alloc::vec;
    use proptest::prelude::*;
    use rand::Rng;

    fn fam(boxes: Vec<AxisBox>) -> Family {
        Family::new(boxes).unwrap()
    }

    fn intervals(ends: &[(i64, i64)]) -> Family {
        fam(ends.iter().map(|&e| ibx(&[e])).collect())
    }

    fn plus_sign() -> Family {
        fam(vec![ibx(&[(0, 1), (0, 3)]), ibx(&[(2, 3), (0, 3)]), ibx(&[(0, 3), (0, 1)]), ibx(&[(0, 3), (2, 3)])])
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(15, 6), 5005);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn interval_tightness_report() {
        let f = gen_interval_tight(3).unwrap();
        let r = check_helly(&f, 3, 3).unwrap();
        assert!(r.premise_holds);
        assert!(!r.conclusion_holds);
        let r = check_helly(&f, 4, 3).unwrap();
        assert!(!r.premise_holds);
        assert_eq!(r.premise_violation, Some(vec![0, 1, 2, 3]));
        assert!(check_helly(&f, 5, 3).is_err());
    }

    #[test]
    fn whole_family_as_premise() {
        let f = intervals(&[(0, 2), (1, 4), (3, 5)]);
        let r = check_helly(&f, 3, 2).unwrap();
        assert!(r.premise_holds && r.conclusion_holds);
        let cert = r.conclusion_certificate.unwrap();
        check_witness(&f, &cert.witness, 2).unwrap();
    }

    #[test]
    fn identical_classes_give_class_zero() {
        let class = fam(vec![ibx(&[(0, 2), (0, 2)]), ibx(&[(1, 3), (1, 3)])]);
        let c = ColorSystem::new(vec![class; 6]).unwrap();
        let r = check_colorful_helly(&c, 2, true).unwrap();
        assert!(r.premise_holds && r.conclusion_holds && !r.class_count_warning);
        let cert = r.conclusion_certificate.unwrap();
        assert_eq!(cert.class, Some(0));
        assert_eq!(cert.representatives, vec![(1, 0), (2, 0), (3, 0), (4, 0), (5, 0)]);
    }

    #[test]
    fn lower_bound_has_no_pierceable_class() {
        for d in 1..=2 {
            let sys = gen_lowerbound_2piercing(d).unwrap();
            let r = check_colorful_helly(&sys, 2, false).unwrap();
            assert!(r.premise_holds);
            assert!(!r.conclusion_holds);
            assert!(r.class_count_warning);
        }
    }

    #[test]
    fn extra_pierceable_class_is_found() {
        let sys = gen_lowerbound_2piercing(2).unwrap();
        let mut classes = sys.classes().to_vec();
        // Every construction box lies inside [-5, 5]^2, so this class meets all tuples.
        let extra = fam(vec![ibx(&[(-5, 5), (-5, 5)]); 2]);
        classes.push(extra);
        let c = ColorSystem::new(classes).unwrap();
        let r = check_colorful_helly(&c, 2, true).unwrap();
        assert!(r.premise_holds && r.conclusion_holds && !r.class_count_warning);
        let cert = r.conclusion_certificate.unwrap();
        assert_eq!(cert.class, Some(5));
        let mut boxes = c.class(5).boxes().to_vec();
        boxes.extend(cert.representatives.iter().map(|&(k, i)| c.class(k).get(i).clone()));
        check_witness(&fam(boxes), &cert.witness, 2).unwrap();
    }

    #[test]
    fn fraction_examples() {
        let f = intervals(&[(0, 1), (2, 3), (4, 5)]);
        let r = fraction_pierceable(&f, 3, 2, FractionMode::Exhaustive).unwrap();
        assert_eq!(r.fraction, Rational::zero());
        let f = fam(vec![ibx(&[(0, 1), (0, 1)]); 4]);
        let r = fraction_pierceable(&f, 4, 1, FractionMode::Exhaustive).unwrap();
        assert_eq!(r.fraction, Rational::one());
        assert!(fraction_pierceable(&f, 5, 1, FractionMode::Exhaustive).is_err());
        assert!(fraction_pierceable(&f, 2, 1, FractionMode::Sampled { k: 0, seed: 1 }).is_err());
    }

    #[test]
    fn sampled_fraction_is_seeded() {
        let sys = gen_lowerbound_2piercing(2).unwrap();
        let flat = sys.flatten();
        let mode = FractionMode::Sampled { k: 500, seed: 3 };
        let a = fraction_pierceable(&flat, 6, 2, mode).unwrap();
        let b = fraction_pierceable(&flat, 6, 2, mode).unwrap();
        assert_eq!(a, b);
        let exact = fraction_pierceable(&flat, 6, 2, FractionMode::Exhaustive).unwrap();
        assert_eq!(exact.total, 5005);
        assert!((a.fraction.to_f64() - exact.fraction.to_f64()).abs() < 0.1);
    }

    #[test]
    fn max_subfamily_examples() {
        let f = intervals(&[(0, 1), (2, 3), (4, 5)]);
        let r = max_pierceable_subfamily(&f, 2).unwrap();
        assert_eq!(r.indices, vec![0, 1]);
        check_witness(&f.select(&r.indices), &r.witness, 2).unwrap();

        let f = fam(vec![ibx(&[(0, 2), (0, 2)]), ibx(&[(2, 3), (-1, 0)]), ibx(&[(-5, 2), (0, 9)])]);
        assert_eq!(max_pierceable_subfamily(&f, 1).unwrap().indices, vec![0, 1, 2]);

        let f = intervals(&[(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)]);
        let r = max_pierceable_subfamily(&f, 3).unwrap();
        assert_eq!(r.indices, vec![0, 1, 2]);
    }

    #[test]
    fn max_subfamily_n1_prefers_deepest_point() {
        let f = intervals(&[(0, 4), (1, 2), (3, 5), (3, 6)]);
        let r = max_pierceable_subfamily(&f, 1).unwrap();
        assert_eq!(r.indices, vec![0, 2, 3]);
    }

    #[test]
    fn missing_tuple_plus_sign() {
        let r = find_complete_missing_tuple(&plus_sign(), 2, 1, 2).unwrap().unwrap();
        assert_eq!(r.parts, vec![vec![0, 1], vec![2, 3]]);
        assert!(!r.vacuous_cliques);
    }

    #[test]
    fn missing_tuple_absent_cases() {
        let f = fam(vec![ibx(&[(0, 2), (0, 2)]), ibx(&[(1, 3), (1, 3)]), ibx(&[(1, 2), (0, 5)])]);
        assert_eq!(find_complete_missing_tuple(&f, 2, 1, 1).unwrap(), None);
        let flat = gen_lowerbound_2piercing(2).unwrap().flatten();
        assert_eq!(find_complete_missing_tuple(&flat, 6, 2, 6).unwrap(), None);
    }

    #[test]
    fn missing_tuple_vacuous_when_m_below_t() {
        let f = intervals(&[(0, 1), (2, 3), (4, 5)]);
        let r = find_complete_missing_tuple(&f, 3, 2, 1).unwrap().unwrap();
        assert_eq!(r.parts, vec![vec![0, 1, 2]]);
        assert!(r.vacuous_cliques);
    }

    #[test]
    fn missing_tuple_rejects_crossing_non_edge() {
        // {A,B} and {C,D} are disjoint pairs, but A and C miss each other too.
        let f =
            fam(vec![ibx(&[(0, 1), (0, 1)]), ibx(&[(5, 6), (0, 6)]), ibx(&[(2, 3), (0, 1)]), ibx(&[(0, 6), (5, 6)])]);
        let r = find_complete_missing_tuple(&f, 2, 1, 2).unwrap();
        assert!(r.is_none_or(|t| t.parts != vec![vec![0, 1], vec![2, 3]]));
    }

    /// Oracle: largest pierceable subset by decreasing-size enumeration.
    fn largest_pierceable_oracle(f: &Family, n: usize) -> usize {
        (1..=f.len())
            .rev()
            .find(|&size| {
                let mut hit = false;
                for_each_subset(f.len(), size, &mut |s| {
                    hit = pierce_n(&f.select(s), n).unwrap().is_pierceable();
                    !hit
                });
                hit
            })
            .unwrap()
    }

    #[test]
    fn max_subfamily_matches_subset_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let f = fam((0..10)
                .map(|_| {
                    let (x, y) = (rng.gen_range(0..12), rng.gen_range(0..12));
                    ibx(&[(x, x + rng.gen_range(0..4)), (y, y + rng.gen_range(0..4))])
                })
                .collect());
            for n in 1..=2 {
                let r = max_pierceable_subfamily(&f, n).unwrap();
                check_witness(&f.select(&r.indices), &r.witness, n).unwrap();
                assert_eq!(r.indices.len(), largest_pierceable_oracle(&f, n));
            }
        }
    }

    fn arb_intervals(max_len: usize) -> impl Strategy<Value = Family> {
        proptest::collection::vec((0i64..20, 0i64..6), 1..=max_len)
            .prop_map(|v| fam(v.into_iter().map(|(lo, len)| ibx(&[(lo, lo + len)])).collect()))
    }

    fn arb_rects(d: usize, max_len: usize) -> impl Strategy<Value = Family> {
        proptest::collection::vec(proptest::collection::vec((0i64..10, 0i64..6), d), 1..=max_len).prop_map(|v| {
            fam(v
                .into_iter()
                .map(|s| ibx(&s.into_iter().map(|(lo, len)| (lo, lo + len)).collect::<Vec<_>>()))
                .collect())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn interval_helly(f in arb_intervals(9), n in 1usize..=4) {
            let h = n + 1;
            if f.len() >= h {
                let r = check_helly(&f, h, n).unwrap();
                prop_assert!(!r.premise_holds || r.conclusion_holds);
            }
        }

        #[test]
        fn two_piercing_helly_in_the_plane(f in arb_rects(2, 8)) {
            if f.len() >= 5 {
                let r = check_helly(&f, 5, 2).unwrap();
                prop_assert!(!r.premise_holds || r.conclusion_holds);
            }
        }

        #[test]
        fn sampled_fraction_is_close(seed in any::<u64>()) {
            let f = intervals(&[(0, 1), (1, 3), (2, 4), (5, 6), (6, 9), (8, 9), (10, 11)]);
            let exact = fraction_pierceable(&f, 4, 2, FractionMode::Exhaustive).unwrap().fraction.to_f64();
            let k = 2000;
            let est = fraction_pierceable(&f, 4, 2, FractionMode::Sampled { k, seed }).unwrap().fraction.to_f64();
            let tol = 4.0 * libm_sqrt(exact * (1.0 - exact) / k as f64) + 1.0 / k as f64;
            prop_assert!((est - exact).abs() <= tol);
        }
    }

    fn libm_sqrt(x: f64) -> f64 {
        // no_std: Newton iterations are plenty for a tolerance.
        if x <= 0.0 {
            return 0.0;
        }
        let mut g = x.max(1.0);
        for _ in 0..60 {
            g = 0.5 * (g + x / g);
        }
        g
    }
}
