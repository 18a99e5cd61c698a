//! Testing whether a point set is `(n, B)`-clusterable.
//!
//! A set `W` is covered by `n` translates of a box `B` exactly when the
//! translates of `B` centred at the points of `W` are `n`-pierceable (a
//! translate centred at `c` contains `s` iff the translate centred at `s`
//! contains `c`). [`cluster_test`] samples tuples of the colorful Helly size
//! and rejects as soon as one of them cannot be covered.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caps::SearchCaps;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::geometry::{AxisBox, Interval, Point};
use crate::helly::binomial;
use crate::piercing::{for_each_subset, PiercingIndex};
use crate::rational::{q, Rational};

/// The shape of the covering box; only its side lengths matter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseBox {
    extents: Vec<Rational>,
}

impl BaseBox {
    pub fn new(extents: Vec<Rational>) -> Result<Self> {
        if extents.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(e) = extents.iter().find(|e| !e.is_positive()) {
            return Err(Error::InvalidParameter(alloc::format!("extent {e} is not positive")));
        }
        Ok(BaseBox { extents })
    }

    pub fn cube(d: usize, side: Rational) -> Result<Self> {
        BaseBox::new(alloc::vec![side; d])
    }

    pub fn extents(&self) -> &[Rational] {
        &self.extents
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterInstance {
    pub points: Vec<Point>,
    pub base: BaseBox,
    pub n: usize,
    pub epsilon: Rational,
    pub delta: Rational,
    /// Fraction of tuples that fail to be covered; required by the tester.
    pub gamma: Option<Rational>,
}

fn in_unit_range(name: &str, x: &Rational) -> Result<()> {
    if !x.is_positive() || *x > Rational::one() {
        return Err(Error::InvalidParameter(alloc::format!("{name} = {x} is outside (0, 1]")));
    }
    Ok(())
}

impl ClusterInstance {
    pub fn new(
        points: Vec<Point>,
        base: BaseBox,
        n: usize,
        epsilon: Rational,
        delta: Rational,
        gamma: Option<Rational>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroBudget);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != base.dim()) {
            return Err(Error::DimensionMismatch { expected: base.dim(), found: p.dim() });
        }
        in_unit_range("epsilon", &epsilon)?;
        in_unit_range("delta", &delta)?;
        if let Some(g) = &gamma {
            in_unit_range("gamma", g)?;
        }
        Ok(ClusterInstance { points, base, n, epsilon, delta, gamma })
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }
}

/// Axis `j` spans `[s_j - e_j / 2, s_j + e_j / 2]`.
pub fn translate_centered(base: &BaseBox, s: &Point) -> Result<AxisBox> {
    if s.dim() != base.dim() {
        return Err(Error::DimensionMismatch { expected: base.dim(), found: s.dim() });
    }
    let half = q(1, 2);
    let sides = s
        .coords()
        .iter()
        .zip(base.extents())
        .map(|(c, e)| {
            let r = e * &half;
            Interval::new(c - &r, c + &r)
        })
        .collect::<Result<Vec<_>>>()?;
    AxisBox::new(sides)
}

fn translates(w: &[Point], base: &BaseBox) -> Result<Family> {
    Family::new(w.iter().map(|s| translate_centered(base, s)).collect::<Result<Vec<_>>>()?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub coverable: bool,
    /// Centres of the covering translates (empty when not coverable).
    pub centers: Vec<Point>,
    /// For each point, the index of a centre whose translate contains it.
    pub assignment: Vec<usize>,
}

/// Decides whether `w` fits in `n` translates of `base`.
pub fn cover_check(w: &[Point], base: &BaseBox, n: usize) -> Result<Cover> {
    if w.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    let f = translates(w, base)?;
    let index = PiercingIndex::new(f.boxes());
    let Some(centers) = index.pierce(&(0..w.len()).collect::<Vec<_>>(), n) else {
        return Ok(Cover { coverable: false, centers: Vec::new(), assignment: Vec::new() });
    };
    let assignment = f
        .boxes()
        .iter()
        .map(|b| centers.iter().position(|c| b.contains_point(c).unwrap_or(false)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Certificate("covering centre misses a point".into()))?;
    Ok(Cover { coverable: true, centers, assignment })
}

pub fn coverable_oracle(w: &[Point], base: &BaseBox, n: usize) -> Result<bool> {
    coverable_oracle_with(w, base, n, &SearchCaps::default())
}

/// Partition enumeration: some split of `w` into at most `n` parts has every
/// part's spread within the extent on every axis.
pub fn coverable_oracle_with(w: &[Point], base: &BaseBox, n: usize, caps: &SearchCaps) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    if w.len() > caps.partition_points {
        return Err(Error::CapExceeded { what: "partition enumeration", size: w.len(), cap: caps.partition_points });
    }
    if let Some(p) = w.iter().find(|p| p.dim() != base.dim()) {
        return Err(Error::DimensionMismatch { expected: base.dim(), found: p.dim() });
    }
    struct Part<'a> {
        lo: Vec<&'a Rational>,
        hi: Vec<&'a Rational>,
    }
    fn fits(part: &Part<'_>, p: &Point, extents: &[Rational]) -> bool {
        p.coords().iter().enumerate().all(|(j, x)| {
            let lo = part.lo[j].min_ref(x);
            let hi = part.hi[j].max_ref(x);
            hi - lo <= extents[j]
        })
    }
    fn place<'a>(w: &'a [Point], i: usize, parts: &mut Vec<Part<'a>>, n: usize, extents: &[Rational]) -> bool {
        let Some(p) = w.get(i) else {
            return true;
        };
        for k in 0..parts.len() {
            if fits(&parts[k], p, extents) {
                let saved = (parts[k].lo.clone(), parts[k].hi.clone());
                for (j, x) in p.coords().iter().enumerate() {
                    parts[k].lo[j] = parts[k].lo[j].min_ref(x);
                    parts[k].hi[j] = parts[k].hi[j].max_ref(x);
                }
                if place(w, i + 1, parts, n, extents) {
                    return true;
                }
                (parts[k].lo, parts[k].hi) = saved;
            }
        }
        if parts.len() < n {
            parts.push(Part { lo: p.coords().iter().collect(), hi: p.coords().iter().collect() });
            if place(w, i + 1, parts, n, extents) {
                return true;
            }
            parts.pop();
        }
        false
    }
    Ok(place(w, 0, &mut Vec::new(), n, base.extents()))
}

pub fn distance_to_clusterable(s: &[Point], base: &BaseBox, n: usize) -> Result<usize> {
    distance_to_clusterable_with(s, base, n, &SearchCaps::default())
}

/// Fewest points whose removal leaves a coverable set.
pub fn distance_to_clusterable_with(s: &[Point], base: &BaseBox, n: usize, caps: &SearchCaps) -> Result<usize> {
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    if s.len() > caps.exhaustive_family {
        return Err(Error::CapExceeded { what: "removal search", size: s.len(), cap: caps.exhaustive_family });
    }
    if s.is_empty() {
        return Ok(0);
    }
    let f = translates(s, base)?;
    let index = PiercingIndex::new(f.boxes());
    let m = s.len();
    for removed in 0..m {
        let mut found = false;
        for_each_subset(m, m - removed, &mut |kept| {
            found = index.is_pierceable(kept, n);
            !found
        });
        if found {
            return Ok(removed);
        }
    }
    Ok(m)
}

/// Size of the tuples the tester samples: `n + 1` on the line, `3d` for two
/// translates and 2 for a single translate.
pub fn default_tuple_size(d: usize, n: usize) -> Result<usize> {
    match (d, n) {
        (0, _) => Err(Error::ZeroDimension),
        (_, 0) => Err(Error::ZeroBudget),
        (1, n) => Ok(n + 1),
        (_, 1) => Ok(2),
        (d, 2) => Ok(3 * d),
        (dim, n) => Err(Error::UnsupportedTupleSize { dim, n }),
    }
}

fn sample_tuple(rng: &mut ChaCha8Rng, m: usize, h: usize) -> Vec<usize> {
    let mut s = rand::seq::index::sample(rng, m, h).into_vec();
    s.sort_unstable();
    s
}

fn tuple_size_for(inst: &ClusterInstance) -> Result<usize> {
    let h = default_tuple_size(inst.dim(), inst.n)?;
    if inst.points.len() < h {
        return Err(Error::TooSmall { needed: h, got: inst.points.len() });
    }
    Ok(h)
}

/// Fraction of `k` sampled tuples that cannot be covered.
pub fn calibrate_gamma(inst: &ClusterInstance, k: usize, seed: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidParameter("sample count k must be at least 1".into()));
    }
    let h = tuple_size_for(inst)?;
    let f = translates(&inst.points, &inst.base)?;
    let index = PiercingIndex::new(f.boxes());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let failing =
        (0..k).filter(|_| !index.is_pierceable(&sample_tuple(&mut rng, inst.points.len(), h), inst.n)).count();
    Ok(Rational::from_big(BigInt::from(failing), BigInt::from(k)))
}

/// `2 atanh(z)` for `0 <= z < 1` with the truncation error bounded by `tol`,
/// returned as `(partial sum, tail bound)`.
fn two_atanh(z: &Rational, tol: &Rational) -> (Rational, Rational) {
    let z2 = z * z;
    let one = Rational::one();
    let mut sum = Rational::zero();
    let mut power = z.clone();
    let mut i: i64 = 0;
    loop {
        let denom = Rational::from(2 * i + 1);
        sum = sum + &(&power / &denom) * &Rational::from(2);
        power = &power * &z2;
        // Remaining terms are at most 2 z^(2i+3) / ((2i+3) (1 - z^2)).
        let tail = &(&power * &Rational::from(2)) / &(&Rational::from(2 * i + 3) * &(&one - &z2));
        if &tail <= tol {
            return (sum, tail);
        }
        i += 1;
    }
}

/// A rational `u` with `ln x <= u <= ln x + 10^-6`, for `x >= 1`.
pub fn ln_upper_bound(x: &Rational) -> Result<Rational> {
    let one = Rational::one();
    if *x < one {
        return Err(Error::InvalidParameter(alloc::format!("ln bound needs x >= 1, got {x}")));
    }
    // x = 2^k y with 1 <= y < 2.
    let mut k: i64 = 0;
    let mut y = x.clone();
    let two = Rational::from(2);
    while y >= two {
        y = &y / &two;
        k += 1;
    }
    let tol = q(1, 100_000_000);
    let per_ln2 = &tol / &Rational::from(k.max(1));
    let (ln2, ln2_tail) = two_atanh(&q(1, 3), &per_ln2);
    let z = &(&y - &one) / &(&y + &one);
    let (lny, lny_tail) = two_atanh(&z, &tol);
    let upper = &(&(&ln2 + &ln2_tail) * &Rational::from(k)) + &(&lny + &lny_tail);
    // Round up onto a 10^-9 grid to keep the denominator small.
    let scale = BigInt::from(1_000_000_000u64);
    let scaled = &upper * &Rational::from_big(scale.clone(), BigInt::one());
    Ok(Rational::from_big(scaled.ceil(), scale))
}

/// `ceil(ln(1/delta) / gamma)` using [`ln_upper_bound`].
pub fn trial_count(gamma: &Rational, delta: &Rational) -> Result<u64> {
    in_unit_range("gamma", gamma)?;
    in_unit_range("delta", delta)?;
    let u = ln_upper_bound(&delta.recip())?;
    (&u / gamma).ceil().to_u64().ok_or_else(|| Error::InvalidParameter("trial count does not fit in 64 bits".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TesterVerdict {
    Accept,
    Reject,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TesterReport {
    pub verdict: TesterVerdict,
    /// Indices into the instance's points of the tuple that could not be covered.
    pub witness_indices: Option<Vec<usize>>,
    pub witness: Option<Vec<Point>>,
    pub tuple_size: usize,
    pub trials_run: u64,
    pub trials_planned: u64,
    pub seed: u64,
}

/// One-sided tester: accepts every coverable instance; rejects only with a
/// tuple that is re-checked to be uncoverable.
pub fn cluster_test(inst: &ClusterInstance, seed: u64) -> Result<TesterReport> {
    cluster_test_with(inst, seed, &SearchCaps::default())
}

pub fn cluster_test_with(inst: &ClusterInstance, seed: u64, caps: &SearchCaps) -> Result<TesterReport> {
    let gamma =
        inst.gamma.as_ref().ok_or_else(|| Error::InvalidParameter("gamma is required; calibrate it first".into()))?;
    let h = tuple_size_for(inst)?;
    let planned = trial_count(gamma, &inst.delta)?;
    let f = translates(&inst.points, &inst.base)?;
    let index = PiercingIndex::new(f.boxes());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..planned {
        let tuple = sample_tuple(&mut rng, inst.points.len(), h);
        if index.is_pierceable(&tuple, inst.n) {
            continue;
        }
        let w: Vec<Point> = tuple.iter().map(|&i| inst.points[i].clone()).collect();
        let still_coverable = if w.len() <= caps.partition_points {
            coverable_oracle_with(&w, &inst.base, inst.n, caps)?
        } else {
            cover_check(&w, &inst.base, inst.n)?.coverable
        };
        if still_coverable {
            return Err(Error::Certificate(alloc::format!("sampled tuple {tuple:?} is coverable after all")));
        }
        return Ok(TesterReport {
            verdict: TesterVerdict::Reject,
            witness_indices: Some(tuple),
            witness: Some(w),
            tuple_size: h,
            trials_run: trial + 1,
            trials_planned: planned,
            seed,
        });
    }
    Ok(TesterReport {
        verdict: TesterVerdict::Accept,
        witness_indices: None,
        witness: None,
        tuple_size: h,
        trials_run: planned,
        trials_planned: planned,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Coverable,
    /// `n + 1` separated clusters, each with at least `ceil(epsilon m)` points.
    Far {
        epsilon: Rational,
    },
}

/// Uniform point of the unit-base translate centred at `center`, on a grid of
/// step `extent / 1000`.
fn point_in(rng: &mut ChaCha8Rng, center: &[Rational], base: &BaseBox) -> Point {
    Point(
        center
            .iter()
            .zip(base.extents())
            .map(|(c, e)| c + &(e * &(q(rng.gen_range(0..=1000), 1000) - q(1, 2))))
            .collect(),
    )
}

/// Seeded instance over the unit cube base. Cluster `i` is centred at
/// `3i` on axis 0 (gaps of at least two extents) and at a random integer in
/// `[0, 10]` on the other axes. `delta` is `1/10`; `epsilon` is `1/10` for
/// coverable instances.
pub fn gen_cluster_instance(kind: &InstanceKind, d: usize, n: usize, m: usize, seed: u64) -> Result<ClusterInstance> {
    let h = default_tuple_size(d, n)?;
    if m < h {
        return Err(Error::TooSmall { needed: h, got: m });
    }
    let base = BaseBox::cube(d, Rational::one())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (clusters, sizes, epsilon) = match kind {
        InstanceKind::Coverable => {
            let mut sizes = alloc::vec![0usize; n];
            for _ in 0..m {
                sizes[rng.gen_range(0..n)] += 1;
            }
            (n, sizes, q(1, 10))
        }
        InstanceKind::Far { epsilon } => {
            in_unit_range("epsilon", epsilon)?;
            let per = (epsilon * &Rational::from(m as i64)).ceil().to_usize().unwrap_or(usize::MAX);
            if per.saturating_mul(n + 1) > m {
                return Err(Error::InvalidParameter(alloc::format!(
                    "{} clusters of {per} points do not fit in m = {m}",
                    n + 1
                )));
            }
            let mut sizes = alloc::vec![per; n + 1];
            for i in 0..m - per * (n + 1) {
                sizes[i % n] += 1;
            }
            (n + 1, sizes, epsilon.clone())
        }
    };
    let centers: Vec<Vec<Rational>> = (0..clusters)
        .map(|i| {
            (0..d)
                .map(|j| if j == 0 { Rational::from(3 * i as i64) } else { Rational::from(rng.gen_range(0..=10)) })
                .collect()
        })
        .collect();
    let mut points = Vec::with_capacity(m);
    for (center, &size) in centers.iter().zip(&sizes) {
        for _ in 0..size {
            points.push(point_in(&mut rng, center, &base));
        }
    }
    ClusterInstance::new(points, base, n, epsilon, q(1, 10), None)
}

/// Exact fraction of all `h`-subsets that cannot be covered. Exponential; for
/// checking [`calibrate_gamma`] on small instances.
pub fn exhaustive_gamma(inst: &ClusterInstance, caps: &SearchCaps) -> Result<Rational> {
    let h = tuple_size_for(inst)?;
    let total = binomial(inst.points.len(), h);
    if total > caps.subset_enumeration {
        return Err(Error::CapExceeded {
            what: "tuple enumeration",
            size: total as usize,
            cap: caps.subset_enumeration as usize,
        });
    }
    let f = translates(&inst.points, &inst.base)?;
    let index = PiercingIndex::new(f.boxes());
    let mut failing = 0u64;
    for_each_subset(inst.points.len(), h, &mut |s| {
        failing += u64::from(!index.is_pierceable(s, inst.n));
        true
    });
    Ok(Rational::from_big(BigInt::from(failing), BigInt::from(total)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ibx, ipt};
    use alloc::vec;
    use proptest::prelude::*;

    fn base(extents: &[i64]) -> BaseBox {
        BaseBox::new(extents.iter().map(|&e| Rational::from(e)).collect()).unwrap()
    }

    fn line(xs: &[i64]) -> Vec<Point> {
        xs.iter().map(|&x| ipt(&[x])).collect()
    }

    #[test]
    fn translates_are_centred() {
        assert_eq!(translate_centered(&base(&[2, 2]), &ipt(&[0, 0])).unwrap(), ibx(&[(-1, 1), (-1, 1)]));
        let b = translate_centered(&base(&[1]), &ipt(&[5])).unwrap();
        assert_eq!((b.side(0).lo(), b.side(0).hi()), (&q(9, 2), &q(11, 2)));
        let b = translate_centered(&base(&[3, 1]), &ipt(&[0, 0])).unwrap();
        assert_eq!(b.side(0).hi(), &q(3, 2));
        assert_eq!(b.side(1).lo(), &q(-1, 2));
        assert!(translate_centered(&base(&[1]), &ipt(&[0, 0])).is_err());
        assert!(BaseBox::new(vec![Rational::zero()]).is_err());
    }

    #[test]
    fn cover_examples() {
        let c = cover_check(&[ipt(&[0, 0]), ipt(&[1, 1])], &base(&[2, 2]), 1).unwrap();
        assert!(c.coverable);
        assert_eq!(c.assignment, vec![0, 0]);
        assert!(!cover_check(&line(&[0, 10]), &base(&[2]), 1).unwrap().coverable);
        let c = cover_check(&line(&[0, 10]), &base(&[2]), 2).unwrap();
        assert!(c.coverable);
        assert_eq!(c.centers.len(), 2);
        assert!(cover_check(&[], &base(&[2]), 1).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert!(coverable_oracle(&[ipt(&[3, 4])], &base(&[1, 1]), 1).unwrap());
        assert!(coverable_oracle(&line(&[0, 10]), &base(&[2]), 2).unwrap());
        assert!(!coverable_oracle(&line(&[0, 10]), &base(&[2]), 1).unwrap());
        let many: Vec<Point> = (0..13).map(|i| ipt(&[i])).collect();
        assert!(coverable_oracle(&many, &base(&[2]), 1).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance_to_clusterable(&line(&[0, 1, 2]), &base(&[2]), 1).unwrap(), 0);
        assert_eq!(distance_to_clusterable(&line(&[0, 10, 20]), &base(&[2]), 2).unwrap(), 1);
        assert_eq!(distance_to_clusterable(&line(&[0, 10, 20, 30]), &base(&[2]), 1).unwrap(), 3);
    }

    #[test]
    fn tuple_sizes() {
        assert_eq!(default_tuple_size(3, 2).unwrap(), 9);
        assert_eq!(default_tuple_size(1, 5).unwrap(), 6);
        assert_eq!(default_tuple_size(4, 1).unwrap(), 2);
        assert!(matches!(default_tuple_size(4, 3), Err(Error::UnsupportedTupleSize { dim: 4, n: 3 })));
    }

    #[test]
    fn ln_bound_is_tight_and_above() {
        for (x, ln) in
            [(10i64, core::f64::consts::LN_10), (2, core::f64::consts::LN_2), (1, 0.0), (1000, 6.907_755_278_982_137)]
        {
            let u = ln_upper_bound(&Rational::from(x)).unwrap().to_f64();
            assert!(u >= ln - 1e-12 && u <= ln + 1e-6, "x = {x}: {u}");
        }
        let u = ln_upper_bound(&q(7, 3)).unwrap().to_f64();
        assert!((0.847_297_860_387_203_6..=0.847_298_860_387_203_6).contains(&u));
        assert!(ln_upper_bound(&q(1, 2)).is_err());
    }

    #[test]
    fn trial_counts() {
        // ln 10 / (500000 / 2573000) = 11.849...
        assert_eq!(trial_count(&q(500_000, 2_573_000), &q(1, 10)).unwrap(), 12);
        assert_eq!(trial_count(&q(1, 2), &Rational::one()).unwrap(), 0);
        assert_eq!(trial_count(&Rational::one(), &q(1, 10)).unwrap(), 3);
        assert!(trial_count(&Rational::zero(), &q(1, 10)).is_err());
    }

    #[test]
    fn coverable_instances_are_accepted() {
        for seed in 0..5 {
            let mut inst = gen_cluster_instance(&InstanceKind::Coverable, 2, 2, 60, seed).unwrap();
            assert!(cover_check(&inst.points, &inst.base, 2).unwrap().coverable);
            assert_eq!(calibrate_gamma(&inst, 200, seed).unwrap(), Rational::zero());
            inst.gamma = Some(q(1, 100));
            let r = cluster_test(&inst, seed).unwrap();
            assert_eq!(r.verdict, TesterVerdict::Accept);
            assert_eq!(r.trials_run, r.trials_planned);
        }
    }

    #[test]
    fn far_instance_distance() {
        let inst = gen_cluster_instance(&InstanceKind::Far { epsilon: q(1, 5) }, 1, 2, 20, 9).unwrap();
        assert!(distance_to_clusterable(&inst.points, &inst.base, 2).unwrap() >= 4);
        assert!(gen_cluster_instance(&InstanceKind::Far { epsilon: q(1, 2) }, 1, 2, 20, 9).is_err());
        assert!(gen_cluster_instance(&InstanceKind::Coverable, 1, 2, 2, 9).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let kind = InstanceKind::Far { epsilon: q(1, 10) };
        assert_eq!(
            gen_cluster_instance(&kind, 3, 2, 50, 4).unwrap(),
            gen_cluster_instance(&kind, 3, 2, 50, 4).unwrap()
        );
    }

    #[test]
    fn far_instance_is_rejected_with_verified_witness() {
        let mut inst = gen_cluster_instance(&InstanceKind::Far { epsilon: q(1, 4) }, 2, 2, 40, 1).unwrap();
        inst.gamma = Some(q(1, 20));
        let r = cluster_test(&inst, 5).unwrap();
        assert_eq!(r.verdict, TesterVerdict::Reject);
        let w = r.witness.unwrap();
        assert_eq!(w.len(), 6);
        assert!(!coverable_oracle(&w, &inst.base, 2).unwrap());
    }

    #[test]
    fn tester_rejects_bad_parameters() {
        let inst = gen_cluster_instance(&InstanceKind::Coverable, 1, 2, 10, 0).unwrap();
        assert!(cluster_test(&inst, 0).is_err(), "gamma missing");
        assert!(calibrate_gamma(&inst, 0, 0).is_err());
        let small = ClusterInstance::new(line(&[0, 1]), base(&[1]), 2, q(1, 10), q(1, 10), Some(q(1, 2))).unwrap();
        assert!(matches!(cluster_test(&small, 0), Err(Error::TooSmall { needed: 3, got: 2 })));
        assert!(ClusterInstance::new(line(&[0]), base(&[1]), 1, q(3, 2), q(1, 10), None).is_err());
    }

    #[test]
    fn calibration_tracks_exhaustive_fraction() {
        // Three separated unit clusters of sizes 8, 7, 5 on the line.
        let mut xs = Vec::new();
        for (c, size) in [(0i64, 8i64), (10, 7), (20, 5)] {
            xs.extend((0..size).map(|i| q(c * 10 + i, 10)));
        }
        let points: Vec<Point> = xs.into_iter().map(|x| Point(vec![x])).collect();
        let inst = ClusterInstance::new(points, base(&[1]), 2, q(1, 4), q(1, 10), None).unwrap();
        let exact = exhaustive_gamma(&inst, &SearchCaps::default()).unwrap();
        assert_eq!(exact, q(8 * 7 * 5, 1140));
        let est = calibrate_gamma(&inst, 10_000, 2).unwrap();
        assert!((est.to_f64() - exact.to_f64()).abs() < 0.05);
    }

    fn arb_points(max_d: usize, max_len: usize) -> impl Strategy<Value = (Vec<Point>, BaseBox)> {
        (1..=max_d).prop_flat_map(move |d| {
            (
                proptest::collection::vec(proptest::collection::vec(-12i64..12, d), 1..=max_len),
                proptest::collection::vec(1i64..8, d),
            )
                .prop_map(|(pts, ext)| {
                    (
                        pts.into_iter().map(|p| Point(p.into_iter().map(|x| q(x, 2)).collect())).collect(),
                        BaseBox::new(ext.into_iter().map(|e| q(e, 2)).collect()).unwrap(),
                    )
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn cover_check_matches_partition_oracle((w, b) in arb_points(3, 8), n in 1usize..=3) {
            let c = cover_check(&w, &b, n).unwrap();
            prop_assert_eq!(c.coverable, coverable_oracle(&w, &b, n).unwrap());
            if c.coverable {
                for (p, &k) in w.iter().zip(&c.assignment) {
                    prop_assert!(translate_centered(&b, &c.centers[k]).unwrap().contains_point(p).unwrap());
                }
            }
        }

        #[test]
        fn coverability_is_monotone((w, b) in arb_points(2, 8), n in 1usize..=2, drop in 0usize..8) {
            if cover_check(&w, &b, n).unwrap().coverable && w.len() > 1 {
                let mut sub = w.clone();
                sub.remove(drop % w.len());
                prop_assert!(cover_check(&sub, &b, n).unwrap().coverable);
            }
        }

        #[test]
        fn distance_matches_removal_enumeration((w, b) in arb_points(2, 7), n in 1usize..=2) {
            let m = w.len();
            let brute = (0u32..1 << m)
                .filter(|mask| {
                    let kept: Vec<Point> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| w[i].clone()).collect();
                    kept.is_empty() || coverable_oracle(&kept, &b, n).unwrap()
                })
                .map(|mask| m - mask.count_ones() as usize)
                .min()
                .unwrap();
            prop_assert_eq!(distance_to_clusterable(&w, &b, n).unwrap(), brute);
        }
    }
}
