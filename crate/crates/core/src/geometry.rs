//! Closed rational intervals, points and axis-parallel boxes.
//!
//! Axes are 0-based throughout the API. Orderings are deterministic: faces
//! are listed axis-major with the lower face first, vertices follow a binary
//! counter in which bit `j` set means "upper end on axis `j`".

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A closed interval `[lo, hi]` with `lo <= hi`. Degenerate intervals are allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvertedInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(value: Rational) -> Self {
        Interval { lo: value.clone(), hi: value }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `[max lo, min hi]` when non-empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max_ref(&other.lo);
        let hi = self.hi.min_ref(&other.hi);
        (lo <= hi).then(|| Interval { lo: lo.clone(), hi: hi.clone() })
    }

    /// Length of the open gap between two disjoint intervals.
    pub fn gap(&self, other: &Interval) -> Option<Rational> {
        if self.hi < other.lo {
            Some(&other.lo - &self.hi)
        } else if other.hi < self.lo {
            Some(&self.lo - &other.hi)
        } else {
            None
        }
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

/// A point of `R^d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for Point {
    fn from(coords: Vec<Rational>) -> Self {
        Point(coords)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c:?}")?;
        }
        f.write_str(")")
    }
}

/// Product of `d >= 1` closed intervals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxisBox {
    sides: Vec<Interval>,
}

impl AxisBox {
    pub fn new(sides: Vec<Interval>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(AxisBox { sides })
    }

    /// Builds a box from `(lo, hi)` pairs.
    pub fn from_bounds<I>(bounds: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let sides = bounds.into_iter().map(|(lo, hi)| Interval::new(lo, hi)).collect::<Result<Vec<_>>>()?;
        AxisBox::new(sides)
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[Interval] {
        &self.sides
    }

    /// Projection onto axis `j`.
    pub fn side(&self, j: usize) -> &Interval {
        &self.sides[j]
    }

    pub fn lower_corner(&self) -> Point {
        Point(self.sides.iter().map(|s| s.lo.clone()).collect())
    }

    pub fn upper_corner(&self) -> Point {
        Point(self.sides.iter().map(|s| s.hi.clone()).collect())
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if self.dim() != found {
            return Err(Error::DimensionMismatch { expected: self.dim(), found });
        }
        Ok(())
    }

    pub fn contains_point(&self, p: &Point) -> Result<bool> {
        self.check_dim(p.dim())?;
        Ok(self.contains_unchecked(p))
    }

    pub(crate) fn contains_unchecked(&self, p: &Point) -> bool {
        self.sides.iter().zip(&p.0).all(|(s, x)| s.contains(x))
    }

    pub fn intersects(&self, other: &AxisBox) -> Result<bool> {
        self.check_dim(other.dim())?;
        Ok(self.sides.iter().zip(&other.sides).all(|(a, b)| a.overlaps(b)))
    }

    pub fn intersect(&self, other: &AxisBox) -> Result<Option<AxisBox>> {
        self.check_dim(other.dim())?;
        let mut sides = Vec::with_capacity(self.dim());
        for (a, b) in self.sides.iter().zip(&other.sides) {
            match a.intersect(b) {
                Some(s) => sides.push(s),
                None => return Ok(None),
            }
        }
        Ok(Some(AxisBox { sides }))
    }

    /// Distance between the projections on axis `j`, absent when they overlap.
    pub fn axis_gap(&self, other: &AxisBox, j: usize) -> Result<Option<Rational>> {
        self.check_dim(other.dim())?;
        if j >= self.dim() {
            return Err(Error::BadAxis { axis: j, dim: self.dim() });
        }
        Ok(self.sides[j].gap(&other.sides[j]))
    }

    /// The `2d` faces, axis-major, lower face before upper face.
    pub fn faces(&self) -> Vec<AxisBox> {
        let mut out = Vec::with_capacity(2 * self.dim());
        for j in 0..self.dim() {
            for end in [&self.sides[j].lo, &self.sides[j].hi] {
                let mut sides = self.sides.clone();
                sides[j] = Interval::point(end.clone());
                out.push(AxisBox { sides });
            }
        }
        out
    }

    /// Vertex selected by `mask`: bit `j` set picks the upper end on axis `j`.
    pub fn vertex(&self, mask: u64) -> Vertex {
        let selector: Vec<bool> = (0..self.dim()).map(|j| mask >> j & 1 == 1).collect();
        let point = Point(
            self.sides.iter().zip(&selector).map(|(s, &up)| if up { s.hi.clone() } else { s.lo.clone() }).collect(),
        );
        Vertex { point, selector }
    }

    /// All `2^d` vertices in binary-counter order.
    ///
    /// Panics for `d >= 64`.
    pub fn vertices(&self) -> Vec<Vertex> {
        assert!(self.dim() < 64, "vertex enumeration limited to d < 64");
        (0..1u64 << self.dim()).map(|m| self.vertex(m)).collect()
    }

    /// The `2^(d-1)` diagonally opposite vertex pairs. Pair `k` holds the
    /// vertex with counter `k` (upper end never chosen on the last axis) and
    /// its complement.
    pub fn diagonal_pairs(&self) -> Vec<DiagonalPair> {
        let d = self.dim();
        assert!(d < 64, "vertex enumeration limited to d < 64");
        let full = (1u64 << d) - 1;
        (0..1u64 << (d - 1)).map(|m| DiagonalPair { p: self.vertex(m), q: self.vertex(full ^ m) }).collect()
    }
}

impl fmt::Debug for AxisBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sides.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{s:?}")?;
        }
        Ok(())
    }
}

/// A vertex of a box together with the end chosen on each axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub point: Point,
    /// `true` = upper end on that axis.
    pub selector: Vec<bool>,
}

/// Two vertices of the same box whose selectors are complementary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalPair {
    pub p: Vertex,
    pub q: Vertex,
}

impl DiagonalPair {
    pub fn hits(&self, b: &AxisBox) -> bool {
        b.contains_unchecked(&self.p.point) || b.contains_unchecked(&self.q.point)
    }
}

/// Free-function form of [`Interval::intersect`].
pub fn interval_intersect(a: &Interval, b: &Interval) -> Option<Interval> {
    a.intersect(b)
}

/// Free-function form of [`AxisBox::intersect`].
pub fn box_intersect(a: &AxisBox, b: &AxisBox) -> Result<Option<AxisBox>> {
    a.intersect(b)
}

/// Free-function form of [`AxisBox::contains_point`].
pub fn contains_point(b: &AxisBox, p: &Point) -> Result<bool> {
    b.contains_point(p)
}

/// Free-function form of [`AxisBox::axis_gap`].
pub fn axis_gap(a: &AxisBox, b: &AxisBox, j: usize) -> Result<Option<Rational>> {
    a.axis_gap(b, j)
}

/// Coordinate-wise common intersection of a non-empty list of boxes.
pub fn common_intersection<'a, I>(boxes: I) -> Result<Option<AxisBox>>
where
    I: IntoIterator<Item = &'a AxisBox>,
{
    let mut it = boxes.into_iter();
    let Some(first) = it.next() else {
        return Err(Error::EmptyFamily);
    };
    let mut acc = first.clone();
    for b in it {
        match acc.intersect(b)? {
            Some(next) => acc = next,
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

/// Short constructor used by generators and tests: `bx(&[(lo, hi), ...])`.
pub fn bx(bounds: &[(Rational, Rational)]) -> AxisBox {
    AxisBox::from_bounds(bounds.iter().cloned()).expect("valid box literal")
}

/// Integer-coordinate box literal.
pub fn ibx(bounds: &[(i64, i64)]) -> AxisBox {
    AxisBox::from_bounds(bounds.iter().map(|&(l, h)| (Rational::from(l), Rational::from(h))))
        .expect("valid box literal")
}

/// Integer-coordinate point literal.
pub fn ipt(coords: &[i64]) -> Point {
    Point(coords.iter().map(|&c| Rational::from(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use alloc::vec;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(lo.into(), hi.into()).unwrap()
    }

    #[test]
    fn interval_intersections() {
        assert_eq!(interval_intersect(&iv(0, 2), &iv(1, 3)), Some(iv(1, 2)));
        assert_eq!(interval_intersect(&iv(0, 1), &iv(1, 3)), Some(iv(1, 1)));
        assert_eq!(interval_intersect(&iv(-4, -2), &iv(-1, 0)), None);
        assert!(Interval::new(2.into(), 1.into()).is_err());
    }

    #[test]
    fn box_intersections() {
        let unit = ibx(&[(0, 1), (0, 1)]);
        assert_eq!(box_intersect(&unit, &unit).unwrap(), Some(unit.clone()));
        assert_eq!(box_intersect(&unit, &ibx(&[(2, 3), (0, 1)])).unwrap(), None);
        assert_eq!(
            box_intersect(&ibx(&[(0, 2), (0, 2)]), &ibx(&[(1, 3), (1, 3)])).unwrap(),
            Some(ibx(&[(1, 2), (1, 2)]))
        );
        assert!(matches!(
            box_intersect(&unit, &ibx(&[(0, 1)])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn point_membership() {
        let unit = ibx(&[(0, 1), (0, 1)]);
        assert!(contains_point(&unit, &ipt(&[0, 1])).unwrap());
        assert!(!contains_point(&unit, &Point(vec![q(1, 2), q(2, 1)])).unwrap());
        let d = ibx(&[(-1, 1), (0, 2)]);
        assert!(contains_point(&d, &ipt(&[-1, 0])).unwrap());
        assert!(d.vertices().iter().any(|v| v.point == ipt(&[-1, 0])));
        assert!(contains_point(&unit, &ipt(&[0])).is_err());
    }

    #[test]
    fn gaps() {
        let a = ibx(&[(-4, -2), (-4, 4)]);
        let b = ibx(&[(2, 4), (-4, 4)]);
        assert_eq!(axis_gap(&a, &b, 0).unwrap(), Some(q(4, 1)));
        assert_eq!(axis_gap(&b, &a, 0).unwrap(), Some(q(4, 1)));
        assert_eq!(axis_gap(&a, &b, 1).unwrap(), None);
        assert_eq!(axis_gap(&ibx(&[(0, 1)]), &ibx(&[(1, 2)]), 0).unwrap(), None);
        assert_eq!(axis_gap(&ibx(&[(0, 1)]), &ibx(&[(5, 6)]), 0).unwrap(), Some(q(4, 1)));
        assert!(matches!(axis_gap(&a, &b, 2), Err(Error::BadAxis { axis: 2, dim: 2 })));
    }

    #[test]
    fn face_enumeration() {
        let f1 = ibx(&[(0, 1)]).faces();
        assert_eq!(f1, vec![ibx(&[(0, 0)]), ibx(&[(1, 1)])]);
        assert_eq!(ibx(&[(0, 1), (0, 1)]).faces().len(), 4);
        let f3 = ibx(&[(0, 1), (0, 2), (0, 3)]).faces();
        assert_eq!(f3.len(), 6);
        assert_eq!(f3[5], ibx(&[(0, 1), (0, 2), (3, 3)]));
    }

    #[test]
    fn vertex_and_pair_enumeration() {
        let unit = ibx(&[(0, 1), (0, 1)]);
        let vs: Vec<Point> = unit.vertices().into_iter().map(|v| v.point).collect();
        assert_eq!(vs, vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[0, 1]), ipt(&[1, 1])]);
        let pairs = unit.diagonal_pairs();
        assert_eq!(pairs.len(), 2);
        assert_eq!((pairs[0].p.point.clone(), pairs[0].q.point.clone()), (ipt(&[0, 0]), ipt(&[1, 1])));
        assert_eq!((pairs[1].p.point.clone(), pairs[1].q.point.clone()), (ipt(&[1, 0]), ipt(&[0, 1])));

        let line = ibx(&[(3, 7)]).diagonal_pairs();
        assert_eq!(line.len(), 1);
        assert_eq!((line[0].p.point.clone(), line[0].q.point.clone()), (ipt(&[3]), ipt(&[7])));

        let cube = ibx(&[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(cube.vertices().len(), 8);
        assert_eq!(cube.diagonal_pairs().len(), 4);
    }

    #[test]
    fn common_intersection_fold() {
        let boxes = [ibx(&[(0, 4), (0, 4)]), ibx(&[(2, 6), (1, 3)]), ibx(&[(3, 5), (0, 9)])];
        assert_eq!(common_intersection(&boxes).unwrap(), Some(ibx(&[(3, 4), (1, 3)])));
        assert_eq!(common_intersection(core::iter::empty()), Err(Error::EmptyFamily));
    }
}
