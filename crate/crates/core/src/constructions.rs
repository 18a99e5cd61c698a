//! Tight instances for the Helly-type bounds.
//!
//! [`gen_interval_tight`] gives `n + 1` disjoint intervals, every `n` of which
//! are `n`-pierceable. [`gen_lowerbound_2piercing`] builds `3d - 1` classes of
//! three pairwise disjoint boxes in `R^d` in which every colorful tuple is
//! 2-pierceable; [`witness_from_tables`] produces the two piercing points of a
//! tuple by table lookup instead of search.
//!
//! Class and box order follow the construction's subscripts: class `2i` and
//! `2i + 1` (0-based) carry the two interval patterns on axis `i`, class
//! `2d + k` couples axis 0 with axis `d - 1 - k`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::family::{ColorSystem, Family};
use crate::geometry::{AxisBox, Interval, Point};
use crate::rational::{q, Rational};

/// `n + 1` pairwise disjoint intervals `[2i, 2i + 1]`.
pub fn gen_interval_tight(n: usize) -> Result<Family> {
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    Family::new(
        (0..=n as i64)
            .map(|i| AxisBox::from_bounds([(Rational::from(2 * i), Rational::from(2 * i + 1))]))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Which coordinates to use for the third box of each even class.
///
/// The construction as printed puts that box at `[-5/2, -3/2]` on its axis.
/// With that box a colorful tuple can pick three boxes that are pairwise
/// disjoint on axis 0 (for example `[-1, 0]`, `[-5/2, -3/2]` and the
/// `[3/4, 5]` side of a coupling box), so it is not 2-pierceable. The value
/// pair table for the `(second odd box, third even box)` combination lists
/// `(-1, 1)`, which only hits the third even box if it reaches `-1`; the
/// corrected variant therefore uses `[-5/2, -1]`, which keeps every class
/// pairwise disjoint and makes every colorful tuple 2-pierceable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LowerBoundCoordinates {
    Printed,
    #[default]
    Corrected,
}

/// The `3d - 1` classes of the two-piercing lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundSystem {
    pub system: ColorSystem,
    pub d: usize,
    pub coordinates: LowerBoundCoordinates,
}

impl core::ops::Deref for LowerBoundSystem {
    type Target = ColorSystem;
    fn deref(&self) -> &ColorSystem {
        &self.system
    }
}

fn iv(lo: Rational, hi: Rational) -> Interval {
    Interval::new(lo, hi).expect("constant interval")
}

/// Box that is `special` on the listed axes and `filler` everywhere else.
fn patterned(d: usize, filler: &Interval, special: &[(usize, &Interval)]) -> AxisBox {
    let sides = (0..d).map(|j| special.iter().find(|(a, _)| *a == j).map_or(filler, |(_, s)| *s).clone()).collect();
    AxisBox::new(sides).expect("d >= 1")
}

pub fn gen_lowerbound_2piercing(d: usize) -> Result<LowerBoundSystem> {
    gen_lowerbound_2piercing_with(d, LowerBoundCoordinates::default())
}

pub fn gen_lowerbound_2piercing_with(d: usize, coordinates: LowerBoundCoordinates) -> Result<LowerBoundSystem> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let wide = iv(q(-4, 1), q(4, 1));
    let odd = [iv(q(-4, 1), q(-2, 1)), iv(q(-1, 1), q(0, 1)), iv(q(5, 4), q(3, 1))];
    let third_even_hi = match coordinates {
        LowerBoundCoordinates::Printed => q(-3, 2),
        LowerBoundCoordinates::Corrected => q(-1, 1),
    };
    let even = [iv(q(2, 1), q(4, 1)), iv(q(1, 1), q(3, 2)), iv(q(-5, 2), third_even_hi)];

    let mut classes = Vec::with_capacity(3 * d - 1);
    for axis in 0..d {
        for pattern in [&odd, &even] {
            let boxes = pattern.iter().map(|s| patterned(d, &wide, &[(axis, s)])).collect();
            classes.push(Family::new(boxes)?);
        }
    }
    let huge = iv(q(-5, 1), q(5, 1));
    let low = iv(q(-5, 1), q(1, 4));
    let high = iv(q(3, 4), q(5, 1));
    for k in 0..d.saturating_sub(1) {
        let axis = d - 1 - k;
        let boxes = [(&low, &low), (&low, &high), (&high, &high)]
            .into_iter()
            .map(|(first, coupled)| patterned(d, &huge, &[(0, first), (axis, coupled)]))
            .collect();
        classes.push(Family::new(boxes)?);
    }
    Ok(LowerBoundSystem { system: ColorSystem::new(classes)?, d, coordinates })
}

/// `(alpha_j, beta_j)` for the boxes picked from classes `2j` and `2j + 1`
/// (0-based box indices within each class).
pub fn table_values(odd_choice: usize, even_choice: usize) -> Result<(Rational, Rational)> {
    let (a, b) = match (odd_choice, even_choice) {
        (0, 0) => ((-2, 1), (2, 1)),
        (0, 1) => ((-2, 1), (1, 1)),
        (0, 2) => ((-2, 1), (2, 1)),
        (1, 0) => ((0, 1), (2, 1)),
        (1, 1) => ((0, 1), (1, 1)),
        (1, 2) => ((-1, 1), (1, 1)),
        (2, 0) => ((0, 1), (2, 1)),
        (2, 1) => ((0, 1), (3, 2)),
        (2, 2) => ((-2, 1), (2, 1)),
        _ => {
            return Err(Error::InvalidParameter(alloc::format!(
                "box choice ({odd_choice}, {even_choice}) outside 0..3"
            )))
        }
    };
    Ok((q(a.0, a.1), q(b.0, b.1)))
}

/// How the coupling-class table is read on axis `d - 1 - k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableReading {
    /// Swap or keep that axis's own `(alpha, beta)`.
    AxisConsistent,
    /// Use `(alpha_k, beta_k)` of axis `k`, as the subscripts are printed.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableWitness {
    pub x: Point,
    pub y: Point,
    /// The box `D` spanned by the per-axis table values.
    pub spanned: AxisBox,
    /// The reading that validated. `Literal` means the axis-consistent
    /// reading missed a box of this tuple.
    pub reading: TableReading,
}

fn check_lower_bound_shape(c: &ColorSystem) -> Result<usize> {
    let d = c.dim();
    if c.num_classes() != 3 * d - 1 || c.classes().iter().any(|f| f.len() != 3) {
        return Err(Error::InvalidParameter(alloc::format!("expected {} classes of 3 boxes for d = {d}", 3 * d - 1)));
    }
    Ok(d)
}

fn table_points(d: usize, values: &[(Rational, Rational)], tuple: &[usize], reading: TableReading) -> (Point, Point) {
    let mut x: Vec<Rational> = values.iter().map(|(a, _)| a.clone()).collect();
    let mut y: Vec<Rational> = values.iter().map(|(_, b)| b.clone()).collect();
    for k in 0..d - 1 {
        let axis = d - 1 - k;
        let (a, b) = match reading {
            TableReading::AxisConsistent => &values[axis],
            TableReading::Literal => &values[k],
        };
        let (xa, ya) = if tuple[2 * d + k] == 1 { (b, a) } else { (a, b) };
        x[axis] = xa.clone();
        y[axis] = ya.clone();
    }
    (Point(x), Point(y))
}

fn first_miss(c: &ColorSystem, tuple: &[usize], x: &Point, y: &Point) -> Option<usize> {
    (0..tuple.len()).find(|&k| {
        let b = c.class(k).get(tuple[k]);
        !b.contains_unchecked(x) && !b.contains_unchecked(y)
    })
}

/// Table-driven two-point witness for a colorful tuple of a lower-bound system.
///
/// The axis-consistent reading is tried first; if it misses a box the literal
/// reading is tried and reported. If both miss, the error names the box the
/// axis-consistent reading missed.
pub fn witness_from_tables(c: &ColorSystem, tuple: &[usize]) -> Result<TableWitness> {
    let d = check_lower_bound_shape(c)?;
    c.check_tuple(tuple)?;
    let values = (0..d).map(|j| table_values(tuple[2 * j], tuple[2 * j + 1])).collect::<Result<Vec<_>>>()?;
    let spanned = AxisBox::new(values.iter().map(|(a, b)| iv(a.clone(), b.clone())).collect())?;

    let (x, y) = table_points(d, &values, tuple, TableReading::AxisConsistent);
    let Some(miss) = first_miss(c, tuple, &x, &y) else {
        return Ok(TableWitness { x, y, spanned, reading: TableReading::AxisConsistent });
    };
    let (lx, ly) = table_points(d, &values, tuple, TableReading::Literal);
    if first_miss(c, tuple, &lx, &ly).is_none() {
        return Ok(TableWitness { x: lx, y: ly, spanned, reading: TableReading::Literal });
    }
    Err(Error::TableWitnessMiss {
        class: miss,
        index: tuple[miss],
        x: alloc::format!("{x:?}"),
        y: alloc::format!("{y:?}"),
    })
}
