//! Box families and color systems.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::AxisBox;

/// An ordered list of boxes sharing one dimension, optionally labelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    boxes: Vec<AxisBox>,
    labels: Option<Vec<String>>,
}

impl Family {
    /// Accepts an empty list; operations that need boxes reject it themselves.
    pub fn new(boxes: Vec<AxisBox>) -> Result<Self> {
        if let Some(first) = boxes.first() {
            let d = first.dim();
            if let Some(bad) = boxes.iter().find(|b| b.dim() != d) {
                return Err(Error::DimensionMismatch { expected: d, found: bad.dim() });
            }
        }
        Ok(Family { boxes, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.boxes.len() {
            return Err(Error::InvalidParameter(alloc::format!(
                "{} labels for {} boxes",
                labels.len(),
                self.boxes.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn boxes(&self) -> &[AxisBox] {
        &self.boxes
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.boxes.first().map(AxisBox::dim)
    }

    pub fn get(&self, i: usize) -> &AxisBox {
        &self.boxes[i]
    }

    /// Sub-family picked by index, labels dropped.
    pub fn select(&self, indices: &[usize]) -> Family {
        Family { boxes: indices.iter().map(|&i| self.boxes[i].clone()).collect(), labels: None }
    }

    pub(crate) fn require_nonempty(&self) -> Result<usize> {
        self.dim().ok_or(Error::EmptyFamily)
    }
}

impl FromIterator<AxisBox> for Family {
    /// Panics on mixed dimensions; use [`Family::new`] for fallible construction.
    fn from_iter<T: IntoIterator<Item = AxisBox>>(iter: T) -> Self {
        Family::new(iter.into_iter().collect()).expect("boxes of one dimension")
    }
}

/// Color classes over a common dimension. Every class is non-empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorSystem {
    classes: Vec<Family>,
    dim: usize,
}

impl ColorSystem {
    pub fn new(classes: Vec<Family>) -> Result<Self> {
        let mut dim = None;
        for (k, class) in classes.iter().enumerate() {
            let d = class.dim().ok_or(Error::EmptyClass { class: k })?;
            match dim {
                None => dim = Some(d),
                Some(expected) if expected != d => return Err(Error::DimensionMismatch { expected, found: d }),
                _ => {}
            }
        }
        let dim = dim.ok_or(Error::EmptyFamily)?;
        Ok(ColorSystem { classes, dim })
    }

    pub fn classes(&self) -> &[Family] {
        &self.classes
    }

    pub fn class(&self, k: usize) -> &Family {
        &self.classes[k]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of colorful tuples, saturating at `u64::MAX`.
    pub fn tuple_count(&self) -> u64 {
        self.classes.iter().fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64))
    }

    /// The `k`-th colorful tuple in lexicographic order (last class varies fastest).
    pub fn tuple_at(&self, mut k: u64) -> Vec<usize> {
        let mut tuple = alloc::vec![0; self.classes.len()];
        for (slot, class) in tuple.iter_mut().zip(&self.classes).rev() {
            let size = class.len() as u64;
            *slot = (k % size) as usize;
            k /= size;
        }
        tuple
    }

    /// All boxes, class after class.
    pub fn flatten(&self) -> Family {
        Family { boxes: self.classes.iter().flat_map(|c| c.boxes().iter().cloned()).collect(), labels: None }
    }

    /// Offset of each class inside [`ColorSystem::flatten`].
    pub fn class_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.classes.len());
        let mut acc = 0;
        for c in &self.classes {
            offsets.push(acc);
            acc += c.len();
        }
        offsets
    }

    /// The boxes a tuple selects, one per class.
    pub fn tuple_boxes(&self, tuple: &[usize]) -> Result<Family> {
        self.check_tuple(tuple)?;
        Ok(Family { boxes: tuple.iter().zip(&self.classes).map(|(&i, c)| c.get(i).clone()).collect(), labels: None })
    }

    pub(crate) fn check_tuple(&self, tuple: &[usize]) -> Result<()> {
        if tuple.len() != self.classes.len() {
            return Err(Error::InvalidParameter(alloc::format!(
                "tuple has {} entries for {} classes",
                tuple.len(),
                self.classes.len()
            )));
        }
        for (k, (&i, c)) in tuple.iter().zip(&self.classes).enumerate() {
            if i >= c.len() {
                return Err(Error::InvalidParameter(alloc::format!(
                    "tuple entry {i} out of range for class {k} of size {}",
                    c.len()
                )));
            }
        }
        Ok(())
    }
}

/// Lexicographic stream over all colorful tuples of a [`ColorSystem`].
#[derive(Clone, Debug)]
pub struct ColorfulTuples {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for ColorfulTuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.sizes[k] {
                self.next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(current)
    }
}

/// Every way of picking one box per class, in lexicographic index order.
pub fn colorful_tuples(c: &ColorSystem) -> ColorfulTuples {
    ColorfulTuples { sizes: c.classes.iter().map(Family::len).collect(), next: Some(alloc::vec![0; c.classes.len()]) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ibx;
    use alloc::vec;

    fn class(n: usize) -> Family {
        (0..n as i64).map(|i| ibx(&[(i, i + 1)])).collect()
    }

    #[test]
    fn tuple_counts() {
        let c = ColorSystem::new(vec![class(2), class(3)]).unwrap();
        let all: Vec<_> = colorful_tuples(&c).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[5], vec![1, 2]);
        for (k, t) in all.iter().enumerate() {
            assert_eq!(&c.tuple_at(k as u64), t);
        }

        let five = ColorSystem::new(vec![class(3); 5]).unwrap();
        assert_eq!(colorful_tuples(&five).count(), 243);
        assert_eq!(five.tuple_count(), 243);
    }

    #[test]
    fn empty_class_rejected() {
        assert_eq!(ColorSystem::new(vec![class(2), Family::new(vec![]).unwrap()]), Err(Error::EmptyClass { class: 1 }));
    }

    #[test]
    fn mixed_dimensions_rejected() {
        assert!(Family::new(vec![ibx(&[(0, 1)]), ibx(&[(0, 1), (0, 1)])]).is_err());
        let flat = Family::new(vec![ibx(&[(0, 1), (0, 1)])]).unwrap();
        assert!(ColorSystem::new(vec![class(1), flat]).is_err());
    }
}
