//! An indexed list of subsets over a shared ground set.
//!
//! Families keep the order (and any duplicates) they were constructed
//! with: callers refer to members by position, so reordering would
//! silently change the meaning of every reported index.
//!
//! # Invariants
//!
//! - every member has the same universe size as the family
//! - `sets()[i]` is the member with index `i`, forever

use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    universe: usize,
    sets: Vec<PointSet>,
}

impl SetFamily {
    pub fn new(universe: usize, sets: Vec<PointSet>) -> Result<SetFamily> {
        for s in &sets {
            if s.universe() != universe {
                return Err(Error::UniverseMismatch {
                    left: s.universe(),
                    right: universe,
                });
            }
        }
        Ok(SetFamily { universe, sets })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn get(&self, index: usize) -> Result<&PointSet> {
        self.sets.get(index).ok_or(Error::IndexOutOfRange {
            index,
            universe: self.sets.len(),
        })
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PointSet> {
        self.sets.iter()
    }

    /// Intersection of the members at the given positions; the full
    /// ground set when `indices` is empty.
    pub fn intersection_of(&self, indices: &[usize]) -> Result<PointSet> {
        let mut acc = PointSet::full(self.universe);
        for &i in indices {
            acc.intersect_with(self.get(i)?);
        }
        Ok(acc)
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a PointSet;
    type IntoIter = std::slice::Iter<'a, PointSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}
