//! Subsets of a fixed finite ground set, stored as chunked bit arrays.
//!
//! Every set carries the size of its universe so that mixing sets from
//! different spaces is caught instead of silently producing garbage.
//!
//! # Invariants
//!
//! - `words.len() == words_for(universe)`
//! - all bits at positions `>= universe` are zero
//! - the canonical order compares cardinality first, then the sorted
//!   index sequences lexicographically; every "first witness" and
//!   "canonical choice" in this crate refers to that order

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(universe: usize) -> usize {
    universe.div_ceil(WORD_BITS)
}

/// Mask of the valid bits in the last word, or all ones when the
/// universe fills it exactly.
fn last_word_mask(universe: usize) -> u64 {
    let rem = universe % WORD_BITS;
    if rem == 0 {
        !0
    } else {
        (1u64 << rem) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    universe: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet {
            universe,
            words: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut words = vec![!0u64; words_for(universe)];
        if let Some(last) = words.last_mut() {
            *last &= last_word_mask(universe);
        }
        PointSet { universe, words }
    }

    pub fn singleton(universe: usize, index: usize) -> Result<Self> {
        let mut s = PointSet::empty(universe);
        s.try_insert(index)?;
        Ok(s)
    }

    pub fn from_indices(universe: usize, indices: &[usize]) -> Result<Self> {
        let mut s = PointSet::empty(universe);
        for &i in indices {
            s.try_insert(i)?;
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.universe && self.words[index / WORD_BITS] >> (index % WORD_BITS) & 1 == 1
    }

    pub fn try_insert(&mut self, index: usize) -> Result<()> {
        if index >= self.universe {
            return Err(Error::IndexOutOfRange {
                index,
                universe: self.universe,
            });
        }
        self.words[index / WORD_BITS] |= 1u64 << (index % WORD_BITS);
        Ok(())
    }

    /// Panics when the index is outside the universe; use `try_insert`
    /// on unvalidated input.
    pub fn insert(&mut self, index: usize) {
        self.try_insert(index).expect("index within universe");
    }

    pub fn remove(&mut self, index: usize) {
        if index < self.universe {
            self.words[index / WORD_BITS] &= !(1u64 << (index % WORD_BITS));
        }
    }

    fn check_universe(&self, other: &PointSet) -> Result<()> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch {
                left: self.universe,
                right: other.universe,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.check_universe(other).expect("matching universes");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        PointSet {
            universe: self.universe,
            words,
        }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.check_universe(other).expect("matching universes");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        PointSet {
            universe: self.universe,
            words,
        }
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.check_universe(other).expect("matching universes");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.check_universe(other).expect("matching universes");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        PointSet {
            universe: self.universe,
            words,
        }
    }

    pub fn complement(&self) -> PointSet {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if let Some(last) = words.last_mut() {
            *last &= last_word_mask(self.universe);
        }
        PointSet {
            universe: self.universe,
            words,
        }
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.check_universe(other).expect("matching universes");
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.check_universe(other).expect("matching universes");
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Smallest member, if any. This is the "canonical point" picked
    /// whenever one representative of a nonempty set is needed.
    pub fn min_index(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> Indices<'_> {
        Indices {
            set: self,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical order: smaller sets first, ties broken by comparing the
    /// sorted index sequences lexicographically.
    pub fn canonical_cmp(&self, other: &PointSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub struct Indices<'a> {
    set: &'a PointSet,
    word: usize,
    bits: u64,
}

impl Iterator for Indices<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * WORD_BITS + tz);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

/// All `k`-element combinations of `items` in lexicographic order of
/// positions. With `items` sorted ascending this is also lexicographic
/// order of the values, which is how subset scans stay deterministic.
pub fn k_subsets_lex(items: &[usize], k: usize) -> KSubsets {
    KSubsets {
        items: items.to_vec(),
        positions: (0..k).collect(),
        k,
        done: k > items.len(),
        colex: false,
    }
}

/// All `k`-element combinations of `items` in colexicographic order.
pub fn k_subsets_colex(items: &[usize], k: usize) -> KSubsets {
    KSubsets {
        items: items.to_vec(),
        positions: (0..k).collect(),
        k,
        done: k > items.len(),
        colex: true,
    }
}

pub struct KSubsets {
    items: Vec<usize>,
    positions: Vec<usize>,
    k: usize,
    done: bool,
    colex: bool,
}

impl Iterator for KSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current: Vec<usize> = self.positions.iter().map(|&p| self.items[p]).collect();
        self.done = if self.colex {
            !advance_colex(&mut self.positions, self.items.len())
        } else {
            !advance_lex(&mut self.positions, self.items.len())
        };
        if self.k == 0 {
            self.done = true;
        }
        Some(current)
    }
}

fn advance_lex(pos: &mut [usize], n: usize) -> bool {
    let k = pos.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if pos[i] < n - (k - i) {
            pos[i] += 1;
            for j in i + 1..k {
                pos[j] = pos[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn advance_colex(pos: &mut [usize], n: usize) -> bool {
    let k = pos.len();
    if k == 0 {
        return false;
    }
    // Find the lowest slot that can move right without touching the next.
    for i in 0..k {
        let limit = if i + 1 < k { pos[i + 1] } else { n };
        if pos[i] + 1 < limit {
            pos[i] += 1;
            for (j, p) in pos.iter_mut().enumerate().take(i) {
                *p = j;
            }
            return true;
        }
    }
    false
}

/// All subsets of `base` in canonical order (by size, then lexicographic).
pub fn subsets_canonical(base: &PointSet) -> Vec<PointSet> {
    let members = base.to_vec();
    let universe = base.universe();
    let mut out = Vec::with_capacity(1 << members.len().min(24));
    for k in 0..=members.len() {
        for combo in k_subsets_lex(&members, k) {
            out.push(PointSet::from_indices(universe, &combo).expect("members valid"));
        }
    }
    out
}
