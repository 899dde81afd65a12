use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

const WORD: usize = 64;

/// A subset of the vertex ids `0..universe`, stored as a bitset.
///
/// The cardinality is cached and kept in sync by every mutating method.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::new(universe);
        for v in 0..universe {
            set.insert(v);
        }
        set
    }

    /// Builds a set from vertex ids. Ids outside the universe are rejected.
    pub fn from_vertices<I>(universe: usize, vertices: I) -> Option<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::new(universe);
        for v in vertices {
            if v >= universe {
                return None;
            }
            set.insert(v);
        }
        Some(set)
    }

    /// Builds a set from the low `universe` bits of a single word.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "mask sets hold at most 64 vertices");
        let mask = if universe == WORD {
            mask
        } else {
            mask & ((1u64 << universe) - 1)
        };
        let mut words = vec![0; universe.div_ceil(WORD)];
        if let Some(w) = words.first_mut() {
            *w = mask;
        }
        VertexSet {
            universe,
            words,
            len: mask.count_ones() as usize,
        }
    }

    /// The single-word representation, when the universe fits in 64 bits.
    pub fn as_mask(&self) -> Option<u64> {
        (self.universe <= WORD).then(|| self.words.first().copied().unwrap_or(0))
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Inserts `v`, returning whether it was newly added.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let word = &mut self.words[v / WORD];
        let bit = 1u64 << (v % WORD);
        let fresh = *word & bit == 0;
        *word |= bit;
        self.len += fresh as usize;
        fresh
    }

    /// Removes `v`, returning whether it was present.
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let word = &mut self.words[v / WORD];
        let bit = 1u64 << (v % WORD);
        let present = *word & bit != 0;
        *word &= !bit;
        self.len -= present as usize;
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = self.universe % WORD;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        VertexSet {
            universe: self.universe,
            words,
            len: self.universe - self.len,
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> Self {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet {
            universe: self.universe,
            words,
            len,
        }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.universe == other.universe
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Orders sets by the integer value of their bitsets.
    pub fn cmp_value(&self, other: &VertexSet) -> Ordering {
        let width = self.words.len().max(other.words.len());
        for i in (0..width).rev() {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn insert_remove_tracks_len() {
        let mut s = VertexSet::new(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.len(), 2);
        assert!(s.remove(0));
        assert!(!s.remove(0));
        assert_eq!(s.to_vec(), vec![129]);
    }

    #[test]
    fn complement_respects_universe() {
        let s = VertexSet::from_vertices(70, [1, 65]).unwrap();
        let c = s.complement();
        assert_eq!(c.len(), 68);
        assert!(!c.contains(65));
        assert!(c.contains(69));
        assert!(c.iter().all(|v| v < 70));
    }

    #[test]
    fn value_order() {
        let a = VertexSet::from_vertices(100, [70]).unwrap();
        let b = VertexSet::from_vertices(100, [0, 1, 2, 63]).unwrap();
        assert_eq!(a.cmp_value(&b), Ordering::Greater);
        assert_eq!(b.cmp_value(&b), Ordering::Equal);
    }

    proptest! {
        #[test]
        fn cardinality_matches_popcount(universe in 1usize..200, picks in proptest::collection::vec(0usize..200, 0..60)) {
            let mut s = VertexSet::new(universe);
            for (i, p) in picks.iter().enumerate() {
                let v = p % universe;
                if i % 3 == 2 { s.remove(v); } else { s.insert(v); }
            }
            let pop: usize = s.words.iter().map(|w| w.count_ones() as usize).sum();
            prop_assert_eq!(s.len(), pop);
            prop_assert_eq!(s.iter().count(), pop);
            prop_assert_eq!(s.complement().len(), universe - pop);
        }
    }
}
