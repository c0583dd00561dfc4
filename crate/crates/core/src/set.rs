//! Dense bitsets over a fixed universe of indices.
//!
//! [`StateSet`] is used for subsets of the joint space `X×Y` (good sets,
//! regulating sets, forward-closed sets) as well as for belief subsets of a
//! model's state space.

use std::fmt;

const WORD: usize = u64::BITS as usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    universe: usize,
    words: Vec<u64>,
}

impl StateSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for (i, word) in set.words.iter_mut().enumerate() {
            let remaining = universe - i * WORD;
            *word = if remaining >= WORD {
                u64::MAX
            } else {
                (1u64 << remaining) - 1
            };
        }
        set
    }

    /// Builds a set from member indices.
    ///
    /// Panics if an index is outside the universe.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Self {
        let mut set = Self::empty(universe);
        for i in members {
            set.insert(i);
        }
        set
    }

    /// Interprets the low `universe` bits of `mask` as membership flags.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "mask form only covers universes up to 64");
        let mut set = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == WORD {
                u64::MAX
            } else {
                (1u64 << universe) - 1
            };
            set.words[0] = mask & keep;
        }
        set
    }

    /// Inverse of [`StateSet::from_mask`]; `None` when the universe exceeds 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / WORD] & (1u64 << (i % WORD)) != 0
    }

    /// Returns `true` if `i` was not already present.
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(
            i < self.universe,
            "index {i} outside universe {}",
            self.universe
        );
        let word = &mut self.words[i / WORD];
        let before = *word;
        *word |= 1u64 << (i % WORD);
        before != *word
    }

    /// Returns `true` if `i` was present.
    pub fn remove(&mut self, i: usize) -> bool {
        if i >= self.universe {
            return false;
        }
        let word = &mut self.words[i / WORD];
        let before = *word;
        *word &= !(1u64 << (i % WORD));
        before != *word
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.universe == other.universe
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateSet({})", self.universe)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_index * WORD + bit);
            }
            self.word_index += 1;
            self.current = *self.words.get(self.word_index)?;
        }
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
