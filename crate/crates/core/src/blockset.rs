use std::cmp::Ordering;
use std::fmt;

/// A subset of the block indices `{1..k}`, stored as a bitmask with block
/// `i` at bit `i - 1`.
///
/// Ordered by cardinality, then lexicographically on the sorted indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BlockSet(u64);

impl BlockSet {
    pub const MAX_BLOCKS: usize = 64;

    pub const fn empty() -> Self {
        BlockSet(0)
    }

    /// `{1..k}`.
    pub fn full(k: usize) -> Self {
        assert!(k <= Self::MAX_BLOCKS);
        if k == 64 {
            BlockSet(u64::MAX)
        } else {
            BlockSet((1u64 << k) - 1)
        }
    }

    pub const fn from_bits(bits: u64) -> Self {
        BlockSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a set from 1-based block indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0u64;
        for i in indices {
            assert!((1..=Self::MAX_BLOCKS).contains(&i), "block index {i} out of range");
            bits |= 1 << (i - 1);
        }
        BlockSet(bits)
    }

    pub fn insert(&mut self, index: usize) {
        self.0 |= 1 << (index - 1);
    }

    pub fn contains(self, index: usize) -> bool {
        (1..=Self::MAX_BLOCKS).contains(&index) && self.0 & (1 << (index - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        BlockSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        BlockSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Sorted 1-based indices.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits & (1 << i) != 0).map(|i| i + 1)
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = BlockSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
            Some(BlockSet(cur))
        })
    }
}

impl Ord for BlockSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for BlockSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_order() {
        let mut sets = [
            BlockSet::from_indices([2, 3]),
            BlockSet::from_indices([1, 2, 3]),
            BlockSet::from_indices([3]),
            BlockSet::empty(),
            BlockSet::from_indices([1, 3]),
            BlockSet::from_indices([1]),
        ];
        sets.sort();
        let shown: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{}", "{1}", "{3}", "{1,3}", "{2,3}", "{1,2,3}"]);
    }

    #[test]
    fn subsets_enumerated_once() {
        let s = BlockSet::from_indices([1, 3, 4]);
        let mut subs: Vec<u64> = s.subsets().map(|t| t.bits()).collect();
        subs.sort_unstable();
        assert_eq!(subs, vec![0, 1, 4, 5, 8, 9, 12, 13]);
        assert_eq!(BlockSet::empty().subsets().count(), 1);
        assert_eq!(BlockSet::full(64).len(), 64);
    }
}
