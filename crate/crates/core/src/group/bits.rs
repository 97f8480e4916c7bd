use smallvec::SmallVec;

/// Bitset over the element indices of one ambient group.
///
/// Inline up to 256 elements, which covers every direct square `S x S`
/// with `|S| <= 16`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(SmallVec<[u64; 4]>);

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        Self(SmallVec::from_elem(0, universe.div_ceil(64).max(1)))
    }

    pub fn from_elements(universe: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for x in elements {
            set.insert(x);
        }
        set
    }

    /// Number of representable elements (a multiple of 64).
    pub fn capacity(&self) -> usize {
        self.0.len() * 64
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        let (w, b) = (x / 64, 1u64 << (x % 64));
        let fresh = self.0[w] & b == 0;
        self.0[w] |= b;
        fresh
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.0.get(x / 64).is_some_and(|w| w & (1u64 << (x % 64)) != 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        Self(self.0.iter().zip(other.0.iter()).map(|(a, b)| a & b).collect())
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }
}
