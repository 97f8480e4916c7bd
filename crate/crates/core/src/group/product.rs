use std::sync::Arc;

use super::{ElemSet, FiniteGroup, Subgroup};

/// `S x S` with `(a, b)` stored at index `a * |S| + b`.
///
/// The first coordinate is the left factor: a biset `X` is viewed as an
/// `S x S`-set through `(a, b) . x = a x b^-1`.
#[derive(Clone, Debug)]
pub struct DirectSquare {
    base: Arc<FiniteGroup>,
    square: Arc<FiniteGroup>,
}

impl DirectSquare {
    pub fn new(base: Arc<FiniteGroup>) -> Self {
        let square = Arc::new(FiniteGroup::direct_product(&base, &base));
        Self { base, square }
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn square(&self) -> &Arc<FiniteGroup> {
        &self.square
    }

    #[inline]
    pub fn encode(&self, a: usize, b: usize) -> usize {
        a * self.base.order() + b
    }

    #[inline]
    pub fn decode(&self, x: usize) -> (usize, usize) {
        (x / self.base.order(), x % self.base.order())
    }

    pub fn project_left(&self, d: &Subgroup) -> Subgroup {
        self.project(d, |x| self.decode(x).0)
    }

    pub fn project_right(&self, d: &Subgroup) -> Subgroup {
        self.project(d, |x| self.decode(x).1)
    }

    fn project(&self, d: &Subgroup, f: impl Fn(usize) -> usize) -> Subgroup {
        Subgroup::from_bits(ElemSet::from_elements(
            self.base.order(),
            d.elements().iter().map(|&x| f(x)),
        ))
    }

    /// `P x Q` as a subgroup of the square.
    pub fn product(&self, p: &Subgroup, q: &Subgroup) -> Subgroup {
        let elems = p
            .elements()
            .iter()
            .flat_map(|&a| q.elements().iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.encode(a, b));
        Subgroup::from_bits(ElemSet::from_elements(self.square.order(), elems))
    }

    /// Image of `d` under `(a, b) -> (left(a), right(b))`.
    pub fn map_pairs(
        &self,
        d: &Subgroup,
        left: impl Fn(usize) -> usize,
        right: impl Fn(usize) -> usize,
    ) -> Subgroup {
        let elems = d.elements().iter().map(|&x| {
            let (a, b) = self.decode(x);
            self.encode(left(a), right(b))
        });
        Subgroup::from_bits(ElemSet::from_elements(self.square.order(), elems))
    }
}
