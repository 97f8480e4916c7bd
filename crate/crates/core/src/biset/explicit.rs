use std::collections::HashMap;

use num_traits::ToPrimitive;

use super::burnside::VirtualGSet;
use super::diagonal::{is_twisted_diagonal, TwistedDiagonal};
use crate::error::{Error, Result};
use crate::group::{canonical_representative, monomorphisms, DirectSquare, ElemSet, FiniteGroup, GroupMap, Subgroup};

/// A finite set with commuting left and right `S`-actions, stored as tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitBiset {
    group_order: usize,
    points: usize,
    /// `left[s * points + x] = s . x`
    left: Vec<usize>,
    /// `right[x * |S| + s] = x . s`
    right: Vec<usize>,
}

impl ExplicitBiset {
    pub fn empty(group_order: usize) -> Self {
        Self {
            group_order,
            points: 0,
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    #[inline]
    pub fn left_act(&self, s: usize, x: usize) -> usize {
        self.left[s * self.points + x]
    }

    #[inline]
    pub fn right_act(&self, x: usize, s: usize) -> usize {
        self.right[x * self.group_order + s]
    }

    /// `(a, b) . x = a x b^-1` for an element of the square.
    pub fn square_act(&self, square: &DirectSquare, g: usize, x: usize) -> usize {
        let (a, b) = square.decode(g);
        self.left_act(a, self.right_act(x, square.base().inv(b)))
    }

    /// Checks the action axioms and that the two actions commute.
    pub fn verify(&self, group: &FiniteGroup) -> bool {
        let n = self.group_order;
        if group.order() != n {
            return false;
        }
        let pts = 0..self.points;
        for x in pts.clone() {
            if self.left_act(0, x) != x || self.right_act(x, 0) != x {
                return false;
            }
        }
        for s in 0..n {
            for t in 0..n {
                for x in pts.clone() {
                    if self.left_act(s, self.left_act(t, x)) != self.left_act(group.mul(s, t), x)
                        || self.right_act(self.right_act(x, s), t) != self.right_act(x, group.mul(s, t))
                        || self.right_act(self.left_act(s, x), t) != self.left_act(s, self.right_act(x, t))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_right_free(&self) -> bool {
        (0..self.points).all(|x| (1..self.group_order).all(|s| self.right_act(x, s) != x))
    }

    pub fn is_left_free(&self) -> bool {
        (0..self.points).all(|x| (1..self.group_order).all(|s| self.left_act(s, x) != x))
    }

    /// For each point, the index of its right orbit, plus the least point of
    /// each orbit in order.
    pub fn right_orbits(&self) -> (Vec<usize>, Vec<usize>) {
        let mut orbit_of = vec![usize::MAX; self.points];
        let mut bases = Vec::new();
        for x in 0..self.points {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            for s in 0..self.group_order {
                orbit_of[self.right_act(x, s)] = bases.len();
            }
            bases.push(x);
        }
        (orbit_of, bases)
    }

    /// Stabilizer of `x` in the square.
    pub fn stabilizer(&self, square: &DirectSquare, x: usize) -> Subgroup {
        let g = square.square();
        let elems = g.elements().filter(|&h| self.square_act(square, h, x) == x);
        Subgroup::from_bits(ElemSet::from_elements(g.order(), elems))
    }

    /// Points fixed by every element of `d`, counted directly.
    pub fn fixed_points(&self, square: &DirectSquare, d: &Subgroup) -> usize {
        let gens = d.generators(square.square());
        (0..self.points)
            .filter(|&x| gens.iter().all(|&h| self.square_act(square, h, x) == x))
            .count()
    }

    /// Disjoint union; points of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &ExplicitBiset) -> Self {
        assert_eq!(self.group_order, other.group_order);
        let n = self.group_order;
        let (p, q) = (self.points, other.points);
        let total = p + q;
        let mut left = vec![0; n * total];
        let mut right = vec![0; n * total];
        for s in 0..n {
            for x in 0..p {
                left[s * total + x] = self.left_act(s, x);
                right[x * n + s] = self.right_act(x, s);
            }
            for x in 0..q {
                left[s * total + p + x] = p + other.left_act(s, x);
                right[(p + x) * n + s] = p + other.right_act(x, s);
            }
        }
        Self {
            group_order: n,
            points: total,
            left,
            right,
        }
    }
}

/// `S x_(Q,phi) S`: the quotient of `S x S` by `(x phi(u), y) ~ (x, u y)`
/// for `u` in `Q`, with `a.[x,y] = [ax,y]` and `[x,y].b = [x,yb]`.
///
/// The stabilizer of `[1,1]` is `Delta(Q, phi)`. Points are numbered by
/// their representative with least first coordinate, in lexicographic order.
pub fn materialize(group: &FiniteGroup, phi: &GroupMap) -> Result<ExplicitBiset> {
    let whole = Subgroup::whole(group);
    let q = phi.domain();
    let checked = GroupMap::new(group, q.clone(), whole, phi.images().to_vec())
        .map_err(|e| Error::InvalidMorphism(e.to_string()))?;
    let n = group.order();
    let mut point_of = vec![usize::MAX; n * n];
    let mut points = 0;
    for x in 0..n {
        for y in 0..n {
            if point_of[x * n + y] != usize::MAX {
                continue;
            }
            for (u, fu) in checked.pairs() {
                let a = group.mul(x, fu);
                let b = group.mul(group.inv(u), y);
                point_of[a * n + b] = points;
            }
            points += 1;
        }
    }
    let mut rep = vec![(0, 0); points];
    for idx in (0..n * n).rev() {
        rep[point_of[idx]] = (idx / n, idx % n);
    }
    let mut left = vec![0; n * points];
    let mut right = vec![0; n * points];
    for (p, &(x, y)) in rep.iter().enumerate() {
        for s in 0..n {
            left[s * points + p] = point_of[group.mul(s, x) * n + y];
            right[p * n + s] = point_of[x * n + group.mul(y, s)];
        }
    }
    Ok(ExplicitBiset {
        group_order: n,
        points,
        left,
        right,
    })
}

/// Canonical class of the stabilizer of `x`, which must be a twisted diagonal.
pub fn orbit_class(square: &DirectSquare, biset: &ExplicitBiset, x: usize) -> Result<Subgroup> {
    let stab = biset.stabilizer(square, x);
    if !is_twisted_diagonal(square, &stab) {
        return Err(Error::NotBifree(format!(
            "stabilizer of point {x} has order {} but is not a twisted diagonal",
            stab.order()
        )));
    }
    Ok(canonical_representative(square.square(), &stab))
}

/// The explicit biset of an integral, nonnegative combination of twisted
/// diagonal classes.
pub fn realize_explicit(square: &DirectSquare, v: &VirtualGSet) -> Result<ExplicitBiset> {
    if !v.is_integral() || !v.is_nonnegative() {
        return Err(Error::NotABiset("coefficients must be nonnegative integers".into()));
    }
    let base = square.base();
    let mut out = ExplicitBiset::empty(base.order());
    let mut cache: HashMap<ElemSet, ExplicitBiset> = HashMap::new();
    for (z, c) in v.terms() {
        let td = TwistedDiagonal::from_subgroup(square, z)
            .ok_or_else(|| Error::NotBifree(format!("{:?} is not a twisted diagonal", z.elements())))?;
        let orbit = match cache.get(z.bits()) {
            Some(b) => b.clone(),
            None => {
                let b = materialize(base, td.map())?;
                cache.insert(z.bits().clone(), b.clone());
                b
            }
        };
        let copies = c
            .to_integer()
            .to_usize()
            .ok_or_else(|| Error::NotABiset(format!("coefficient {c} is too large")))?;
        for _ in 0..copies {
            out = out.disjoint_union(&orbit);
        }
    }
    Ok(out)
}

/// Every `Delta(Q, phi)` in canonical form, paired with its materialized orbit.
pub fn all_orbit_types(square: &DirectSquare, lattice: &crate::group::SubgroupLattice) -> Vec<(GroupMap, ExplicitBiset)> {
    let base = square.base();
    let whole = Subgroup::whole(base);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for q in lattice.subgroups() {
        for phi in monomorphisms(base, q, &whole) {
            let td = TwistedDiagonal::new(square, &phi);
            let rep = canonical_representative(square.square(), td.subgroup());
            if seen.insert(rep.bits().clone()) {
                let b = materialize(base, &phi).expect("monomorphism");
                out.push((phi, b));
            }
        }
    }
    out
}
