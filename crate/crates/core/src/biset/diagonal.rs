use crate::group::{monomorphisms, DirectSquare, GroupMap, Subgroup, SubgroupLattice};

/// `Delta(P, phi) = {(phi(u), u) : u in P}` inside `S x S`.
///
/// This is the point stabilizer of the transitive biset `S x_(P,phi) S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistedDiagonal {
    map: GroupMap,
    subgroup: Subgroup,
}

impl TwistedDiagonal {
    /// `phi` is read as a map `P -> S`.
    pub fn new(square: &DirectSquare, phi: &GroupMap) -> Self {
        let elems = phi.pairs().map(|(u, a)| square.encode(a, u));
        let subgroup = Subgroup::from_bits(crate::group::ElemSet::from_elements(
            square.square().order(),
            elems,
        ));
        let whole = Subgroup::whole(square.base());
        let map = GroupMap::new_unchecked(phi.domain().clone(), whole, phi.images().to_vec());
        Self { map, subgroup }
    }

    /// `Delta(S, id)`.
    pub fn identity(square: &DirectSquare) -> Self {
        Self::new(square, &GroupMap::identity(&Subgroup::whole(square.base())))
    }

    /// Recovers `(P, phi)` when both projections are injective on `d`.
    pub fn from_subgroup(square: &DirectSquare, d: &Subgroup) -> Option<Self> {
        let right = square.project_right(d);
        if right.order() != d.order() || square.project_left(d).order() != d.order() {
            return None;
        }
        let mut images = vec![0; right.order()];
        for &z in d.elements() {
            let (a, u) = square.decode(z);
            images[right.position(u)?] = a;
        }
        let map = GroupMap::new_unchecked(right, Subgroup::whole(square.base()), images);
        Some(Self {
            map,
            subgroup: d.clone(),
        })
    }

    /// `P`.
    pub fn domain(&self) -> &Subgroup {
        self.map.domain()
    }

    /// `phi: P -> S`.
    pub fn map(&self) -> &GroupMap {
        &self.map
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }
}

pub fn is_twisted_diagonal(square: &DirectSquare, d: &Subgroup) -> bool {
    square.project_left(d).order() == d.order() && square.project_right(d).order() == d.order()
}

/// `Delta(P, phi)` for every subgroup `P` of `S` and every injective
/// `phi: P -> S`. These are exactly the twisted diagonal subgroups of `S x S`.
pub fn all_twisted_diagonals(square: &DirectSquare, lattice: &SubgroupLattice) -> Vec<TwistedDiagonal> {
    let base = square.base();
    let whole = Subgroup::whole(base);
    lattice
        .subgroups()
        .iter()
        .flat_map(|p| monomorphisms(base, p, &whole))
        .map(|phi| TwistedDiagonal::new(square, &phi))
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::group::all_subgroups;

    #[test]
    fn projections_recover_the_map() {
        let s = Arc::new(catalog::dihedral8());
        let sq = DirectSquare::new(s.clone());
        let lattice = all_subgroups(&s);
        let all = all_twisted_diagonals(&sq, &lattice);
        for td in &all {
            let d = td.subgroup();
            assert_eq!(d.order(), td.domain().order());
            assert_eq!(sq.project_right(d), *td.domain());
            assert_eq!(sq.project_left(d), td.map().image());
            assert_eq!(TwistedDiagonal::from_subgroup(&sq, d).as_ref(), Some(td));
        }
        let p = Subgroup::new(&s, [0, 4]).unwrap();
        let not_diag = sq.product(&p, &Subgroup::trivial(&s));
        assert!(!is_twisted_diagonal(&sq, &not_diag));
        assert!(TwistedDiagonal::from_subgroup(&sq, &not_diag).is_none());
    }
}
