use std::fmt;

use super::{ElemSet, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// An injective homomorphism between two subgroups of one ambient group,
/// stored extensionally: `images[i]` is the image of `domain.elements()[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMap {
    domain: Subgroup,
    codomain: Subgroup,
    images: Vec<usize>,
}

impl GroupMap {
    /// Checks that `images` defines an injective homomorphism into `codomain`.
    pub fn new(
        group: &FiniteGroup,
        domain: Subgroup,
        codomain: Subgroup,
        images: Vec<usize>,
    ) -> Result<Self> {
        domain
            .check_in(group)
            .and_then(|_| codomain.check_in(group))
            .map_err(|e| Error::InvalidMorphism(e.to_string()))?;
        if images.len() != domain.order() {
            return Err(Error::InvalidMorphism(format!(
                "{} images for a domain of order {}",
                images.len(),
                domain.order()
            )));
        }
        if let Some(&y) = images.iter().find(|&&y| !codomain.contains(y)) {
            return Err(Error::InvalidMorphism(format!("image {y} is outside the codomain")));
        }
        let map = Self {
            domain,
            codomain,
            images,
        };
        let image_set = ElemSet::from_elements(group.order(), map.images.iter().copied());
        if image_set.len() != map.images.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} is not injective",
                map
            )));
        }
        for (i, &u) in map.domain.elements().iter().enumerate() {
            for (j, &v) in map.domain.elements().iter().enumerate() {
                let uv = group.mul(u, v);
                if map.apply(uv) != group.mul(map.images[i], map.images[j]) {
                    return Err(Error::InvalidMorphism(format!(
                        "{} is not a homomorphism at ({u}, {v})",
                        map
                    )));
                }
            }
        }
        Ok(map)
    }

    /// Builds a map from `a -> b` pairs; the `a`s must form a subgroup.
    pub fn from_pairs(
        group: &FiniteGroup,
        pairs: &[(usize, usize)],
        codomain: Subgroup,
    ) -> Result<Self> {
        let domain = Subgroup::new(group, pairs.iter().map(|p| p.0))
            .map_err(|e| Error::InvalidMorphism(e.to_string()))?;
        if domain.order() != pairs.len() {
            return Err(Error::InvalidMorphism("an element is mapped twice".into()));
        }
        let mut images = vec![0; pairs.len()];
        for &(a, b) in pairs {
            images[domain.position(a).expect("a is in the domain")] = b;
        }
        Self::new(group, domain, codomain, images)
    }

    pub(crate) fn new_unchecked(domain: Subgroup, codomain: Subgroup, images: Vec<usize>) -> Self {
        debug_assert_eq!(domain.order(), images.len());
        Self {
            domain,
            codomain,
            images,
        }
    }

    pub fn identity(sub: &Subgroup) -> Self {
        Self::new_unchecked(sub.clone(), sub.clone(), sub.elements().to_vec())
    }

    /// Inclusion `sub -> codomain`.
    pub fn inclusion(sub: &Subgroup, codomain: &Subgroup) -> Self {
        Self::new_unchecked(sub.clone(), codomain.clone(), sub.elements().to_vec())
    }

    /// `u -> x u x^-1` on `domain`.
    pub fn conjugation(group: &FiniteGroup, x: usize, domain: &Subgroup, codomain: &Subgroup) -> Result<Self> {
        let images = domain.elements().iter().map(|&u| group.conj(x, u)).collect();
        Self::new(group, domain.clone(), codomain.clone(), images)
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn codomain(&self) -> &Subgroup {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.domain.elements().iter().copied().zip(self.images.iter().copied())
    }

    /// Image of `x`, which must lie in the domain.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[self.domain.position(x).expect("element outside the map's domain")]
    }

    pub fn try_apply(&self, x: usize) -> Option<usize> {
        self.domain.position(x).map(|i| self.images[i])
    }

    /// `phi(domain)` as a subgroup.
    pub fn image(&self) -> Subgroup {
        Subgroup::from_bits(ElemSet::from_elements(
            self.codomain.bits().capacity(),
            self.images.iter().copied(),
        ))
    }

    /// `after o self`; requires `phi(domain)` inside `after`'s domain.
    pub fn then(&self, after: &GroupMap) -> Option<GroupMap> {
        let images = self
            .images
            .iter()
            .map(|&y| after.try_apply(y))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new_unchecked(self.domain.clone(), after.codomain.clone(), images))
    }

    pub fn restrict(&self, sub: &Subgroup) -> Option<GroupMap> {
        if !sub.is_subgroup_of(&self.domain) {
            return None;
        }
        let images = sub.elements().iter().map(|&u| self.apply(u)).collect();
        Some(Self::new_unchecked(sub.clone(), self.codomain.clone(), images))
    }

    /// The isomorphism `phi(domain) -> domain`, with codomain the domain.
    pub fn inverse(&self) -> GroupMap {
        let image = self.image();
        let mut images = vec![0; image.order()];
        for (u, y) in self.pairs() {
            images[image.position(y).expect("y is in the image")] = u;
        }
        Self::new_unchecked(image, self.domain.clone(), images)
    }

    pub fn with_codomain(&self, codomain: &Subgroup) -> Option<GroupMap> {
        self.images
            .iter()
            .all(|&y| codomain.contains(y))
            .then(|| Self::new_unchecked(self.domain.clone(), codomain.clone(), self.images.clone()))
    }

    pub fn is_inclusion(&self) -> bool {
        self.images == self.domain.elements()
    }
}

impl fmt::Display for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All injective homomorphisms `p -> q`, found by backtracking over images
/// of a generating sequence of `p`. Sorted by image list.
pub fn monomorphisms(group: &FiniteGroup, p: &Subgroup, q: &Subgroup) -> Vec<GroupMap> {
    if p.order() > q.order() || !q.order().is_multiple_of(p.order()) {
        return Vec::new();
    }
    let gens = p.generators(group);
    let gen_orders: Vec<usize> = gens.iter().map(|&g| group.element_order(g)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(gens.len());
    extend(group, p, q, &gens, &gen_orders, &mut chosen, &mut out);
    out.sort();
    out
}

fn extend(
    group: &FiniteGroup,
    p: &Subgroup,
    q: &Subgroup,
    gens: &[usize],
    gen_orders: &[usize],
    chosen: &mut Vec<usize>,
    out: &mut Vec<GroupMap>,
) {
    let level = chosen.len();
    if level == gens.len() {
        if let Some(map) = propagate(group, p, gens, chosen) {
            let images = p.elements().iter().map(|&u| map[u]).collect();
            out.push(GroupMap::new_unchecked(p.clone(), q.clone(), images));
        }
        return;
    }
    for &y in q.elements() {
        if group.element_order(y) != gen_orders[level] {
            continue;
        }
        chosen.push(y);
        if propagate(group, p, &gens[..=level], chosen).is_some() {
            extend(group, p, q, gens, gen_orders, chosen, out);
        }
        chosen.pop();
    }
}

/// Extends `gens[i] -> images[i]` along right multiplication. Returns the
/// map on the generated subgroup if it is well defined and injective.
fn propagate(group: &FiniteGroup, p: &Subgroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; group.order()];
    let mut used = ElemSet::empty(group.order());
    map[0] = 0;
    used.insert(0);
    let mut list = vec![0];
    let mut cursor = 0;
    while cursor < list.len() {
        let a = list[cursor];
        for (&g, &y) in gens.iter().zip(images) {
            let b = group.mul(a, g);
            let fb = group.mul(map[a], y);
            if map[b] == UNSET {
                if !used.insert(fb) {
                    return None;
                }
                map[b] = fb;
                list.push(b);
            } else if map[b] != fb {
                return None;
            }
        }
        cursor += 1;
    }
    debug_assert!(list.iter().all(|&x| p.contains(x)));
    Some(map)
}
