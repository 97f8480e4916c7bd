//! Fusion systems on a finite p-group `S`, stored extensionally.
//!
//! A fusion system keeps, for every subgroup `P` of `S`, the set of its
//! morphisms `P -> S`. `Hom(P, Q)` is the subset whose image lies in `Q`.
//! Closure from generators is a fixed-point iteration over composition,
//! restriction and inversion of isomorphisms onto their images. Saturation
//! plays no role anywhere.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{all_subgroups, DirectSquare, ElemSet, FiniteGroup, GroupMap, Subgroup, SubgroupLattice};

/// A fusion-conjugacy relation on subgroups of some ambient group.
pub trait ConjugacyOracle {
    /// Every image of `d` under a morphism of the fusion system defined on
    /// `d`. Contains `d` itself.
    fn orbit(&self, d: &Subgroup) -> Vec<ElemSet>;

    fn conjugate(&self, d: &Subgroup, e: &Subgroup) -> bool {
        d.order() == e.order() && self.orbit(d).iter().any(|b| b == e.bits())
    }
}

type ImageVec = Vec<usize>;

#[derive(Clone, Debug)]
pub struct FusionSystem {
    base: Arc<FiniteGroup>,
    lattice: Arc<SubgroupLattice>,
    /// Indexed by lattice position of the domain.
    maps: Vec<BTreeSet<ImageVec>>,
}

impl PartialEq for FusionSystem {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.maps == other.maps
    }
}

impl Eq for FusionSystem {}

fn require_p_group(group: &FiniteGroup) -> Result<()> {
    if group.is_p_group() {
        Ok(())
    } else {
        Err(Error::NotAPGroup(group.order()))
    }
}

/// `F_S(S)`: all conjugations by elements of `S`.
pub fn inner_fusion(base: Arc<FiniteGroup>) -> Result<FusionSystem> {
    require_p_group(&base)?;
    let lattice = Arc::new(all_subgroups(&base));
    let mut fusion = FusionSystem {
        maps: vec![BTreeSet::new(); lattice.len()],
        base,
        lattice,
    };
    fusion.add_inner_maps();
    Ok(fusion)
}

/// Least fusion system on `base` containing the given morphisms.
pub fn close_fusion(base: Arc<FiniteGroup>, generators: &[GroupMap]) -> Result<FusionSystem> {
    let mut fusion = inner_fusion(base)?;
    let whole = Subgroup::whole(&fusion.base);
    for gen in generators {
        let checked = GroupMap::new(
            &fusion.base,
            gen.domain().clone(),
            whole.clone(),
            gen.images().to_vec(),
        )
        .map_err(|e| Error::InvalidGenerator(format!("{gen}: {e}")))?;
        let p = fusion.lattice.index_of(checked.domain()).ok_or_else(|| {
            Error::InvalidGenerator(format!("{gen}: domain is not a subgroup of S"))
        })?;
        fusion.maps[p].insert(checked.images().to_vec());
    }
    fusion.close();
    Ok(fusion)
}

/// `F_S(G)` for a p-subgroup `S` of `G`. The base of the result is `S`
/// relabelled so that `s.elements()[i]` becomes element `i`.
pub fn fusion_of_subgroup(group: &FiniteGroup, s: &Subgroup) -> Result<FusionSystem> {
    s.check_in(group)?;
    let base = group.restricted_to(s);
    fusion_via_embedding(group, Arc::new(base), s.elements())
}

/// `F_S(G)` where `S` embeds into `G` through `embedding[i]`.
pub fn fusion_via_embedding(
    group: &FiniteGroup,
    base: Arc<FiniteGroup>,
    embedding: &[usize],
) -> Result<FusionSystem> {
    require_p_group(&base)?;
    let n = base.order();
    if embedding.len() != n || embedding.iter().any(|&x| x >= group.order()) {
        return Err(Error::Domain("embedding does not list one group element per element of S".into()));
    }
    for a in 0..n {
        for b in 0..n {
            if embedding[base.mul(a, b)] != group.mul(embedding[a], embedding[b]) {
                return Err(Error::Domain(format!("embedding is not a homomorphism at ({a}, {b})")));
            }
        }
    }
    let local: HashMap<usize, usize> = embedding.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    if local.len() != n {
        return Err(Error::Domain("embedding is not injective".into()));
    }
    let lattice = Arc::new(all_subgroups(&base));
    let mut maps = vec![BTreeSet::new(); lattice.len()];
    for x in group.elements() {
        for (p, sub) in lattice.subgroups().iter().enumerate() {
            let images: Option<ImageVec> = sub
                .elements()
                .iter()
                .map(|&u| local.get(&group.conj(x, embedding[u])).copied())
                .collect();
            if let Some(images) = images {
                maps[p].insert(images);
            }
        }
    }
    Ok(FusionSystem { base, lattice, maps })
}

/// Parses generator lines `gen: a1->b1, a2->b2, ...` against `base`.
pub fn parse_generators(text: &str, base: &FiniteGroup) -> Result<Vec<GroupMap>> {
    let whole = Subgroup::whole(base);
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let body = line.strip_prefix("gen:").ok_or_else(|| Error::Parse {
            line: line_no,
            message: "expected `gen: a->b, ...`".into(),
        })?;
        let pairs = body
            .split(',')
            .map(|pair| {
                let (a, b) = pair.split_once("->").ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: format!("`{}` is not of the form a->b", pair.trim()),
                })?;
                let parse = |w: &str| {
                    w.trim().parse::<usize>().ok().filter(|&x| x < base.order()).ok_or_else(|| Error::Parse {
                        line: line_no,
                        message: format!("`{}` is not an element index below {}", w.trim(), base.order()),
                    })
                };
                Ok((parse(a)?, parse(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let map = GroupMap::from_pairs(base, &pairs, whole.clone())
            .map_err(|e| Error::InvalidGenerator(format!("line {line_no}: {e}")))?;
        gens.push(map);
    }
    Ok(gens)
}

impl FusionSystem {
    pub(crate) fn from_parts(
        base: Arc<FiniteGroup>,
        lattice: Arc<SubgroupLattice>,
        maps: Vec<BTreeSet<ImageVec>>,
    ) -> Self {
        Self { base, lattice, maps }
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    /// Morphisms `P -> S` for the subgroup at lattice index `p`, as image
    /// lists aligned with the sorted elements of `P`.
    pub fn maps_from(&self, p: usize) -> &BTreeSet<ImageVec> {
        &self.maps[p]
    }

    /// Morphisms `P -> S` for the subgroup at lattice index `p`.
    pub fn homs_to_base(&self, p: usize) -> Vec<GroupMap> {
        let whole = Subgroup::whole(&self.base);
        let domain = self.lattice.get(p);
        self.maps[p]
            .iter()
            .map(|imgs| GroupMap::new_unchecked(domain.clone(), whole.clone(), imgs.clone()))
            .collect()
    }

    /// `Hom_F(P, Q)`.
    pub fn homs(&self, p: &Subgroup, q: &Subgroup) -> Result<Vec<GroupMap>> {
        let pi = self.subgroup_index(p)?;
        self.subgroup_index(q)?;
        Ok(self.maps[pi]
            .iter()
            .filter(|imgs| imgs.iter().all(|&y| q.contains(y)))
            .map(|imgs| GroupMap::new_unchecked(p.clone(), q.clone(), imgs.clone()))
            .collect())
    }

    /// Whether `phi` (read as a map into `S`) is a morphism of the system.
    pub fn contains(&self, phi: &GroupMap) -> bool {
        self.lattice
            .index_of(phi.domain())
            .is_some_and(|p| self.maps[p].contains(phi.images()))
    }

    pub fn subgroup_index(&self, p: &Subgroup) -> Result<usize> {
        self.lattice
            .index_of(p)
            .ok_or_else(|| Error::Domain(format!("{:?} is not a subgroup of S", p.elements())))
    }

    /// Total number of morphisms `P -> S` over all `P`.
    pub fn morphism_count(&self) -> usize {
        self.maps.iter().map(BTreeSet::len).sum()
    }

    /// `|Hom_F(P, Q)|` for every ordered pair of lattice indices.
    pub fn hom_set_sizes(&self) -> Vec<Vec<usize>> {
        let subs = self.lattice.subgroups();
        (0..subs.len())
            .map(|p| {
                subs.iter()
                    .map(|q| {
                        self.maps[p]
                            .iter()
                            .filter(|imgs| imgs.iter().all(|&y| q.contains(y)))
                            .count()
                    })
                    .collect()
            })
            .collect()
    }

    /// F-conjugacy classes of subgroups, as sorted lattice indices.
    pub fn f_classes(&self) -> Vec<Vec<usize>> {
        let n = self.lattice.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for p in 0..n {
            for imgs in &self.maps[p] {
                let q = self.image_index(imgs);
                let (a, b) = (find(&mut parent, p), find(&mut parent, q));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for p in 0..n {
            let root = find(&mut parent, p);
            let c = *slot.entry(root).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(p);
        }
        classes
    }

    /// One automorphism per coset of `Inn(S)` in `Aut_F(S)`, identity first.
    pub fn out_reps(&self) -> Vec<GroupMap> {
        let top = self.lattice.top();
        let n = self.base.order();
        let inner: Vec<ImageVec> = (0..n)
            .map(|s| (0..n).map(|u| self.base.conj(s, u)).collect())
            .collect();
        let identity: ImageVec = (0..n).collect();
        let mut reps: Vec<ImageVec> = vec![identity];
        for alpha in &self.maps[top] {
            let covered = reps.iter().any(|beta| {
                inner
                    .iter()
                    .any(|c| (0..n).all(|u| alpha[u] == c[beta[u]]))
            });
            if !covered {
                reps.push(alpha.clone());
            }
        }
        let whole = Subgroup::whole(&self.base);
        reps.into_iter()
            .map(|imgs| GroupMap::new_unchecked(whole.clone(), whole.clone(), imgs))
            .collect()
    }

    /// Checks every fusion-system axiom, naming the first violation.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let whole = Subgroup::whole(&self.base);
        for (p, sub) in self.lattice.subgroups().iter().enumerate() {
            for s in self.base.elements() {
                let c: ImageVec = sub.elements().iter().map(|&u| self.base.conj(s, u)).collect();
                if !self.maps[p].contains(&c) {
                    return Err(format!("conjugation by {s} on {:?} missing", sub.elements()));
                }
            }
            for imgs in &self.maps[p] {
                GroupMap::new(&self.base, sub.clone(), whole.clone(), imgs.clone())
                    .map_err(|e| e.to_string())?;
                let r = self.image_index(imgs);
                for psi in &self.maps[r] {
                    let comp: ImageVec = imgs.iter().map(|&y| self.apply(r, psi, y)).collect();
                    if !self.maps[p].contains(&comp) {
                        return Err(format!("composition missing on {:?}", sub.elements()));
                    }
                }
                for q in self.lattice.subgroups_of(p) {
                    let res: ImageVec = self
                        .lattice
                        .get(q)
                        .elements()
                        .iter()
                        .map(|&u| self.apply(p, imgs, u))
                        .collect();
                    if !self.maps[q].contains(&res) {
                        return Err(format!("restriction to {:?} missing", self.lattice.get(q).elements()));
                    }
                }
                if !self.maps[r].contains(&self.inverse_images(p, imgs)) {
                    return Err(format!("inverse of a map on {:?} missing", sub.elements()));
                }
            }
        }
        Ok(())
    }

    fn add_inner_maps(&mut self) {
        for (p, sub) in self.lattice.subgroups().iter().enumerate() {
            for s in self.base.elements() {
                let imgs = sub.elements().iter().map(|&u| self.base.conj(s, u)).collect();
                self.maps[p].insert(imgs);
            }
        }
    }

    /// Fixed point of composition, restriction and inversion, applied in
    /// that order each round.
    fn close(&mut self) {
        loop {
            let mut changed = false;
            for p in 0..self.lattice.len() {
                let current: Vec<ImageVec> = self.maps[p].iter().cloned().collect();
                for phi in &current {
                    let r = self.image_index(phi);
                    let afters: Vec<ImageVec> = self.maps[r].iter().cloned().collect();
                    for psi in &afters {
                        let comp = phi.iter().map(|&y| self.apply(r, psi, y)).collect();
                        changed |= self.maps[p].insert(comp);
                    }
                }
            }
            for p in 0..self.lattice.len() {
                let current: Vec<ImageVec> = self.maps[p].iter().cloned().collect();
                let smaller: Vec<usize> = self.lattice.subgroups_of(p).filter(|&q| q != p).collect();
                for phi in &current {
                    for &q in &smaller {
                        let res = self
                            .lattice
                            .get(q)
                            .elements()
                            .iter()
                            .map(|&u| self.apply(p, phi, u))
                            .collect();
                        changed |= self.maps[q].insert(res);
                    }
                }
            }
            for p in 0..self.lattice.len() {
                let current: Vec<ImageVec> = self.maps[p].iter().cloned().collect();
                for phi in &current {
                    let r = self.image_index(phi);
                    let inv = self.inverse_images(p, phi);
                    changed |= self.maps[r].insert(inv);
                }
            }
            if !changed {
                break;
            }
        }
    }

    pub(crate) fn image_index(&self, imgs: &[usize]) -> usize {
        let bits = ElemSet::from_elements(self.base.order(), imgs.iter().copied());
        self.lattice
            .index_of_bits(&bits)
            .expect("image of a homomorphism is a subgroup")
    }

    #[inline]
    fn apply(&self, p: usize, imgs: &[usize], x: usize) -> usize {
        imgs[self.lattice.get(p).position(x).expect("element in domain")]
    }

    fn inverse_images(&self, p: usize, imgs: &[usize]) -> ImageVec {
        let r = self.image_index(imgs);
        let target = self.lattice.get(r);
        let mut inv = vec![0; target.order()];
        for (&u, &y) in self.lattice.get(p).elements().iter().zip(imgs) {
            inv[target.position(y).expect("image element")] = u;
        }
        inv
    }
}

impl ConjugacyOracle for FusionSystem {
    fn orbit(&self, d: &Subgroup) -> Vec<ElemSet> {
        let Some(p) = self.lattice.index_of(d) else {
            return Vec::new();
        };
        let mut seen = HashSet::new();
        self.maps[p]
            .iter()
            .map(|imgs| self.lattice.get(self.image_index(imgs)).bits().clone())
            .filter(|b| seen.insert(b.clone()))
            .collect()
    }
}

/// Conjugacy in the product fusion system `F x F_S(S)` on `S x S`.
///
/// Morphisms of the product system out of `D` are restrictions of
/// `phi x c_x` with `phi` in `F` defined on the left projection of `D` and
/// `x` in `S`, so the orbit of `D` is the set of all such images.
#[derive(Clone, Copy)]
pub struct ProductFusion<'a> {
    fusion: &'a FusionSystem,
    square: &'a DirectSquare,
}

impl<'a> ProductFusion<'a> {
    pub fn new(fusion: &'a FusionSystem, square: &'a DirectSquare) -> Self {
        debug_assert_eq!(**fusion.base(), **square.base());
        Self { fusion, square }
    }
}

impl ConjugacyOracle for ProductFusion<'_> {
    fn orbit(&self, d: &Subgroup) -> Vec<ElemSet> {
        let base = self.square.base();
        let left = self.square.project_left(d);
        let Some(p) = self.fusion.lattice.index_of(&left) else {
            return Vec::new();
        };
        let pairs: Vec<(usize, usize)> = d.elements().iter().map(|&z| self.square.decode(z)).collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for phi in &self.fusion.maps[p] {
            for x in base.elements() {
                let bits = ElemSet::from_elements(
                    self.square.square().order(),
                    pairs.iter().map(|&(a, b)| {
                        self.square.encode(self.fusion.apply(p, phi, a), base.conj(x, b))
                    }),
                );
                if seen.insert(bits.clone()) {
                    out.push(bits);
                }
            }
        }
        out
    }
}

/// Whether `D` and `E` are conjugate in `F x F_S(S)`.
pub fn product_conjugate(
    fusion: &FusionSystem,
    square: &DirectSquare,
    d: &Subgroup,
    e: &Subgroup,
) -> Result<bool> {
    d.check_in(square.square())?;
    e.check_in(square.square())?;
    Ok(ProductFusion::new(fusion, square).conjugate(d, e))
}
