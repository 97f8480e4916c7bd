//! Realizing a fusion system `F` on `S` as `F_S(G)`, where `G` is the group
//! of right `S`-set automorphisms of a left semicharacteristic biset `X`.
//!
//! `G` is never built. A free right `S`-set of rank `r` has automorphism
//! group `S wr Sym(r)`, which gives `|G|`; whether an injective `phi: P -> S`
//! is induced by conjugation in `G` is decided by comparing marks of `(P)X`
//! and `(phi)X`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::biset::{
    clear_denominators, contains_identity_orbit, is_f_generated, is_left_stable, is_right_stable,
    realize_explicit, twist_preserves_marks, ClassList, ExplicitBiset, MarkCache, Quantifier, Side,
    Stabilizer, TwistedDiagonal, VirtualGSet,
};
use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, ProductFusion};
use crate::group::{monomorphisms, DirectSquare, GroupMap, Subgroup};

/// Largest explicit biset materialized by [`build_semichar`].
pub const MAX_EXPLICIT_POINTS: usize = 1 << 20;

/// Default size bound for [`find_intertwiner`].
pub const DEFAULT_INTERTWINER_BOUND: usize = 24;

pub struct SemicharBiset {
    fusion: FusionSystem,
    square: DirectSquare,
    y0: VirtualGSet,
    y: VirtualGSet,
    m: BigInt,
    x: VirtualGSet,
    explicit: Option<ExplicitBiset>,
    quantifier: Quantifier,
    marks: MarkCache,
}

impl SemicharBiset {
    pub fn fusion(&self) -> &FusionSystem {
        &self.fusion
    }

    pub fn square(&self) -> &DirectSquare {
        &self.square
    }

    /// Sum of the automorphism orbits `[Delta(S, alpha)]` over `Out_F(S)`.
    pub fn y0(&self) -> &VirtualGSet {
        &self.y0
    }

    /// The stabilized rational set.
    pub fn y(&self) -> &VirtualGSet {
        &self.y
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    /// `m * Y`, an honest biset.
    pub fn x(&self) -> &VirtualGSet {
        &self.x
    }

    /// The materialized biset, absent when it exceeds [`MAX_EXPLICIT_POINTS`].
    pub fn explicit(&self) -> Option<&ExplicitBiset> {
        self.explicit.as_ref()
    }

    /// `|X|`.
    pub fn cardinality(&self) -> BigUint {
        self.x
            .cardinality()
            .to_integer()
            .to_biguint()
            .expect("a biset has nonnegative size")
    }
}

/// Builds `X` from `F`: start from the automorphism orbits, repair
/// stability on the proper twisted diagonals, then clear denominators.
pub fn build_semichar(fusion: &FusionSystem) -> Result<SemicharBiset> {
    let square = DirectSquare::new(fusion.base().clone());
    let gamma = square.square().clone();
    let mut y0 = VirtualGSet::zero(gamma.clone());
    for alpha in fusion.out_reps() {
        y0.add_transitive(TwistedDiagonal::new(&square, &alpha).subgroup(), BigRational::one())?;
    }
    let classes = ClassList::twisted_diagonals(&square, fusion.lattice());
    let oracle = ProductFusion::new(fusion, &square);
    let s_order = fusion.base().order();
    let stabilizer = Stabilizer::new(&classes, &oracle, |d| square.project_right(d).order() < s_order)?;
    let y = stabilizer.run(&y0)?;
    let (m, x) = clear_denominators(&y)?;
    let size = x.cardinality().to_integer();
    let explicit = if size <= BigInt::from(MAX_EXPLICIT_POINTS) {
        Some(realize_explicit(&square, &x)?)
    } else {
        None
    };
    let quantifier = Quantifier::for_set(&square, fusion, &x);
    let marks = MarkCache::new(&x, quantifier.candidates());
    Ok(SemicharBiset {
        fusion: fusion.clone(),
        square,
        y0,
        y,
        m,
        x,
        explicit,
        quantifier,
        marks,
    })
}

/// `r = |X| / |S|` and `|G| = |S|^r r!`.
pub fn rank_and_order(b: &SemicharBiset) -> Result<(usize, BigUint)> {
    if let Some(e) = &b.explicit {
        if !e.is_right_free() {
            return Err(Error::NotBifree("right action is not free".into()));
        }
    }
    let s = b.fusion.base().order();
    let size = b.cardinality();
    if &size % BigUint::from(s) != BigUint::from(0u8) {
        return Err(Error::NotBifree(format!("|X| = {size} is not a multiple of |S| = {s}")));
    }
    let r = (size / BigUint::from(s))
        .to_usize()
        .ok_or(Error::TooLarge { size: usize::MAX, bound: usize::MAX })?;
    let factorial: BigUint = (1..=r).map(BigUint::from).product();
    Ok((r, BigUint::from(s).pow(r as u32) * factorial))
}

fn checked_map(b: &SemicharBiset, phi: &GroupMap) -> Result<GroupMap> {
    let base = b.fusion.base();
    GroupMap::new(base, phi.domain().clone(), Subgroup::whole(base), phi.images().to_vec())
        .map_err(|e| Error::InvalidMorphism(e.to_string()))
}

/// Whether some `g` in `G` satisfies `g(u x) = phi(u) g(x)`, decided by
/// comparing the marks of `(P)X` and `(phi)X`.
pub fn decide_morphism(b: &SemicharBiset, phi: &GroupMap) -> Result<bool> {
    let phi = checked_map(b, phi)?;
    Ok(twist_preserves_marks(&b.square, &b.quantifier, &b.marks, &phi, Side::Left))
}

/// As [`decide_morphism`], ranging over the given subgroups of `S x S`.
pub fn decide_morphism_with(b: &SemicharBiset, phi: &GroupMap, quantifier: &Quantifier) -> Result<bool> {
    let phi = checked_map(b, phi)?;
    Ok(twist_preserves_marks(&b.square, quantifier, &b.marks, &phi, Side::Left))
}

/// Searches for an explicit right-equivariant bijection `g` of `X` with
/// `g(u x) = phi(u) g(x)`. Returns the permutation of points.
pub fn find_intertwiner(b: &SemicharBiset, phi: &GroupMap, bound: usize) -> Result<Option<Vec<usize>>> {
    let phi = checked_map(b, phi)?;
    let size = b.cardinality();
    let x = match &b.explicit {
        Some(e) if size <= BigUint::from(bound) => e,
        _ => {
            return Err(Error::TooLarge {
                size: size.to_usize().unwrap_or(usize::MAX),
                bound,
            })
        }
    };
    Ok(Intertwiner::new(b, x, &phi).search())
}

struct Intertwiner<'a> {
    x: &'a ExplicitBiset,
    group: &'a crate::group::FiniteGroup,
    orbit_of: Vec<usize>,
    bases: Vec<usize>,
    /// `coord[x] = t` with `x = bases[orbit_of[x]] . t`.
    coord: Vec<usize>,
    /// `(u, phi(u))` for generators of `P` and their inverses.
    moves: Vec<(usize, usize)>,
}

impl<'a> Intertwiner<'a> {
    fn new(b: &'a SemicharBiset, x: &'a ExplicitBiset, phi: &GroupMap) -> Self {
        let group = b.fusion.base().as_ref();
        let (orbit_of, bases) = x.right_orbits();
        let mut coord = vec![0; x.len()];
        for &base in &bases {
            for t in group.elements() {
                coord[x.right_act(base, t)] = t;
            }
        }
        let mut moves = Vec::new();
        for u in phi.domain().generators(group) {
            moves.push((u, phi.apply(u)));
            moves.push((group.inv(u), group.inv(phi.apply(u))));
        }
        Self {
            x,
            group,
            orbit_of,
            bases,
            coord,
            moves,
        }
    }

    fn search(&self) -> Option<Vec<usize>> {
        let mut images: Vec<Option<usize>> = vec![None; self.bases.len()];
        let mut used = vec![false; self.bases.len()];
        if !self.extend(&mut images, &mut used) {
            return None;
        }
        let mut g = vec![0; self.x.len()];
        for (p, slot) in g.iter_mut().enumerate() {
            let y = images[self.orbit_of[p]].expect("all bases assigned");
            *slot = self.x.right_act(y, self.coord[p]);
        }
        Some(g)
    }

    /// Assigns `g(b_i) = y` and everything it forces. Returns the orbits
    /// assigned, or `None` on a contradiction (after undoing).
    fn assign(&self, i: usize, y: usize, images: &mut [Option<usize>], used: &mut [bool]) -> Option<Vec<usize>> {
        let mut assigned = Vec::new();
        let mut stack = vec![(i, y)];
        let mut ok = true;
        while let Some((i, y)) = stack.pop() {
            match images[i] {
                Some(prev) if prev == y => continue,
                Some(_) => {
                    ok = false;
                    break;
                }
                None => {}
            }
            let target = self.orbit_of[y];
            if used[target] {
                ok = false;
                break;
            }
            images[i] = Some(y);
            used[target] = true;
            assigned.push(i);
            // u . b_i = b_j . t forces g(b_j) = phi(u) . y . t^-1
            for &(u, fu) in &self.moves {
                let moved = self.x.left_act(u, self.bases[i]);
                let j = self.orbit_of[moved];
                let t = self.coord[moved];
                let forced = self.x.right_act(self.x.left_act(fu, y), self.group.inv(t));
                stack.push((j, forced));
            }
        }
        if ok {
            Some(assigned)
        } else {
            self.undo(&assigned, images, used);
            None
        }
    }

    fn undo(&self, assigned: &[usize], images: &mut [Option<usize>], used: &mut [bool]) {
        for &i in assigned {
            let y = images[i].take().expect("assigned");
            used[self.orbit_of[y]] = false;
        }
    }

    fn extend(&self, images: &mut Vec<Option<usize>>, used: &mut Vec<bool>) -> bool {
        let Some(i) = images.iter().position(Option::is_none) else {
            return true;
        };
        for y in 0..self.x.len() {
            if used[self.orbit_of[y]] {
                continue;
            }
            if let Some(assigned) = self.assign(i, y, images, used) {
                if self.extend(images, used) {
                    return true;
                }
                self.undo(&assigned, images, used);
            }
        }
        false
    }
}

/// Counts of morphisms decided during [`induced_fusion`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MorphismAudit {
    pub accepted: usize,
    pub rejected: usize,
}

/// `F_S(G)`: every injective `phi: P -> S` accepted by [`decide_morphism`].
pub fn induced_fusion(b: &SemicharBiset) -> Result<(FusionSystem, MorphismAudit)> {
    let base = b.fusion.base().clone();
    let lattice = b.fusion.lattice().clone();
    let whole = Subgroup::whole(&base);
    let mut audit = MorphismAudit::default();
    let mut maps = Vec::with_capacity(lattice.len());
    for p in lattice.subgroups() {
        let mut accepted = BTreeSet::new();
        for phi in monomorphisms(&base, p, &whole) {
            if decide_morphism(b, &phi)? {
                audit.accepted += 1;
                accepted.insert(phi.images().to_vec());
            } else {
                audit.rejected += 1;
            }
        }
        maps.push(accepted);
    }
    Ok((FusionSystem::from_parts(base, lattice, maps), audit))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealizationFlags {
    pub f_generated: bool,
    pub left_stable: bool,
    pub right_stable: bool,
    pub contains_identity: bool,
    pub embeds: bool,
    pub realized: bool,
}

impl RealizationFlags {
    /// Everything the construction guarantees. Right stability is reported
    /// but not expected.
    pub fn all_pass(&self) -> bool {
        self.f_generated && self.left_stable && self.contains_identity && self.embeds && self.realized
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationReport {
    pub group_order: usize,
    pub p: Option<usize>,
    pub num_subgroups: usize,
    pub out_order: usize,
    pub m: BigInt,
    pub rank_r: usize,
    pub order_g: BigUint,
    /// `r mod p`; absent for the trivial group.
    pub char_index_residue: Option<usize>,
    pub flags: RealizationFlags,
    pub morphisms: MorphismAudit,
    /// Serialized `X`.
    pub x: String,
    /// Whether explicit intertwiner search agreed with the marks decision on
    /// every injective map, when `|X|` was within the search bound.
    pub intertwiner_agreement: Option<bool>,
}

/// Left translations `x -> s x` commute with the right action and are
/// pairwise distinct.
pub fn left_translations_embed(b: &SemicharBiset) -> bool {
    let base = b.fusion.base();
    match &b.explicit {
        Some(x) => {
            x.verify(base) && (1..base.order()).all(|s| (0..x.len()).any(|p| x.left_act(s, p) != p))
        }
        // the identity orbit alone is a faithful left S-set
        None => contains_identity_orbit(&b.square, &b.x),
    }
}

pub fn verify_realization(fusion: &FusionSystem, intertwiner_bound: usize) -> Result<RealizationReport> {
    let b = build_semichar(fusion)?;
    let (rank_r, order_g) = rank_and_order(&b)?;
    let (induced, morphisms) = induced_fusion(&b)?;
    let flags = RealizationFlags {
        f_generated: is_f_generated(fusion, &b.square, &b.x)?,
        left_stable: is_left_stable(fusion, &b.square, &b.x)?,
        right_stable: is_right_stable(fusion, &b.square, &b.x)?,
        contains_identity: contains_identity_orbit(&b.square, &b.x),
        embeds: left_translations_embed(&b),
        realized: induced == *fusion,
    };
    let intertwiner_agreement = if b.cardinality() <= BigUint::from(intertwiner_bound) {
        Some(intertwiners_agree(&b, intertwiner_bound)?)
    } else {
        None
    };
    let p = fusion.base().prime_power().map(|(p, _)| p);
    Ok(RealizationReport {
        group_order: fusion.base().order(),
        p,
        num_subgroups: fusion.lattice().len(),
        out_order: fusion.out_reps().len(),
        m: b.m.clone(),
        rank_r,
        order_g,
        char_index_residue: p.map(|p| rank_r % p),
        flags,
        morphisms,
        x: b.x.render(&b.square),
        intertwiner_agreement,
    })
}

/// Compares [`find_intertwiner`] with [`decide_morphism`] on every
/// injective map `P -> S`.
pub fn intertwiners_agree(b: &SemicharBiset, bound: usize) -> Result<bool> {
    let base = b.fusion.base();
    let whole = Subgroup::whole(base);
    for p in b.fusion.lattice().subgroups() {
        for phi in monomorphisms(base, p, &whole) {
            if decide_morphism(b, &phi)? != find_intertwiner(b, &phi, bound)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
