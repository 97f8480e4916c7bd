use num_traits::One;

use super::burnside::{MarkCache, VirtualGSet};
use super::diagonal::{all_twisted_diagonals, TwistedDiagonal};
use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::group::{all_subgroups, DirectSquare, GroupMap, Subgroup};

/// Which side of the biset a morphism twists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `(Q)X` against `(phi)X`: compare marks at `D` and `(phi x id)(D)`
    /// for `D` with left projection in `Q`.
    Left,
    /// Mirror image, twisting the right coordinate.
    Right,
}

/// Subgroups `D` of `S x S` over which mark comparisons range.
#[derive(Clone, Debug)]
pub struct Quantifier {
    candidates: Vec<Subgroup>,
}

impl Quantifier {
    /// Twisted diagonals only. Enough whenever every support class is a
    /// twisted diagonal, since other subgroups then fix nothing on either side.
    pub fn twisted(square: &DirectSquare, fusion: &FusionSystem) -> Self {
        Self {
            candidates: all_twisted_diagonals(square, fusion.lattice())
                .into_iter()
                .map(|td| td.subgroup().clone())
                .collect(),
        }
    }

    /// Every subgroup of `S x S`.
    pub fn all_subgroups(square: &DirectSquare) -> Self {
        Self {
            candidates: all_subgroups(square.square()).subgroups().to_vec(),
        }
    }

    pub fn candidates(&self) -> &[Subgroup] {
        &self.candidates
    }

    /// Twisted diagonals when the support is bifree, all subgroups otherwise.
    pub fn for_set(square: &DirectSquare, fusion: &FusionSystem, x: &VirtualGSet) -> Self {
        if x.support().all(|z| TwistedDiagonal::from_subgroup(square, z).is_some()) {
            Self::twisted(square, fusion)
        } else {
            Self::all_subgroups(square)
        }
    }
}

/// Compares marks at `D` and at its twist by `phi` on `side`, for every
/// candidate `D` whose projection on that side lies in the domain of `phi`.
pub fn twist_preserves_marks(
    square: &DirectSquare,
    quantifier: &Quantifier,
    marks: &MarkCache,
    phi: &GroupMap,
    side: Side,
) -> bool {
    let q = phi.domain();
    quantifier.candidates().iter().all(|d| {
        let proj = match side {
            Side::Left => square.project_left(d),
            Side::Right => square.project_right(d),
        };
        if !proj.is_subgroup_of(q) {
            return true;
        }
        let twisted = match side {
            Side::Left => square.map_pairs(d, |a| phi.apply(a), |b| b),
            Side::Right => square.map_pairs(d, |a| a, |b| phi.apply(b)),
        };
        twisted == *d || marks.fix(d) == marks.fix(&twisted)
    })
}

fn stable(fusion: &FusionSystem, square: &DirectSquare, x: &VirtualGSet, quantifier: &Quantifier, side: Side) -> bool {
    let marks = MarkCache::new(x, quantifier.candidates());
    (0..fusion.lattice().len()).all(|p| {
        fusion
            .homs_to_base(p)
            .iter()
            .filter(|phi| !phi.is_inclusion())
            .all(|phi| twist_preserves_marks(square, quantifier, &marks, phi, side))
    })
}

fn require_biset(x: &VirtualGSet) -> Result<()> {
    if x.is_integral() && x.is_nonnegative() {
        Ok(())
    } else {
        Err(Error::NotABiset("coefficients must be nonnegative integers".into()))
    }
}

pub fn is_left_stable(fusion: &FusionSystem, square: &DirectSquare, x: &VirtualGSet) -> Result<bool> {
    require_biset(x)?;
    Ok(stable(fusion, square, x, &Quantifier::for_set(square, fusion, x), Side::Left))
}

pub fn is_right_stable(fusion: &FusionSystem, square: &DirectSquare, x: &VirtualGSet) -> Result<bool> {
    require_biset(x)?;
    Ok(stable(fusion, square, x, &Quantifier::for_set(square, fusion, x), Side::Right))
}

/// Stability with an explicit choice of quantifier.
pub fn is_stable_with(
    fusion: &FusionSystem,
    square: &DirectSquare,
    x: &VirtualGSet,
    quantifier: &Quantifier,
    side: Side,
) -> Result<bool> {
    require_biset(x)?;
    Ok(stable(fusion, square, x, quantifier, side))
}

/// Every orbit has type `S x_(P,phi) S` with `phi` in the fusion system.
pub fn is_f_generated(fusion: &FusionSystem, square: &DirectSquare, x: &VirtualGSet) -> Result<bool> {
    if !x.is_integral() {
        return Err(Error::NotABiset("non-integral coefficient".into()));
    }
    Ok(x.support().all(|z| {
        TwistedDiagonal::from_subgroup(square, z).is_some_and(|td| fusion.contains(td.map()))
    }))
}

/// The coefficient of `Delta(S, id)` is at least one.
pub fn contains_identity_orbit(square: &DirectSquare, x: &VirtualGSet) -> bool {
    x.coefficient(TwistedDiagonal::identity(square).subgroup()) >= num_rational::BigRational::one()
}
