use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::classes::mark_against;
use super::diagonal::TwistedDiagonal;
use crate::error::{Error, Result};
use crate::group::{canonical_representative, DirectSquare, ElemSet, FiniteGroup, Subgroup};

/// A rational combination of transitive `G`-sets `G/Z`, keyed by canonical
/// class representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualGSet {
    ambient: Arc<FiniteGroup>,
    coeffs: BTreeMap<Subgroup, BigRational>,
}

impl VirtualGSet {
    pub fn zero(ambient: Arc<FiniteGroup>) -> Self {
        Self {
            ambient,
            coeffs: BTreeMap::new(),
        }
    }

    /// `1 * [G/Z]`.
    pub fn transitive(ambient: Arc<FiniteGroup>, z: &Subgroup) -> Result<Self> {
        let mut v = Self::zero(ambient);
        v.add_transitive(z, BigRational::one())?;
        Ok(v)
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    /// Adds `c * [G/Z]`.
    pub fn add_transitive(&mut self, z: &Subgroup, c: BigRational) -> Result<()> {
        z.check_in(&self.ambient)?;
        let rep = canonical_representative(&self.ambient, z);
        self.add_canonical(rep, c);
        Ok(())
    }

    /// `rep` must already be the canonical representative of its class.
    pub(crate) fn add_canonical(&mut self, rep: Subgroup, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(rep).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coefficient(&self, z: &Subgroup) -> BigRational {
        if z.check_in(&self.ambient).is_err() {
            return BigRational::zero();
        }
        let rep = canonical_representative(&self.ambient, z);
        self.coeffs.get(&rep).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Subgroup, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Subgroup> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.ambient.clone());
        for (z, v) in &self.coeffs {
            out.add_canonical(z.clone(), v * c);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.combine(other, BigRational::one())
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.combine(other, -BigRational::one())
    }

    fn combine(&self, other: &Self, sign: BigRational) -> Self {
        assert_eq!(self.ambient.order(), other.ambient.order(), "ambient groups differ");
        let mut out = self.clone();
        for (z, v) in &other.coeffs {
            out.add_canonical(z.clone(), v * &sign);
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(BigRational::is_integer)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// `sum c_Z |G : Z|`.
    pub fn cardinality(&self) -> BigRational {
        self.coeffs
            .iter()
            .map(|(z, c)| c * BigInt::from(self.ambient.order() / z.order()))
            .sum()
    }

    pub fn marks(&self) -> MarkEvaluator {
        MarkEvaluator::new(self)
    }

    /// Number of points fixed by `d`.
    pub fn fixed_count(&self, d: &Subgroup) -> Result<BigRational> {
        d.check_in(&self.ambient)?;
        Ok(self.marks().fix(d))
    }

    /// One line per support class. Twisted diagonals of `S x S` print as
    /// `class Δ(P={..}, phi={a->b,..}) coeff n/d`; anything else prints
    /// its element list.
    pub fn render(&self, square: &DirectSquare) -> String {
        let mut out = String::new();
        for (z, c) in &self.coeffs {
            let coeff = format!("{}/{}", c.numer(), c.denom());
            match TwistedDiagonal::from_subgroup(square, z) {
                Some(td) => {
                    let p: Vec<String> = td.domain().elements().iter().map(usize::to_string).collect();
                    let _ = writeln!(out, "class Δ(P={{{}}}, phi={}) coeff {coeff}", p.join(","), td.map());
                }
                None => {
                    let e: Vec<String> = z.elements().iter().map(usize::to_string).collect();
                    let _ = writeln!(out, "class <{}> coeff {coeff}", e.join(","));
                }
            }
        }
        out
    }
}

struct MarkTerm {
    coeff: BigRational,
    weyl: usize,
    order: usize,
    conjugates: Vec<ElemSet>,
}

/// Precomputed conjugates of the support, for repeated fixed-point counts.
pub struct MarkEvaluator {
    terms: Vec<MarkTerm>,
}

impl MarkEvaluator {
    pub fn new(v: &VirtualGSet) -> Self {
        let terms = v
            .coeffs
            .iter()
            .map(|(z, c)| {
                let conjugates = z.conjugates(&v.ambient);
                MarkTerm {
                    coeff: c.clone(),
                    weyl: v.ambient.order() / conjugates.len() / z.order(),
                    order: z.order(),
                    conjugates,
                }
            })
            .collect();
        Self { terms }
    }

    pub fn fix(&self, d: &Subgroup) -> BigRational {
        let mut total = BigRational::zero();
        for t in &self.terms {
            let m = mark_against(d, t.weyl, &t.conjugates, t.order);
            if m > 0 {
                total += &t.coeff * BigInt::from(m);
            }
        }
        total
    }
}

/// Fixed-point counts of one virtual set, precomputed on a fixed family of
/// subgroups and evaluated on demand elsewhere.
pub struct MarkCache {
    eval: MarkEvaluator,
    cache: HashMap<ElemSet, BigRational>,
}

impl MarkCache {
    pub fn new<'s>(v: &VirtualGSet, warm: impl IntoIterator<Item = &'s Subgroup>) -> Self {
        let eval = v.marks();
        let cache = warm
            .into_iter()
            .map(|d| (d.bits().clone(), eval.fix(d)))
            .collect();
        Self { eval, cache }
    }

    pub fn fix(&self, d: &Subgroup) -> BigRational {
        match self.cache.get(d.bits()) {
            Some(v) => v.clone(),
            None => self.eval.fix(d),
        }
    }
}

/// `(m, m * v)` with `m` the least positive integer making every
/// coefficient integral.
pub fn clear_denominators(v: &VirtualGSet) -> Result<(BigInt, VirtualGSet)> {
    if let Some((z, c)) = v.coeffs.iter().find(|(_, c)| c.is_negative()) {
        return Err(Error::NotABiset(format!(
            "coefficient {c} at {:?}",
            z.elements()
        )));
    }
    let m = v
        .coeffs
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let x = v.scaled(&BigRational::from_integer(m.clone()));
    Ok((m, x))
}
