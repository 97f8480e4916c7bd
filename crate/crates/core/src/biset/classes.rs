use std::collections::HashMap;
use std::sync::Arc;

use super::diagonal::all_twisted_diagonals;
use crate::group::{DirectSquare, ElemSet, FiniteGroup, Subgroup, SubgroupLattice};

/// A conjugation-closed family of subgroups of an ambient group `G`,
/// grouped into `G`-conjugacy classes sorted by canonical representative.
#[derive(Clone, Debug)]
pub struct ClassList {
    ambient: Arc<FiniteGroup>,
    reps: Vec<Subgroup>,
    conjugates: Vec<Vec<ElemSet>>,
    lookup: HashMap<ElemSet, usize>,
}

impl ClassList {
    /// Groups `subgroups` (and all their conjugates) into classes.
    pub fn from_subgroups(ambient: Arc<FiniteGroup>, subgroups: impl IntoIterator<Item = Subgroup>) -> Self {
        let mut seen: HashMap<ElemSet, ()> = HashMap::new();
        let mut found: Vec<(Subgroup, Vec<ElemSet>)> = Vec::new();
        for sub in subgroups {
            if seen.contains_key(sub.bits()) {
                continue;
            }
            let conj = sub.conjugates(&ambient);
            for c in &conj {
                seen.insert(c.clone(), ());
            }
            let rep = conj
                .iter()
                .cloned()
                .map(Subgroup::from_bits)
                .min()
                .expect("nonempty");
            found.push((rep, conj));
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        let mut lookup = HashMap::new();
        for (i, (_, conj)) in found.iter().enumerate() {
            for c in conj {
                lookup.insert(c.clone(), i);
            }
        }
        let (reps, conjugates) = found.into_iter().unzip();
        Self {
            ambient,
            reps,
            conjugates,
            lookup,
        }
    }

    pub fn from_lattice(ambient: Arc<FiniteGroup>, lattice: &SubgroupLattice) -> Self {
        let reps: Vec<Subgroup> = (0..lattice.classes().len())
            .map(|c| lattice.representative(c).clone())
            .collect();
        Self::from_subgroups(ambient, reps)
    }

    /// Classes of twisted diagonal subgroups of `S x S`.
    pub fn twisted_diagonals(square: &DirectSquare, lattice: &SubgroupLattice) -> Self {
        let subs = all_twisted_diagonals(square, lattice)
            .into_iter()
            .map(|td| td.subgroup().clone());
        Self::from_subgroups(square.square().clone(), subs)
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, class: usize) -> &Subgroup {
        &self.reps[class]
    }

    pub fn reps(&self) -> &[Subgroup] {
        &self.reps
    }

    pub fn conjugates(&self, class: usize) -> &[ElemSet] {
        &self.conjugates[class]
    }

    pub fn class_of(&self, sub: &Subgroup) -> Option<usize> {
        self.lookup.get(sub.bits()).copied()
    }

    pub fn class_of_bits(&self, bits: &ElemSet) -> Option<usize> {
        self.lookup.get(bits).copied()
    }

    pub fn normalizer_order(&self, class: usize) -> usize {
        self.ambient.order() / self.conjugates[class].len()
    }

    /// `|N(Z) / Z|` for the class of `Z`.
    pub fn weyl_order(&self, class: usize) -> usize {
        self.normalizer_order(class) / self.reps[class].order()
    }

    /// Mark of `G/Z` at `D`: `|{g : g^-1 D g <= Z}| / |Z|`, computed as
    /// `|N(Z)/Z|` times the number of conjugates of `Z` containing `D`.
    pub fn mark(&self, d: usize, z: usize) -> u64 {
        mark_against(&self.reps[d], self.weyl_order(z), &self.conjugates[z], self.reps[z].order())
    }

    /// Whether class `d` is subconjugate to class `z`.
    pub fn is_subconjugate(&self, d: usize, z: usize) -> bool {
        self.mark(d, z) > 0
    }
}

pub(crate) fn mark_against(d: &Subgroup, weyl: usize, conjugates: &[ElemSet], z_order: usize) -> u64 {
    if !z_order.is_multiple_of(d.order()) {
        return 0;
    }
    let containing = conjugates.iter().filter(|c| d.bits().is_subset(c)).count();
    (weyl * containing) as u64
}
