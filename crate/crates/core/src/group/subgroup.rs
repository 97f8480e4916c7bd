use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use super::{ElemSet, FiniteGroup};
use crate::error::{Error, Result};

/// A subgroup, identified by its strictly increasing element list.
///
/// Ordering is by size first, then lexicographically by elements, so the
/// least member of a conjugacy class is its canonical representative.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<usize>,
    bits: ElemSet,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements
            .len()
            .cmp(&other.elements.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    /// Validates that `elements` form a subgroup of `group`.
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elements: Vec<usize> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&x) = elements.iter().find(|&&x| x >= group.order()) {
            return Err(Error::Domain(format!(
                "element {x} is outside a group of order {}",
                group.order()
            )));
        }
        let bits = ElemSet::from_elements(group.order(), elements.iter().copied());
        let sub = Self { elements, bits };
        if !sub.is_closed_in(group) {
            return Err(Error::Domain(format!(
                "{:?} is not a subgroup",
                sub.elements
            )));
        }
        Ok(sub)
    }

    pub(crate) fn from_bits(bits: ElemSet) -> Self {
        Self {
            elements: bits.iter().collect(),
            bits,
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::from_bits(ElemSet::from_elements(group.order(), [0]))
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self::from_bits(ElemSet::from_elements(group.order(), group.elements()))
    }

    /// Subgroup generated by `gens`.
    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Self {
        Self::from_bits(close(group, vec![0], gens))
    }

    pub(crate) fn join_with(&self, group: &FiniteGroup, gens: &[usize]) -> Self {
        Self::from_bits(close(group, self.elements.clone(), gens))
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn bits(&self) -> &ElemSet {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Position of `x` in the sorted element list.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// `x H x^-1`.
    pub fn conjugate(&self, group: &FiniteGroup, x: usize) -> Subgroup {
        Self::from_bits(conjugate_bits(group, &self.elements, x))
    }

    /// The distinct conjugates of this subgroup.
    pub fn conjugates(&self, group: &FiniteGroup) -> Vec<ElemSet> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in group.elements() {
            let c = conjugate_bits(group, &self.elements, x);
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        out
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Self::from_bits(self.bits.intersection(&other.bits))
    }

    /// A short generating sequence, chosen greedily in element order.
    pub fn generators(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(group);
        for &x in &self.elements {
            if !span.contains(x) {
                gens.push(x);
                span = span.join_with(group, &gens);
            }
        }
        gens
    }

    fn is_closed_in(&self, group: &FiniteGroup) -> bool {
        self.contains(0)
            && self.elements.iter().all(|&a| {
                self.contains(group.inv(a))
                    && self.elements.iter().all(|&b| self.contains(group.mul(a, b)))
            })
    }

    /// Validates that this subgroup lives in `group` (closure and range).
    pub(crate) fn check_in(&self, group: &FiniteGroup) -> Result<()> {
        if self.elements.iter().any(|&x| x >= group.order()) || !self.is_closed_in(group) {
            return Err(Error::Domain(format!(
                "{:?} is not a subgroup of the group of order {}",
                self.elements,
                group.order()
            )));
        }
        Ok(())
    }
}

fn conjugate_bits(group: &FiniteGroup, elements: &[usize], x: usize) -> ElemSet {
    ElemSet::from_elements(group.order(), elements.iter().map(|&u| group.conj(x, u)))
}

/// Closes `start` (assumed closed under earlier generators) under
/// right multiplication by `gens`.
fn close(group: &FiniteGroup, mut list: Vec<usize>, gens: &[usize]) -> ElemSet {
    let mut bits = ElemSet::from_elements(group.order(), list.iter().copied());
    let mut cursor = 0;
    while cursor < list.len() {
        let a = list[cursor];
        for &g in gens {
            let c = group.mul(a, g);
            if bits.insert(c) {
                list.push(c);
            }
        }
        cursor += 1;
    }
    bits
}

/// All subgroups of a group with their conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<ElemSet, usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    group_order: usize,
}

impl SubgroupLattice {
    /// Subgroups in canonical order (size, then elements).
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, idx: usize) -> &Subgroup {
        &self.subgroups[idx]
    }

    pub fn index_of(&self, sub: &Subgroup) -> Option<usize> {
        self.index.get(sub.bits()).copied()
    }

    pub fn index_of_bits(&self, bits: &ElemSet) -> Option<usize> {
        self.index.get(bits).copied()
    }

    /// Conjugacy classes as sorted lists of subgroup indices; the first
    /// member of each class is its canonical representative.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, idx: usize) -> usize {
        self.class_of[idx]
    }

    pub fn representative(&self, class: usize) -> &Subgroup {
        &self.subgroups[self.classes[class][0]]
    }

    /// `|N_G(H)|`, read off the class size.
    pub fn normalizer_order(&self, idx: usize) -> usize {
        self.group_order / self.classes[self.class_of[idx]].len()
    }

    /// Index of the whole group (always last).
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Indices of the subgroups contained in subgroup `idx`.
    pub fn subgroups_of(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        let bits = self.subgroups[idx].bits().clone();
        (0..=idx).filter(move |&j| self.subgroups[j].bits().is_subset(&bits))
    }
}

/// Enumerates every subgroup by repeatedly joining known subgroups with
/// cyclic subgroups, starting from the trivial subgroup.
pub fn all_subgroups(group: &FiniteGroup) -> SubgroupLattice {
    let n = group.order();
    let mut cyclic: Vec<(usize, ElemSet)> = Vec::new();
    let mut cyclic_seen = HashSet::new();
    for x in 1..n {
        let c = Subgroup::generated(group, &[x]);
        if cyclic_seen.insert(c.bits().clone()) {
            cyclic.push((x, c.bits().clone()));
        }
    }

    let trivial = Subgroup::trivial(group);
    let mut found: HashMap<ElemSet, Vec<usize>> = HashMap::new();
    found.insert(trivial.bits().clone(), Vec::new());
    let mut queue = VecDeque::from([(trivial, Vec::<usize>::new())]);
    while let Some((sub, gens)) = queue.pop_front() {
        for (x, cbits) in &cyclic {
            if cbits.is_subset(sub.bits()) {
                continue;
            }
            let joined = sub.join_with(group, &[gens.as_slice(), &[*x]].concat());
            if !found.contains_key(joined.bits()) {
                let mut jg = gens.clone();
                jg.push(*x);
                found.insert(joined.bits().clone(), jg.clone());
                queue.push_back((joined, jg));
            }
        }
    }

    let mut subgroups: Vec<Subgroup> = found.into_keys().map(Subgroup::from_bits).collect();
    subgroups.sort();
    let index: HashMap<ElemSet, usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.bits().clone(), i))
        .collect();

    let group_gens = Subgroup::whole(group).generators(group);
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut classes = Vec::new();
    for start in 0..subgroups.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        let mut members = vec![start];
        class_of[start] = cid;
        let mut cursor = 0;
        while cursor < members.len() {
            let elems = subgroups[members[cursor]].elements().to_vec();
            for &g in &group_gens {
                let j = index[&conjugate_bits(group, &elems, g)];
                if class_of[j] == usize::MAX {
                    class_of[j] = cid;
                    members.push(j);
                }
            }
            cursor += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }

    SubgroupLattice {
        subgroups,
        index,
        classes,
        class_of,
        group_order: n,
    }
}

/// `N_G(P)`.
pub fn normalizer(group: &FiniteGroup, sub: &Subgroup) -> Result<Subgroup> {
    sub.check_in(group)?;
    let members = group
        .elements()
        .filter(|&x| conjugate_bits(group, sub.elements(), x) == *sub.bits());
    Ok(Subgroup::from_bits(ElemSet::from_elements(group.order(), members)))
}

/// Lexicographically least conjugate of `sub`.
pub fn canonical_representative(group: &FiniteGroup, sub: &Subgroup) -> Subgroup {
    sub.conjugates(group)
        .into_iter()
        .map(Subgroup::from_bits)
        .min()
        .expect("a subgroup has at least one conjugate")
}
