use std::cmp::Reverse;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::burnside::VirtualGSet;
use super::classes::ClassList;
use crate::error::{Error, Result};
use crate::fusion::ConjugacyOracle;
use crate::group::Subgroup;

/// Repairs a virtual set so its marks become constant on fusion classes,
/// touching only coefficients on a subgroup-closed, fusion-closed family `H`.
///
/// Every support class of the input must belong to the class list. The
/// fusion classes are unions of classes of the list; marks of `G/Z` are
/// precomputed sparsely against every class of the list.
pub struct Stabilizer<'a> {
    classes: &'a ClassList,
    fclasses: Vec<Vec<usize>>,
    fclass_of: Vec<usize>,
    in_h: Vec<bool>,
    /// For each class `Z`, the pairs `(D, m(D, Z))` with nonzero mark.
    below: Vec<Vec<(usize, u64)>>,
}

impl<'a> Stabilizer<'a> {
    pub fn new(
        classes: &'a ClassList,
        oracle: &dyn ConjugacyOracle,
        in_h: impl Fn(&Subgroup) -> bool,
    ) -> Result<Self> {
        let n = classes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for bits in oracle.orbit(classes.rep(i)) {
                let j = classes.class_of_bits(&bits).ok_or_else(|| {
                    Error::HNotClosed(format!(
                        "fusion image of {:?} lies outside the class list",
                        classes.rep(i).elements()
                    ))
                })?;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut fclasses: Vec<Vec<usize>> = Vec::new();
        let mut fclass_of = vec![usize::MAX; n];
        let mut root_slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if root_slot[r] == usize::MAX {
                root_slot[r] = fclasses.len();
                fclasses.push(Vec::new());
            }
            fclass_of[i] = root_slot[r];
            fclasses[root_slot[r]].push(i);
        }
        let in_h: Vec<bool> = classes.reps().iter().map(&in_h).collect();
        for fc in &fclasses {
            if fc.iter().any(|&i| in_h[i] != in_h[fc[0]]) {
                return Err(Error::HNotClosed(format!(
                    "fusion class of {:?} is split by H",
                    classes.rep(fc[0]).elements()
                )));
            }
        }
        let below: Vec<Vec<(usize, u64)>> = (0..n)
            .map(|z| {
                (0..=z)
                    .filter_map(|d| {
                        let m = classes.mark(d, z);
                        (m > 0).then_some((d, m))
                    })
                    .collect()
            })
            .collect();
        for z in (0..n).filter(|&z| in_h[z]) {
            if let Some(&(d, _)) = below[z].iter().find(|&&(d, _)| !in_h[d]) {
                return Err(Error::HNotClosed(format!(
                    "{:?} is in H but its subgroup {:?} is not",
                    classes.rep(z).elements(),
                    classes.rep(d).elements()
                )));
            }
        }
        Ok(Self {
            classes,
            fclasses,
            fclass_of,
            in_h,
            below,
        })
    }

    pub fn classes(&self) -> &ClassList {
        self.classes
    }

    /// Fusion classes as sorted lists of class indices.
    pub fn fclasses(&self) -> &[Vec<usize>] {
        &self.fclasses
    }

    pub fn fclass_of(&self, class: usize) -> usize {
        self.fclass_of[class]
    }

    pub fn in_h(&self, class: usize) -> bool {
        self.in_h[class]
    }

    /// Fixed-point counts of `v` at every class of the list.
    pub fn marks_of(&self, v: &VirtualGSet) -> Vec<BigRational> {
        let mut marks = vec![BigRational::zero(); self.classes.len()];
        let mut sparse = true;
        for (z, c) in v.terms() {
            match self.classes.class_of(z) {
                Some(zi) => {
                    for &(d, m) in &self.below[zi] {
                        marks[d] += c * BigInt::from(m);
                    }
                }
                None => {
                    sparse = false;
                    break;
                }
            }
        }
        if !sparse {
            let eval = v.marks();
            for (i, rep) in self.classes.reps().iter().enumerate() {
                marks[i] = eval.fix(rep);
            }
        }
        marks
    }

    /// Fusion classes outside `H` must already have constant marks.
    pub fn check_precondition(&self, marks: &[BigRational]) -> Result<()> {
        for fc in self.fclasses.iter().filter(|fc| !self.in_h[fc[0]]) {
            let first = fc[0];
            if let Some(&other) = fc.iter().find(|&&i| marks[i] != marks[first]) {
                return Err(Error::PreconditionViolated {
                    first: format!("{:?}", self.classes.rep(first).elements()),
                    second: format!("{:?}", self.classes.rep(other).elements()),
                    first_count: marks[first].to_string(),
                    second_count: marks[other].to_string(),
                });
            }
        }
        Ok(())
    }

    /// Fusion classes inside `H`, largest subgroups first, ties by
    /// canonical representative.
    fn h_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.fclasses.len())
            .filter(|&f| self.in_h[self.fclasses[f][0]])
            .collect();
        order.sort_by_key(|&f| {
            let first = self.fclasses[f][0];
            (Reverse(self.classes.rep(first).order()), first)
        });
        order
    }

    pub fn run(&self, x0: &VirtualGSet) -> Result<VirtualGSet> {
        if x0.ambient().order() != self.classes.ambient().order() {
            return Err(Error::Domain("virtual set lives over a different group".into()));
        }
        let mut marks = self.marks_of(x0);
        self.check_precondition(&marks)?;
        let mut x = x0.clone();
        for f in self.h_order() {
            let members = &self.fclasses[f];
            let top = members
                .iter()
                .copied()
                .fold(members[0], |best, i| if marks[i] > marks[best] { i } else { best });
            let target = marks[top].clone();
            for &p in members {
                let diff = &target - &marks[p];
                if diff.is_zero() {
                    continue;
                }
                let c = diff / BigInt::from(self.classes.weyl_order(p));
                for &(d, m) in &self.below[p] {
                    marks[d] += &c * BigInt::from(m);
                }
                x.add_canonical(self.classes.rep(p).clone(), c);
            }
        }
        Ok(x)
    }

    /// Checks constancy on fusion classes, agreement with `x0` off `H`, and
    /// nonnegativity of `x - x0`. Returns a description of the first failure.
    pub fn check_postconditions(&self, x0: &VirtualGSet, x: &VirtualGSet) -> std::result::Result<(), String> {
        let before = self.marks_of(x0);
        let after = self.marks_of(x);
        for fc in &self.fclasses {
            if let Some(&i) = fc.iter().find(|&&i| after[i] != after[fc[0]]) {
                return Err(format!(
                    "marks differ inside a fusion class: {} at {:?}, {} at {:?}",
                    after[fc[0]],
                    self.classes.rep(fc[0]).elements(),
                    after[i],
                    self.classes.rep(i).elements()
                ));
            }
        }
        for i in (0..self.classes.len()).filter(|&i| !self.in_h[i]) {
            if before[i] != after[i] {
                return Err(format!(
                    "mark changed outside H at {:?}: {} -> {}",
                    self.classes.rep(i).elements(),
                    before[i],
                    after[i]
                ));
            }
        }
        let delta = x.minus(x0);
        if let Some((z, c)) = delta.terms().find(|(_, c)| c.is_negative()) {
            return Err(format!("negative added coefficient {c} at {:?}", z.elements()));
        }
        Ok(())
    }

    /// A random virtual set whose marks are nonnegative rationals, constant on
    /// each fusion class outside `H` and arbitrary on `H`. Found by inverting
    /// the triangular table of marks, largest classes first.
    pub fn random_admissible<R: Rng>(&self, rng: &mut R) -> VirtualGSet {
        let n = self.classes.len();
        let draw = |rng: &mut R| {
            BigRational::new(BigInt::from(rng.gen_range(0..=12)), BigInt::from(rng.gen_range(1..=4)))
        };
        let mut wanted = vec![BigRational::zero(); n];
        for fc in &self.fclasses {
            if self.in_h[fc[0]] {
                for &i in fc {
                    wanted[i] = draw(rng);
                }
            } else {
                let v = draw(rng);
                for &i in fc {
                    wanted[i] = v.clone();
                }
            }
        }
        let mut acc = vec![BigRational::zero(); n];
        let mut x = VirtualGSet::zero(self.classes.ambient().clone());
        for z in (0..n).rev() {
            let c = (&wanted[z] - &acc[z]) / BigInt::from(self.classes.weyl_order(z));
            for &(d, m) in &self.below[z] {
                acc[d] += &c * BigInt::from(m);
            }
            x.add_canonical(self.classes.rep(z).clone(), c);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    use super::*;
    use crate::biset::TwistedDiagonal;
    use crate::catalog;
    use crate::fusion::{FusionSystem, ProductFusion};
    use crate::group::{DirectSquare, GroupMap};

    fn setup(name: &str) -> (FusionSystem, DirectSquare, ClassList) {
        let f = catalog::lookup(name).unwrap().fusion_system().unwrap();
        let sq = DirectSquare::new(f.base().clone());
        let classes = ClassList::twisted_diagonals(&sq, f.lattice());
        (f, sq, classes)
    }

    fn proper(sq: &DirectSquare) -> impl Fn(&Subgroup) -> bool + '_ {
        move |d| sq.project_right(d).order() < sq.base().order()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn inner_fusion_is_left_alone() {
        let (f, sq, classes) = setup("d8");
        let oracle = ProductFusion::new(&f, &sq);
        let st = Stabilizer::new(&classes, &oracle, proper(&sq)).unwrap();
        let x0 = VirtualGSet::transitive(sq.square().clone(), TwistedDiagonal::identity(&sq).subgroup()).unwrap();
        assert_eq!(st.run(&x0).unwrap(), x0);
    }

    #[test]
    fn partial_fusion_gains_half_orbits() {
        let (f, sq, classes) = setup("v4_partial");
        let s = sq.base().clone();
        let oracle = ProductFusion::new(&f, &sq);
        let st = Stabilizer::new(&classes, &oracle, proper(&sq)).unwrap();
        let x0 = VirtualGSet::transitive(sq.square().clone(), TwistedDiagonal::identity(&sq).subgroup()).unwrap();
        let y = st.run(&x0).unwrap();
        let whole = Subgroup::whole(&s);
        let d21 = GroupMap::from_pairs(&s, &[(0, 0), (1, 2)], whole.clone()).unwrap();
        let d12 = GroupMap::from_pairs(&s, &[(0, 0), (2, 1)], whole).unwrap();
        let mut expected = x0.clone();
        expected.add_transitive(TwistedDiagonal::new(&sq, &d21).subgroup(), q(1, 2)).unwrap();
        expected.add_transitive(TwistedDiagonal::new(&sq, &d12).subgroup(), q(1, 2)).unwrap();
        assert_eq!(y, expected);
        st.check_postconditions(&x0, &y).unwrap();
    }

    #[test]
    fn precondition_is_enforced() {
        let (f, sq, classes) = setup("v4_partial");
        let s = sq.base().clone();
        let oracle = ProductFusion::new(&f, &sq);
        // nothing may change, so the marks of Delta(S,id) must already be constant
        let st = Stabilizer::new(&classes, &oracle, |_| false).unwrap();
        let x0 = VirtualGSet::transitive(sq.square().clone(), TwistedDiagonal::identity(&sq).subgroup()).unwrap();
        assert!(matches!(st.run(&x0), Err(Error::PreconditionViolated { .. })));
        let p1 = Subgroup::new(&s, [0, 1]).unwrap();
        let st = Stabilizer::new(&classes, &oracle, |d| *d == *TwistedDiagonal::new(&sq, &GroupMap::identity(&p1)).subgroup());
        assert!(matches!(st, Err(Error::HNotClosed(_))));
    }

    #[test]
    fn random_starts_are_admissible_and_repaired() {
        let (f, sq, classes) = setup("c3xc3_partial");
        let oracle = ProductFusion::new(&f, &sq);
        let st = Stabilizer::new(&classes, &oracle, proper(&sq)).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10 {
            let x0 = st.random_admissible(&mut rng);
            let marks = st.marks_of(&x0);
            assert!(marks.iter().all(|m| !m.is_negative()));
            st.check_precondition(&marks).unwrap();
            let x = st.run(&x0).unwrap();
            st.check_postconditions(&x0, &x).unwrap();
        }
        assert!(st.fclasses().iter().any(|fc| fc.len() > 1));
    }
}
