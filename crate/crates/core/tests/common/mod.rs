//! Brute-force reference computations shared by the integration tests.
//! Nothing here calls the library's own lattice, mark or search code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use fusion_core::biset::ExplicitBiset;
use fusion_core::fusion::FusionSystem;
use fusion_core::group::{DirectSquare, FiniteGroup};
use num_rational::BigRational;
use num_traits::Zero;

pub type Set = BTreeSet<usize>;

/// Subgroup generated by `gens`, by breadth-first right multiplication.
pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Set {
    let mut member = vec![false; g.order()];
    member[0] = true;
    let mut queue = vec![0];
    while let Some(a) = queue.pop() {
        for &x in gens {
            let b = g.mul(a, x);
            if !member[b] {
                member[b] = true;
                queue.push(b);
            }
        }
    }
    (0..g.order()).filter(|&a| member[a]).collect()
}

/// Every subgroup, found by adjoining one element at a time.
pub fn subgroups(g: &FiniteGroup) -> Vec<Set> {
    let mut found: BTreeSet<Set> = BTreeSet::new();
    let trivial = generated(g, &[]);
    found.insert(trivial.clone());
    let mut frontier = vec![(trivial, Vec::new())];
    while let Some((h, gens)) = frontier.pop() {
        for x in 0..g.order() {
            if h.contains(&x) {
                continue;
            }
            let mut more: Vec<usize> = gens.clone();
            more.push(x);
            let k = generated(g, &more);
            if found.insert(k.clone()) {
                frontier.push((k, more));
            }
        }
    }
    found.into_iter().collect()
}

/// All injective homomorphisms `p -> q` as `(u, phi(u))` pair lists.
pub fn monomorphisms(g: &FiniteGroup, p: &Set, q: &Set) -> Vec<Vec<(usize, usize)>> {
    let dom: Vec<usize> = p.iter().copied().collect();
    let cod: Vec<usize> = q.iter().copied().collect();
    let mut out = Vec::new();
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    fn go(
        g: &FiniteGroup,
        dom: &[usize],
        cod: &[usize],
        i: usize,
        map: &mut BTreeMap<usize, usize>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if i == dom.len() {
            out.push(map.iter().map(|(&a, &b)| (a, b)).collect());
            return;
        }
        let a = dom[i];
        for &b in cod {
            if map.values().any(|&v| v == b) {
                continue;
            }
            map.insert(a, b);
            let consistent = map.iter().all(|(&x, &fx)| {
                map.iter().all(|(&y, &fy)| match map.get(&g.mul(x, y)) {
                    Some(&fxy) => fxy == g.mul(fx, fy),
                    None => true,
                })
            });
            if consistent {
                go(g, dom, cod, i + 1, map, out);
            }
            map.remove(&a);
        }
    }
    go(g, &dom, &cod, 0, &mut map, &mut out);
    out
}

pub fn conjugate(g: &FiniteGroup, h: &Set, x: usize) -> Set {
    h.iter().map(|&u| g.mul(g.mul(x, u), g.inv(x))).collect()
}

/// `|{x : x^-1 D x <= Z}| / |Z|`, straight from the definition.
pub fn mark(g: &FiniteGroup, d: &Set, z: &Set) -> usize {
    let count = (0..g.order())
        .filter(|&x| conjugate(g, d, g.inv(x)).is_subset(z))
        .count();
    assert_eq!(count % z.len(), 0);
    count / z.len()
}

/// Points fixed by every element of `d` under `(a, b) . x = a x b^-1`.
pub fn fixed_points(sq: &DirectSquare, x: &ExplicitBiset, d: &Set) -> usize {
    let s = sq.base();
    (0..x.len())
        .filter(|&p| {
            d.iter().all(|&g| {
                let (a, b) = sq.decode(g);
                x.left_act(a, x.right_act(p, s.inv(b))) == p
            })
        })
        .count()
}

/// Right-equivariant bijections of `x`, counted by assigning images point
/// by point and pruning on `g(y s) = g(y) s`.
pub fn count_right_automorphisms(x: &ExplicitBiset) -> u64 {
    let n = x.len();
    let k = x.group_order();
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(x: &ExplicitBiset, k: usize, i: usize, img: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
        let n = x.len();
        if i == n {
            return 1;
        }
        if img[i] != usize::MAX {
            return go(x, k, i + 1, img, used);
        }
        let mut total = 0;
        for y in 0..n {
            if used[y] {
                continue;
            }
            // setting g(i) = y forces g(i s) = y s for all s
            let mut forced = Vec::new();
            let mut ok = true;
            for s in 0..k {
                let (from, to) = (x.right_act(i, s), x.right_act(y, s));
                if img[from] == usize::MAX {
                    if used[to] {
                        ok = false;
                        break;
                    }
                    img[from] = to;
                    used[to] = true;
                    forced.push(from);
                } else if img[from] != to {
                    ok = false;
                    break;
                }
            }
            if ok {
                total += go(x, k, i + 1, img, used);
            }
            for f in forced {
                used[img[f]] = false;
                img[f] = usize::MAX;
            }
        }
        total
    }
    go(x, k, 0, &mut img, &mut used)
}

/// Same count with no pruning at all: every permutation of the points.
pub fn count_right_automorphisms_exhaustive(x: &ExplicitBiset) -> u64 {
    let n = x.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    let mut c = vec![0; n];
    let check = |perm: &[usize]| {
        (0..n).all(|p| (0..x.group_order()).all(|s| perm[x.right_act(p, s)] == x.right_act(perm[p], s)))
    };
    if check(&perm) {
        count += 1;
    }
    // Heap's algorithm
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if check(&perm) {
                count += 1;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    count
}

/// `g` is right-equivariant and intertwines `u . -` with `phi(u) . -`.
pub fn is_intertwiner(x: &ExplicitBiset, g: &[usize], phi: &[(usize, usize)]) -> bool {
    let n = x.len();
    let bijective = {
        let mut seen = vec![false; n];
        g.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    };
    bijective
        && (0..n).all(|p| {
            (0..x.group_order()).all(|s| g[x.right_act(p, s)] == x.right_act(g[p], s))
                && phi.iter().all(|&(u, fu)| g[x.left_act(u, p)] == x.left_act(fu, g[p]))
        })
}

/// Twisted diagonal subgroups of `S x S` as element sets, from `F`'s
/// monomorphism lists through the definition `{(phi(u), u)}`.
pub fn diagonal(sq: &DirectSquare, pairs: impl Iterator<Item = (usize, usize)>) -> Set {
    pairs.map(|(u, fu)| sq.encode(fu, u)).collect()
}

/// Fusion-conjugacy classes of subgroups of `S x S` under `F x F_S(S)`,
/// restricted to `family`, by direct application of `phi x c_x`.
pub fn product_classes(f: &FusionSystem, sq: &DirectSquare, family: &[Set]) -> Vec<Vec<Set>> {
    let s = sq.base();
    let lattice = f.lattice();
    let mut class_of: BTreeMap<Set, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<Set>> = Vec::new();
    for d in family {
        if class_of.contains_key(d) {
            continue;
        }
        let mut orbit = vec![d.clone()];
        let mut seen: BTreeSet<Set> = orbit.iter().cloned().collect();
        let mut i = 0;
        while i < orbit.len() {
            let cur = orbit[i].clone();
            i += 1;
            let left: Set = cur.iter().map(|&z| sq.decode(z).0).collect();
            let p = lattice
                .subgroups()
                .iter()
                .position(|sub| sub.elements().iter().copied().collect::<Set>() == left)
                .expect("projection is a subgroup");
            let dom = lattice.get(p).elements().to_vec();
            for images in f.maps_from(p) {
                for x in 0..s.order() {
                    let img: Set = cur
                        .iter()
                        .map(|&z| {
                            let (a, b) = sq.decode(z);
                            let fa = images[dom.iter().position(|&v| v == a).unwrap()];
                            sq.encode(fa, s.mul(s.mul(x, b), s.inv(x)))
                        })
                        .collect();
                    if seen.insert(img.clone()) {
                        orbit.push(img);
                    }
                }
            }
        }
        for member in &orbit {
            class_of.insert(member.clone(), classes.len());
        }
        classes.push(orbit);
    }
    classes
}

/// Fixed-point count of `sum c_Z [G/Z]` at `d`, from the definition of marks.
pub fn virtual_fix(g: &FiniteGroup, terms: &[(Set, BigRational)], d: &Set) -> BigRational {
    let mut total = BigRational::zero();
    for (z, c) in terms {
        total += c * BigRational::from_integer(mark(g, d, z).into());
    }
    total
}

/// Twisted diagonals of `S x S`, from brute-force subgroups and maps.
pub fn twisted_diagonals(sq: &DirectSquare) -> Vec<Set> {
    let s = sq.base();
    let whole: Set = (0..s.order()).collect();
    let mut out = Vec::new();
    for p in subgroups(s) {
        for phi in monomorphisms(s, &p, &whole) {
            out.push(diagonal(sq, phi.into_iter()));
        }
    }
    out
}

fn normalizer_order(g: &FiniteGroup, h: &Set) -> usize {
    (0..g.order()).filter(|&x| conjugate(g, h, x) == *h).count()
}

fn add_term(g: &FiniteGroup, terms: &mut Vec<(Set, BigRational)>, z: &Set, c: BigRational) {
    for (k, v) in terms.iter_mut() {
        if k.len() == z.len() && (0..g.order()).any(|x| conjugate(g, z, x) == *k) {
            *v += c;
            return;
        }
    }
    terms.push((z.clone(), c));
}

/// Repairs `start` by repeatedly taking a largest fusion class of proper
/// twisted diagonals whose marks differ and topping every member up to the
/// class maximum, until all fusion classes have constant marks.
pub fn naive_stabilize(f: &FusionSystem, sq: &DirectSquare, start: &[(Set, BigRational)]) -> Vec<(Set, BigRational)> {
    let g = sq.square();
    let s_order = sq.base().order();
    let family = twisted_diagonals(sq);
    let classes = product_classes(f, sq, &family);
    let proper = |d: &Set| d.iter().map(|&z| sq.decode(z).1).collect::<Set>().len() < s_order;
    let mut terms: Vec<(Set, BigRational)> = Vec::new();
    for (z, c) in start {
        add_term(g, &mut terms, z, c.clone());
    }
    loop {
        let broken = classes
            .iter()
            .filter(|c| proper(&c[0]))
            .filter(|c| {
                let first = virtual_fix(g, &terms, &c[0]);
                c.iter().any(|d| virtual_fix(g, &terms, d) != first)
            })
            .max_by_key(|c| c[0].len());
        let Some(class) = broken else {
            return terms;
        };
        let fixes: Vec<BigRational> = class.iter().map(|d| virtual_fix(g, &terms, d)).collect();
        let top = fixes.iter().max().unwrap().clone();
        // one representative per conjugacy class inside the fusion class
        let mut reps: Vec<(Set, BigRational)> = Vec::new();
        for (d, fix) in class.iter().zip(&fixes) {
            if !reps.iter().any(|(r, _)| (0..g.order()).any(|x| conjugate(g, d, x) == *r)) {
                reps.push((d.clone(), fix.clone()));
            }
        }
        for (d, fix) in reps {
            let weyl = normalizer_order(g, &d) / d.len();
            let c = (&top - fix) / BigRational::from_integer(weyl.into());
            if !c.is_zero() {
                add_term(g, &mut terms, &d, c);
            }
        }
    }
}
