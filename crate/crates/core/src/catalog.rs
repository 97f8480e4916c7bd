//! Built-in groups and fusion systems.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fusion::{close_fusion, fusion_via_embedding, inner_fusion, FusionSystem};
use crate::group::{FiniteGroup, GroupMap, Subgroup};

#[derive(Clone, Debug)]
pub enum FusionSource {
    Inner,
    /// Generator maps as `(a, b)` pairs on subgroups of the base.
    Generators(Vec<Vec<(usize, usize)>>),
    /// `F_S(G)` with `S` embedded in `group` by `embedding[i]`.
    Overgroup {
        group: Arc<FiniteGroup>,
        embedding: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub group: Arc<FiniteGroup>,
    pub source: FusionSource,
    /// Informational only: whether the source is known to give a saturated system.
    pub expect_saturated_source: bool,
}

impl CatalogEntry {
    pub fn fusion_system(&self) -> Result<FusionSystem> {
        match &self.source {
            FusionSource::Inner => inner_fusion(self.group.clone()),
            FusionSource::Generators(gens) => {
                let whole = Subgroup::whole(&self.group);
                let maps = gens
                    .iter()
                    .map(|pairs| GroupMap::from_pairs(&self.group, pairs, whole.clone()))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::InvalidGenerator(e.to_string()))?;
                close_fusion(self.group.clone(), &maps)
            }
            FusionSource::Overgroup { group, embedding } => {
                fusion_via_embedding(group, self.group.clone(), embedding)
            }
        }
    }

    pub fn is_inner(&self) -> bool {
        matches!(self.source, FusionSource::Inner)
    }
}

type Perm = Vec<usize>;

fn compose(x: &Perm, y: &Perm) -> Perm {
    y.iter().map(|&i| x[i]).collect()
}

type Mat3 = [u8; 4];

fn mat_mul(x: &Mat3, y: &Mat3) -> Mat3 {
    [
        (x[0] * y[0] + x[1] * y[2]) % 3,
        (x[0] * y[1] + x[1] * y[3]) % 3,
        (x[2] * y[0] + x[3] * y[2]) % 3,
        (x[2] * y[1] + x[3] * y[3]) % 3,
    ]
}

pub fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n)
}

/// `C2 x C2` with involutions 1, 2 and 3 = 1 * 2.
pub fn klein_four() -> FiniteGroup {
    FiniteGroup::direct_product(&cyclic(2), &cyclic(2))
}

/// Dihedral group of order 8; element `a + 4b` is `r^a s^b`.
pub fn dihedral8() -> FiniteGroup {
    let mut table = vec![0; 64];
    for x in 0..8 {
        let (a, b) = (x % 4, x / 4);
        for y in 0..8 {
            let (c, d) = (y % 4, y / 4);
            let rot = (if b == 0 { a + c } else { a + 4 - c }) % 4;
            table[x * 8 + y] = rot + 4 * ((b + d) % 2);
        }
    }
    FiniteGroup::from_verified(8, table)
}

/// Quaternion group; elements `1, -1, i, -i, j, -j, k, -k` in that order.
pub fn quaternion8() -> FiniteGroup {
    // unit products: (sign flip, unit) for units 1, i, j, k
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mut table = vec![0; 64];
    for x in 0..8 {
        for y in 0..8 {
            let (flip, unit) = UNIT[x / 2][y / 2];
            let negative = (x % 2 == 1) ^ (y % 2 == 1) ^ flip;
            table[x * 8 + y] = 2 * unit + usize::from(negative);
        }
    }
    FiniteGroup::from_verified(8, table)
}

/// `A4` with the Klein four subgroup on indices 0..4, labelled as in
/// [`klein_four`].
pub fn alternating4() -> FiniteGroup {
    let v4: Vec<Perm> = vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ];
    let gens = vec![v4[1].clone(), v4[2].clone(), vec![0, 2, 3, 1]];
    FiniteGroup::generated_by(&v4, &gens, compose)
        .expect("permutations form a group")
        .0
}

/// `S4` with the dihedral subgroup on indices 0..8, labelled as in
/// [`dihedral8`].
pub fn symmetric4() -> FiniteGroup {
    let r: Perm = vec![1, 2, 3, 0];
    let s: Perm = vec![0, 3, 2, 1];
    let mut d8 = Vec::new();
    for b in 0..2 {
        for a in 0..4 {
            let mut x: Perm = (0..4).collect();
            for _ in 0..a {
                x = compose(&r, &x);
            }
            if b == 1 {
                x = compose(&x, &s);
            }
            d8.push(x);
        }
    }
    let gens = vec![r, s, vec![1, 0, 2, 3]];
    FiniteGroup::generated_by(&d8, &gens, compose)
        .expect("permutations form a group")
        .0
}

/// `SL(2, 3)` with the quaternion subgroup on indices 0..8, labelled as in
/// [`quaternion8`].
pub fn special_linear_2_3() -> FiniteGroup {
    let neg = |m: Mat3| -> Mat3 { m.map(|v| (3 - v) % 3) };
    let one: Mat3 = [1, 0, 0, 1];
    let i: Mat3 = [0, 1, 2, 0];
    let j: Mat3 = [1, 1, 1, 2];
    let k = mat_mul(&i, &j);
    let q8 = vec![one, neg(one), i, neg(i), j, neg(j), k, neg(k)];
    let gens = vec![i, j, [1, 1, 0, 1]];
    FiniteGroup::generated_by(&q8, &gens, mat_mul)
        .expect("matrices form a group")
        .0
}

fn entry(name: &'static str, group: FiniteGroup, source: FusionSource, saturated: bool) -> CatalogEntry {
    CatalogEntry {
        name,
        group: Arc::new(group),
        source,
        expect_saturated_source: saturated,
    }
}

/// Every built-in entry, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    use FusionSource::*;
    let c2 = cyclic(2);
    let c3 = cyclic(3);
    let c4 = cyclic(4);
    let overgroup = |g: FiniteGroup, n: usize| Overgroup {
        group: Arc::new(g),
        embedding: (0..n).collect(),
    };
    vec![
        entry("c2", c2.clone(), Inner, true),
        entry("c3", c3.clone(), Inner, true),
        entry("c4", c4.clone(), Inner, true),
        entry("v4", klein_four(), Inner, true),
        entry("c8", cyclic(8), Inner, true),
        entry("c4xc2", FiniteGroup::direct_product(&c4, &c2), Inner, true),
        entry(
            "c2xc2xc2",
            FiniteGroup::direct_product(&klein_four(), &c2),
            Inner,
            true,
        ),
        entry("d8", dihedral8(), Inner, true),
        entry("q8", quaternion8(), Inner, true),
        entry("c9", cyclic(9), Inner, true),
        entry("c3xc3", FiniteGroup::direct_product(&c3, &c3), Inner, true),
        entry(
            "v4_a4",
            klein_four(),
            Generators(vec![vec![(0, 0), (1, 2), (2, 3), (3, 1)]]),
            true,
        ),
        entry("d8_s4", dihedral8(), overgroup(symmetric4(), 8), true),
        entry("q8_sl23", quaternion8(), overgroup(special_linear_2_3(), 8), true),
        entry(
            "v4_partial",
            klein_four(),
            Generators(vec![vec![(0, 0), (1, 2)]]),
            false,
        ),
        entry(
            "c3xc3_partial",
            FiniteGroup::direct_product(&c3, &c3),
            Generators(vec![vec![(0, 0), (3, 1), (6, 2)]]),
            false,
        ),
        entry(
            "c4_aut",
            c4,
            Generators(vec![vec![(0, 0), (1, 3), (2, 2), (3, 1)]]),
            false,
        ),
    ]
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}
