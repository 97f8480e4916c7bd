//! Finite groups given by verified Cayley tables.
//!
//! Elements are the indices `0..n`, and index 0 is always the identity.
//! Everything downstream (subgroups, homomorphisms, the direct square)
//! works on these indices and reads products out of the table.

mod bits;
mod hom;
mod product;
mod subgroup;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

pub use bits::ElemSet;
pub use hom::{monomorphisms, GroupMap};
pub use product::DirectSquare;
pub use subgroup::{all_subgroups, canonical_representative, normalizer, Subgroup, SubgroupLattice};

use crate::error::{Axiom, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    prime_power: Option<(usize, u32)>,
}

impl FiniteGroup {
    /// Builds a group from a full Cayley table, checking every group axiom.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Domain("empty Cayley table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Domain(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Domain(format!("entry {bad} out of range in row {i}")));
            }
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        verify_table(n, &table)?;
        Ok(Self::from_verified(n, table))
    }

    pub(crate) fn from_verified(order: usize, table: Vec<usize>) -> Self {
        let mut inverses = vec![0; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("verified table has inverses");
        }
        Self {
            order,
            table,
            inverses,
            prime_power: prime_power(order),
        }
    }

    /// Parses the group file format: an `order n` header followed by `n`
    /// rows of `n` element indices. Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut order = None;
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some(n) = order else {
                let mut words = line.split_whitespace();
                let n = match (words.next(), words.next(), words.next()) {
                    (Some("order"), Some(n), None) => n.parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("invalid order `{n}`"),
                    })?,
                    _ => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: "expected `order <n>` header".into(),
                        })
                    }
                };
                if n == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "order must be positive".into(),
                    });
                }
                order = Some(n);
                continue;
            };
            if rows.len() == n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("more than {n} table rows"),
                });
            }
            let row = line
                .split_whitespace()
                .map(|w| match w.parse::<usize>() {
                    Ok(x) if x < n => Ok(x),
                    _ => Err(Error::Parse {
                        line: line_no,
                        message: format!("`{w}` is not an element index below {n}"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("row has {} entries, expected {n}", row.len()),
                });
            }
            rows.push(row);
        }
        let Some(n) = order else {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: "missing `order <n>` header".into(),
            });
        };
        if rows.len() != n {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {n} table rows, found {}", rows.len()),
            });
        }
        Self::from_table(rows)
    }

    /// Renders the group in the group file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// Closes `generators` under `mul` and tabulates the result. Elements of
    /// `prefix` receive the first indices in the given order, so `prefix[0]`
    /// must be the identity; the remaining elements follow in discovery order.
    pub fn generated_by<T, F>(prefix: &[T], generators: &[T], mul: F) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elements: Vec<T> = Vec::new();
        let mut index: HashMap<T, usize> = HashMap::new();
        for x in prefix.iter().chain(generators) {
            if !index.contains_key(x) {
                index.insert(x.clone(), elements.len());
                elements.push(x.clone());
            }
        }
        let mut cursor = 0;
        while cursor < elements.len() {
            let a = elements[cursor].clone();
            for g in generators {
                let c = mul(&a, g);
                if !index.contains_key(&c) {
                    index.insert(c.clone(), elements.len());
                    elements.push(c);
                }
            }
            cursor += 1;
        }
        let rows = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&mul(a, b)]).collect())
            .collect();
        Ok((Self::from_table(rows)?, elements))
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group needs positive order");
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_verified(n, table)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Direct product with element `(a, b)` stored at index `a * |right| + b`.
    pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Self {
        let m = right.order;
        let n = left.order * m;
        let mut table = vec![0; n * n];
        for x in 0..n {
            let (a, b) = (x / m, x % m);
            for y in 0..n {
                let (c, d) = (y / m, y % m);
                table[x * n + y] = left.mul(a, c) * m + right.mul(b, d);
            }
        }
        Self::from_verified(n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x u x^-1`.
    #[inline]
    pub fn conj(&self, x: usize, u: usize) -> usize {
        self.mul(self.mul(x, u), self.inverses[x])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `(p, k)` with `order = p^k`, when the order is a nontrivial prime power.
    pub fn prime_power(&self) -> Option<(usize, u32)> {
        self.prime_power
    }

    /// The trivial group counts as a p-group for every prime.
    pub fn is_p_group(&self) -> bool {
        self.order == 1 || self.prime_power.is_some()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup `sub` as a group in its own right, relabelled so that
    /// `sub.elements()[i]` becomes element `i`.
    pub fn restricted_to(&self, sub: &Subgroup) -> Self {
        let elems = sub.elements();
        let local: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let n = elems.len();
        let mut table = vec![0; n * n];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * n + j] = local[&self.mul(a, b)];
            }
        }
        Self::from_verified(n, table)
    }
}

fn verify_table(n: usize, table: &[usize]) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let c = table[a * n + b];
            if seen[c] != usize::MAX && seen[c] / n == a {
                return Err(Error::NotAGroup {
                    axiom: Axiom::RowPermutation,
                    witness: vec![a, seen[c] % n, b],
                });
            }
            seen[c] = a * n + b;
        }
    }
    seen.iter_mut().for_each(|s| *s = usize::MAX);
    for b in 0..n {
        for a in 0..n {
            let c = table[a * n + b];
            if seen[c] != usize::MAX && seen[c] / n == b {
                return Err(Error::NotAGroup {
                    axiom: Axiom::ColumnPermutation,
                    witness: vec![seen[c] % n, a, b],
                });
            }
            seen[c] = b * n + a;
        }
    }
    for i in 0..n {
        if table[i] != i || table[i * n] != i {
            return Err(Error::NotAGroup {
                axiom: Axiom::Identity,
                witness: vec![0, i, 0],
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b];
            for c in 0..n {
                if table[ab * n + c] != table[a * n + table[b * n + c]] {
                    return Err(Error::NotAGroup {
                        axiom: Axiom::Associativity,
                        witness: vec![a, b, c],
                    });
                }
            }
        }
    }
    for a in 0..n {
        let right = (0..n).find(|&b| table[a * n + b] == 0);
        match right {
            Some(b) if table[b * n + a] == 0 => {}
            _ => {
                return Err(Error::NotAGroup {
                    axiom: Axiom::Inverse,
                    witness: vec![a, right.unwrap_or(a), 0],
                })
            }
        }
    }
    Ok(())
}

fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_groups() {
        let c2 = FiniteGroup::parse("order 2\n0 1\n1 0\n").unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.prime_power(), Some((2, 1)));

        let c3 = FiniteGroup::parse("# cyclic\norder 3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
        assert_eq!(c3, FiniteGroup::cyclic(3));
        assert_eq!(c3.prime_power(), Some((3, 1)));
    }

    #[test]
    fn duplicate_row_entry_is_not_a_group() {
        let err = FiniteGroup::parse("order 2\n0 1\n1 1\n").unwrap_err();
        assert!(matches!(
            err,
            Error::NotAGroup {
                axiom: Axiom::RowPermutation,
                ..
            }
        ));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = FiniteGroup::parse("order 2\n0 1\n1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: "row has 1 entries, expected 2".into()
            }
        );
        let err = FiniteGroup::parse("# header\nsize 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = FiniteGroup::parse("order 2\n0 1\n1 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn non_associative_latin_square_is_rejected() {
        // A loop of order 5 that is not a group.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(rows).unwrap_err();
        assert!(matches!(
            err,
            Error::NotAGroup {
                axiom: Axiom::Associativity,
                ..
            }
        ));
    }

    #[test]
    fn identity_must_be_element_zero() {
        let rows = vec![vec![1, 0], vec![0, 1]];
        let err = FiniteGroup::from_table(rows).unwrap_err();
        assert!(matches!(
            err,
            Error::NotAGroup {
                axiom: Axiom::Identity,
                ..
            }
        ));
    }

    #[test]
    fn text_round_trip() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3));
        assert_eq!(FiniteGroup::parse(&g.to_text()).unwrap(), g);
        assert_eq!(g.prime_power(), None);
        assert!(!g.is_p_group());
        assert!(FiniteGroup::trivial().is_p_group());
    }
}
