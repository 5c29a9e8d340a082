//! Finite groups given by full multiplication tables.
//!
//! Every factor group in a free product is one of these. The identity is
//! always element 0 (inputs are relabelled on load if necessary), which keeps
//! normal forms stable everywhere downstream.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which group axiom failed, with an offending witness triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    Closure,
    Identity,
    Inverse,
    Associativity,
}

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group axiom violated ({kind:?}) at witness {witness:?}")]
    AxiomViolation {
        kind: AxiomKind,
        witness: (usize, usize, usize),
    },
    #[error("element index {0} out of range for group of order {1}")]
    IndexOutOfRange(usize, usize),
    #[error("order {0} exceeds the exhaustive-search bound {1}")]
    BoundExceeded(usize, usize),
    #[error("table is not square or empty")]
    BadShape,
    #[error("no identity element in table")]
    NoIdentity,
    #[error("bad group file: {0}")]
    BadFile(String),
}

/// Default cap on orders for exhaustive searches (isomorphisms, Aut).
pub const DEFAULT_SEARCH_BOUND: usize = 24;

/// A finite group as an `n x n` multiplication table over element indices,
/// with the identity fixed at index 0 and the inverse table precomputed.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        // Structural equality; the name is cosmetic.
        self.order == other.order && self.table == other.table
    }
}
impl Eq for FiniteGroup {}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl FiniteGroup {
    /// Validates all group axioms on `table` and returns the group.
    ///
    /// Expects the identity at index 0; use [`FiniteGroup::from_table`] to
    /// relabel arbitrary tables first.
    pub fn validate(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::BadShape);
        }
        for (x, row) in table.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::AxiomViolation {
                        kind: AxiomKind::Closure,
                        witness: (x, y, v),
                    });
                }
            }
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return Err(GroupError::AxiomViolation {
                    kind: AxiomKind::Identity,
                    witness: (x, 0, table[x][0]),
                });
            }
        }
        let mut inverse = vec![None; n];
        for x in 0..n {
            for y in 0..n {
                if table[x][y] == 0 && table[y][x] == 0 {
                    inverse[x] = Some(y);
                    break;
                }
            }
        }
        let inverse = inverse
            .into_iter()
            .enumerate()
            .map(|(x, inv)| {
                inv.ok_or(GroupError::AxiomViolation {
                    kind: AxiomKind::Inverse,
                    witness: (x, x, 0),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(GroupError::AxiomViolation {
                            kind: AxiomKind::Associativity,
                            witness: (x, y, z),
                        });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            order: n,
            table,
            inverse,
        })
    }

    /// Validates a table whose identity may sit anywhere, relabelling so the
    /// identity becomes element 0.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::BadShape);
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(GroupError::AxiomViolation {
                kind: AxiomKind::Closure,
                witness: (0, 0, n),
            });
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        if e == 0 {
            return Self::validate(name, table);
        }
        // Swap labels 0 <-> e.
        let p = |x: usize| {
            if x == 0 {
                e
            } else if x == e {
                0
            } else {
                x
            }
        };
        let mut relabelled = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                relabelled[p(x)][p(y)] = p(table[x][y]);
            }
        }
        Self::validate(name, relabelled)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Product by table lookup.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// Checked product.
    pub fn try_mul(&self, x: usize, y: usize) -> Result<usize, GroupError> {
        if x >= self.order {
            return Err(GroupError::IndexOutOfRange(x, self.order));
        }
        if y >= self.order {
            return Err(GroupError::IndexOutOfRange(y, self.order));
        }
        Ok(self.table[x][y])
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    pub fn nontrivial_elements(&self) -> impl Iterator<Item = usize> {
        1..self.order
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    /// Conjugate `a x a^-1`.
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(a, x), self.inv(a))
    }

    /// Closure of a generating set under products.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue: Vec<usize> = gens.to_vec();
        while let Some(g) = queue.pop() {
            if !seen[g] {
                seen[g] = true;
                out.push(g);
                for &h in out.clone().iter() {
                    queue.push(self.mul(g, h));
                    queue.push(self.mul(h, g));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Order of the abelianisation `G/[G,G]`.
    pub fn abelianisation_order(&self) -> usize {
        let commutators: Vec<usize> = (0..self.order)
            .flat_map(|x| {
                (0..self.order).map(move |y| {
                    // x^-1 y^-1 x y
                    (x, y)
                })
            })
            .map(|(x, y)| self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y)))
            .collect();
        let derived = self.subgroup_closure(&commutators);
        self.order / derived.len()
    }

    /// Sorted multiset of element orders; an isomorphism invariant used to
    /// prune bijection searches.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = (0..self.order).map(|x| self.element_order(x)).collect();
        orders.sort_unstable();
        orders
    }

    // --- canonical small groups -------------------------------------------

    pub fn trivial() -> Arc<Self> {
        Arc::new(Self::validate("1", vec![vec![0]]).unwrap())
    }

    pub fn cyclic(n: usize) -> Arc<Self> {
        assert!(n >= 1);
        let table = (0..n)
            .map(|x| (0..n).map(|y| (x + y) % n).collect())
            .collect();
        Arc::new(Self::validate(format!("C{n}"), table).unwrap())
    }

    /// Symmetric group on `n` letters; elements are permutations in
    /// lexicographic one-line order and `x * y` applies `y` first.
    pub fn symmetric(n: usize) -> Arc<Self> {
        assert!((1..=5).contains(&n), "desk scale only");
        let perms = all_permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|x| {
                perms
                    .iter()
                    .map(|y| {
                        let composed: Vec<usize> = (0..n).map(|i| x[y[i]]).collect();
                        index(&composed)
                    })
                    .collect()
            })
            .collect();
        Arc::new(Self::validate(format!("S{n}"), table).unwrap())
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Arc<Self> {
        let n = a.order * b.order;
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut table = vec![vec![0; n]; n];
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        Arc::new(Self::validate(format!("{}x{}", a.name, b.name), table).unwrap())
    }

    pub fn klein_four() -> Arc<Self> {
        let c2 = Self::cyclic(2);
        let g = Self::direct_product(&c2, &c2);
        Arc::new(FiniteGroup {
            name: "C2xC2".into(),
            ..(*g).clone()
        })
    }

    // --- JSON group files ----------------------------------------------------

    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let file: GroupFile =
            serde_json::from_str(text).map_err(|e| GroupError::BadFile(e.to_string()))?;
        if file.table.len() != file.order {
            return Err(GroupError::BadFile(format!(
                "declared order {} but table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        Self::from_table(file.name, file.table)
    }

    pub fn to_json(&self) -> String {
        let file = GroupFile {
            name: self.name.clone(),
            order: self.order,
            table: self.table.clone(),
        };
        serde_json::to_string_pretty(&file).unwrap()
    }
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    name: String,
    order: usize,
    table: Vec<Vec<usize>>,
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut current: Vec<usize> = (0..n).collect();
    permute(&mut current, 0, &mut out);
    out.sort();
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// A homomorphism between finite groups, stored as the full image table.
#[derive(Debug, Clone)]
pub struct GroupMap {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl PartialEq for GroupMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.images == other.images
    }
}
impl Eq for GroupMap {}

impl GroupMap {
    /// Builds the map after checking it is a homomorphism.
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::BadShape);
        }
        if let Some(&bad) = images.iter().find(|&&v| v >= target.order()) {
            return Err(GroupError::IndexOutOfRange(bad, target.order()));
        }
        if !is_homomorphism(&images, &source, &target) {
            return Err(GroupError::AxiomViolation {
                kind: AxiomKind::Closure,
                witness: (0, 0, 0),
            });
        }
        Ok(GroupMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let images = (0..g.order()).collect();
        GroupMap {
            source: g.clone(),
            target: g,
            images,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.images.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupMap) -> Result<GroupMap, GroupError> {
        if self.target != other.source {
            return Err(GroupError::BadShape);
        }
        let images = self.images.iter().map(|&v| other.images[v]).collect();
        Ok(GroupMap {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
        })
    }

    /// Inverse of a bijective map.
    pub fn inverted(&self) -> Result<GroupMap, GroupError> {
        if !self.is_bijective() {
            return Err(GroupError::BadShape);
        }
        let mut images = vec![0; self.target.order()];
        for (x, &v) in self.images.iter().enumerate() {
            images[v] = x;
        }
        Ok(GroupMap {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        })
    }
}

/// Multiplicativity check for a candidate image table.
pub fn is_homomorphism(images: &[usize], src: &FiniteGroup, tgt: &FiniteGroup) -> bool {
    if images.len() != src.order() {
        return false;
    }
    for x in 0..src.order() {
        for y in 0..src.order() {
            if images[src.mul(x, y)] != tgt.mul(images[x], images[y]) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive isomorphism search, pruned by element-order profiles and by
/// partial multiplicativity while images are assigned one element at a time.
pub fn find_isomorphism(
    g: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
) -> Option<GroupMap> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return None;
    }
    let n = g.order();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    images[0] = 0;
    used[0] = true;
    if assign(g, h, 1, &mut images, &mut used) {
        return Some(GroupMap::new(g.clone(), h.clone(), images).expect("search checked hom"));
    }
    None
}

fn assign(
    g: &FiniteGroup,
    h: &FiniteGroup,
    x: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if x == g.order() {
        return true;
    }
    for c in 0..h.order() {
        if used[c] || g.element_order(x) != h.element_order(c) {
            continue;
        }
        images[x] = c;
        used[c] = true;
        if consistent(g, h, x, images) && assign(g, h, x + 1, images, used) {
            return true;
        }
        images[x] = usize::MAX;
        used[c] = false;
    }
    false
}

fn consistent(g: &FiniteGroup, h: &FiniteGroup, x: usize, images: &[usize]) -> bool {
    for y in 0..=x {
        if images[y] == usize::MAX {
            continue;
        }
        for (a, b) in [(x, y), (y, x)] {
            let p = g.mul(a, b);
            if images[p] != usize::MAX && h.mul(images[a], images[b]) != images[p] {
                return false;
            }
        }
    }
    true
}

/// All automorphisms of `g`, identity first, found by exhaustive backtracking.
pub fn automorphism_group(
    g: &Arc<FiniteGroup>,
    bound: usize,
) -> Result<Vec<GroupMap>, GroupError> {
    if g.order() > bound {
        return Err(GroupError::BoundExceeded(g.order(), bound));
    }
    let n = g.order();
    let mut found = vec![];
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    images[0] = 0;
    used[0] = true;
    collect_autos(g, 1, &mut images, &mut used, &mut found);
    found.sort();
    Ok(found
        .into_iter()
        .map(|images| GroupMap::new(g.clone(), g.clone(), images).expect("search checked hom"))
        .collect())
}

fn collect_autos(
    g: &FiniteGroup,
    x: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if x == g.order() {
        out.push(images.clone());
        return;
    }
    for c in 0..g.order() {
        if used[c] || g.element_order(x) != g.element_order(c) {
            continue;
        }
        images[x] = c;
        used[c] = true;
        if consistent(g, g, x, images) {
            collect_autos(g, x + 1, images, used, out);
        }
        images[x] = usize::MAX;
        used[c] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_table_is_valid() {
        let g = FiniteGroup::validate("C2", vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inverse_table(), &[0, 1]);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn missing_inverse_is_rejected() {
        let err = FiniteGroup::validate("bad", vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        match err {
            GroupError::AxiomViolation { kind, .. } => assert_eq!(kind, AxiomKind::Inverse),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // Identity at 0, every element self-inverse, but (1*1)*2 != 1*(1*2).
        let table = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        assert!(FiniteGroup::validate("k4", table.clone()).is_ok());
        let mut bad = table;
        bad[1][2] = 2;
        bad[2][1] = 2;
        let err = FiniteGroup::validate("bad", bad).unwrap_err();
        match err {
            GroupError::AxiomViolation { kind, .. } => {
                assert!(kind == AxiomKind::Associativity || kind == AxiomKind::Inverse)
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn s3_built_from_permutations() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        // (12) * (13) = (132) in one-line lex indexing.
        let t12 = 2; // [1,0,2]
        let t13 = 5; // [2,1,0]
        let r132 = 4; // [2,0,1]
        assert_eq!(s3.mul(t12, t13), r132);
    }

    #[test]
    fn cyclic_arithmetic() {
        let c3 = FiniteGroup::cyclic(3);
        assert_eq!(c3.mul(1, 2), 0);
        assert_eq!(c3.inv(1), 2);
        assert_eq!(c3.element_order(1), 3);
    }

    #[test]
    fn identity_relabelled_on_load() {
        // C2 written with the identity at index 1.
        let g = FiniteGroup::from_table("C2", vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn axioms_hold_exhaustively_for_shipped_groups() {
        for g in [
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::cyclic(5),
            FiniteGroup::cyclic(6),
            FiniteGroup::klein_four(),
            FiniteGroup::symmetric(3),
        ] {
            let n = g.order();
            for x in 0..n {
                assert_eq!(g.mul(x, g.inv(x)), 0);
                assert_eq!(g.mul(g.inv(x), x), 0);
                for y in 0..n {
                    for z in 0..n {
                        assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn isomorphism_c2_to_c2_is_identity() {
        let c2 = FiniteGroup::cyclic(2);
        let m = find_isomorphism(&c2, &c2).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn c4_not_isomorphic_to_klein_four() {
        assert!(find_isomorphism(&FiniteGroup::cyclic(4), &FiniteGroup::klein_four()).is_none());
    }

    #[test]
    fn s3_not_isomorphic_to_c6() {
        assert!(find_isomorphism(&FiniteGroup::symmetric(3), &FiniteGroup::cyclic(6)).is_none());
    }

    #[test]
    fn unpruned_brute_force_agrees_with_search_up_to_order_8() {
        // Complete enumeration over all bijections as the independent oracle.
        fn brute(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> bool {
            if g.order() != h.order() {
                return false;
            }
            let perms = all_permutations(g.order());
            perms
                .iter()
                .any(|p| p[0] == 0 && is_homomorphism(p, g, h))
        }
        let candidates = [
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::klein_four(),
            FiniteGroup::cyclic(5),
            FiniteGroup::cyclic(6),
            FiniteGroup::symmetric(3),
        ];
        for g in &candidates {
            for h in &candidates {
                if g.order() > 4 && g.order() != h.order() {
                    continue;
                }
                assert_eq!(find_isomorphism(g, h).is_some(), brute(g, h), "{g} vs {h}");
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        let aut = |g: &Arc<FiniteGroup>| automorphism_group(g, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(aut(&FiniteGroup::cyclic(2)).len(), 1);
        assert_eq!(aut(&FiniteGroup::cyclic(3)).len(), 2);
        assert_eq!(aut(&FiniteGroup::symmetric(3)).len(), 6);
        assert_eq!(aut(&FiniteGroup::klein_four()).len(), 6);
        let c3_autos = aut(&FiniteGroup::cyclic(3));
        assert!(c3_autos[0].is_identity());
        assert_eq!(c3_autos[1].images(), &[0, 2, 1]);
    }

    #[test]
    fn automorphisms_closed_under_composition_and_inverse() {
        for g in [FiniteGroup::symmetric(3), FiniteGroup::klein_four()] {
            let autos = automorphism_group(&g, DEFAULT_SEARCH_BOUND).unwrap();
            for a in &autos {
                assert!(autos.contains(&a.inverted().unwrap()));
                for b in &autos {
                    assert!(autos.contains(&a.then(b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn bound_is_honoured() {
        let s4 = FiniteGroup::symmetric(4);
        assert!(matches!(
            automorphism_group(&s4, 8),
            Err(GroupError::BoundExceeded(24, 8))
        ));
        assert_eq!(automorphism_group(&s4, 24).unwrap().len(), 24);
    }

    #[test]
    fn abelianisation_orders() {
        assert_eq!(FiniteGroup::cyclic(2).abelianisation_order(), 2);
        assert_eq!(FiniteGroup::symmetric(3).abelianisation_order(), 2);
        let c3xc3 = FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(3));
        assert_eq!(c3xc3.abelianisation_order(), 9);
    }

    #[test]
    fn json_round_trip() {
        let s3 = FiniteGroup::symmetric(3);
        let text = s3.to_json();
        let back = FiniteGroup::from_json(&text).unwrap();
        assert_eq!(*s3, back);
    }
}
