//! Finite groups stored as dense Cayley tables.
//!
//! Composition convention: `mul(g, h)` is "first `g`, then `h`". Every
//! constructor in this module (and everything built on top of it) uses that
//! convention, including the right conjugation `conjugate(g, h) = h⁻¹gh`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Default upper bound on group order accepted by table constructors.
pub const DEFAULT_MAX_ORDER: usize = 1 << 15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    labels: Option<Vec<String>>,
    commutative: bool,
}

/// Exhaustive check of closure, associativity, identity and inverses.
///
/// Returns `Err` only when the table is not square (or `identity` is out of
/// range); a well-formed table that fails an axiom yields `Ok(false)`.
pub fn verify_group_axioms(table: &[Vec<usize>], identity: usize) -> Result<bool> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Format("group table is empty".into()));
    }
    if let Some((i, row)) = table.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::Format(format!(
            "group table row {i} has length {}, expected {n}",
            row.len()
        )));
    }
    if identity >= n {
        return Err(Error::Format(format!(
            "identity {identity} out of range for order {n}"
        )));
    }
    if table.iter().flatten().any(|&v| v >= n) {
        return Ok(false);
    }
    for (g, row) in table.iter().enumerate() {
        if table[identity][g] != g || row[identity] != g {
            return Ok(false);
        }
    }
    for (g, row) in table.iter().enumerate() {
        if !(0..n).any(|h| row[h] == identity && table[h][g] == identity) {
            return Ok(false);
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

impl FiniteGroup {
    pub fn from_table(
        table: Vec<Vec<usize>>,
        identity: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        Self::from_table_with_cap(table, identity, labels, DEFAULT_MAX_ORDER)
    }

    pub fn from_table_with_cap(
        table: Vec<Vec<usize>>,
        identity: usize,
        labels: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self> {
        let order = table.len();
        if order > cap {
            return Err(Error::TooLarge { order, cap });
        }
        if !verify_group_axioms(&table, identity)? {
            return Err(Error::NotAGroup);
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::Format(format!(
                    "{} labels given for a group of order {order}",
                    l.len()
                )));
            }
        }
        let flat: Vec<u32> = table.iter().flatten().map(|&v| v as u32).collect();
        Ok(Self::from_flat_unchecked(order, flat, identity, labels))
    }

    // Caller guarantees the flat table is a group table.
    fn from_flat_unchecked(
        order: usize,
        table: Vec<u32>,
        identity: usize,
        labels: Option<Vec<String>>,
    ) -> Self {
        let mut inverse = vec![0u32; order];
        for g in 0..order {
            for h in 0..order {
                if table[g * order + h] as usize == identity {
                    inverse[g] = h as u32;
                    break;
                }
            }
        }
        let commutative =
            (0..order).all(|g| (0..order).all(|h| table[g * order + h] == table[h * order + g]));
        FiniteGroup {
            order,
            table,
            identity,
            inverse,
            labels,
            commutative,
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z_n` written additively on `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_flat_unchecked(n, table, 0, Some(labels))
    }

    /// S₃ ≅ ⟨a, x | a³ = x² = e, xax = a²⟩ with elements indexed as
    /// `e, a, a², x, ax, a²x` (index `i + 3j` is `aⁱxʲ`).
    pub fn s3_presented() -> Self {
        // Realise a as the 3-cycle 0→1→2 and x as the transposition (0 1),
        // composing left to right.
        type Perm = [usize; 3];
        let compose = |p: &Perm, q: &Perm| -> Perm { [q[p[0]], q[p[1]], q[p[2]]] };
        let e: Perm = [0, 1, 2];
        let a: Perm = [1, 2, 0];
        let x: Perm = [1, 0, 2];
        let a2 = compose(&a, &a);
        let elems = [
            e,
            a,
            a2,
            x,
            compose(&a, &x),
            compose(&a2, &x),
        ];
        let index = |p: &Perm| elems.iter().position(|q| q == p).expect("closed");
        let table = elems
            .iter()
            .flat_map(|p| elems.iter().map(move |q| (p, q)))
            .map(|(p, q)| index(&compose(p, q)) as u32)
            .collect();
        let labels = ["e", "a", "a²", "x", "ax", "a²x"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_flat_unchecked(6, table, 0, Some(labels))
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let order = g.order * h.order;
        if order > DEFAULT_MAX_ORDER {
            return Err(Error::TooLarge {
                order,
                cap: DEFAULT_MAX_ORDER,
            });
        }
        let pair = |i: usize| (i / h.order, i % h.order);
        let mut table = Vec::with_capacity(order * order);
        for u in 0..order {
            let (g1, h1) = pair(u);
            for v in 0..order {
                let (g2, h2) = pair(v);
                table.push((g.mul(g1, g2) * h.order + h.mul(h1, h2)) as u32);
            }
        }
        let labels = (0..order)
            .map(|u| {
                let (a, b) = pair(u);
                format!("({},{})", g.label(a), h.label(b))
            })
            .collect();
        let identity = g.identity * h.order + h.identity;
        Ok(Self::from_flat_unchecked(order, table, identity, Some(labels)))
    }

    /// The semidirect product `G ⋉ N` on pairs `(g, n)` with
    /// `(g₁, n₁)(g₂, n₂) = (g₁g₂, n₁^{g₂} n₂)` where `n^{g} = g⁻¹ng`.
    ///
    /// Pair `(g, n)` is stored at index `g * |N| + rank(n)`, where `rank`
    /// is the position of `n` in the sorted member list of `normal`.
    pub fn semidirect_right_conj(group: &FiniteGroup, normal: &Subgroup) -> Result<Self> {
        if !is_normal_subgroup(group, normal.members()) {
            return Err(Error::NotNormal);
        }
        let nn = normal.len();
        let order = group.order * nn;
        if order > DEFAULT_MAX_ORDER {
            return Err(Error::TooLarge {
                order,
                cap: DEFAULT_MAX_ORDER,
            });
        }
        let mut rank = vec![usize::MAX; group.order];
        for (i, &m) in normal.members().iter().enumerate() {
            rank[m] = i;
        }
        let members = normal.members();
        let mut table = Vec::with_capacity(order * order);
        for u in 0..order {
            let (g1, n1) = (u / nn, members[u % nn]);
            for v in 0..order {
                let (g2, n2) = (v / nn, members[v % nn]);
                let g = group.mul(g1, g2);
                let n = group.mul(group.conjugate(n1, g2), n2);
                table.push((g * nn + rank[n]) as u32);
            }
        }
        let labels = (0..order)
            .map(|u| format!("({},{})", group.label(u / nn), group.label(members[u % nn])))
            .collect();
        let identity = group.identity * nn + rank[group.identity];
        Ok(Self::from_flat_unchecked(order, table, identity, Some(labels)))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g] as usize
    }

    /// Right conjugation `g^h = h⁻¹gh`.
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// `[A, B] = ABA⁻¹B⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.mul(a, b), self.inv(a)), self.inv(b))
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    /// Index of the element carrying `label`, if labels are present.
    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(u) = frontier.pop() {
            for &g in gens {
                let w = self.mul(u, g);
                if set.insert(w) {
                    frontier.push(w);
                }
            }
        }
        Subgroup {
            members: set.into_iter().collect(),
        }
    }

    /// All subgroups, in a deterministic order (by size, then members).
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack = vec![vec![self.identity]];
        found.insert(vec![self.identity]);
        while let Some(h) = stack.pop() {
            for g in 0..self.order {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let s = self.generated(&gens).members;
                if found.insert(s.clone()) {
                    stack.push(s);
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_iter().map(|members| Subgroup { members }).collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        all
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.subgroups()
            .into_iter()
            .filter(|s| is_normal_subgroup(self, s.members()))
            .collect()
    }
}

/// A subgroup given by its sorted member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Checks closure under the product and inverses of `group`.
    pub fn new(group: &FiniteGroup, members: &[usize]) -> Result<Self> {
        let mut members: Vec<usize> = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if !is_subgroup(group, &members) {
            return Err(Error::Format(format!(
                "{members:?} is not a subgroup of a group of order {}",
                group.order()
            )));
        }
        Ok(Subgroup { members })
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Subgroup {
            members: vec![group.identity()],
        }
    }

    pub fn full(group: &FiniteGroup) -> Self {
        Subgroup {
            members: group.elements().collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

fn is_subgroup(group: &FiniteGroup, sorted: &[usize]) -> bool {
    if sorted.iter().any(|&m| m >= group.order()) || sorted.binary_search(&group.identity()).is_err() {
        return false;
    }
    let has = |g: usize| sorted.binary_search(&g).is_ok();
    sorted.iter().all(|&a| has(group.inv(a)) && sorted.iter().all(|&b| has(group.mul(a, b))))
}

/// True iff `members` is a subgroup with `g⁻¹Ng = N` for every `g`.
pub fn is_normal_subgroup(group: &FiniteGroup, members: &[usize]) -> bool {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if !is_subgroup(group, &sorted) {
        return false;
    }
    group.elements().all(|g| {
        sorted
            .iter()
            .all(|&n| sorted.binary_search(&group.conjugate(n, g)).is_ok())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::s3_presented()
    }

    #[test]
    fn s3_relations() {
        let g = s3();
        let (a, x, e) = (g.find("a").unwrap(), g.find("x").unwrap(), g.identity());
        let a2 = g.mul(a, a);
        assert_eq!(g.mul(a2, a), e);
        assert_eq!(g.mul(x, x), e);
        assert_eq!(g.mul(g.mul(x, a), x), a2);
        assert!(verify_group_axioms(&g.table_rows(), e).unwrap());
        assert!(!g.is_commutative());
        assert_eq!(g.label(a2), "a²");
        assert_eq!(g.mul(a, x), g.find("ax").unwrap());
        assert_eq!(g.mul(a2, x), g.find("a²x").unwrap());
    }

    #[test]
    fn trivial_and_cyclic() {
        let t = FiniteGroup::cyclic(1);
        assert_eq!(t.order(), 1);
        assert!(verify_group_axioms(&t.table_rows(), 0).unwrap());
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.mul(1, 2), 0);
        assert!(z3.is_commutative());
    }

    #[test]
    fn corrupted_table_rejected() {
        let mut rows = s3().table_rows();
        rows[1].swap(2, 3);
        assert!(!verify_group_axioms(&rows, 0).unwrap());
        assert!(matches!(
            FiniteGroup::from_table(rows, 0, None),
            Err(Error::NotAGroup)
        ));
    }

    #[test]
    fn non_square_is_format_error() {
        let rows = vec![vec![0, 1], vec![1]];
        assert!(matches!(verify_group_axioms(&rows, 0), Err(Error::Format(_))));
    }

    #[test]
    fn out_of_range_entry_is_not_a_group() {
        let rows = vec![vec![0, 1], vec![1, 2]];
        assert!(!verify_group_axioms(&rows, 0).unwrap());
    }

    #[test]
    fn cap_enforced() {
        let rows = FiniteGroup::cyclic(4).table_rows();
        assert!(matches!(
            FiniteGroup::from_table_with_cap(rows, 0, None, 3),
            Err(Error::TooLarge { order: 4, cap: 3 })
        ));
    }

    #[test]
    fn conjugation_in_s3() {
        let g = s3();
        let (a, x) = (g.find("a").unwrap(), g.find("x").unwrap());
        assert_eq!(g.conjugate(a, x), g.find("a²").unwrap());
        assert_eq!(g.conjugate(a, g.identity()), a);
        // x^a = a⁻¹xa; a⁻¹ = a², and a²·x·a evaluates to ax under
        // left-to-right composition.
        assert_eq!(g.conjugate(x, a), g.find("ax").unwrap());
    }

    #[test]
    fn commutators() {
        let g = s3();
        let (a, x) = (g.find("a").unwrap(), g.find("x").unwrap());
        assert_ne!(g.commutator(a, x), g.identity());
        for u in g.elements() {
            assert_eq!(g.commutator(u, u), g.identity());
        }
        let z5 = FiniteGroup::cyclic(5);
        for u in z5.elements() {
            for v in z5.elements() {
                assert_eq!(z5.commutator(u, v), 0);
            }
        }
    }

    #[test]
    fn normal_subgroups_of_s3() {
        let g = s3();
        let a3 = vec![0, 1, 2];
        assert!(is_normal_subgroup(&g, &a3));
        assert!(is_normal_subgroup(&g, &[0, 1, 2, 3, 4, 5]));
        assert!(is_normal_subgroup(&g, &[0]));
        let x = g.find("x").unwrap();
        assert!(!is_normal_subgroup(&g, &[0, x]));
        assert!(!is_normal_subgroup(&g, &[0, 1]));
        let normals: Vec<Vec<usize>> = g
            .normal_subgroups()
            .iter()
            .map(|s| s.members().to_vec())
            .collect();
        assert_eq!(normals, vec![vec![0], vec![0, 1, 2], vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(g.subgroups().len(), 6);
    }

    #[test]
    fn semidirect_s3_s3() {
        let g = s3();
        let sd = FiniteGroup::semidirect_right_conj(&g, &Subgroup::full(&g)).unwrap();
        assert_eq!(sd.order(), 36);
        assert!(verify_group_axioms(&sd.table_rows(), sd.identity()).unwrap());
        let e = sd.identity();
        for u in sd.elements() {
            assert_eq!(sd.mul(e, u), u);
        }
        // (a,x)(a,x) = (a², x^a x)
        let (a, x) = (g.find("a").unwrap(), g.find("x").unwrap());
        let ax = a * 6 + x;
        let sq = sd.mul(ax, ax);
        let expect_n = g.mul(g.conjugate(x, a), x);
        assert_eq!(sq, g.mul(a, a) * 6 + expect_n);
        assert_eq!(sd.label(sq), "(a²,a)");
    }

    #[test]
    fn semidirect_rejects_non_normal() {
        let g = s3();
        let h = Subgroup::new(&g, &[0, 3]).unwrap();
        assert!(matches!(
            FiniteGroup::semidirect_right_conj(&g, &h),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn semidirect_with_trivial_normal_is_g() {
        let g = s3();
        let sd = FiniteGroup::semidirect_right_conj(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(sd.table_rows(), g.table_rows());
    }

    #[test]
    fn semidirect_abelian_is_direct_product() {
        for n in 1..6 {
            let z = FiniteGroup::cyclic(n);
            let sd = FiniteGroup::semidirect_right_conj(&z, &Subgroup::full(&z)).unwrap();
            let dp = FiniteGroup::direct_product(&z, &z).unwrap();
            assert_eq!(sd.table_rows(), dp.table_rows());
        }
    }

    #[test]
    fn conjugation_is_bijective_and_invertible() {
        let g = s3();
        for h in g.elements() {
            let mut image: Vec<usize> = g.elements().map(|u| g.conjugate(u, h)).collect();
            for u in g.elements() {
                assert_eq!(g.conjugate(g.conjugate(u, h), g.inv(h)), u);
            }
            image.sort_unstable();
            assert_eq!(image, g.elements().collect::<Vec<_>>());
        }
    }
}
