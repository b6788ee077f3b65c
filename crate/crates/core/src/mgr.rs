//! Multiple group racks: a disjoint union of finite groups `X = ⊔ G_λ`
//! with a global operation `∗`.
//!
//! Elements are indexed globally; element `i` of component `λ` has index
//! `offset_λ + i`, components laid out in order.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_normal_subgroup, FiniteGroup, Subgroup};
use crate::rack::GFamily;

/// A witness that some axiom fails, naming the offending elements by
/// global index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum MgrViolation {
    /// `x ∗ e_λ ≠ x`
    IdentityAction { x: usize, component: usize },
    /// `x ∗ (ab) ≠ (x ∗ a) ∗ b`
    RightAction { x: usize, a: usize, b: usize },
    /// `(x ∗ y) ∗ z ≠ (x ∗ z) ∗ (y ∗ z)`
    SelfDistributivity { x: usize, y: usize, z: usize },
    /// `a ∗ x` and `b ∗ x` land in different components for `a, b ∈ G_λ`.
    ComponentIncoherent { component: usize, x: usize, a: usize, b: usize },
    /// `(ab) ∗ x ≠ (a ∗ x)(b ∗ x)`
    Multiplicativity { x: usize, a: usize, b: usize },
    /// A component product table is not a group.
    ComponentNotAGroup { component: usize },
}

impl fmt::Display for MgrViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MgrViolation::IdentityAction { x, component } => {
                write!(f, "identity action: x ∗ e_λ ≠ x for x={x}, λ={component}")
            }
            MgrViolation::RightAction { x, a, b } => {
                write!(f, "right action: x ∗ (ab) ≠ (x ∗ a) ∗ b for x={x}, a={a}, b={b}")
            }
            MgrViolation::SelfDistributivity { x, y, z } => {
                write!(f, "self-distributivity: (x ∗ y) ∗ z ≠ (x ∗ z) ∗ (y ∗ z) for x={x}, y={y}, z={z}")
            }
            MgrViolation::ComponentIncoherent { component, x, a, b } => write!(
                f,
                "component coherence: a ∗ x and b ∗ x in different components for λ={component}, x={x}, a={a}, b={b}"
            ),
            MgrViolation::Multiplicativity { x, a, b } => {
                write!(f, "multiplicativity: (ab) ∗ x ≠ (a ∗ x)(b ∗ x) for x={x}, a={a}, b={b}")
            }
            MgrViolation::ComponentNotAGroup { component } => {
                write!(f, "component {component} is not a group")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MgrReport {
    pub ok: bool,
    pub first_violation: Option<MgrViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultipleGroupRack {
    components: Vec<FiniteGroup>,
    offsets: Vec<usize>,
    component_of: Vec<u32>,
    inverse: Vec<u32>,
    star: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl MultipleGroupRack {
    /// Assembles components and a global `∗` table after shape checks.
    /// The axioms are not checked; call [`MultipleGroupRack::verify_mgr_axioms`].
    pub fn from_parts(
        components: Vec<FiniteGroup>,
        star: &[Vec<usize>],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n: usize = components.iter().map(|g| g.order()).sum();
        if components.is_empty() {
            return Err(Error::Format("MGR has no components".into()));
        }
        if star.len() != n || star.iter().any(|r| r.len() != n) {
            return Err(Error::Format(format!(
                "star table must be {n}×{n} for {n} elements"
            )));
        }
        if star.iter().flatten().any(|&v| v >= n) {
            return Err(Error::Format("star table entry out of range".into()));
        }
        let flat = star.iter().flatten().map(|&v| v as u32).collect();
        Self::assemble(components, flat, labels)
    }

    fn assemble(
        components: Vec<FiniteGroup>,
        star: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut offsets = Vec::with_capacity(components.len());
        let mut component_of = Vec::new();
        let mut inverse = Vec::new();
        let mut off = 0;
        for (l, g) in components.iter().enumerate() {
            offsets.push(off);
            for i in g.elements() {
                component_of.push(l as u32);
                inverse.push((off + g.inv(i)) as u32);
            }
            off += g.order();
        }
        if let Some(l) = &labels {
            if l.len() != off {
                return Err(Error::Format(format!(
                    "{} labels for {off} elements",
                    l.len()
                )));
            }
        }
        Ok(MultipleGroupRack {
            components,
            offsets,
            component_of,
            inverse,
            star,
            labels,
        })
    }

    /// A single group with the trivial action `x ∗ y = x`.
    pub fn trivial_action(group: FiniteGroup) -> Self {
        let n = group.order();
        let star = (0..n).flat_map(|x| std::iter::repeat_n(x as u32, n)).collect();
        Self::assemble(vec![group], star, None).expect("consistent")
    }

    /// A single group with conjugation `a ∗ b = b⁻¹ab`.
    pub fn conjugation(group: FiniteGroup) -> Self {
        let n = group.order();
        let star = (0..n)
            .flat_map(|a| (0..n).map(|b| group.conjugate(a, b) as u32).collect::<Vec<_>>())
            .collect();
        Self::assemble(vec![group], star, None).expect("consistent")
    }

    /// The associated MGR `X × G` of a G-family:
    /// `(x, g) ∗ (y, h) = (x ∗^h y, h⁻¹gh)` and `(x, g)(x, h) = (x, gh)`.
    ///
    /// `(x, g)` has global index `x·|G| + g`.
    pub fn associated(family: &GFamily) -> Result<Self> {
        if let Some(v) = family.first_violation() {
            return Err(Error::NotAGFamily(v));
        }
        let group = family.group();
        let (nx, ng) = (family.carrier(), group.order());
        let n = nx * ng;
        let mut star = Vec::with_capacity(n * n);
        for u in 0..n {
            let (x, g) = (u / ng, u % ng);
            for v in 0..n {
                let (y, h) = (v / ng, v % ng);
                let z = family.op(h, x, y);
                star.push((z * ng + group.conjugate(g, h)) as u32);
            }
        }
        let labels = (0..n)
            .map(|u| format!("({},{})", u / ng, group.label(u % ng)))
            .collect();
        Self::assemble(vec![group.clone(); nx], star, Some(labels))
    }

    /// The MGR `X × (G ⋉ N)` with
    /// `(x,(g₁,n₁)) ∗ (y,(g₂,n₂)) = (x ∗^{g₂n₂} y, (g₁^{g₂n₂}, n₁^{g₂n₂}))`
    /// and component product taken in `G ⋉ N`.
    ///
    /// `(x, (g, n))` has global index `x·|G||N| + g·|N| + rank(n)`, with
    /// `rank` the position of `n` among the sorted members of `normal`.
    pub fn semidirect(family: &GFamily, normal: &Subgroup) -> Result<Self> {
        if let Some(v) = family.first_violation() {
            return Err(Error::NotAGFamily(v));
        }
        let group = family.group();
        if !is_normal_subgroup(group, normal.members()) {
            return Err(Error::NotNormal);
        }
        let product = FiniteGroup::semidirect_right_conj(group, normal)?;
        let members = normal.members();
        let nn = members.len();
        let mut rank = vec![usize::MAX; group.order()];
        for (i, &m) in members.iter().enumerate() {
            rank[m] = i;
        }
        let (nx, nh) = (family.carrier(), product.order());
        let n = nx * nh;
        let mut star = Vec::with_capacity(n * n);
        for u in 0..n {
            let (x, g1, n1) = (u / nh, (u % nh) / nn, members[u % nn]);
            for v in 0..n {
                let (y, g2, n2) = (v / nh, (v % nh) / nn, members[v % nn]);
                let k = group.mul(g2, n2);
                let z = family.op(k, x, y);
                let g = group.conjugate(g1, k);
                let m = group.conjugate(n1, k);
                star.push((z * nh + g * nn + rank[m]) as u32);
            }
        }
        let labels = (0..n)
            .map(|u| format!("({},{})", u / nh, product.label(u % nh)))
            .collect();
        let mgr = Self::assemble(vec![product; nx], star, Some(labels))?;
        Ok(mgr)
    }

    /// The abelian extension `X × A` twisted by `cocycle`:
    /// `(x, a) ∗ (y, b) = (x ∗ y, a + f⟨x⟩⟨y⟩)` and
    /// `(x₁, a)(x₂, b) = (x₁x₂, a + b + f⟨x₁, x₂⟩)`.
    ///
    /// `(u, a)` has global index `u·|A| + a`. The result is checked against
    /// every axiom; a failing instance is returned as
    /// [`Error::CocycleInvalid`].
    pub fn abelian_extension(&self, cocycle: &CocycleData) -> Result<Self> {
        cocycle.check_shape(self)?;
        let a = &cocycle.target;
        let na = a.order();
        let n = self.len() * na;
        let mut components = Vec::with_capacity(self.components.len());
        for (l, g) in self.components.iter().enumerate() {
            let ng = g.order();
            let m = ng * na;
            let rows: Vec<Vec<usize>> = (0..m)
                .map(|p| {
                    let (i1, a1) = (p / na, p % na);
                    (0..m)
                        .map(|q| {
                            let (i2, a2) = (q / na, q % na);
                            let f = cocycle.f_group[l][i1 * ng + i2];
                            g.mul(i1, i2) * na + a.mul(a.mul(a1, a2), f)
                        })
                        .collect()
                })
                .collect();
            let identity = (0..m).find(|&p| rows[p].iter().enumerate().all(|(q, &v)| v == q));
            let group = identity
                .and_then(|e| FiniteGroup::from_table(rows, e, None).ok())
                .ok_or(Error::CocycleInvalid(MgrViolation::ComponentNotAGroup {
                    component: l,
                }))?;
            components.push(group);
        }
        let mut star = Vec::with_capacity(n * n);
        for p in 0..n {
            let (x, a1) = (p / na, p % na);
            for q in 0..n {
                let y = q / na;
                let f = cocycle.f_rack[x * self.len() + y];
                star.push((self.star(x, y) * na + a.mul(a1, f)) as u32);
            }
        }
        let labels = (0..n)
            .map(|p| format!("({},{})", self.label(p / na), a.label(p % na)))
            .collect();
        let ext = Self::assemble(components, star, Some(labels))?;
        match ext.verify_mgr_axioms().first_violation {
            None => Ok(ext),
            Some(v) => Err(Error::CocycleInvalid(v)),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.component_of.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.component_of.is_empty()
    }

    pub fn components(&self) -> &[FiniteGroup] {
        &self.components
    }

    #[inline]
    pub fn component_of(&self, u: usize) -> usize {
        self.component_of[u] as usize
    }

    pub fn offset(&self, component: usize) -> usize {
        self.offsets[component]
    }

    pub fn local(&self, u: usize) -> usize {
        u - self.offsets[self.component_of(u)]
    }

    pub fn component_range(&self, component: usize) -> std::ops::Range<usize> {
        let off = self.offsets[component];
        off..off + self.components[component].order()
    }

    /// Global index of `e_λ`.
    pub fn identity(&self, component: usize) -> usize {
        self.offsets[component] + self.components[component].identity()
    }

    pub fn is_identity(&self, u: usize) -> bool {
        self.identity(self.component_of(u)) == u
    }

    #[inline]
    pub fn star(&self, u: usize, v: usize) -> usize {
        self.star[u * self.len() + v] as usize
    }

    /// The unique `x` with `x ∗ y = z`, computed as `z ∗ y⁻¹`.
    #[inline]
    pub fn star_inverse(&self, z: usize, y: usize) -> usize {
        self.star(z, self.inv(y))
    }

    #[inline]
    pub fn inv(&self, u: usize) -> usize {
        self.inverse[u] as usize
    }

    /// Product of two elements, `None` if they lie in different components.
    #[inline]
    pub fn mul(&self, u: usize, v: usize) -> Option<usize> {
        let l = self.component_of(u);
        if l != self.component_of(v) {
            return None;
        }
        let off = self.offsets[l];
        Some(off + self.components[l].mul(u - off, v - off))
    }

    pub fn label(&self, u: usize) -> String {
        match &self.labels {
            Some(l) => l[u].clone(),
            None => format!("({},{})", self.component_of(u), self.local(u)),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn star_rows(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        self.star
            .chunks(n)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// Replaces one `∗` entry; used to build corrupted fixtures.
    pub fn with_star_entry(&self, u: usize, v: usize, value: usize) -> Self {
        let mut out = self.clone();
        let n = self.len();
        out.star[u * n + v] = value as u32;
        out
    }

    /// Exhaustive check of all three axioms, stopping at the first failure.
    pub fn verify_mgr_axioms(&self) -> MgrReport {
        let v = self.first_violation();
        MgrReport {
            ok: v.is_none(),
            first_violation: v,
        }
    }

    fn first_violation(&self) -> Option<MgrViolation> {
        let n = self.len();
        // right action
        for l in 0..self.components.len() {
            let e = self.identity(l);
            if let Some(x) = (0..n).find(|&x| self.star(x, e) != x) {
                return Some(MgrViolation::IdentityAction { x, component: l });
            }
            for a in self.component_range(l) {
                for b in self.component_range(l) {
                    let ab = self.mul(a, b).expect("same component");
                    for x in 0..n {
                        if self.star(x, ab) != self.star(self.star(x, a), b) {
                            return Some(MgrViolation::RightAction { x, a, b });
                        }
                    }
                }
            }
        }
        // self-distributivity
        for x in 0..n {
            for y in 0..n {
                let xy = self.star(x, y);
                for z in 0..n {
                    if self.star(xy, z) != self.star(self.star(x, z), self.star(y, z)) {
                        return Some(MgrViolation::SelfDistributivity { x, y, z });
                    }
                }
            }
        }
        // μ is fixed by e_λ ∗ x and must match for every a ∈ G_λ.
        for l in 0..self.components.len() {
            let e = self.identity(l);
            for x in 0..n {
                let mu = self.component_of(self.star(e, x));
                for a in self.component_range(l) {
                    if self.component_of(self.star(a, x)) != mu {
                        return Some(MgrViolation::ComponentIncoherent {
                            component: l,
                            x,
                            a: e,
                            b: a,
                        });
                    }
                }
                for a in self.component_range(l) {
                    let ax = self.star(a, x);
                    for b in self.component_range(l) {
                        let ab = self.mul(a, b).expect("same component");
                        let rhs = self.mul(ax, self.star(b, x)).expect("coherent");
                        if self.star(ab, x) != rhs {
                            return Some(MgrViolation::Multiplicativity { x, a, b });
                        }
                    }
                }
            }
        }
        None
    }

    /// First same-component pair with `a ∗ b ≠ b⁻¹ab`.
    pub fn mcq_violation(&self) -> Option<(usize, usize)> {
        for l in 0..self.components.len() {
            for a in self.component_range(l) {
                for b in self.component_range(l) {
                    let conj = self
                        .mul(self.mul(self.inv(b), a).expect("same"), b)
                        .expect("same");
                    if self.star(a, b) != conj {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    pub fn is_mcq(&self) -> bool {
        self.mcq_violation().is_none()
    }

    /// `S_y` is a bijection for every `y`.
    pub fn right_translations_bijective(&self) -> bool {
        let n = self.len();
        (0..n).all(|y| {
            let mut seen = vec![false; n];
            (0..n).all(|x| !std::mem::replace(&mut seen[self.star(x, y)], true))
        })
    }
}

/// Checks `f(x ∗ y) = f(x) ∗ f(y)` for all pairs and that every component
/// maps multiplicatively into a single target component.
pub fn is_mgr_homomorphism(
    map: &[usize],
    source: &MultipleGroupRack,
    target: &MultipleGroupRack,
) -> bool {
    let n = source.len();
    if map.len() != n || map.iter().any(|&v| v >= target.len()) {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            if map[source.star(x, y)] != target.star(map[x], map[y]) {
                return false;
            }
        }
    }
    for l in 0..source.components().len() {
        let mu = target.component_of(map[source.identity(l)]);
        for a in source.component_range(l) {
            if target.component_of(map[a]) != mu {
                return false;
            }
            for b in source.component_range(l) {
                let ab = source.mul(a, b).expect("same component");
                if Some(map[ab]) != target.mul(map[a], map[b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// `(x, (g, n)) ↦ (x, g)` from the semidirect MGR of `family` over
/// `normal` to its associated MGR, as a global index map.
pub fn semidirect_projection(family: &GFamily, normal: &Subgroup) -> Vec<usize> {
    let ng = family.group().order();
    let nn = normal.len();
    let nh = ng * nn;
    (0..family.carrier() * nh)
        .map(|u| (u / nh) * ng + (u % nh) / nn)
        .collect()
}

/// `(u, a) ↦ u` from an abelian extension by a group of order `target_order`.
pub fn extension_projection(base: &MultipleGroupRack, target_order: usize) -> Vec<usize> {
    (0..base.len() * target_order).map(|p| p / target_order).collect()
}

/// Values of a map `f : C₂(X) → A` on the generators: `f⟨x⟩⟨y⟩` for all
/// pairs and `f⟨x₁, x₂⟩` for pairs within each component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleData {
    target: FiniteGroup,
    // f_rack[x * |X| + y]
    f_rack: Vec<usize>,
    // f_group[λ][i₁ * |G_λ| + i₂], local indices
    f_group: Vec<Vec<usize>>,
}

impl CocycleData {
    pub fn new(
        target: FiniteGroup,
        f_rack: Vec<usize>,
        f_group: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if !target.is_commutative() {
            return Err(Error::Format("cocycle target group must be abelian".into()));
        }
        if f_rack.iter().chain(f_group.iter().flatten()).any(|&v| v >= target.order()) {
            return Err(Error::Format("cocycle value out of range".into()));
        }
        Ok(CocycleData {
            target,
            f_rack,
            f_group,
        })
    }

    pub fn zero(base: &MultipleGroupRack, target: FiniteGroup) -> Result<Self> {
        let e = target.identity();
        let n = base.len();
        let f_group = base
            .components()
            .iter()
            .map(|g| vec![e; g.order() * g.order()])
            .collect();
        Self::new(target, vec![e; n * n], f_group)
    }

    /// The coboundary of `theta : X → A`:
    /// `f⟨x⟩⟨y⟩ = θ(x ∗ y) − θ(x)` and `f⟨x₁,x₂⟩ = θ(x₁x₂) − θ(x₁) − θ(x₂)`.
    pub fn coboundary(base: &MultipleGroupRack, target: FiniteGroup, theta: &[usize]) -> Result<Self> {
        let n = base.len();
        if theta.len() != n {
            return Err(Error::Format("θ must be defined on every element".into()));
        }
        let a = &target;
        let sub = |p: usize, q: usize| a.mul(p, a.inv(q));
        let f_rack = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| sub(theta[base.star(x, y)], theta[x]))
            .collect();
        let f_group = (0..base.components().len())
            .map(|l| {
                let r = base.component_range(l);
                r.clone()
                    .flat_map(|u| r.clone().map(move |v| (u, v)))
                    .map(|(u, v)| {
                        let uv = base.mul(u, v).expect("same component");
                        sub(sub(theta[uv], theta[u]), theta[v])
                    })
                    .collect()
            })
            .collect();
        Self::new(target, f_rack, f_group)
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn is_zero(&self) -> bool {
        let e = self.target.identity();
        self.f_rack.iter().chain(self.f_group.iter().flatten()).all(|&v| v == e)
    }

    fn check_shape(&self, base: &MultipleGroupRack) -> Result<()> {
        let n = base.len();
        let ok = self.f_rack.len() == n * n
            && self.f_group.len() == base.components().len()
            && self
                .f_group
                .iter()
                .zip(base.components())
                .all(|(t, g)| t.len() == g.order() * g.order());
        if ok {
            Ok(())
        } else {
            Err(Error::Format("cocycle tables do not match the MGR shape".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rack::{enumerate_racks, Rack};

    fn s3() -> FiniteGroup {
        FiniteGroup::s3_presented()
    }

    fn flagship() -> (GFamily, MultipleGroupRack) {
        let f = GFamily::example_z3_s3();
        let m = MultipleGroupRack::semidirect(&f, &Subgroup::full(f.group())).unwrap();
        (f, m)
    }

    #[test]
    fn single_group_trivial_action() {
        for n in 1..5 {
            let m = MultipleGroupRack::trivial_action(FiniteGroup::cyclic(n));
            assert!(m.verify_mgr_axioms().ok);
        }
        let m = MultipleGroupRack::trivial_action(s3());
        assert!(m.verify_mgr_axioms().ok);
        assert!(!m.is_mcq());
    }

    #[test]
    fn conjugation_is_mcq() {
        let m = MultipleGroupRack::conjugation(s3());
        assert!(m.verify_mgr_axioms().ok);
        assert!(m.is_mcq());
    }

    #[test]
    fn associated_mgr_of_example() {
        let f = GFamily::example_z3_s3();
        let m = MultipleGroupRack::associated(&f).unwrap();
        assert_eq!(m.len(), 18);
        assert_eq!(m.components().len(), 3);
        assert!(m.verify_mgr_axioms().ok);
        // (0,a) ∗ (1,x) = (0 ∗^x 1, x⁻¹ax) = (2, a²)
        let (a0, x1) = (m.find("(0,a)").unwrap(), m.find("(1,x)").unwrap());
        assert_eq!(m.label(m.star(a0, x1)), "(2,a²)");
        for u in 0..m.len() {
            for l in 0..3 {
                assert_eq!(m.star(u, m.identity(l)), u);
            }
        }
        // Slices of Z3 dihedral family are quandles, so within a component
        // the action is plain conjugation.
        assert!(m.is_mcq());
    }

    #[test]
    fn associated_from_all_small_racks() {
        for n in 1..=4 {
            for r in enumerate_racks(n) {
                let f = GFamily::from_rack(&r).unwrap();
                let m = MultipleGroupRack::associated(&f).unwrap();
                let report = m.verify_mgr_axioms();
                assert!(report.ok, "{:?} {:?}", r.table_rows(), report);
                assert!(m.right_translations_bijective());
            }
        }
    }

    #[test]
    fn semidirect_over_every_normal_subgroup() {
        let f = GFamily::example_z3_s3();
        for nsub in f.group().normal_subgroups() {
            let m = MultipleGroupRack::semidirect(&f, &nsub).unwrap();
            assert_eq!(m.len(), 3 * 6 * nsub.len());
            assert!(m.verify_mgr_axioms().ok);
            assert!(m.right_translations_bijective());
        }
    }

    #[test]
    fn semidirect_rejects_non_normal() {
        let f = GFamily::example_z3_s3();
        let h = Subgroup::new(f.group(), &[0, 3]).unwrap();
        assert!(matches!(
            MultipleGroupRack::semidirect(&f, &h),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn semidirect_flagship_example_values() {
        let (_, m) = flagship();
        assert_eq!(m.len(), 108);
        let u = m.find("(0,(a,x))").unwrap();
        let uu = m.star(u, u);
        assert_ne!(uu, u);
        // Recomputed under left-to-right composition: (0,(a², a²x)).
        assert_eq!(m.label(uu), "(0,(a²,a²x))");
        assert!(!m.is_mcq());
        // identity acts trivially
        for v in 0..m.len() {
            assert_eq!(m.star(v, m.identity(m.component_of(v))), v);
            assert_eq!(m.star(v, m.identity(0)), v);
        }
    }

    #[test]
    fn star_inverse_round_trips() {
        let (_, m) = flagship();
        for x in 0..m.len() {
            for y in 0..m.len() {
                assert_eq!(m.star_inverse(m.star(x, y), y), x);
            }
            assert_eq!(m.star_inverse(x, m.identity(0)), x);
        }
    }

    #[test]
    fn projection_not_homomorphism_for_nontrivial_action() {
        let f = GFamily::example_z3_s3();
        let full = Subgroup::full(f.group());
        let sd = MultipleGroupRack::semidirect(&f, &full).unwrap();
        let assoc = MultipleGroupRack::associated(&f).unwrap();
        let p = semidirect_projection(&f, &full);
        assert!(!is_mgr_homomorphism(&p, &sd, &assoc));

        let triv = Subgroup::trivial(f.group());
        let sd1 = MultipleGroupRack::semidirect(&f, &triv).unwrap();
        let p1 = semidirect_projection(&f, &triv);
        assert!(is_mgr_homomorphism(&p1, &sd1, &assoc));
        let mut img = p1.clone();
        img.sort_unstable();
        assert_eq!(img, (0..assoc.len()).collect::<Vec<_>>());
        assert_eq!(sd1.star_rows(), assoc.star_rows());
    }

    #[test]
    fn identity_map_is_homomorphism() {
        let (_, m) = flagship();
        let id: Vec<usize> = (0..m.len()).collect();
        assert!(is_mgr_homomorphism(&id, &m, &m));
    }

    #[test]
    fn corrupted_star_reports_violation() {
        let f = GFamily::example_z3_s3();
        let m = MultipleGroupRack::associated(&f).unwrap();
        let bad = m.with_star_entry(1, 2, 5);
        let r = bad.verify_mgr_axioms();
        assert!(!r.ok);
        assert!(r.first_violation.is_some());
        let bad_e = m.with_star_entry(4, m.identity(1), 3);
        assert_eq!(
            bad_e.verify_mgr_axioms().first_violation,
            Some(MgrViolation::IdentityAction { x: 4, component: 1 })
        );
    }

    fn two_component_base() -> MultipleGroupRack {
        let z2 = FiniteGroup::cyclic(2);
        let g = GFamily::new(2, z2, &[Rack::trivial(2).table_rows(), Rack::trivial(2).table_rows()]).unwrap();
        MultipleGroupRack::associated(&g).unwrap()
    }

    #[test]
    fn zero_cocycle_gives_direct_product() {
        let base = two_component_base();
        let c = CocycleData::zero(&base, FiniteGroup::cyclic(2)).unwrap();
        assert!(c.is_zero());
        let ext = base.abelian_extension(&c).unwrap();
        assert_eq!(ext.len(), 8);
        assert!(ext.verify_mgr_axioms().ok);
        let p = extension_projection(&base, 2);
        assert!(is_mgr_homomorphism(&p, &ext, &base));
    }

    #[test]
    fn coboundary_is_valid() {
        let base = two_component_base();
        let theta = [0, 1, 1, 0];
        let c = CocycleData::coboundary(&base, FiniteGroup::cyclic(2), &theta).unwrap();
        assert!(!c.is_zero());
        let ext = base.abelian_extension(&c).unwrap();
        assert!(is_mgr_homomorphism(&extension_projection(&base, 2), &ext, &base));
    }

    #[test]
    fn invalid_cocycle_is_reported() {
        let base = two_component_base();
        let z2 = FiniteGroup::cyclic(2);
        let mut f_rack = vec![0; 16];
        f_rack[1] = 1; // f⟨0⟩⟨1⟩ = 1 only
        let c = CocycleData::new(z2, f_rack, vec![vec![0; 4], vec![0; 4]]).unwrap();
        assert!(matches!(base.abelian_extension(&c), Err(Error::CocycleInvalid(_))));
    }

    #[test]
    fn non_abelian_target_rejected() {
        assert!(CocycleData::new(s3(), vec![], vec![]).is_err());
    }
}
