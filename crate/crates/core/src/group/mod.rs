//! Concrete finite groups on indexed elements.
//!
//! Every group stores its elements as indices `0..order` with the identity
//! at index 0. Products come from a dense table for small groups and from a
//! construction-supplied rule otherwise.

mod construct;
mod file;
mod iso;
mod perm;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};

pub use construct::{
    abelian_from_invariants, alternating4, cyclic, dicyclic, dihedral, direct_product, heisenberg,
    metacyclic, modular_m, symmetric,
};
pub use file::{group_file_text, parse_group_file, GroupFile};
pub use iso::{
    automorphism_moving, find_isomorphism, is_isomorphic, IsoOutcome, DEFAULT_ISO_BUDGET,
};
pub use perm::{group_from_generators, Permutation};

/// Groups up to this order keep a full multiplication table.
pub const TABLE_LIMIT: usize = 512;
pub const DEFAULT_ELEMENT_CAP: usize = 2000;

/// Element cap, overridable through `CDKIT_ELEMENT_CAP`.
pub fn element_cap() -> usize {
    std::env::var("CDKIT_ELEMENT_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n: &usize| n >= 1)
        .unwrap_or(DEFAULT_ELEMENT_CAP)
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

type Rule = Arc<dyn Fn(usize, usize) -> usize + Send + Sync>;

#[derive(Clone)]
enum Product {
    Table(Arc<[u32]>),
    Rule(Rule),
}

/// How far the group axioms were checked for this group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    /// Built from a realization that is a group by construction.
    Construction,
    /// Every triple checked.
    Exhaustive,
    /// Associativity spot-checked on random triples only.
    Partial,
}

#[derive(Clone, Debug, Serialize)]
pub struct Construction {
    pub source: String,
    pub verification: Verification,
}

/// Per-element data that automorphisms preserve.
#[derive(Debug)]
pub struct ElementProfile {
    pub centralizer_sizes: Vec<usize>,
    pub square_roots: Vec<usize>,
}

impl ElementProfile {
    /// Invariant key of element `x`: (order, |C(x)|, number of square roots).
    pub fn key(&self, g: &Group, x: usize) -> (usize, usize, usize) {
        (
            g.element_order(x),
            self.centralizer_sizes[x],
            self.square_roots[x],
        )
    }
}

#[derive(Clone)]
pub struct Group {
    id: u64,
    order: usize,
    product: Product,
    inverse: Arc<[u32]>,
    orders: Arc<[u32]>,
    generators: Vec<usize>,
    named: Vec<(String, usize)>,
    label: String,
    construction: Construction,
    profile: Arc<OnceLock<ElementProfile>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl Group {
    /// Builds a group from a product rule. The rule must realize a group with
    /// identity 0; `generators` may be empty, in which case a generating set
    /// is chosen greedily.
    pub(crate) fn from_rule(
        order: usize,
        rule: impl Fn(usize, usize) -> usize + Send + Sync + 'static,
        label: impl Into<String>,
        construction: Construction,
        generators: Vec<usize>,
        named: Vec<(String, usize)>,
    ) -> Result<Group> {
        let cap = element_cap();
        if order > cap {
            return Err(Error::CapExceeded {
                what: "group order",
                cap,
            });
        }
        let product = if order <= TABLE_LIMIT {
            let mut t = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    t.push(rule(a, b) as u32);
                }
            }
            Product::Table(t.into())
        } else {
            Product::Rule(Arc::new(rule))
        };
        Ok(Self::assemble(
            order,
            product,
            label.into(),
            construction,
            generators,
            named,
        ))
    }

    pub(crate) fn from_table(
        order: usize,
        table: Vec<u32>,
        label: impl Into<String>,
        construction: Construction,
    ) -> Group {
        Self::assemble(
            order,
            Product::Table(table.into()),
            label.into(),
            construction,
            Vec::new(),
            Vec::new(),
        )
    }

    fn assemble(
        order: usize,
        product: Product,
        label: String,
        construction: Construction,
        generators: Vec<usize>,
        named: Vec<(String, usize)>,
    ) -> Group {
        let mut g = Group {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            order,
            product,
            inverse: Arc::from(Vec::new()),
            orders: Arc::from(Vec::new()),
            generators: Vec::new(),
            named,
            label,
            construction,
            profile: Arc::new(OnceLock::new()),
        };
        let mut inverse = vec![0u32; order];
        let mut orders = vec![1u32; order];
        for x in 1..order {
            let mut prev = x;
            let mut cur = x;
            let mut k = 1;
            while cur != 0 {
                prev = cur;
                cur = g.mul(cur, x);
                k += 1;
            }
            orders[x] = k as u32;
            inverse[x] = prev as u32;
        }
        g.inverse = inverse.into();
        g.orders = orders.into();
        let mut gens: Vec<usize> = generators.into_iter().filter(|&x| x != 0).collect();
        gens.dedup();
        g.generators = if gens.is_empty() && order > 1 {
            g.greedy_generators(&Bits::full(order))
        } else {
            gens
        };
        g
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// Generating set used for conjugation orbits and closure.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Element registered under a presentation name such as `"a"` or `"b"`.
    pub fn named(&self, name: &str) -> Option<usize> {
        self.named.iter().find(|(n, _)| n == name).map(|&(_, x)| x)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.product {
            Product::Table(t) => t[a * self.order + b] as usize,
            Product::Rule(r) => r(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let k = k % self.element_order(a);
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// x g x^-1
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    #[inline]
    pub fn element_order(&self, x: usize) -> usize {
        self.orders[x] as usize
    }

    /// Sorted multiset of element orders.
    pub fn element_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|x| self.element_order(x)).collect();
        v.sort_unstable();
        v
    }

    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for x in 0..self.order {
            *h.entry(self.element_order(x)).or_insert(0) += 1;
        }
        h
    }

    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|x| self.element_order(x))
            .fold(1, crate::arith::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    pub fn profile(&self) -> &ElementProfile {
        self.profile.get_or_init(|| {
            let n = self.order;
            let centralizer_sizes: Vec<usize> = (0..n)
                .map(|x| (0..n).filter(|&y| self.commute(x, y)).count())
                .collect();
            let mut square_roots = vec![0usize; n];
            for y in 0..n {
                square_roots[self.mul(y, y)] += 1;
            }
            ElementProfile {
                centralizer_sizes,
                square_roots,
            }
        })
    }

    /// Sizes of the conjugacy classes of elements, sorted.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut seen = Bits::new(self.order);
        let mut sizes = Vec::new();
        for x in 0..self.order {
            if seen.contains(x) {
                continue;
            }
            let orbit = self.orbit(x, |g, y| self.conjugate(g, y));
            for &y in &orbit {
                seen.insert(y);
            }
            sizes.push(orbit.len());
        }
        sizes.sort_unstable();
        sizes
    }

    fn orbit(&self, x: usize, act: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let mut seen = Bits::new(self.order);
        seen.insert(x);
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            let y = out[i];
            i += 1;
            for &g in &self.generators {
                let z = act(g, y);
                if seen.insert(z) {
                    out.push(z);
                }
            }
        }
        out
    }

    /// Exhaustive check of closure, identity, inverses and associativity.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::NotAGroup {
                    axiom: crate::error::Axiom::Identity,
                    witness: vec![a],
                });
            }
            let ai = self.inv(a);
            if self.mul(a, ai) != 0 || self.mul(ai, a) != 0 {
                return Err(Error::NotAGroup {
                    axiom: crate::error::Axiom::Inverse,
                    witness: vec![a],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                if ab >= n {
                    return Err(Error::NotAGroup {
                        axiom: crate::error::Axiom::Closure,
                        witness: vec![a, b],
                    });
                }
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAGroup {
                            axiom: crate::error::Axiom::Associativity,
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Dense Cayley table, row-major.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    // ---- subgroups --------------------------------------------------------

    pub fn trivial_subgroup(&self) -> SubgroupSet {
        SubgroupSet {
            parent: self.id,
            members: Bits::from_indices(self.order, [0]),
            order: 1,
            gens: Vec::new(),
        }
    }

    pub fn whole(&self) -> SubgroupSet {
        SubgroupSet {
            parent: self.id,
            members: Bits::full(self.order),
            order: self.order,
            gens: self.generators.clone(),
        }
    }

    /// ⟨H, g⟩, built coset by coset.
    pub fn extend(&self, h: &SubgroupSet, g: usize) -> SubgroupSet {
        if h.contains(g) {
            return h.clone();
        }
        let base: Vec<usize> = h.members.iter().collect();
        let mut members = h.members.clone();
        let mut gens = h.gens.clone();
        gens.push(g);
        for &x in &base {
            members.insert(self.mul(x, g));
        }
        let mut reps = vec![g];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            i += 1;
            for &s in &gens {
                let e = self.mul(r, s);
                if !members.contains(e) {
                    for &x in &base {
                        members.insert(self.mul(x, e));
                    }
                    reps.push(e);
                }
            }
        }
        SubgroupSet {
            parent: self.id,
            order: h.order * (reps.len() + 1),
            members,
            gens,
        }
    }

    /// Subgroup generated by `elements`.
    pub fn generate(&self, elements: &[usize]) -> SubgroupSet {
        elements
            .iter()
            .fold(self.trivial_subgroup(), |h, &g| self.extend(&h, g))
    }

    pub fn cyclic_subgroup(&self, g: usize) -> SubgroupSet {
        self.extend(&self.trivial_subgroup(), g)
    }

    /// Wraps a membership set known to be a subgroup.
    pub(crate) fn subgroup_from_members(&self, members: Bits) -> SubgroupSet {
        let gens = self.greedy_generators(&members);
        SubgroupSet {
            parent: self.id,
            order: members.count(),
            members,
            gens,
        }
    }

    /// Checks closure and, if closed, returns the subgroup.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Result<SubgroupSet> {
        let members = Bits::from_indices(self.order, elements.iter().copied());
        let h = self.generate(elements);
        if h.members != members {
            return Err(Error::InvalidParameters(
                "element set is not closed under multiplication".into(),
            ));
        }
        Ok(h)
    }

    /// Generating set chosen by scanning `members` for elements of largest
    /// order first. Deterministic.
    pub(crate) fn greedy_generators(&self, members: &Bits) -> Vec<usize> {
        let mut cands: Vec<usize> = members.iter().filter(|&x| x != 0).collect();
        cands.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut h = self.trivial_subgroup();
        let target = members.count();
        for x in cands {
            if h.order == target {
                break;
            }
            if !h.contains(x) {
                h = self.extend(&h, x);
            }
        }
        h.gens
    }

    pub fn same_parent(&self, h: &SubgroupSet) -> Result<()> {
        if h.parent != self.id {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    /// Elements commuting with every listed element.
    pub fn centralizer_of(&self, elements: &[usize]) -> SubgroupSet {
        let members = Bits::from_indices(
            self.order,
            (0..self.order).filter(|&g| elements.iter().all(|&s| self.commute(g, s))),
        );
        self.subgroup_from_members(members)
    }

    /// C_G(H), tested against a generating set of H.
    pub fn centralizer(&self, h: &SubgroupSet) -> Result<SubgroupSet> {
        self.same_parent(h)?;
        Ok(self.centralizer_of(&h.gens))
    }

    pub fn center(&self) -> SubgroupSet {
        self.centralizer_of(&self.generators)
    }

    pub fn is_normal(&self, h: &SubgroupSet) -> Result<bool> {
        self.same_parent(h)?;
        Ok(self
            .generators
            .iter()
            .all(|&x| h.gens.iter().all(|&y| h.contains(self.conjugate(x, y)))))
    }

    /// True iff every Sylow subgroup is normal. A Sylow p-subgroup is normal
    /// exactly when the p-elements of G number |P|, so no lattice is needed.
    pub fn is_nilpotent(&self) -> bool {
        crate::arith::factorize(self.order as u64)
            .into_iter()
            .all(|(p, a)| {
                let pa = (p as usize).pow(a);
                let p_elements = (0..self.order)
                    .filter(|&x| crate::arith::is_power_of(self.element_order(x) as u64, p))
                    .count();
                p_elements == pa
            })
    }
}

/// A subgroup of a concrete parent group.
#[derive(Clone, Debug)]
pub struct SubgroupSet {
    parent: u64,
    members: Bits,
    order: usize,
    gens: Vec<usize>,
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for SubgroupSet {}

impl std::hash::Hash for SubgroupSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.members.hash(state);
    }
}

impl SubgroupSet {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn parent_id(&self) -> u64 {
        self.parent
    }

    pub fn members(&self) -> &Bits {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.iter().collect()
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self, g: &Group) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, &a)| self.gens[i + 1..].iter().all(|&b| g.commute(a, b)))
    }
}

/// H ∩ K.
pub fn meet(g: &Group, h: &SubgroupSet, k: &SubgroupSet) -> Result<SubgroupSet> {
    g.same_parent(h)?;
    g.same_parent(k)?;
    Ok(g.subgroup_from_members(h.members.intersection(&k.members)))
}

/// ⟨H, K⟩.
pub fn join(g: &Group, h: &SubgroupSet, k: &SubgroupSet) -> Result<SubgroupSet> {
    g.same_parent(h)?;
    g.same_parent(k)?;
    Ok(k.gens.iter().fold(h.clone(), |acc, &x| g.extend(&acc, x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extend_builds_s3() {
        let g = symmetric(3).unwrap();
        let h = g.generate(g.generators());
        assert_eq!(h.order(), 6);
        assert_eq!(h.members().count(), 6);
    }

    #[test]
    fn center_examples() {
        assert_eq!(cyclic(12).unwrap().center().order(), 12);
        let q8 = dicyclic(2).unwrap();
        let z = q8.center();
        assert_eq!(z.order(), 2);
        let a = q8.named("a").unwrap();
        assert!(z.contains(q8.pow(a, 2)));
        assert_eq!(symmetric(3).unwrap().center().order(), 1);
    }

    #[test]
    fn centralizer_examples() {
        let q8 = dicyclic(2).unwrap();
        let trivial = q8.trivial_subgroup();
        assert_eq!(q8.centralizer(&trivial).unwrap().order(), 8);
        let a = q8.cyclic_subgroup(q8.named("a").unwrap());
        assert_eq!(q8.centralizer(&a).unwrap(), a);

        let s3 = symmetric(3).unwrap();
        let a3 = s3.generate(
            &(0..6)
                .filter(|&x| s3.element_order(x) == 3)
                .collect::<Vec<_>>(),
        );
        assert_eq!(a3.order(), 3);
        assert_eq!(s3.centralizer(&a3).unwrap(), a3);
    }

    #[test]
    fn centralizer_rejects_foreign_subgroup() {
        let g = cyclic(4).unwrap();
        let h = cyclic(4).unwrap();
        assert!(matches!(
            g.centralizer(&h.whole()),
            Err(Error::ParentMismatch)
        ));
    }

    #[test]
    fn nilpotency() {
        assert!(cyclic(6).unwrap().is_nilpotent());
        assert!(dicyclic(4).unwrap().is_nilpotent());
        assert!(heisenberg(3).unwrap().is_nilpotent());
        assert!(!symmetric(3).unwrap().is_nilpotent());
        assert!(!alternating4().unwrap().is_nilpotent());
    }

    #[test]
    fn element_order_examples() {
        assert_eq!(cyclic(4).unwrap().element_orders(), vec![1, 2, 4, 4]);
        assert_eq!(
            dicyclic(2).unwrap().element_orders(),
            vec![1, 2, 4, 4, 4, 4, 4, 4]
        );
        assert_eq!(heisenberg(3).unwrap().exponent(), 3);
        assert_eq!(cyclic(12).unwrap().exponent(), 12);
        assert!(!dihedral(4).unwrap().is_abelian());
    }

    #[test]
    fn meet_and_join_in_q8() {
        let q8 = dicyclic(2).unwrap();
        let a = q8.named("a").unwrap();
        let b = q8.named("b").unwrap();
        let ga = q8.cyclic_subgroup(a);
        let gb = q8.cyclic_subgroup(b);
        let ga2 = q8.cyclic_subgroup(q8.pow(a, 2));
        let j = join(&q8, &ga2, &gb).unwrap();
        assert_eq!(j, gb);
        let m = meet(&q8, &ga, &gb).unwrap();
        assert_eq!(m, ga2);
        assert_eq!(join(&q8, &ga, &ga).unwrap(), ga);
        assert_eq!(meet(&q8, &ga, &ga).unwrap(), ga);
    }

    #[test]
    fn lagrange_and_double_centralizer() {
        let g = dihedral(6).unwrap();
        for x in 0..g.order() {
            let h = g.cyclic_subgroup(x);
            assert_eq!(g.order() % h.order(), 0);
            let c = g.centralizer(&h).unwrap();
            let cc = g.centralizer(&c).unwrap();
            assert!(h.is_subgroup_of(&cc));
            assert!(g.center().is_subgroup_of(&c));
        }
    }
}
