//! Complete subgroup lattices.
//!
//! Every subgroup is a join of cyclic subgroups, so the lattice is the
//! closure of {1} under "join with a cyclic subgroup". Subgroups are
//! deduplicated by membership set and ordered by (order, member list).

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::arith;
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::{Group, SubgroupSet};

pub const DEFAULT_SUBGROUP_BUDGET: usize = 100_000;

pub struct SubgroupLattice {
    group: Arc<Group>,
    subgroups: Vec<SubgroupSet>,
    index: HashMap<Bits, usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    hasse: OnceLock<Vec<(usize, usize)>>,
}

impl std::fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgroupLattice")
            .field("group", &self.group.label())
            .field("subgroups", &self.subgroups.len())
            .field("classes", &self.classes.len())
            .finish()
    }
}

/// All subgroups of `g`, with the default subgroup budget.
pub fn all_subgroups(g: Arc<Group>) -> Result<SubgroupLattice> {
    SubgroupLattice::build(g, DEFAULT_SUBGROUP_BUDGET)
}

impl SubgroupLattice {
    pub fn build(g: Arc<Group>, budget: usize) -> Result<SubgroupLattice> {
        let n = g.order();
        let over = || Error::CapExceeded {
            what: "subgroup count",
            cap: budget,
        };

        let mut subgroups: Vec<SubgroupSet> = vec![g.trivial_subgroup()];
        let mut index: HashMap<Bits, usize> = HashMap::new();
        index.insert(subgroups[0].members().clone(), 0);

        // One generator per distinct cyclic subgroup.
        let mut cyclic_gens = Vec::new();
        for x in 1..n {
            let c = g.cyclic_subgroup(x);
            if !index.contains_key(c.members()) {
                if subgroups.len() >= budget {
                    return Err(over());
                }
                index.insert(c.members().clone(), subgroups.len());
                subgroups.push(c);
                cyclic_gens.push(x);
            }
        }

        let mut i = 1;
        while i < subgroups.len() {
            for &c in &cyclic_gens {
                if subgroups[i].contains(c) {
                    continue;
                }
                let k = g.extend(&subgroups[i], c);
                if !index.contains_key(k.members()) {
                    if subgroups.len() >= budget {
                        return Err(over());
                    }
                    index.insert(k.members().clone(), subgroups.len());
                    subgroups.push(k);
                }
            }
            i += 1;
        }

        subgroups.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.members().lex_cmp(b.members()))
        });
        let index: HashMap<Bits, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.members().clone(), i))
            .collect();

        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        for start in 0..subgroups.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut orbit = vec![start];
            class_of[start] = cid;
            let mut j = 0;
            while j < orbit.len() {
                let h = &subgroups[orbit[j]];
                j += 1;
                for &x in g.generators() {
                    let conj = Bits::from_indices(n, h.members().iter().map(|y| g.conjugate(x, y)));
                    let k = index[&conj];
                    if class_of[k] == usize::MAX {
                        class_of[k] = cid;
                        orbit.push(k);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }

        Ok(SubgroupLattice {
            group: g,
            subgroups,
            index,
            classes,
            class_of,
            hasse: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[SubgroupSet] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &SubgroupSet {
        &self.subgroups[i]
    }

    /// Position of a subgroup of the parent in the lattice order.
    pub fn index_of(&self, h: &SubgroupSet) -> Option<usize> {
        if h.parent_id() != self.group.id() {
            return None;
        }
        self.index.get(h.members()).copied()
    }

    pub fn index_of_members(&self, members: &Bits) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Conjugacy classes of subgroups, each sorted, listed by representative.
    /// The representative of a class is its first (least-ordered) member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn is_representative(&self, i: usize) -> bool {
        self.classes[self.class_of[i]][0] == i
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.classes[self.class_of[i]].len() == 1
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let m = self.subgroups[i]
            .members()
            .intersection(self.subgroups[j].members());
        self.index[&m]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        let (a, b) = (&self.subgroups[i], &self.subgroups[j]);
        if b.is_subgroup_of(a) {
            return i;
        }
        if a.is_subgroup_of(b) {
            return j;
        }
        let k = b
            .gens()
            .iter()
            .fold(a.clone(), |acc, &x| self.group.extend(&acc, x));
        self.index[k.members()]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.subgroups[i].is_subgroup_of(&self.subgroups[j])
    }

    /// Covering pairs (H, K): H < K with nothing strictly between.
    pub fn hasse(&self) -> &[(usize, usize)] {
        self.hasse.get_or_init(|| {
            let mut edges = Vec::new();
            for k in 0..self.subgroups.len() {
                let big = &self.subgroups[k];
                let mut below: Vec<usize> = (0..k)
                    .filter(|&h| {
                        let s = &self.subgroups[h];
                        s.order() < big.order()
                            && big.order().is_multiple_of(s.order())
                            && s.is_subgroup_of(big)
                    })
                    .collect();
                below.sort_by_key(|&h| std::cmp::Reverse(self.subgroups[h].order()));
                let mut covers: Vec<usize> = Vec::new();
                for h in below {
                    if !covers.iter().any(|&c| self.leq(h, c)) {
                        covers.push(h);
                    }
                }
                covers.sort_unstable();
                edges.extend(covers.into_iter().map(|h| (h, k)));
            }
            edges
        })
    }

    /// All Sylow p-subgroups, in lattice order.
    pub fn sylow_subgroups(&self, p: u64) -> Result<Vec<usize>> {
        let n = self.group.order() as u64;
        if !arith::is_prime(p) || !n.is_multiple_of(p) {
            return Err(Error::NoSuchPrime(p));
        }
        let mut pa = 1;
        while n.is_multiple_of(pa * p) {
            pa *= p;
        }
        Ok((0..self.subgroups.len())
            .filter(|&i| self.subgroups[i].order() as u64 == pa)
            .collect())
    }

    /// The first Sylow p-subgroup in lattice order.
    pub fn sylow_subgroup(&self, p: u64) -> Result<usize> {
        Ok(self.sylow_subgroups(p)?[0])
    }

    /// Nilpotent iff every Sylow subgroup is normal.
    pub fn is_nilpotent(&self) -> bool {
        arith::factorize(self.group.order() as u64)
            .into_iter()
            .all(|(p, _)| self.sylow_subgroups(p).is_ok_and(|s| s.len() == 1))
    }
}
