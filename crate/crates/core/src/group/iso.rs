//! Isomorphism and automorphism search by backtracking over generator images.
//!
//! A base b_1..b_k of the source group is fixed (each b_i outside the subgroup
//! generated by the earlier ones). Candidate images are restricted to elements
//! with the same (order, centralizer size, square-root count). After every
//! assignment the partial map is rebuilt over the generated subgroup by
//! walking its Cayley graph; any conflict or collision prunes the branch, as
//! does an element whose invariants change or a centralizer of the wrong size.

use std::collections::HashMap;

use super::{Group, SubgroupSet};
use crate::bits::Bits;

/// Default node limit for a single search.
pub const DEFAULT_ISO_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `map[x]` is the image of source element `x`.
    Isomorphic(Vec<usize>),
    NotIsomorphic,
    Unknown,
}

const UNSET: u32 = u32::MAX;

type Key = (usize, usize, usize);

struct HomSearch<'a> {
    src: &'a Group,
    dst: &'a Group,
    base: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    src_keys: Vec<Key>,
    dst_keys: Vec<Key>,
    /// |C(<b_1..b_i>)| in the source, per depth.
    src_centralizers: Vec<usize>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

impl<'a> HomSearch<'a> {
    fn new(
        src: &'a Group,
        dst: &'a Group,
        base: Vec<usize>,
        candidates: Vec<Vec<usize>>,
        budget: u64,
    ) -> Self {
        let keys = |g: &Group| {
            let p = g.profile();
            (0..g.order()).map(|x| p.key(g, x)).collect::<Vec<_>>()
        };
        let src_centralizers = (1..=base.len())
            .map(|d| centralizer_size(src, &base[..d]))
            .collect();
        HomSearch {
            src,
            dst,
            src_keys: keys(src),
            dst_keys: keys(dst),
            src_centralizers,
            base,
            candidates,
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self) -> Step {
        let mut images = Vec::with_capacity(self.base.len());
        self.descend(&mut images)
    }

    fn descend(&mut self, images: &mut Vec<usize>) -> Step {
        let depth = images.len();
        for ci in 0..self.candidates[depth].len() {
            let y = self.candidates[depth][ci];
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            images.push(y);
            let map = extend_map(self.src, self.dst, &self.base[..=depth], images)
                .filter(|map| self.plausible(map, depth, images));
            if let Some(map) = map {
                if depth + 1 == self.base.len() {
                    return Step::Found(map.into_iter().map(|v| v as usize).collect());
                }
                match self.descend(images) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            images.pop();
        }
        Step::Exhausted
    }

    fn plausible(&self, map: &[u32], depth: usize, images: &[usize]) -> bool {
        map.iter()
            .enumerate()
            .all(|(x, &y)| y == UNSET || self.src_keys[x] == self.dst_keys[y as usize])
            && centralizer_size(self.dst, images) == self.src_centralizers[depth]
    }
}

fn centralizer_size(g: &Group, xs: &[usize]) -> usize {
    (0..g.order())
        .filter(|&y| xs.iter().all(|&x| g.commute(x, y)))
        .count()
}

/// Injective homomorphism from <gens> into `dst` sending gens[i] to imgs[i],
/// or `None` if the assignment is inconsistent.
fn extend_map(src: &Group, dst: &Group, gens: &[usize], imgs: &[usize]) -> Option<Vec<u32>> {
    let mut map = vec![UNSET; src.order()];
    let mut used = Bits::new(dst.order());
    map[0] = 0;
    used.insert(0);
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        let fx = map[x] as usize;
        for (&s, &t) in gens.iter().zip(imgs) {
            let z = src.mul(x, s);
            let w = dst.mul(fx, t);
            if map[z] == UNSET {
                if !used.insert(w) {
                    return None;
                }
                map[z] = w as u32;
                queue.push(z);
            } else if map[z] as usize != w {
                return None;
            }
        }
    }
    Some(map)
}

/// Base for `g` starting with `prefix`, extended greedily by elements of
/// largest order, rarest invariant class first on ties.
fn search_base(g: &Group, prefix: &[usize]) -> Vec<usize> {
    let profile = g.profile();
    let mut class_size: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for x in 0..g.order() {
        *class_size.entry(profile.key(g, x)).or_insert(0) += 1;
    }
    let mut h: SubgroupSet = g.trivial_subgroup();
    let mut base = Vec::new();
    for &x in prefix {
        if !h.contains(x) {
            h = g.extend(&h, x);
            base.push(x);
        }
    }
    let mut order: Vec<usize> = (1..g.order()).collect();
    order.sort_by_key(|&x| {
        (
            std::cmp::Reverse(g.element_order(x)),
            class_size[&profile.key(g, x)],
            x,
        )
    });
    for x in order {
        if h.order() == g.order() {
            break;
        }
        if !h.contains(x) {
            h = g.extend(&h, x);
            base.push(x);
        }
    }
    base
}

fn key_multiset(g: &Group) -> Vec<(usize, usize, usize)> {
    let p = g.profile();
    let mut keys: Vec<_> = (0..g.order()).map(|x| p.key(g, x)).collect();
    keys.sort_unstable();
    keys
}

fn matching(dst: &Group, key: (usize, usize, usize)) -> Vec<usize> {
    let p = dst.profile();
    (0..dst.order()).filter(|&y| p.key(dst, y) == key).collect()
}

/// Searches for an isomorphism `g -> h` within `budget` search nodes.
pub fn find_isomorphism(g: &Group, h: &Group, budget: u64) -> IsoOutcome {
    if g.order() != h.order() || g.order_histogram() != h.order_histogram() {
        return IsoOutcome::NotIsomorphic;
    }
    if g.is_abelian() != h.is_abelian() || key_multiset(g) != key_multiset(h) {
        return IsoOutcome::NotIsomorphic;
    }
    if g.order() == 1 {
        return IsoOutcome::Isomorphic(vec![0]);
    }
    let base = search_base(g, &[]);
    let gp = g.profile();
    let candidates = base.iter().map(|&b| matching(h, gp.key(g, b))).collect();
    let mut search = HomSearch::new(g, h, base, candidates, budget);
    match search.run() {
        Step::Found(map) => IsoOutcome::Isomorphic(map),
        Step::Exhausted => IsoOutcome::NotIsomorphic,
        Step::OutOfBudget => IsoOutcome::Unknown,
    }
}

/// `Some(answer)` when the search completes, `None` when the budget runs out.
pub fn is_isomorphic(g: &Group, h: &Group, budget: u64) -> Option<bool> {
    match find_isomorphism(g, h, budget) {
        IsoOutcome::Isomorphic(_) => Some(true),
        IsoOutcome::NotIsomorphic => Some(false),
        IsoOutcome::Unknown => None,
    }
}

/// Searches for an automorphism of `g` sending `x` to `y`. Returns
/// `Some(Some(map))` if found, `Some(None)` if none exists, `None` if the
/// budget ran out. `nodes` accumulates the work spent.
pub fn automorphism_moving(
    g: &Group,
    x: usize,
    y: usize,
    budget: u64,
    nodes: &mut u64,
) -> Option<Option<Vec<usize>>> {
    let p = g.profile();
    if p.key(g, x) != p.key(g, y) {
        return Some(None);
    }
    if x == 0 {
        return Some(Some((0..g.order()).collect()));
    }
    let base = search_base(g, &[x]);
    let mut candidates: Vec<Vec<usize>> = base.iter().map(|&b| matching(g, p.key(g, b))).collect();
    candidates[0] = vec![y];
    let mut search = HomSearch::new(g, g, base, candidates, budget.saturating_sub(*nodes));
    let step = search.run();
    *nodes += search.nodes;
    match step {
        Step::Found(map) => Some(Some(map)),
        Step::Exhausted => Some(None),
        Step::OutOfBudget => None,
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn assert_iso_map(g: &Group, h: &Group, map: &[usize]) {
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(map[g.mul(a, b)], h.mul(map[a], map[b]));
            }
        }
        let mut seen = map.to_vec();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), g.order());
    }

    #[test]
    fn reflexive() {
        for g in [
            dicyclic(2).unwrap(),
            symmetric(4).unwrap(),
            cyclic(1).unwrap(),
        ] {
            match find_isomorphism(&g, &g, DEFAULT_ISO_BUDGET) {
                IsoOutcome::Isomorphic(map) => assert_iso_map(&g, &g, &map),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn metacyclic_s3_matches_dihedral() {
        let g = metacyclic(3, 2, 2).unwrap();
        let h = dihedral(3).unwrap();
        match find_isomorphism(&g, &h, DEFAULT_ISO_BUDGET) {
            IsoOutcome::Isomorphic(map) => assert_iso_map(&g, &h, &map),
            other => panic!("{other:?}"),
        }
        assert_eq!(is_isomorphic(&h, &symmetric(3).unwrap(), 1000), Some(true));
    }

    #[test]
    fn distinguishes() {
        let z4 = cyclic(4).unwrap();
        let v4 = abelian_from_invariants(&[2, 2]).unwrap();
        assert_eq!(is_isomorphic(&z4, &v4, 1000), Some(false));
        let d4 = dihedral(4).unwrap();
        let q8 = dicyclic(2).unwrap();
        assert_eq!(is_isomorphic(&d4, &q8, 1000), Some(false));
        // Same order statistics, different groups: Z4 x Z4 vs M16-ish checks.
        let a = abelian_from_invariants(&[4, 4]).unwrap();
        let b = direct_product(&dihedral(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(is_isomorphic(&a, &b, 100_000), Some(false));
        // Heisenberg(3) and Z3^3 have the same order histogram.
        let heis = heisenberg(3).unwrap();
        let e27 = abelian_from_invariants(&[3, 3, 3]).unwrap();
        assert_eq!(is_isomorphic(&heis, &e27, 100_000), Some(false));
    }

    #[test]
    fn direct_product_commutes_up_to_isomorphism() {
        let g = direct_product(&symmetric(3).unwrap(), &cyclic(4).unwrap()).unwrap();
        let h = direct_product(&cyclic(4).unwrap(), &dihedral(3).unwrap()).unwrap();
        assert_eq!(is_isomorphic(&g, &h, DEFAULT_ISO_BUDGET), Some(true));
    }

    #[test]
    fn large_central_elementary_abelian_factor() {
        // Z6 ⋊ Z4 by inversion is Dic3 x C2, so both sides are Dic3 x C2^4.
        let e8 = abelian_from_invariants(&[2, 2, 2]).unwrap();
        let g = direct_product(&e8, &metacyclic(6, 4, 5).unwrap()).unwrap();
        let e16 = abelian_from_invariants(&[2, 2, 2, 2]).unwrap();
        let h = direct_product(&dicyclic(3).unwrap(), &e16).unwrap();
        assert_eq!(is_isomorphic(&g, &h, 10_000), Some(true));
        assert_eq!(is_isomorphic(&h, &g, 10_000), Some(true));
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let g = abelian_from_invariants(&[2, 2, 2, 2]).unwrap();
        let h = abelian_from_invariants(&[2, 2, 2, 2]).unwrap();
        assert_eq!(find_isomorphism(&g, &h, 1), IsoOutcome::Unknown);
    }

    #[test]
    fn automorphisms_of_q8_permute_order_four_elements() {
        let q8 = dicyclic(2).unwrap();
        let a = q8.named("a").unwrap();
        let b = q8.named("b").unwrap();
        let mut nodes = 0;
        let found = automorphism_moving(&q8, a, b, 10_000, &mut nodes).unwrap();
        let map = found.expect("a and b are swapped by an automorphism");
        assert_iso_map(&q8, &q8, &map);
        assert_eq!(map[a], b);
        // The central involution is fixed by everything.
        let z = q8.pow(a, 2);
        assert_eq!(
            automorphism_moving(&q8, z, a, 10_000, &mut nodes),
            Some(None)
        );
    }
}
