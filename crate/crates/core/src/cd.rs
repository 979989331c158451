//! Chermak–Delgado measure and lattice.
//!
//! For H ≤ G the measure is m_G(H) = |H|·|C_G(H)|. The subgroups of maximal
//! measure form the Chermak–Delgado lattice CD(G). This module computes the
//! measure of every subgroup, the lattice, the counts δ(G) (subgroups outside
//! CD) and v(G) (conjugacy classes outside CD), and runs the structural checks
//! that must hold for every finite group.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith;
use crate::bits::Bits;
use crate::error::Result;
use crate::group::{Group, SubgroupSet};
use crate::lattice::SubgroupLattice;

/// Exact measure value. Bounded by |G|², which the element cap keeps far
/// below `u64::MAX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Measure(pub u64);

impl Measure {
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn divides(self, other: Measure) -> bool {
        other.0.is_multiple_of(self.0)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// m_G(H) = |H| |C_G(H)|.
pub fn measure(g: &Group, h: &SubgroupSet) -> Result<Measure> {
    let c = g.centralizer(h)?;
    Ok(Measure((h.order() * c.order()) as u64))
}

/// A flag that some checks may decline to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    True,
    False,
    Skipped,
}

impl From<bool> for Flag {
    fn from(b: bool) -> Self {
        if b {
            Flag::True
        } else {
            Flag::False
        }
    }
}

impl Flag {
    pub fn holds_or_skipped(self) -> bool {
        self != Flag::False
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Flag::True => s.serialize_bool(true),
            Flag::False => s.serialize_bool(false),
            Flag::Skipped => s.serialize_str("skipped"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CdFlags {
    pub is_sublattice: bool,
    pub is_modular: Flag,
    pub is_self_dual: bool,
    pub min_unique: bool,
    pub min_abelian: bool,
    pub min_normal: bool,
    pub min_contains_center: bool,
    pub min_characteristic: Flag,
}

/// Measures, the CD lattice, and derived counts for one group.
#[derive(Clone, Debug)]
pub struct CdReport {
    pub label: String,
    pub order: usize,
    /// m_G(H) per lattice index.
    pub measures: Vec<Measure>,
    /// Lattice index of C_G(H) per lattice index.
    pub centralizer: Vec<usize>,
    pub center: usize,
    pub m_star: Measure,
    pub cd_members: Vec<usize>,
    pub in_cd: Vec<bool>,
    /// Distinct measure values, ascending.
    pub image: Vec<Measure>,
    pub delta: usize,
    pub v: usize,
    pub min_member: usize,
    pub flags: CdFlags,
}

/// Limit on (x, y, z) triples examined by the modular-law check.
pub const MODULAR_TRIPLE_BUDGET: usize = 1_000_000;
/// Characteristic-subgroup verification runs only up to this order.
pub const CHARACTERISTIC_ORDER_LIMIT: usize = 64;
/// Node budget shared by all automorphism searches for one group.
pub const CHARACTERISTIC_NODE_BUDGET: u64 = 20_000_000;

/// Per-element centralizers as membership sets.
fn element_centralizers(g: &Group) -> Vec<Bits> {
    let n = g.order();
    let mut cent: Vec<Bits> = (0..n).map(|_| Bits::new(n)).collect();
    for x in 0..n {
        for y in x..n {
            if g.commute(x, y) {
                cent[x].insert(y);
                cent[y].insert(x);
            }
        }
    }
    cent
}

pub fn cd_report(lattice: &SubgroupLattice) -> CdReport {
    let g = lattice.group();
    let n = g.order();
    let cent = element_centralizers(g);

    let centralizer: Vec<usize> = lattice
        .subgroups()
        .iter()
        .map(|h| {
            let mut c = Bits::full(n);
            for &x in h.gens() {
                c.intersect_with(&cent[x]);
            }
            lattice
                .index_of_members(&c)
                .expect("centralizers are subgroups")
        })
        .collect();
    let measures: Vec<Measure> = (0..lattice.len())
        .map(|i| Measure((lattice.get(i).order() * lattice.get(centralizer[i]).order()) as u64))
        .collect();
    let center = centralizer[lattice.top()];

    let m_star = *measures.iter().max().expect("lattice is nonempty");
    let in_cd: Vec<bool> = measures.iter().map(|&m| m == m_star).collect();
    let cd_members: Vec<usize> = (0..lattice.len()).filter(|&i| in_cd[i]).collect();
    let mut image = measures.clone();
    image.sort_unstable();
    image.dedup();

    let delta = lattice.len() - cd_members.len();
    let v = lattice
        .classes()
        .iter()
        .filter(|c| c.iter().all(|&i| !in_cd[i]))
        .count();

    let mut meet_bits = Bits::full(n);
    for &i in &cd_members {
        meet_bits.intersect_with(lattice.get(i).members());
    }
    let min_member = lattice
        .index_of_members(&meet_bits)
        .expect("intersections of subgroups are subgroups");
    let min_unique = in_cd[min_member];

    let is_sublattice = cd_members.iter().all(|&a| {
        cd_members
            .iter()
            .all(|&b| in_cd[lattice.meet(a, b)] && in_cd[lattice.join(a, b)])
    });
    let is_modular = modular_law(lattice, &cd_members);
    let is_self_dual = cd_members.iter().all(|&h| {
        let c = centralizer[h];
        in_cd[c]
            && centralizer[c] == h
            && cd_members
                .iter()
                .all(|&k| !lattice.leq(h, k) || lattice.leq(centralizer[k], c))
    });

    let m = lattice.get(min_member);
    let min_characteristic = if n > CHARACTERISTIC_ORDER_LIMIT {
        Flag::Skipped
    } else {
        is_characteristic(g, m, CHARACTERISTIC_NODE_BUDGET)
    };
    let flags = CdFlags {
        is_sublattice,
        is_modular,
        is_self_dual,
        min_unique,
        min_abelian: m.is_abelian(g),
        min_normal: lattice.is_normal(min_member),
        min_contains_center: lattice.leq(center, min_member),
        min_characteristic,
    };

    CdReport {
        label: g.label().to_string(),
        order: n,
        measures,
        centralizer,
        center,
        m_star,
        cd_members,
        in_cd,
        image,
        delta,
        v,
        min_member,
        flags,
    }
}

/// x ≤ z ⟹ x∨(y∧z) = (x∨y)∧z over all member triples.
fn modular_law(lattice: &SubgroupLattice, members: &[usize]) -> Flag {
    let k = members.len();
    if k.saturating_mul(k).saturating_mul(k) > MODULAR_TRIPLE_BUDGET {
        return Flag::Skipped;
    }
    let mut joins: HashMap<(usize, usize), usize> = HashMap::new();
    let mut join = |a: usize, b: usize| {
        let key = if a <= b { (a, b) } else { (b, a) };
        *joins.entry(key).or_insert_with(|| lattice.join(a, b))
    };
    for &x in members {
        for &z in members {
            if !lattice.leq(x, z) {
                continue;
            }
            for &y in members {
                let lhs = join(x, lattice.meet(y, z));
                let xy = join(x, y);
                let rhs = lattice.meet(xy, z);
                if lhs != rhs {
                    return Flag::False;
                }
            }
        }
    }
    Flag::True
}

/// Whether every automorphism of `g` fixes `h`, found by searching for an
/// automorphism that sends a generator of `h` outside `h`.
pub fn is_characteristic(g: &Group, h: &SubgroupSet, budget: u64) -> Flag {
    if h.is_trivial() || h.order() == g.order() {
        return Flag::True;
    }
    let profile = g.profile();
    let mut nodes = 0u64;
    for &x in h.gens() {
        let key = profile.key(g, x);
        for y in (0..g.order()).filter(|&y| !h.contains(y) && profile.key(g, y) == key) {
            match crate::group::automorphism_moving(g, x, y, budget, &mut nodes) {
                Some(Some(_)) => return Flag::False,
                Some(None) => {}
                None => return Flag::Skipped,
            }
        }
    }
    Flag::True
}

// ---- checks -----------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one checker on one group. `witness` holds subgroup indices.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl Check {
    fn pass(name: &str, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: Vec::new(),
            detail: detail.into(),
        }
    }

    fn fail(name: &str, witness: Vec<usize>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness,
            detail: detail.into(),
        }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Skipped,
            witness: Vec::new(),
            detail: detail.into(),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// m(H) ≤ m(C(H)) for all H, with equality forcing C(C(H)) = H; and every
/// CD member H has C(H) ∈ CD with C(C(H)) = H.
pub fn check_centralizer_measure(lattice: &SubgroupLattice, r: &CdReport) -> Check {
    const NAME: &str = "centralizer_measure";
    for h in 0..lattice.len() {
        let c = r.centralizer[h];
        if r.measures[h] > r.measures[c] {
            return Check::fail(NAME, vec![h, c], "m(H) > m(C(H))");
        }
        if r.measures[h] == r.measures[c] && r.centralizer[c] != h {
            return Check::fail(NAME, vec![h, c], "equal measures but C(C(H)) != H");
        }
    }
    for &h in &r.cd_members {
        let c = r.centralizer[h];
        if !r.in_cd[c] || r.centralizer[c] != h {
            return Check::fail(NAME, vec![h, c], "CD member whose centralizer misbehaves");
        }
    }
    Check::pass(NAME, format!("{} subgroups", lattice.len()))
}

/// Closure under meet and join, the modular law, and self-duality of CD.
pub fn check_cd_structure(r: &CdReport) -> Check {
    const NAME: &str = "cd_lattice_structure";
    let f = &r.flags;
    if !f.is_sublattice {
        return Check::fail(NAME, r.cd_members.clone(), "CD not closed under meet/join");
    }
    if f.is_modular == Flag::False {
        return Check::fail(NAME, r.cd_members.clone(), "modular law fails on CD");
    }
    if !f.is_self_dual {
        return Check::fail(
            NAME,
            r.cd_members.clone(),
            "H -> C(H) is not a duality of CD",
        );
    }
    if f.is_modular == Flag::Skipped {
        return Check::skipped(NAME, "modular law: triple budget exceeded");
    }
    Check::pass(NAME, format!("|CD| = {}", r.cd_members.len()))
}

/// The least CD member exists, is abelian, normal and contains Z(G).
pub fn check_cd_minimum(r: &CdReport) -> Check {
    const NAME: &str = "cd_minimum";
    let f = &r.flags;
    let w = vec![r.min_member];
    if !f.min_unique {
        return Check::fail(NAME, w, "no unique minimal CD member");
    }
    if !(f.min_abelian && f.min_normal && f.min_contains_center) {
        return Check::fail(
            NAME,
            w,
            format!(
                "abelian={} normal={} contains_center={}",
                f.min_abelian, f.min_normal, f.min_contains_center
            ),
        );
    }
    Check::pass(NAME, format!("min member H{}", r.min_member))
}

pub fn check_cd_minimum_characteristic(r: &CdReport) -> Check {
    const NAME: &str = "cd_minimum_characteristic";
    match r.flags.min_characteristic {
        Flag::True => Check::pass(NAME, "fixed by every automorphism"),
        Flag::False => Check::fail(NAME, vec![r.min_member], "moved by an automorphism"),
        Flag::Skipped if r.order > CHARACTERISTIC_ORDER_LIMIT => {
            Check::skipped(NAME, format!("|G| > {CHARACTERISTIC_ORDER_LIMIT}"))
        }
        Flag::Skipped => Check::skipped(NAME, "automorphism search budget exceeded"),
    }
}

/// If every measure divides |G| then G = 1; if every measure is a multiple
/// of |G| then G is nilpotent; CD(G) = L(G) only for G = 1.
pub fn check_divisibility_props(lattice: &SubgroupLattice, r: &CdReport) -> Vec<Check> {
    let n = r.order as u64;
    let mut out = Vec::new();

    let offender = (0..lattice.len()).find(|&h| !n.is_multiple_of(r.measures[h].0));
    out.push(match offender {
        None if n != 1 => Check::fail(
            "measures_divide_order",
            vec![],
            "every measure divides |G| for nontrivial G",
        ),
        None => Check::pass("measures_divide_order", "hypothesis holds, G = 1"),
        Some(h) => Check::pass(
            "measures_divide_order",
            format!("hypothesis false at H{h} (m = {})", r.measures[h]),
        ),
    });

    let offender = (0..lattice.len()).find(|&h| !r.measures[h].0.is_multiple_of(n));
    out.push(match offender {
        None if !lattice.is_nilpotent() => Check::fail(
            "order_divides_measures",
            vec![],
            "|G| divides every measure but G is not nilpotent",
        ),
        None => Check::pass("order_divides_measures", "hypothesis holds, G nilpotent"),
        Some(h) => Check::pass(
            "order_divides_measures",
            format!("hypothesis false at H{h} (m = {})", r.measures[h]),
        ),
    });

    out.push(if r.delta == 0 && n != 1 {
        Check::fail(
            "cd_is_whole_lattice",
            vec![],
            "CD(G) = L(G) for nontrivial G",
        )
    } else {
        Check::pass("cd_is_whole_lattice", format!("delta = {}", r.delta))
    });
    out
}

/// A set of consecutive measure values forces G = 1.
pub fn check_consecutive_image(r: &CdReport) -> Check {
    const NAME: &str = "consecutive_image";
    let consecutive = r.image.windows(2).all(|w| w[1].0 == w[0].0 + 1);
    if consecutive && r.order != 1 {
        return Check::fail(NAME, vec![], "image is a run of consecutive integers");
    }
    Check::pass(
        NAME,
        format!("|Im| = {}, consecutive = {consecutive}", r.image.len()),
    )
}

/// The three center conditions evaluated as booleans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CenterConditions {
    /// m(H) | m(K) whenever H ≤ K.
    pub divisible_along_chains: bool,
    /// m(H) = m(H ∩ Z(G)) for all H.
    pub measure_via_center: bool,
    /// CD(G) is exactly the set of subgroups containing Z(G).
    pub cd_is_overgroups_of_center: bool,
}

pub fn center_conditions(lattice: &SubgroupLattice, r: &CdReport) -> CenterConditions {
    // Divisibility is transitive, so covering pairs suffice.
    let divisible_along_chains = lattice
        .hasse()
        .iter()
        .all(|&(h, k)| r.measures[h].divides(r.measures[k]));
    let measure_via_center =
        (0..lattice.len()).all(|h| r.measures[h] == r.measures[lattice.meet(h, r.center)]);
    let cd_is_overgroups_of_center =
        (0..lattice.len()).all(|h| r.in_cd[h] == lattice.leq(r.center, h));
    CenterConditions {
        divisible_along_chains,
        measure_via_center,
        cd_is_overgroups_of_center,
    }
}

/// The three center conditions are equivalent.
pub fn check_center_conditions(lattice: &SubgroupLattice, r: &CdReport) -> Check {
    const NAME: &str = "center_conditions";
    let c = center_conditions(lattice, r);
    let detail = format!(
        "chains={} via_center={} overgroups={}",
        c.divisible_along_chains, c.measure_via_center, c.cd_is_overgroups_of_center
    );
    if c.divisible_along_chains == c.measure_via_center
        && c.measure_via_center == c.cd_is_overgroups_of_center
    {
        Check::pass(NAME, detail)
    } else {
        Check::fail(NAME, vec![], detail)
    }
}

/// |Im(m_G)| ≥ 1 + Σ_p n_p where |Z(P)| = p^{n_p} for P ∈ Syl_p(G).
/// All Sylow p-subgroups are required to agree on |Z(P)|.
pub fn image_lower_bound(
    lattice: &SubgroupLattice,
    r: &CdReport,
) -> std::result::Result<usize, Vec<usize>> {
    let mut bound = 1usize;
    for (p, _) in arith::factorize(r.order as u64) {
        let sylows = lattice.sylow_subgroups(p).expect("p divides |G|");
        let center_order = |s: usize| {
            let c = r.centralizer[s];
            lattice
                .get(s)
                .members()
                .intersection(lattice.get(c).members())
                .count()
        };
        let z0 = center_order(sylows[0]);
        if let Some(&bad) = sylows.iter().find(|&&s| center_order(s) != z0) {
            return Err(vec![sylows[0], bad]);
        }
        let mut np = 0;
        let mut z = z0 as u64;
        while z > 1 {
            z /= p;
            np += 1;
        }
        bound += np;
    }
    Ok(bound)
}

pub fn check_image_lower_bound(lattice: &SubgroupLattice, r: &CdReport) -> Check {
    const NAME: &str = "image_lower_bound";
    match image_lower_bound(lattice, r) {
        Err(w) => Check::fail(NAME, w, "Sylow subgroups disagree on |Z(P)|"),
        Ok(bound) if r.image.len() >= bound => {
            Check::pass(NAME, format!("|Im| = {} >= {bound}", r.image.len()))
        }
        Ok(bound) => Check::fail(NAME, vec![], format!("|Im| = {} < {bound}", r.image.len())),
    }
}

/// Conjugate subgroups share their measure; |Im| ≥ 2, δ > 0 and v > 0 for
/// nontrivial G.
pub fn check_counts(lattice: &SubgroupLattice, r: &CdReport) -> Check {
    const NAME: &str = "measure_counts";
    for class in lattice.classes() {
        if let Some(&bad) = class
            .iter()
            .find(|&&i| r.measures[i] != r.measures[class[0]])
        {
            return Check::fail(
                NAME,
                vec![class[0], bad],
                "conjugates with different measures",
            );
        }
    }
    let trivial = r.order == 1;
    if !trivial && r.image.len() < 2 {
        return Check::fail(NAME, vec![], "measure takes a single value");
    }
    if (r.delta == 0) != trivial || (r.v == 0) != trivial {
        return Check::fail(NAME, vec![], format!("delta = {}, v = {}", r.delta, r.v));
    }
    Check::pass(NAME, format!("delta = {}, v = {}", r.delta, r.v))
}

/// Every structural checker, in a fixed order.
pub fn property_checks(lattice: &SubgroupLattice, r: &CdReport) -> Vec<Check> {
    let mut out = vec![
        check_centralizer_measure(lattice, r),
        check_cd_structure(r),
        check_cd_minimum(r),
        check_cd_minimum_characteristic(r),
    ];
    out.extend(check_divisibility_props(lattice, r));
    out.push(check_consecutive_image(r));
    out.push(check_center_conditions(lattice, r));
    out.push(check_image_lower_bound(lattice, r));
    out.push(check_counts(lattice, r));
    out
}

/// JSON rendering of a report; field order is fixed.
#[derive(Serialize)]
pub struct CdDocument<'a> {
    pub label: &'a str,
    pub order: usize,
    pub m_star: Measure,
    pub image: &'a [Measure],
    pub delta: usize,
    pub v: usize,
    pub cd_member_count: usize,
    pub flags: &'a CdFlags,
    pub checks: &'a [Check],
}

impl CdReport {
    pub fn document<'a>(&'a self, checks: &'a [Check]) -> CdDocument<'a> {
        CdDocument {
            label: &self.label,
            order: self.order,
            m_star: self.m_star,
            image: &self.image,
            delta: self.delta,
            v: self.v,
            cd_member_count: self.cd_members.len(),
            flags: &self.flags,
            checks,
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{cyclic, dicyclic, symmetric};
    use crate::lattice::all_subgroups;

    fn report(g: Group) -> (SubgroupLattice, CdReport) {
        let l = all_subgroups(Arc::new(g)).unwrap();
        let r = cd_report(&l);
        (l, r)
    }

    #[test]
    fn measure_examples() {
        let g = symmetric(3).unwrap();
        assert_eq!(measure(&g, &g.trivial_subgroup()).unwrap(), Measure(6));
        let a3 = g.generate(
            &(0..6)
                .filter(|&x| g.element_order(x) == 3)
                .collect::<Vec<_>>(),
        );
        assert_eq!(measure(&g, &a3).unwrap(), Measure(9));
        let q8 = dicyclic(2).unwrap();
        let a = q8.cyclic_subgroup(q8.named("a").unwrap());
        assert_eq!(measure(&q8, &a).unwrap(), Measure(16));
    }

    #[test]
    fn z6_report() {
        let (_, r) = report(cyclic(6).unwrap());
        assert_eq!(
            r.image,
            vec![Measure(6), Measure(12), Measure(18), Measure(36)]
        );
        assert_eq!(r.cd_members, vec![3]);
        assert_eq!((r.delta, r.v), (3, 3));
    }

    #[test]
    fn s3_report_and_center_conditions() {
        let (l, r) = report(symmetric(3).unwrap());
        assert_eq!(r.m_star, Measure(9));
        assert_eq!((r.delta, r.v), (5, 3));
        let c = center_conditions(&l, &r);
        assert!(
            !c.divisible_along_chains && !c.measure_via_center && !c.cd_is_overgroups_of_center
        );
    }

    #[test]
    fn abelian_center_conditions_all_hold() {
        let (l, r) = report(crate::group::abelian_from_invariants(&[2, 4]).unwrap());
        let c = center_conditions(&l, &r);
        assert!(c.divisible_along_chains && c.measure_via_center && c.cd_is_overgroups_of_center);
        assert_eq!(r.cd_members, vec![l.top()]);
    }

    #[test]
    fn trivial_group_passes_vacuously() {
        let (l, r) = report(cyclic(1).unwrap());
        assert_eq!(r.image, vec![Measure(1)]);
        assert_eq!((r.delta, r.v), (0, 0));
        for c in property_checks(&l, &r) {
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
    }

    #[test]
    fn lower_bound_examples() {
        let (l, r) = report(cyclic(6).unwrap());
        assert_eq!(image_lower_bound(&l, &r), Ok(3));
        let (l, r) = report(dicyclic(2).unwrap());
        assert_eq!(image_lower_bound(&l, &r), Ok(2));
        assert_eq!(r.image, vec![Measure(8), Measure(16)]);
        let (l, r) = report(cyclic(25).unwrap());
        assert_eq!(image_lower_bound(&l, &r), Ok(3));
        assert_eq!(r.image, vec![Measure(25), Measure(125), Measure(625)]);
    }

    #[test]
    fn q8_centralizer_of_b() {
        let (l, r) = report(dicyclic(2).unwrap());
        let g = l.group();
        let b = l
            .index_of(&g.cyclic_subgroup(g.named("b").unwrap()))
            .unwrap();
        assert_eq!(r.measures[b], Measure(16));
        assert_eq!(r.centralizer[b], b);
        assert_eq!(r.measures[r.centralizer[b]], Measure(16));
    }

    #[test]
    fn flag_json() {
        assert_eq!(
            serde_json::to_string(&Flag::Skipped).unwrap(),
            "\"skipped\""
        );
        assert_eq!(serde_json::to_string(&Flag::True).unwrap(), "true");
        assert_eq!(serde_json::to_string(&Measure(81)).unwrap(), "\"81\"");
    }
}
