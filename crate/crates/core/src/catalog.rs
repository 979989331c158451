//! Deterministic catalog of small groups built from the constructors.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{self, factorize, gcd, pow_mod};
use crate::error::{Error, Result};
use crate::group::{self, is_isomorphic, Group};
use crate::par::{map_ordered, Execution};

pub const MAX_CATALOG_ORDER: usize = 200;
/// Node budget for each isomorphism test during deduplication.
pub const DEDUP_ISO_BUDGET: u64 = 2_000_000;

/// Isomorphism invariants used to rule out isomorphism cheaply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    pub order_histogram: BTreeMap<usize, usize>,
    pub class_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup_count: Option<usize>,
}

impl Fingerprint {
    pub fn of(g: &Group) -> Fingerprint {
        Fingerprint {
            order: g.order(),
            abelian: g.is_abelian(),
            center_order: g.center().order(),
            order_histogram: g.order_histogram(),
            class_sizes: g.class_sizes(),
            subgroup_count: None,
        }
    }

    fn same_invariants(&self, other: &Fingerprint) -> bool {
        self.order == other.order
            && self.abelian == other.abelian
            && self.center_order == other.center_order
            && self.order_histogram == other.order_histogram
            && self.class_sizes == other.class_sizes
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub group: Arc<Group>,
    pub fingerprint: Fingerprint,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub max_order: usize,
    pub entries: Vec<CatalogEntry>,
    /// Order → whether the entries of that order are a complete list of
    /// isomorphism types.
    pub coverage: BTreeMap<usize, bool>,
    /// Candidate pairs whose isomorphism test ran out of budget.
    pub unresolved_pairs: usize,
}

/// Orders whose groups the constructors realize completely: 1, p, p², p³, pq.
pub fn is_exhaustive_order(n: usize) -> bool {
    match factorize(n as u64).as_slice() {
        [] => true,
        [(_, e)] => *e <= 3,
        [(_, 1), (_, 1)] => true,
        _ => false,
    }
}

/// Number of isomorphism types for orders in the exhaustive classes.
pub fn known_group_count(n: usize) -> Option<usize> {
    match factorize(n as u64).as_slice() {
        [] => Some(1),
        [(_, 1)] => Some(1),
        [(_, 2)] => Some(2),
        [(_, 3)] => Some(5),
        [(p, 1), (q, 1)] => Some(if (q - 1) % p == 0 { 2 } else { 1 }),
        _ => None,
    }
}

/// Partitions of `e` in non-increasing order, lexicographically descending.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

/// Invariant-factor lists of every abelian group of order `n`.
pub fn abelian_invariant_lists(n: usize) -> Vec<Vec<usize>> {
    let mut lists: Vec<Vec<usize>> = vec![vec![]];
    for (p, e) in factorize(n as u64) {
        let mut next = Vec::new();
        for l in &lists {
            for part in partitions(e) {
                let len = l.len().max(part.len());
                let combined: Vec<usize> = (0..len)
                    .map(|i| {
                        l.get(i).copied().unwrap_or(1)
                            * part.get(i).map_or(1, |&k| (p as usize).pow(k))
                    })
                    .collect();
                next.push(combined);
            }
        }
        lists = next;
    }
    if n == 1 {
        return vec![vec![1]];
    }
    lists
}

enum Candidate {
    Built(Group),
    Product(usize, usize),
}

fn metacyclic_params(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for k in 2..=n {
        if !n.is_multiple_of(k) {
            continue;
        }
        let m = n / k;
        if m < 3 {
            continue;
        }
        let mut seen_subgroups: Vec<Vec<usize>> = Vec::new();
        for t in 2..m {
            if gcd(t, m) != 1 || pow_mod(t as u64, k as u64, m as u64) != 1 {
                continue;
            }
            let mut powers: Vec<usize> = (0..k)
                .map(|j| pow_mod(t as u64, j as u64, m as u64) as usize)
                .collect();
            powers.sort_unstable();
            powers.dedup();
            if seen_subgroups.contains(&powers) {
                continue;
            }
            seen_subgroups.push(powers);
            out.push((m, k, t));
        }
    }
    out
}

fn candidates(n: usize, accepted: &[CatalogEntry]) -> Vec<Candidate> {
    let mut out = Vec::new();
    let mut push = |r: Result<Group>| {
        if let Ok(g) = r {
            out.push(Candidate::Built(g));
        }
    };
    for inv in abelian_invariant_lists(n) {
        push(group::abelian_from_invariants(&inv));
    }
    match n {
        6 => push(group::symmetric(3)),
        12 => push(group::alternating4()),
        24 => push(group::symmetric(4)),
        _ => {}
    }
    if n.is_multiple_of(2) && n / 2 >= 3 {
        push(group::dihedral(n / 2));
    }
    if n.is_multiple_of(4) && n / 4 >= 2 {
        push(group::dicyclic(n / 4));
    }
    if let Some((p, e)) = arith::prime_power(n as u64) {
        if e == 3 && p > 2 {
            push(group::heisenberg(p as usize));
        }
        if e >= 3 {
            push(group::modular_m(p as usize, e));
        }
    }
    for (m, k, t) in metacyclic_params(n) {
        push(group::metacyclic(m, k, t));
    }
    for i in 0..accepted.len() {
        let a = accepted[i].group.order();
        if a < 2 || !n.is_multiple_of(a) {
            continue;
        }
        for j in i..accepted.len() {
            let b = accepted[j].group.order();
            if a * b != n || b < 2 {
                continue;
            }
            if accepted[i].fingerprint.abelian && accepted[j].fingerprint.abelian {
                continue;
            }
            out.push(Candidate::Product(i, j));
        }
    }
    out
}

pub fn builtin_catalog(max_order: usize) -> Result<Catalog> {
    builtin_catalog_with(max_order, Execution::Sequential)
}

/// Builds the catalog order by order. Candidate construction and
/// fingerprinting run under `exec`; deduplication is a serial merge so the
/// result does not depend on scheduling.
pub fn builtin_catalog_with(max_order: usize, exec: Execution) -> Result<Catalog> {
    if max_order == 0 || max_order > MAX_CATALOG_ORDER {
        return Err(Error::InvalidParameters(format!(
            "max_order must be in 1..={MAX_CATALOG_ORDER}"
        )));
    }
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut coverage = BTreeMap::new();
    let mut unresolved_pairs = 0;
    for n in 1..=max_order {
        let cands = candidates(n, &entries);
        let built: Vec<Result<(Group, Fingerprint)>> = map_ordered(exec, &cands, |c| {
            let g = match c {
                Candidate::Built(g) => g.clone(),
                Candidate::Product(i, j) => {
                    group::direct_product(&entries[*i].group, &entries[*j].group)?
                }
            };
            let fp = Fingerprint::of(&g);
            Ok((g, fp))
        });
        let start = entries.len();
        for r in built {
            let (g, fp) = r?;
            let mut duplicate = false;
            for e in &entries[start..] {
                if !e.fingerprint.same_invariants(&fp) {
                    continue;
                }
                match is_isomorphic(&e.group, &g, DEDUP_ISO_BUDGET) {
                    Some(true) => {
                        duplicate = true;
                        break;
                    }
                    Some(false) => {}
                    None => unresolved_pairs += 1,
                }
            }
            if !duplicate {
                entries.push(CatalogEntry {
                    label: g.label().to_string(),
                    group: Arc::new(g),
                    fingerprint: fp,
                });
            }
        }
        coverage.insert(n, is_exhaustive_order(n));
    }
    Ok(Catalog {
        max_order,
        entries,
        coverage,
        unresolved_pairs,
    })
}

impl Catalog {
    pub fn of_order(&self, n: usize) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.group.order() == n)
    }

    pub fn exhaustive_orders(&self) -> Vec<usize> {
        self.coverage
            .iter()
            .filter(|(_, &ex)| ex)
            .map(|(&n, _)| n)
            .collect()
    }

    pub fn manifest(&self) -> Manifest<'_> {
        Manifest {
            max_order: self.max_order,
            entries: self
                .entries
                .iter()
                .map(|e| ManifestEntry {
                    label: &e.label,
                    order: e.group.order(),
                    construction: &e.group.construction().source,
                    fingerprint: &e.fingerprint,
                })
                .collect(),
            coverage: self
                .coverage
                .iter()
                .map(|(&order, &exhaustive)| Coverage { order, exhaustive })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Manifest<'a> {
    pub max_order: usize,
    pub entries: Vec<ManifestEntry<'a>>,
    pub coverage: Vec<Coverage>,
}

#[derive(Serialize)]
pub struct ManifestEntry<'a> {
    pub label: &'a str,
    pub order: usize,
    pub construction: &'a str,
    pub fingerprint: &'a Fingerprint,
}

#[derive(Serialize)]
pub struct Coverage {
    pub order: usize,
    pub exhaustive: bool,
}

// ---- files --------------------------------------------------------------------

pub fn load_group_file(path: &Path) -> Result<Group> {
    let text = std::fs::read_to_string(path)?;
    group::parse_group_file(&text, path)
}

pub fn save_group_file(path: &Path, g: &Group) -> Result<()> {
    write_atomic(path, group::group_file_text(g).as_bytes())
}

/// Writes `report` as pretty JSON; the file is replaced atomically.
pub fn save_report<T: Serialize + ?Sized>(path: &Path, report: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::InvalidParameters(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
