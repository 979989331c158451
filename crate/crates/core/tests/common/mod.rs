//! Brute-force oracles shared by the integration tests. Everything here works
//! directly from the multiplication table and never calls the lattice, CD or
//! classification code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cdkit::group::Group;

pub type Members = Vec<usize>;

pub fn table(g: &Group) -> Vec<Vec<usize>> {
    let n = g.order();
    (0..n)
        .map(|a| (0..n).map(|b| g.mul(a, b)).collect())
        .collect()
}

pub fn naive_is_prime(n: usize) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Prime factors with multiplicity, ascending.
pub fn naive_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while n > 1 {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    out
}

/// Orders of the form 1, p, p², p³ or pq.
pub fn naive_small_shape(n: usize) -> bool {
    let f = naive_factors(n);
    match f.len() {
        0 | 1 => true,
        2 => true,
        3 => f[0] == f[2],
        _ => false,
    }
}

/// Every subgroup, found by testing each subset containing the identity for
/// closure. Only feasible for small orders.
pub fn subgroups_by_subset_closure(t: &[Vec<usize>]) -> BTreeSet<Members> {
    let n = t.len();
    assert!(n <= 20, "subset oracle is exponential in the order");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let set = (mask << 1) | 1;
        let size = set.count_ones() as usize;
        if !n.is_multiple_of(size) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| set >> t[a][b] & 1 == 1));
        if closed {
            out.insert(members);
        }
    }
    out
}

pub fn cyclic_members(t: &[Vec<usize>], x: usize) -> Members {
    let mut out = vec![0];
    let mut cur = x;
    while cur != 0 {
        out.push(cur);
        cur = t[cur][x];
    }
    out.sort_unstable();
    out
}

pub fn inverse(t: &[Vec<usize>], x: usize) -> usize {
    (0..t.len())
        .find(|&y| t[x][y] == 0)
        .expect("inverse exists")
}

pub fn centralizer(t: &[Vec<usize>], h: &[usize]) -> Members {
    (0..t.len())
        .filter(|&y| h.iter().all(|&x| t[x][y] == t[y][x]))
        .collect()
}

pub fn conjugate_set(t: &[Vec<usize>], h: &[usize], g: usize) -> Members {
    let gi = inverse(t, g);
    let mut out: Vec<usize> = h.iter().map(|&x| t[t[g][x]][gi]).collect();
    out.sort_unstable();
    out
}

pub fn is_normal(t: &[Vec<usize>], h: &[usize]) -> bool {
    (0..t.len()).all(|g| conjugate_set(t, h, g) == h)
}

pub fn is_abelian_set(t: &[Vec<usize>], h: &[usize]) -> bool {
    h.iter().all(|&a| h.iter().all(|&b| t[a][b] == t[b][a]))
}

/// Nilpotent iff for every prime p the p-elements number exactly the
/// p-part of the order (each Sylow subgroup is then unique, hence normal).
pub fn naive_nilpotent(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    let orders: Vec<usize> = (0..n).map(|x| cyclic_members(t, x).len()).collect();
    let primes: BTreeSet<usize> = naive_factors(n).into_iter().collect();
    primes.into_iter().all(|p| {
        let mut part = 1;
        while n.is_multiple_of(part * p) {
            part *= p;
        }
        orders.iter().filter(|&&o| part % o == 0).count() == part
    })
}

#[derive(Debug)]
pub struct NaiveCd {
    pub subgroups: Vec<Members>,
    pub measures: Vec<u64>,
    pub m_star: u64,
    pub cd: BTreeSet<Members>,
    pub delta: usize,
    pub v: usize,
    /// Conjugacy classes as index lists into `subgroups`.
    pub classes: Vec<Vec<usize>>,
}

/// Measures, CD, δ and v recomputed from scratch for a given subgroup list.
pub fn naive_cd(t: &[Vec<usize>], subgroups: Vec<Members>) -> NaiveCd {
    let measures: Vec<u64> = subgroups
        .iter()
        .map(|h| (h.len() * centralizer(t, h).len()) as u64)
        .collect();
    let m_star = *measures
        .iter()
        .max()
        .expect("at least the trivial subgroup");
    let cd: BTreeSet<Members> = subgroups
        .iter()
        .zip(&measures)
        .filter(|(_, &m)| m == m_star)
        .map(|(h, _)| h.clone())
        .collect();
    let delta = subgroups.len() - cd.len();
    let pos: std::collections::HashMap<&Members, usize> =
        subgroups.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let mut seen = vec![false; subgroups.len()];
    let mut classes = Vec::new();
    for i in 0..subgroups.len() {
        if seen[i] {
            continue;
        }
        let class: BTreeSet<usize> = (0..t.len())
            .map(|g| pos[&conjugate_set(t, &subgroups[i], g)])
            .collect();
        for &j in &class {
            seen[j] = true;
        }
        classes.push(class.into_iter().collect::<Vec<_>>());
    }
    let v = classes
        .iter()
        .filter(|c| c.iter().all(|&j| measures[j] != m_star))
        .count();
    NaiveCd {
        subgroups,
        measures,
        m_star,
        cd,
        delta,
        v,
        classes,
    }
}
