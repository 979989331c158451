//! Textual group descriptors: `C6`, `D4`, `Q16`, `M27`, `S3`, `Heis3`,
//! `Dic3`, `A4`, `metacyclic(7,3,2)`, products such as `C2xC2` or `S3xC4`,
//! and `@path` for a group file.

use std::path::PathBuf;
use std::str::FromStr;

use crate::arith;
use crate::catalog::load_group_file;
use crate::error::{Error, Result};
use crate::group::{self, Group};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    /// Generalized quaternion group of the given order.
    Quaternion(usize),
    Dicyclic(usize),
    Modular {
        p: usize,
        n: u32,
    },
    Symmetric(usize),
    Heisenberg(usize),
    Alternating4,
    Metacyclic(usize, usize, usize),
    Product(Vec<GroupSpec>),
    File(PathBuf),
}

fn bad(s: &str) -> Error {
    Error::BadSpec(s.to_string())
}

fn number(s: &str, whole: &str) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad(whole));
    }
    s.parse().map_err(|_| bad(whole))
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_factor(t: &str, whole: &str) -> Result<GroupSpec> {
    if let Some(args) = t
        .strip_prefix("metacyclic(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| number(a.trim(), whole))
            .collect::<Result<_>>()?;
        return match nums.as_slice() {
            [m, k, t] => Ok(GroupSpec::Metacyclic(*m, *k, *t)),
            _ => Err(bad(whole)),
        };
    }
    if t == "A4" {
        return Ok(GroupSpec::Alternating4);
    }
    if let Some(r) = t.strip_prefix("Heis") {
        return Ok(GroupSpec::Heisenberg(number(r, whole)?));
    }
    if let Some(r) = t.strip_prefix("Dic") {
        return Ok(GroupSpec::Dicyclic(number(r, whole)?));
    }
    let (head, rest) = t.split_at(t.chars().next().map_or(0, char::len_utf8));
    let n = number(rest, whole)?;
    match head {
        "C" => Ok(GroupSpec::Cyclic(n)),
        "D" => Ok(GroupSpec::Dihedral(n)),
        "S" => Ok(GroupSpec::Symmetric(n)),
        "Q" if n >= 8 && n.is_power_of_two() => Ok(GroupSpec::Quaternion(n)),
        "M" => match arith::prime_power(n as u64) {
            Some((p, e)) if e >= 3 && (p > 2 || e >= 4) => Ok(GroupSpec::Modular {
                p: p as usize,
                n: e,
            }),
            _ => Err(bad(whole)),
        },
        _ => Err(bad(whole)),
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix('@') {
            if path.is_empty() {
                return Err(bad(s));
            }
            return Ok(GroupSpec::File(PathBuf::from(path)));
        }
        let parts = split_top_level(s);
        if parts.len() == 1 {
            return parse_factor(parts[0], s);
        }
        let factors = parts
            .into_iter()
            .map(|p| parse_factor(p, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupSpec::Product(factors))
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group> {
        match self {
            GroupSpec::Cyclic(n) => group::cyclic(*n),
            GroupSpec::Dihedral(n) => group::dihedral(*n),
            GroupSpec::Quaternion(n) => group::dicyclic(n / 4),
            GroupSpec::Dicyclic(m) => group::dicyclic(*m),
            GroupSpec::Modular { p, n } => group::modular_m(*p, *n),
            GroupSpec::Symmetric(n) => group::symmetric(*n),
            GroupSpec::Heisenberg(p) => group::heisenberg(*p),
            GroupSpec::Alternating4 => group::alternating4(),
            GroupSpec::Metacyclic(m, k, t) => group::metacyclic(*m, *k, *t),
            GroupSpec::File(path) => load_group_file(path),
            GroupSpec::Product(factors) => {
                let cyclic: Option<Vec<usize>> = factors
                    .iter()
                    .map(|f| match f {
                        GroupSpec::Cyclic(n) => Some(*n),
                        _ => None,
                    })
                    .collect();
                if let Some(ns) = cyclic {
                    return group::abelian_from_invariants(&ns);
                }
                let mut it = factors.iter();
                let first = it.next().expect("products have factors").build()?;
                it.try_fold(first, |acc, f| group::direct_product(&acc, &f.build()?))
            }
        }
    }
}
