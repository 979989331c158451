//! Cayley-table ingestion and the plain-text group file format.
//!
//! ```text
//! perm <degree>          cayley <n>
//! <images of gen 1>      <row 0>
//! <images of gen 2>      ...
//! ...                    <row n-1>
//! ```
//! Blank lines and `#` comments are ignored; all indices are 0-based and the
//! identity of a Cayley table is index 0.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::perm::build_perm_group;
use super::{element_cap, Construction, Group, Permutation, Verification};
use crate::error::{Axiom, Error, Result};

/// Tables up to this size get an exhaustive associativity check.
pub const ASSOCIATIVITY_EXHAUSTIVE_LIMIT: usize = 256;

fn not_a_group(axiom: Axiom, witness: Vec<usize>) -> Error {
    Error::NotAGroup { axiom, witness }
}

impl Group {
    /// Validates an n x n table and wraps it as a group.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Group> {
        Self::from_cayley_table_labeled(table, "cayley", "cayley table")
    }

    pub(crate) fn from_cayley_table_labeled(
        table: &[Vec<usize>],
        label: &str,
        source: &str,
    ) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidParameters("empty Cayley table".into()));
        }
        let cap = element_cap();
        if n > cap {
            return Err(Error::CapExceeded {
                what: "group order",
                cap,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameters(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(not_a_group(Axiom::Closure, vec![a, b]));
                }
                flat.push(v as u32);
            }
        }
        let t = |a: usize, b: usize| flat[a * n + b] as usize;
        for x in 0..n {
            if t(0, x) != x || t(x, 0) != x {
                return Err(not_a_group(Axiom::Identity, vec![x]));
            }
        }
        for x in 0..n {
            if !(0..n).any(|y| t(x, y) == 0 && t(y, x) == 0) {
                return Err(not_a_group(Axiom::Inverse, vec![x]));
            }
        }
        let verification = if n <= ASSOCIATIVITY_EXHAUSTIVE_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = t(a, b);
                    for c in 0..n {
                        if t(ab, c) != t(a, t(b, c)) {
                            return Err(not_a_group(Axiom::Associativity, vec![a, b, c]));
                        }
                    }
                }
            }
            Verification::Exhaustive
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..10 * n * n {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if t(t(a, b), c) != t(a, t(b, c)) {
                    return Err(not_a_group(Axiom::Associativity, vec![a, b, c]));
                }
            }
            // Powers of every element must return to the identity.
            for x in 1..n {
                let mut cur = x;
                let mut steps = 1;
                while cur != 0 {
                    cur = t(cur, x);
                    steps += 1;
                    if steps > n {
                        return Err(not_a_group(Axiom::Associativity, vec![x]));
                    }
                }
            }
            Verification::Partial
        };
        Ok(Group::from_table(
            n,
            flat,
            label,
            Construction {
                source: source.to_string(),
                verification,
            },
        ))
    }
}

/// Parsed contents of a group file, before closure or validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupFile {
    Perm {
        degree: usize,
        gens: Vec<Permutation>,
    },
    Cayley(Vec<Vec<usize>>),
}

impl GroupFile {
    pub fn parse(text: &str, path: &Path) -> Result<GroupFile> {
        let err = |line: usize, msg: String| Error::Parse {
            path: PathBuf::from(path),
            line,
            msg,
        };
        let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("").trim();
            (!l.is_empty()).then_some((i + 1, l))
        });
        let (hline, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
        let mut parts = header.split_whitespace();
        let kind = parts.next().unwrap_or("");
        let size: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err(hline, format!("bad header `{header}`")))?;
        if parts.next().is_some() {
            return Err(err(hline, format!("bad header `{header}`")));
        }
        let mut rows = Vec::new();
        for (ln, l) in lines {
            let row: Vec<usize> = l
                .split_whitespace()
                .map(|tok| tok.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| err(ln, format!("bad index: {e}")))?;
            if row.len() != size {
                return Err(err(
                    ln,
                    format!("expected {size} entries, found {}", row.len()),
                ));
            }
            rows.push((ln, row));
        }
        match kind {
            "perm" => {
                if size == 0 {
                    return Err(err(hline, "degree must be positive".into()));
                }
                let gens = rows
                    .into_iter()
                    .map(|(ln, r)| Permutation::new(r).map_err(|e| err(ln, e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupFile::Perm { degree: size, gens })
            }
            "cayley" => {
                if rows.len() != size {
                    let ln = rows.last().map_or(hline, |r| r.0);
                    return Err(err(
                        ln,
                        format!("expected {size} rows, found {}", rows.len()),
                    ));
                }
                Ok(GroupFile::Cayley(rows.into_iter().map(|r| r.1).collect()))
            }
            other => Err(err(hline, format!("unknown header `{other}`"))),
        }
    }

    pub fn into_group(self, label: &str, source: &str) -> Result<Group> {
        match self {
            GroupFile::Perm { gens, .. } => build_perm_group(&gens, element_cap(), label, source),
            GroupFile::Cayley(rows) => Group::from_cayley_table_labeled(&rows, label, source),
        }
    }
}

/// Parses and validates a group file's text; `path` is used for provenance
/// and error locations.
pub fn parse_group_file(text: &str, path: &Path) -> Result<Group> {
    let shown = path.display().to_string();
    GroupFile::parse(text, path)?.into_group(&format!("@{shown}"), &shown)
}

/// Cayley-table rendering of `g` in the group file format.
pub fn group_file_text(g: &Group) -> String {
    let n = g.order();
    let mut out = format!("# {}\ncayley {n}\n", g.label());
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("test.grp")
    }

    #[test]
    fn trivial_and_z3_tables() {
        let g = Group::from_cayley_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let z3: Vec<Vec<usize>> = (0..3)
            .map(|i| (0..3).map(|j| (i + j) % 3).collect())
            .collect();
        let g = Group::from_cayley_table(&z3).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_abelian());
        assert_eq!(g.construction().verification, Verification::Exhaustive);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // A loop of order 5 with identity and inverses but no associativity.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match Group::from_cayley_table(&t) {
            Err(Error::NotAGroup {
                axiom: Axiom::Associativity,
                witness,
            }) => {
                let (a, b, c) = (witness[0], witness[1], witness[2]);
                assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn other_axiom_violations() {
        assert!(matches!(
            Group::from_cayley_table(&[vec![0, 2], vec![1, 0]]),
            Err(Error::NotAGroup {
                axiom: Axiom::Closure,
                ..
            })
        ));
        assert!(matches!(
            Group::from_cayley_table(&[vec![1, 0], vec![0, 1]]),
            Err(Error::NotAGroup {
                axiom: Axiom::Identity,
                ..
            })
        ));
        assert!(matches!(
            Group::from_cayley_table(&[vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 0]]),
            Err(Error::NotAGroup {
                axiom: Axiom::Inverse,
                ..
            })
        ));
    }

    #[test]
    fn perm_file() {
        let text = "# S3\nperm 3\n1 0 2\n\n1 2 0  # 3-cycle\n";
        let g = parse_group_file(text, p()).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn cayley_file() {
        let g = parse_group_file("cayley 1\n0\n", p()).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        match parse_group_file("perm 3\n1 0 2\n1 x 0\n", p()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_group_file("perm 3\n1 1 2\n", p()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_group_file("cayley 2\n0 1\n", p()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_group_file("ring 3\n", p()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let g = crate::group::dihedral(4).unwrap();
        let h = parse_group_file(&group_file_text(&g), p()).unwrap();
        assert_eq!(h.cayley_table(), g.cayley_table());
    }
}
