use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{Construction, Group, Verification};
use crate::error::{Error, Result};

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Cycle on the listed points, acting on `0..degree`.
    pub fn cycle(degree: usize, points: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for (i, &p) in points.iter().enumerate() {
            let q = points[(i + 1) % points.len()];
            if p >= degree || q >= degree {
                return Err(Error::NotAPermutation(format!("cycle {points:?}")));
            }
            images[p] = q;
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Left-to-right composition: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }
}

/// Closure of `gens` under composition. Elements are numbered in breadth-first
/// order from the identity, multiplying by generators on the right.
pub fn group_from_generators(gens: &[Permutation], cap: usize) -> Result<Group> {
    build_perm_group(gens, cap, "perm", "generated")
}

pub(crate) fn build_perm_group(
    gens: &[Permutation],
    cap: usize,
    label: &str,
    source: &str,
) -> Result<Group> {
    if cap == 0 {
        return Err(Error::InvalidParameters("cap must be positive".into()));
    }
    let degree = gens.first().map_or(1, Permutation::degree);
    if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: bad.degree(),
        });
    }
    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut gen_idx = Vec::with_capacity(gens.len());
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let next = elements[i].then(g);
            if !index.contains_key(&next) {
                if elements.len() == cap {
                    return Err(Error::CapExceeded {
                        what: "permutation closure",
                        cap,
                    });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        i += 1;
    }
    for g in gens {
        gen_idx.push(index[g]);
    }
    let order = elements.len();
    let elements = Arc::new(elements);
    let index = Arc::new(index);
    Group::from_rule(
        order,
        move |a, b| index[&elements[a].then(&elements[b])],
        label,
        Construction {
            source: source.to_string(),
            verification: Verification::Construction,
        },
        gen_idx,
        Vec::new(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = group_from_generators(&[], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn s3_from_transposition_and_cycle() {
        let t = Permutation::new(vec![1, 0, 2]).unwrap();
        let c = Permutation::new(vec![1, 2, 0]).unwrap();
        let g = group_from_generators(&[t, c], 100).unwrap();
        assert_eq!(g.order(), 6);
        g.verify_axioms().unwrap();
        assert!(!g.is_abelian());
    }

    #[test]
    fn errors() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            group_from_generators(&[a, b], 10),
            Err(Error::DegreeMismatch { .. })
        ));
        let c = Permutation::cycle(5, &[0, 1, 2, 3, 4]).unwrap();
        let t = Permutation::cycle(5, &[0, 1]).unwrap();
        assert!(matches!(
            group_from_generators(&[c, t], 100),
            Err(Error::CapExceeded { .. })
        ));
        assert!(Permutation::new(vec![0, 0]).is_err());
    }
}
