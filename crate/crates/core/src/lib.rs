//! Chermak–Delgado lattices of small finite groups.
//!
//! The crate builds concrete finite groups ([`group`]), enumerates their
//! complete subgroup lattices ([`lattice`]), computes Chermak–Delgado
//! measures, lattices and the counts δ(G) and v(G) ([`cd`]), recognizes the
//! groups named by the small-δ and small-v classifications ([`classify`]),
//! and scans a deterministic catalog of groups ([`catalog`], [`scan`]).
//!
//! ```
//! use std::sync::Arc;
//! use cdkit::{cd::cd_report, group::dicyclic, lattice::all_subgroups};
//!
//! let q8 = Arc::new(dicyclic(2).unwrap());
//! let lattice = all_subgroups(q8).unwrap();
//! let report = cd_report(&lattice);
//! assert_eq!(report.m_star.value(), 16);
//! assert_eq!((report.delta, report.v), (1, 1));
//! ```

pub mod arith;
pub mod bits;
pub mod catalog;
pub mod cd;
pub mod classify;
pub mod dot;
pub mod error;
pub mod group;
pub mod lattice;
pub mod par;
pub mod scan;
pub mod spec;

pub use error::{Error, Result};
