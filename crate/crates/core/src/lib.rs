//! Computational companion to the Picard group of moduli of semistable
//! `G`-bundles on curves.
//!
//! For a simple, simply connected group `G` (given by its [`LieType`]) the
//! crate computes
//!
//! * root data in Bourbaki numbering ([`root_system`]),
//! * Weyl dimensions and Dynkin indices, with a Freudenthal weight-multiset
//!   oracle ([`rep_theory`]),
//! * level-`l` alcoves and Verlinde numbers with a certified integer
//!   rounding, plus a Kac-Peterson S-matrix oracle ([`verlinde`]),
//! * weighted projective spaces, their Picard generator degree and graded
//!   dimensions ([`wps`]),
//! * the resulting Picard report: generator `Theta_{V(w_d)}`, `m_G`,
//!   genus-one model and local factoriality ([`picard`]),
//! * the reference tables of minimal-index weights, comarks and weighted
//!   projective types ([`tables`]).
//!
//! [`selftest`] bundles the cross-checks into one battery.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod picard;
pub mod rep_theory;
pub mod root_system;
pub mod selftest;
mod snf;
pub mod tables;
pub mod verlinde;
pub mod wps;

pub use error::{Error, Result};
pub use root_system::{Elem, LieType, RootDatum, Series, WeightVec};
pub use snf::{invariant_factors, lattice_index};
