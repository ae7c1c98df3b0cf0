//! Exact lattice Gale duality between admissible collections in finitely
//! generated abelian groups and strongly regular simplicial fans.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: Smith/Hermite normal forms, Diophantine systems, exact LP
//!   and integer feasibility.
//! * [`abelian`]: groups in invariant-factor form, subgroup and semigroup
//!   membership, admissibility and links.
//! * [`fans`]: vector configurations, simplicial fans, Demazure roots and
//!   strong regularity.
//! * [`gale`]: lattice and rational Gale transforms, canonical forms and
//!   equivalence of pairs.
//! * [`classify`]: the maximal strongly regular fan of a pair, G-sets and
//!   the classification reports.
//! * [`io`]: the JSON interchange schema.

pub mod abelian;
pub mod classify;
mod error;
pub mod fans;
pub mod gale;
mod index_set;
pub mod io;
pub mod linalg;

pub use error::{Error, Result};
pub use index_set::{IndexSet, MAX_INDEX};
