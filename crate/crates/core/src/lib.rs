//! Theta lifts of nilpotent orbits for the real dual pairs
//! `O(p,q) x Sp(2n,R)` and their relatives.
//!
//! The crate is split along the computational layers:
//!
//! - [`partitions`]: partitions, signed Young diagrams, collapses, orbit dimensions.
//! - [`dualpairs`]: parameter records and range/case predicates.
//! - [`orbitlifts`]: theta lifts of orbits and associated cycles.
//! - [`unipotent`]: infinitesimal characters and Barbasch-Vogan duality.
//! - [`characters`]: exact formal characters of compact groups, graded Fock and
//!   null-cone characters, isotropy dimensions.
//! - [`momentmap`]: floating-point models of the moment maps, used as an
//!   independent numerical oracle for the combinatorics.

pub mod characters;
pub mod dualpairs;
mod error;
pub mod momentmap;
pub mod orbitlifts;
pub mod partitions;
pub mod unipotent;

pub use dualpairs::{Case, DualPairParams, Family, Normalization, Twist};
pub use error::{Error, Result};
pub use orbitlifts::{GenuineCompactType, OrbitCycle, Provenance};
pub use partitions::{LieType, Partition, Sign, SignedFamily, SignedPartition, SignedRow};
pub use unipotent::{Half, InfChar};
