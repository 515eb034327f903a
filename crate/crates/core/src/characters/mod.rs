//! Exact characters of products of compact unitary and orthogonal groups.

pub mod branching;
pub mod decompose;
pub mod fock;
pub mod group;
pub mod irreps;
pub mod isotropy;
pub mod laurent;

pub use branching::{branch_o, restrict_by_characters, OMultiset};
pub use decompose::{decompose, multiplicity, Decomposition, KType, KTypeMult};
pub use fock::{
    decomposed_spectrum, fock_graded_character, nullcone_graded_character, theta_sigma_spectrum, SpectrumDegree,
};
pub use group::{CompactGroup, Factor, FormalCharacter, GradedCharacter, Sector};
pub use irreps::{irrep_character, o_dim, product_character, weyl_dim, FactorLabel, OLabel};
pub use isotropy::{case1_isotropy_dim, case2_isotropy_dim, Case2Options, Case2Result};
