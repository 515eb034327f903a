//! Floating-point models of the moment maps on `W = M_{p,n} x M_{q,n} x M_{t,n}`,
//! used as an independent oracle for the orbit combinatorics.

pub mod beta;
pub mod case2;
pub mod identify;
pub mod linalg;
pub mod rng;
pub mod sampling;
pub mod verify;

pub use beta::{beta_map, levi_element, sample_stabilizer, BetaValue, OrthogonalPair, StabilizerData};
pub use case2::{equivariance_defect, Case2Geometry, FiberResiduals, LeviElement, Projection, SmallerPairPoint};
pub use identify::{
    identify_orbit, nilpotent_ranks, nullcone_dims, numeric_orbit_dim, numeric_stabilizer_dim, orbit_from_ranks,
    predicted_ranks, rank_profile, stabilizer_codim_check, NullConeDims, OrbitAction, RankProfile, SignedRanks,
    StabilizerCheck,
};
pub use linalg::{numeric_rank, CMat, RankInfo};
pub use sampling::{
    moment_images, reference_point, sample_null_cone, sample_null_cone_range, GroupElement, MomentImages,
    NullConePoint, Stratum,
};
pub use verify::{numeric_verify, verify_image_closure, Check, ImageClosureReport, VerifyOptions, VerifyReport};
