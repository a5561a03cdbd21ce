//! Generalized Hamming weights of linear codes and matroids, read off the
//! graded Betti numbers of the Stanley-Reisner ring of the independence
//! complex, with brute-force oracles for every derived quantity.

pub mod betti;
pub mod cli;
pub mod complex;
pub mod error;
pub mod finfield;
pub mod matroid;
pub mod subset;
pub mod weights;

pub use betti::{betti_fine_hochster, betti_fine_matroid, BettiDiagram, BettiTable};
pub use complex::{ChainComplexDims, SimplicialComplex};
pub use error::{Error, Result};
pub use finfield::{FieldMatrix, PrimeField};
pub use matroid::{CircuitSet, Matroid, Provenance};
pub use subset::{Subset, DEFAULT_MAX_GROUND};
pub use weights::{
    clifford_and_gonality, mds_profile, support_size, wei_duality_check, weights_bruteforce,
    weights_from_betti, whitney_polynomial, MdsProfile, WeiDuality, WeightReport,
    WhitneyPolynomial,
};
