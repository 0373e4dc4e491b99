//! Greedy spectral k-clustering.
//!
//! A graph is embedded through the first k eigenvectors of its normalized
//! Laplacian, `f(u) = deg(u)^{-1/2} (ξ_1(u), …, ξ_k(u))`, and then cut into k
//! clusters by repeatedly removing the densest ball of radius `2R` in the
//! embedding. The crate also ships the quality measures used to judge such a
//! partition: external and internal conductance, the permutation-minimized
//! partition distance and spectral-concentration checks.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`], [`partition`], [`planted`] | graph container, partitions, planted generator |
//! | [`spectral`] | normalized Laplacian, eigensolvers, embedding |
//! | [`cluster`] | exact and sampled greedy clustering, k-means baseline |
//! | [`metrics`] | conductance, strength, distance, concentration, gap report |

pub mod cluster;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod partition;
pub mod planted;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{load_edge_list, parse_edge_list, Graph};
pub use partition::Partition;
pub use planted::{generate_planted, PlantedModel};
pub use spectral::{
    compute_spectrum, dense_spectrum_oracle, embed, Embedding, SolverOptions, Spectrum,
};

/// Random generator used everywhere a seed is accepted: ChaCha8 seeded through
/// `SeedableRng::seed_from_u64`. Changing it would change every published seed.
pub type SeededRng = rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    SeededRng::seed_from_u64(seed)
}
