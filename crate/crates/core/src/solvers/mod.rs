//! Exact solvers for coloring invariants.

pub mod bitset;
pub mod chromatic;
pub mod clique;
pub mod fractional;
pub mod greedy;
pub mod hom;
pub mod mis;
pub mod multichromatic;
pub mod simplex;
mod interior;

pub use chromatic::{chromatic_number, chromatic_number_with, is_k_colorable, ChromaticCertificate, ChromaticOptions, LowerBoundReason};
pub use clique::{greedy_clique, max_clique, max_clique_lower_bound, CliqueResult};
pub use fractional::{fractional_chromatic, fractional_chromatic_with, verify_fractional_certificate, FractionalCertificate, Pricing};
pub use greedy::{greedy_coloring, greedy_upper_bound};
pub use hom::{homomorphism_exists, HomOutcome, HomResult};
pub use mis::{enumerate_maximal_independent_sets, maximum_independent_set};
pub use multichromatic::{multichromatic_number, set_coloring_exists, subset_rank, MultichromaticOptions, MultichromaticResult, SetColoring};
