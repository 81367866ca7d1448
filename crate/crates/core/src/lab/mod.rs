//! Verification harness for the exponential-graph and Kneser-graph
//! constructions: canonical colorings, color blocks, homomorphism
//! extraction, multichromatic formulas and product identities.

pub mod catalog;
pub mod exponential;
pub mod extraction;
pub mod hedetniemi;
pub mod report;
pub mod stahl;
pub mod suites;

pub use catalog::{catalog, catalog_entry, catalog_pairs, kneser_parameters, CatalogEntry};
pub use exponential::{
    block_decomposition, canonical_coloring, chromatic_superadditivity_check, constant_clique_check,
    constant_clique_inequality, exponential_chromatic, verify_blocks_totally_joined, BlockDecomposition,
    LoopFreeChromatic,
};
pub use extraction::{
    exponential_regions, extract_from_exponential, extract_from_regions, extract_kneser_hom, synthetic_block_graph,
    verify_extraction, KneserExtraction, SyntheticBlockGraph,
};
pub use hedetniemi::{hedetniemi_check, poljak_rodl_upper, PoljakRodlRecord};
pub use report::{certificate_ref, from_json, sort_reports, to_csv, to_json, Report, Summary, Verdict};
pub use stahl::{stahl_check, stahl_conjecture, stahl_decomposition, subadditivity_reports, StahlInstance};
pub use suites::{run_all, run_suite, Suite, SuiteParams};
