//! Finite set-theoretic solutions of the pentagon equation
//! `s₂₃ s₁₃ s₁₂ = s₁₂ s₂₃`.
//!
//! A solution on `{0, …, n-1}` is stored as a table of pairs
//! `s(x, y) = (x·y, θ_x(y))`. The crate covers construction of the known
//! families, verification, retraction, classification of involutive solutions
//! by `(|X|, dim A, dim G)`, exhaustive enumeration, isomorphism testing and
//! the growth of the associated structure monoid.
//!
//! ```
//! use pentagon_core::{canonical_solution, classify};
//!
//! let s = canonical_solution(3, 1, 1).unwrap();
//! assert!(s.check_pentagon() && s.check_involutive());
//! assert_eq!(classify(&s).unwrap().to_string(), "(3,1,1)");
//! ```

pub mod analysis;
pub mod constructors;
pub mod enumeration;
pub mod error;
pub mod format;
pub mod group;
pub mod isomorphism;
pub mod monoid;
pub mod solution;

pub use analysis::{
    abelian_structure, check_simple, classify, is_irretractable, is_isomorphic_invariant, left_group_decomposition,
    retract, retract_tower, ClassificationTriple, LeftGroupDecomposition, RetractResult,
};
pub use constructors::{
    canonical_solution, cycle_solution, decomposition_solution, endo_solution, ext_solution, group_solution,
    idempotent_pair_solution, irretractable_solution, sigma_condition_witness, sigma_search, Decomposition, SigmaMap,
};
pub use enumeration::{
    count_up_to_iso, enumerate_naive, enumerate_pruned, expected_count, EnumerationOptions, EnumerationOutcome,
    EnumerationReport, IsoClass,
};
pub use error::{Error, GroupAxiom, Result};
pub use format::{emit_sigma, emit_solution, parse_sigma, parse_solution, ParseError};
pub use group::{all_permutations, Elementary2Group, GroupTable};
pub use isomorphism::{canonical_form, find_isomorphism, find_isomorphism_bounded};
pub use monoid::{
    estimate_growth_degree, growth_series, growth_series_exhaustive, growth_series_of, normal_forms, presentation_of,
    rank_expected, DegreeEstimate, GrowthSeries, MonoidPresentation, StratifiedClosure, WordClosure,
};
pub use solution::{is_morphism, product_solution, Bijection, MultTable, SolutionTable, ThetaFamily, TripleWitness};
