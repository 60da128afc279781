//! Exact combinatorics of pattern avoidance in permutations and multiset
//! permutations.
//!
//! * [`word`]: words, multiset specifications, and order-isomorphic containment.
//! * [`enumeration`]: avoider counts and the closed forms they are checked against.
//! * [`matrix`]: 0-1 matrix containment and the exact extremal function `f(n, Q)`.
//! * [`bigraph`]: ordered bipartite graphs, block contraction, fibers, and bounds.
//! * [`reference`]: brute-force oracles used by the tests and verify suites.
//! * [`verify`]: named invariant suites producing reproducible manifests.
//!
//! Counting code is generic over the [`scalar::Exact`] integer type and the
//! approximate diagnostics over [`scalar::Real`]; the aliases below fix the
//! defaults used throughout the public records.

pub mod bigraph;
pub mod enumeration;
pub mod error;
pub mod matrix;
pub mod reference;
pub mod report;
pub mod scalar;
pub mod verify;
pub mod word;

/// Exact count type of every record.
pub type Count = num_bigint::BigUint;
/// Exact rational over [`Count`], as used by the Stirling closed form.
pub type Rational = num_rational::Ratio<Count>;
/// Slopes `f(n, Q) / n` and bound exponents.
pub type Slope = num_rational::Ratio<u64>;
/// Floating type of growth roots and the Stirling approximation.
pub type Real = f64;

pub use bigraph::{
    adjacency, bounds, census_avoiding_graphs, contract, fiber_size, graph_of_word,
    ordered_contains, BipartiteGraph, BoundRecord, ContractionPlan,
};
pub use enumeration::{
    catalan, count_avoiders, count_multiset_avoiders, sequence, stirling_approx, stirling_count,
    total_words, CountOptions, CountRecord,
};
pub use error::{Error, Result};
pub use matrix::{
    dq_estimate, extremal_f, matrix_contains, perm_to_matrix, BinaryMatrix, ExtremalRecord,
};
pub use word::{
    avoids, canonicalize, contained_patterns, contains, validate_word, MultisetSpec, Word,
};
