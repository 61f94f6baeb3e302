//! Directed graphs, their inverse semigroups `S_E` and the free-group grading.

mod digraph;
mod exel;
mod pairs;
mod word;

pub use digraph::{DirectedGraph, Edge, Path};
pub use exel::{
    fiber_scan, fiber_support, orthogonality_check, semisaturation_factorize, FactorPair, FactorSet, Factorization,
    OrthogonalityReport, PrefixCase, FLOAT_FACTOR_TOL,
};
pub use pairs::{enumerate_pairs, grading_phi, multiply_pairs, star_pair, GraphInverseSemigroup, PairEnumeration, PathPair};
pub use word::{free_reduce, FreeGroup, FreeWord, Letter};
