//! Computational toolkit for inverse semigroups, their graded algebras and
//! truncated regular representations.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod report;
pub mod rep;
pub mod semigroup;
pub mod suite;

pub use error::{IsgError, Result};
