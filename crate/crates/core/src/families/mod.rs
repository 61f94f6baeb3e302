//! Concrete families: Bruck-Reilly extensions, the half-line shifts inside
//! `I(ℤ)` and the Toeplitz semigroup of `(ℤⁿ, ℕⁿ)`.

mod bruck_reilly;
mod shift;
mod toeplitz;

pub use bruck_reilly::{br_coset_rep, br_multiply, br_phi, br_star, BRElement, BruckReilly, Endomorphism};
pub use shift::{in_bicyclic, shift_context, shift_grading, ShiftContext, ShiftMap, ShiftSemigroup};
pub use toeplitz::{
    beta_window, ql_lub, quasi_lattice_check, toeplitz_multiply, toeplitz_oracle_check, toeplitz_phi, toeplitz_star,
    OracleReport, QLPoint, QuasiLattice, QuasiLatticeReport, ToeplitzElement, ToeplitzSemigroup, ZnCone,
};
