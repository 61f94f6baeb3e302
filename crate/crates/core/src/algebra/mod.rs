//! The complex algebra of an inverse semigroup modulo its zero, the
//! restriction expectation, gradings and positivity witnesses.

mod element;
mod grading;
mod scalar;
mod sos;

pub use element::{convolve, epsilon_restrict, involution, star_square, AlgebraElement};
pub use grading::{
    bundle_fibers, check_grading, epsilon_star_square, fiber_decompose, BundleReport, FiberFamily, Grading,
    GradingReport,
};
pub use scalar::{format_rational, parse_rational, Coefficient, Scalar};
pub use sos::{sos_witness_coset, sos_witness_idempotent_kernel};
