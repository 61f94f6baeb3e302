//! Truncated regular and point-action representations, spectral
//! certificates and block-structure checks.

mod checks;
mod matrix;
mod regular;
mod spectral;

pub use checks::*;
pub use matrix::{MatrixExport, SparseMatrix, Triplet};
pub use regular::{
    action_matrix, in_domain, lambda_image, lambda_matrix, rho_image, rho_matrix, PointAction, RepMatrix, Truncation,
};
pub use spectral::{min_eig, min_eig_with, norm_lower_bound, psd_refute, PsdCertificate, DENSE_LIMIT};
