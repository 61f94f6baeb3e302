use thiserror::Error;

/// Errors raised by the structural and algebraic layers.
///
/// Mathematical failures carry a rendered witness so that a report can point
/// at the offending element or coefficient.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum IsgError {
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generators do not share one carrier (sizes {left} and {right})")]
    CarrierMismatch { left: usize, right: usize },
    #[error("map is not injective: {0}")]
    NotInjective(String),
    #[error("table is not an inverse semigroup: {0}")]
    NotInverseSemigroup(String),
    #[error("table is not a group: {0}")]
    NotGroup(String),
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("subset is not upward closed: {witness} lies in the upward closure but not in the subset")]
    NotUpwardClosed { witness: String },
    #[error("omega cosets fail to partition: {witness}")]
    PartitionFailure { witness: String },
    #[error("element {0} does not belong to the semigroup context")]
    ContextMismatch(String),
    #[error("identity mismatch at {elem}: left {left}, right {right}")]
    IdentityMismatch { elem: String, left: String, right: String },
    #[error("witness identity fails at {elem}: left {left}, right {right}")]
    WitnessFailure { elem: String, left: String, right: String },
    #[error("{0} is not in the coset of the representative")]
    NotInCoset(String),
    #[error("word {0} is not of the form a b^-1 with positive a, b")]
    NotPositivePair(String),
    #[error("product {0} involves cancellation at the junction")]
    CancellationPresent(String),
    #[error("element {0} lies outside the fiber being factorized")]
    UnsupportedCoefficient(String),
    #[error("matrix is not Hermitian: entry {row},{col}")]
    NotHermitian { row: usize, col: usize },
    #[error("invalid input: {0}")]
    Input(String),
}

impl IsgError {
    /// True for failures of a mathematical assertion, as opposed to malformed input.
    pub fn is_mathematical(&self) -> bool {
        !matches!(
            self,
            IsgError::Input(_)
                | IsgError::CarrierMismatch { .. }
                | IsgError::ContextMismatch(_)
                | IsgError::CapExceeded { .. }
        )
    }
}

pub type Result<T, E = IsgError> = std::result::Result<T, E>;
