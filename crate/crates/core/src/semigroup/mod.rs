//! Inverse semigroups and groups: the abstract interfaces, concrete carriers
//! and the order-theoretic computations on finite semigroups.

mod partial;
mod structure;
mod table;

pub use partial::{close_generators, Closure, PartialBijection};
pub use structure::{
    domain_members, idempotents, is_e_unitary, kernel_of, max_group_image, natural_leq,
    omega_coset, omega_coset_diagnostic, omega_coset_partition, upward_closure, upward_closed,
    CosetDiagnostic, MaxGroupImage,
};
pub use table::{FiniteInverseSemigroup, GroupTable, Homomorphism};

use std::fmt::Debug;
use std::hash::Hash;

/// An inverse semigroup presented by its elements' product and involution.
///
/// Implementations may be infinite (graph semigroups, Bruck-Reilly
/// extensions); anything that must enumerate works on an explicit list of
/// elements instead.
pub trait InverseSemigroup {
    type Elem: Clone + Ord + Hash + Debug;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn star(&self, a: &Self::Elem) -> Self::Elem;

    /// True iff `a` is the zero of the semigroup.
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Membership test used to reject elements from a foreign context.
    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn is_idempotent(&self, a: &Self::Elem) -> bool {
        self.mul(a, a) == *a
    }

    /// Human-readable rendering used in reports and witnesses.
    fn render(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// A discrete group.
pub trait Group {
    type Elem: Clone + Ord + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;

    fn render(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// The free abelian group of rank `n`, elements as integer vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntLattice {
    pub rank: usize,
}

impl IntLattice {
    pub fn new(rank: usize) -> Self {
        Self { rank }
    }
}

impl Group for IntLattice {
    type Elem = Vec<i64>;

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    fn op(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inverse(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }
}

/// The integers under addition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Group for Integers {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }
    fn op(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }
    fn inverse(&self, a: &i64) -> i64 {
        -a
    }
    fn render(&self, a: &i64) -> String {
        a.to_string()
    }
}
