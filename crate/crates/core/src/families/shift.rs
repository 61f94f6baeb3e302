//! Translations of `ℤ` restricted to half-lines: the inverse subsemigroup of
//! `I(ℤ)` generated by the shift `a(n) = n + 1` and the identity `e` on `ℕ`.
//!
//! The model is exact. Every element is `n ↦ n + shift` on either all of
//! `ℤ` or the half-line `[from, ∞)`.

use std::fmt;

use crate::algebra::{convolve, epsilon_restrict, involution, AlgebraElement, Grading, Scalar};
use crate::error::Result;
use crate::semigroup::{InverseSemigroup, Integers};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftMap {
    pub shift: i64,
    /// Left end of the domain; `None` for all of `ℤ`.
    pub from: Option<i64>,
}

impl ShiftMap {
    pub fn total(shift: i64) -> Self {
        Self { shift, from: None }
    }

    pub fn from(shift: i64, from: i64) -> Self {
        Self { shift, from: Some(from) }
    }

    pub fn apply(&self, p: i64) -> Option<i64> {
        match self.from {
            Some(f) if p < f => None,
            _ => Some(p + self.shift),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ShiftMap) -> ShiftMap {
        let from = match (other.from, self.from) {
            (None, None) => None,
            (Some(p), None) => Some(p),
            (None, Some(m)) => Some(m - other.shift),
            (Some(p), Some(m)) => Some(p.max(m - other.shift)),
        };
        ShiftMap { shift: self.shift + other.shift, from }
    }

    pub fn inverse(&self) -> ShiftMap {
        ShiftMap { shift: -self.shift, from: self.from.map(|f| f + self.shift) }
    }
}

impl fmt::Debug for ShiftMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.from {
            None => write!(f, "n+{} on Z", self.shift),
            Some(m) => write!(f, "n+{} on [{},inf)", self.shift, m),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ShiftSemigroup;

impl InverseSemigroup for ShiftSemigroup {
    type Elem = ShiftMap;

    fn mul(&self, a: &ShiftMap, b: &ShiftMap) -> ShiftMap {
        a.compose(b)
    }

    fn star(&self, a: &ShiftMap) -> ShiftMap {
        a.inverse()
    }

    fn is_zero(&self, _a: &ShiftMap) -> bool {
        false
    }
}

/// Membership in the bicyclic subsemigroup generated by `b = ae`: maps
/// whose domain and range both lie in `ℕ`.
pub fn in_bicyclic(s: &ShiftMap) -> bool {
    s.from.is_some_and(|f| f >= 0 && f + s.shift >= 0)
}

/// The degree grading `φ(s) = shift`; its kernel is the idempotents.
pub fn shift_grading() -> Grading<ShiftMap, Integers> {
    Grading::new(Integers, |s: &ShiftMap| Some(s.shift))
}

/// The elements of the counterexample and the expectation of `xx*`.
#[derive(Debug, Clone)]
pub struct ShiftContext {
    /// Windows act on the points `0..=window`.
    pub window: usize,
    pub a: ShiftMap,
    pub e: ShiftMap,
    pub b: ShiftMap,
    /// `x = e − a`.
    pub x: AlgebraElement<ShiftMap>,
    pub x_x_star: AlgebraElement<ShiftMap>,
    /// `ε(xx*)` onto the span of the bicyclic subsemigroup.
    pub epsilon_x_x_star: AlgebraElement<ShiftMap>,
}

impl ShiftContext {
    /// `e − b − b*`, the expected value of `ε(xx*)`.
    pub fn expected_epsilon(&self) -> AlgebraElement<ShiftMap> {
        let s = ShiftSemigroup;
        AlgebraElement::from_terms(
            &s,
            [(self.e, Scalar::from_int(1)), (self.b, Scalar::from_int(-1)), (self.b.inverse(), Scalar::from_int(-1))],
        )
        .expect("context elements")
    }

    pub fn window_points(&self) -> Vec<i64> {
        (0..=self.window as i64).collect()
    }

    /// `b^i b*^j` for `i, j ≤ window`.
    pub fn bicyclic_truncation(&self) -> Vec<ShiftMap> {
        let n = self.window as i64;
        let mut out = Vec::new();
        for j in 0..=n {
            for i in 0..=n {
                out.push(ShiftMap::from(i - j, j));
            }
        }
        out
    }

    /// Elements with finite domain start in `-window..=window` whose image
    /// start also lies there, plus the total shifts of size at most `window`.
    pub fn truncation(&self) -> Vec<ShiftMap> {
        let n = self.window as i64;
        let mut out: Vec<ShiftMap> = (-n..=n).map(ShiftMap::total).collect();
        for f in -n..=n {
            for g in -n..=n {
                out.push(ShiftMap::from(g - f, f));
            }
        }
        out.sort();
        out
    }
}

pub fn shift_context(window: usize) -> Result<ShiftContext> {
    let s = ShiftSemigroup;
    let a = ShiftMap::total(1);
    let e = ShiftMap::from(0, 0);
    let b = s.mul(&a, &e);
    let x = AlgebraElement::from_terms(&s, [(e, Scalar::from_int(1)), (a, Scalar::from_int(-1))])?;
    let x_x_star = convolve(&s, &x, &involution(&s, &x))?;
    let epsilon_x_x_star = epsilon_restrict(&x_x_star, in_bicyclic);
    Ok(ShiftContext { window, a, e, b, x, x_x_star, epsilon_x_x_star })
}
