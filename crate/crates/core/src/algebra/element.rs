use std::collections::BTreeMap;

use super::scalar::{Coefficient, Scalar};
use crate::error::{IsgError, Result};
use crate::semigroup::InverseSemigroup;

/// A finitely supported function on the nonzero elements of a semigroup.
///
/// The semigroup zero is identified with the algebra zero, so it never
/// appears in the support, and neither do zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement<E, K = Scalar> {
    terms: BTreeMap<E, K>,
}

impl<E: Ord + Clone + std::fmt::Debug, K: Coefficient> std::fmt::Debug for AlgebraElement<E, K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("({c})·{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<E: Ord + Clone, K: Coefficient> Default for AlgebraElement<E, K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Ord + Clone, K: Coefficient> AlgebraElement<E, K> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// Collects `terms`, summing repeats and dropping the semigroup zero.
    pub fn from_terms<S>(s: &S, terms: impl IntoIterator<Item = (E, K)>) -> Result<Self>
    where
        S: InverseSemigroup<Elem = E>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            if !s.contains(&e) {
                return Err(IsgError::ContextMismatch(s.render(&e)));
            }
            if !s.is_zero(&e) {
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    /// `c·e`, or zero when `e` is the semigroup zero.
    pub fn basis<S: InverseSemigroup<Elem = E>>(s: &S, e: E, c: K) -> Self {
        let mut out = Self::zero();
        if !s.is_zero(&e) {
            out.add_term(e, c);
        }
        out
    }

    /// Adds `c` to the coefficient of `e`; the caller guarantees `e` is nonzero.
    pub(crate) fn add_term(&mut self, e: E, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let sum = old.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn coeff(&self, e: &E) -> K {
        self.terms.get(e).cloned().unwrap_or_else(K::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&E, &K)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &E> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&(-K::one())))
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Keeps only the terms whose element satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&E) -> bool) -> Self {
        Self { terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect() }
    }

    pub fn map_coeffs<L: Coefficient>(&self, f: impl Fn(&K) -> L) -> AlgebraElement<E, L> {
        let mut out = AlgebraElement::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn to_float(&self) -> AlgebraElement<E, num_complex::Complex64> {
        self.map_coeffs(K::to_c64)
    }

    /// First element (in support order) where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(E, K, K)> {
        let mut keys: Vec<&E> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|e| {
            let (a, b) = (self.coeff(e), other.coeff(e));
            (a != b).then(|| (e.clone(), a, b))
        })
    }

    pub fn render<S: InverseSemigroup<Elem = E>>(&self, s: &S) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("({c})·{}", s.render(e))).collect();
        parts.join(" + ")
    }
}

fn check_context<S: InverseSemigroup, K: Coefficient>(s: &S, f: &AlgebraElement<S::Elem, K>) -> Result<()> {
    match f.support().find(|e| !s.contains(e) || s.is_zero(e)) {
        Some(e) => Err(IsgError::ContextMismatch(s.render(e))),
        None => Ok(()),
    }
}

/// `(f·g)(a) = Σ_{st=a} f(s)g(t)`, discarding products equal to zero.
pub fn convolve<S, K>(
    s: &S,
    f: &AlgebraElement<S::Elem, K>,
    g: &AlgebraElement<S::Elem, K>,
) -> Result<AlgebraElement<S::Elem, K>>
where
    S: InverseSemigroup,
    K: Coefficient,
{
    check_context(s, f)?;
    check_context(s, g)?;
    let mut out = AlgebraElement::zero();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            let ab = s.mul(a, b);
            if !s.is_zero(&ab) {
                out.add_term(ab, ca.clone() * cb.clone());
            }
        }
    }
    Ok(out)
}

/// `f* = Σ conj(f(s)) s*`.
pub fn involution<S, K>(s: &S, f: &AlgebraElement<S::Elem, K>) -> AlgebraElement<S::Elem, K>
where
    S: InverseSemigroup,
    K: Coefficient,
{
    let mut out = AlgebraElement::zero();
    for (a, c) in f.terms() {
        out.add_term(s.star(a), c.conj());
    }
    out
}

/// The restriction map onto the span of the subsemigroup `{h : in_h(h)}`.
pub fn epsilon_restrict<E, K>(f: &AlgebraElement<E, K>, in_h: impl Fn(&E) -> bool) -> AlgebraElement<E, K>
where
    E: Ord + Clone,
    K: Coefficient,
{
    f.restrict(|e| in_h(e))
}

/// `f*f`.
pub fn star_square<S, K>(s: &S, f: &AlgebraElement<S::Elem, K>) -> Result<AlgebraElement<S::Elem, K>>
where
    S: InverseSemigroup,
    K: Coefficient,
{
    convolve(s, &involution(s, f), f)
}
