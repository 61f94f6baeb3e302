use std::collections::BTreeMap;

use super::matrix::SparseMatrix;
use crate::algebra::{AlgebraElement, Coefficient};
use crate::error::{IsgError, Result};
use crate::families::ShiftMap;
use crate::semigroup::{InverseSemigroup, PartialBijection};

/// A finite ordered set of nonzero elements spanning a subspace of `ℓ²(S)`.
#[derive(Debug, Clone)]
pub struct Truncation<E> {
    basis: Vec<E>,
    index: BTreeMap<E, usize>,
}

impl<E: Ord + Clone> Truncation<E> {
    /// Drops zeros and repeated elements, keeping first occurrences.
    pub fn new<S: InverseSemigroup<Elem = E>>(s: &S, elems: impl IntoIterator<Item = E>) -> Self {
        let mut basis = Vec::new();
        let mut index = BTreeMap::new();
        for e in elems {
            if s.is_zero(&e) || index.contains_key(&e) {
                continue;
            }
            index.insert(e.clone(), basis.len());
            basis.push(e);
        }
        Self { basis, index }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[E] {
        &self.basis
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    /// The members satisfying `keep`, in basis order.
    pub fn filter(&self, keep: impl Fn(&E) -> bool) -> Self {
        let basis: Vec<E> = self.basis.iter().filter(|e| keep(e)).cloned().collect();
        let index = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Self { basis, index }
    }
}

/// A compressed representation matrix with the number of image vectors that
/// fell outside the truncation.
#[derive(Debug, Clone)]
pub struct RepMatrix<K: Coefficient> {
    pub matrix: SparseMatrix<K>,
    pub dropped: usize,
}

/// `b ∈ D_a`, i.e. `a*ab = b`.
pub fn in_domain<S: InverseSemigroup>(s: &S, a: &S::Elem, b: &S::Elem) -> bool {
    s.mul(&s.mul(&s.star(a), a), b) == *b
}

/// `Λ(a)δ_b`: the index of `ab` in the truncation, `Ok(None)` for the zero
/// vector and `Err(())` when the image was cut off.
pub fn lambda_image<S: InverseSemigroup>(
    s: &S,
    a: &S::Elem,
    b: &S::Elem,
    trunc: &Truncation<S::Elem>,
) -> std::result::Result<Option<usize>, ()> {
    if !in_domain(s, a, b) {
        return Ok(None);
    }
    let ab = s.mul(a, b);
    if s.is_zero(&ab) {
        return Ok(None);
    }
    trunc.index_of(&ab).map(Some).ok_or(())
}

/// `R(a)δ_b = δ_{ba}` when `baa* = b` and `ba ≠ 0`.
pub fn rho_image<S: InverseSemigroup>(
    s: &S,
    a: &S::Elem,
    b: &S::Elem,
    trunc: &Truncation<S::Elem>,
) -> std::result::Result<Option<usize>, ()> {
    if s.mul(&s.mul(b, a), &s.star(a)) != *b {
        return Ok(None);
    }
    let ba = s.mul(b, a);
    if s.is_zero(&ba) {
        return Ok(None);
    }
    trunc.index_of(&ba).map(Some).ok_or(())
}

fn assemble<S, K>(
    s: &S,
    f: &AlgebraElement<S::Elem, K>,
    trunc: &Truncation<S::Elem>,
    image: impl Fn(&S::Elem, &S::Elem) -> std::result::Result<Option<usize>, ()>,
) -> Result<RepMatrix<K>>
where
    S: InverseSemigroup,
    K: Coefficient,
{
    if let Some(bad) = f.support().find(|e| !s.contains(e)) {
        return Err(IsgError::ContextMismatch(s.render(bad)));
    }
    let mut matrix = SparseMatrix::zeros(trunc.len());
    let mut dropped = 0;
    for (col, b) in trunc.basis().iter().enumerate() {
        for (a, c) in f.terms() {
            match image(a, b) {
                Ok(Some(row)) => matrix.add(row, col, c.clone()),
                Ok(None) => {}
                Err(()) => dropped += 1,
            }
        }
    }
    Ok(RepMatrix { matrix, dropped })
}

/// The left regular representation compressed to `trunc`.
pub fn lambda_matrix<S, K>(s: &S, f: &AlgebraElement<S::Elem, K>, trunc: &Truncation<S::Elem>) -> Result<RepMatrix<K>>
where
    S: InverseSemigroup,
    K: Coefficient,
{
    assemble(s, f, trunc, |a, b| lambda_image(s, a, b, trunc))
}

/// The right regular representation compressed to `trunc`.
pub fn rho_matrix<S, K>(s: &S, f: &AlgebraElement<S::Elem, K>, trunc: &Truncation<S::Elem>) -> Result<RepMatrix<K>>
where
    S: InverseSemigroup,
    K: Coefficient,
{
    assemble(s, f, trunc, |a, b| rho_image(s, a, b, trunc))
}

/// Partial bijections of a set of integer points.
pub trait PointAction {
    fn act(&self, p: i64) -> Option<i64>;
}

impl PointAction for PartialBijection {
    fn act(&self, p: i64) -> Option<i64> {
        usize::try_from(p).ok().filter(|&p| p < self.degree()).and_then(|p| self.apply(p)).map(|q| q as i64)
    }
}

impl PointAction for ShiftMap {
    fn act(&self, p: i64) -> Option<i64> {
        self.apply(p)
    }
}

/// `π(s)δ_p = δ_{s(p)}` on the listed points, compressed to the window.
pub fn action_matrix<E, K>(f: &AlgebraElement<E, K>, window: &[i64]) -> RepMatrix<K>
where
    E: PointAction + Ord + Clone,
    K: Coefficient,
{
    let pos: BTreeMap<i64, usize> = window.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut matrix = SparseMatrix::zeros(window.len());
    let mut dropped = 0;
    for (col, &p) in window.iter().enumerate() {
        for (s, c) in f.terms() {
            match s.act(p).map(|q| pos.get(&q)) {
                Some(Some(&row)) => matrix.add(row, col, c.clone()),
                Some(None) => dropped += 1,
                None => {}
            }
        }
    }
    RepMatrix { matrix, dropped }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{convolve, involution, Scalar};
    use crate::families::{shift_context, ShiftSemigroup};
    use crate::semigroup::{close_generators, FiniteInverseSemigroup};

    fn closure5() -> FiniteInverseSemigroup {
        close_generators(&[PartialBijection::from_pairs(2, [(0, 1)]).unwrap()], 16).unwrap().semigroup
    }

    fn all(s: &FiniteInverseSemigroup) -> Truncation<usize> {
        Truncation::new(s, s.elements())
    }

    #[test]
    fn truncation_drops_zero_and_repeats() {
        let s = closure5();
        let t = Truncation::new(&s, s.elements().chain(s.elements()));
        assert_eq!(t.len(), 4);
        assert!(!t.contains(&s.zero().unwrap()));
    }

    #[test]
    fn lambda_of_arrow_has_domain_support() {
        let s = closure5();
        let t = all(&s);
        let arrow = t.basis().iter().copied().find(|&a| !s.is_idempotent(&a)).unwrap();
        let m = lambda_matrix(&s, &AlgebraElement::basis(&s, arrow, Scalar::from_int(1)), &t).unwrap();
        assert_eq!(m.dropped, 0);
        for (col, b) in t.basis().iter().enumerate() {
            let nonzero_col = (0..t.len()).any(|r| !m.matrix.get(r, col).is_zero());
            assert_eq!(nonzero_col, in_domain(&s, &arrow, b) && s.op(arrow, *b) != s.zero().unwrap());
        }
        assert!(m.matrix.entries().all(|(_, v)| *v == Scalar::from_int(1)));
    }

    #[test]
    fn lambda_is_multiplicative_exactly() {
        let s = closure5();
        let t = all(&s);
        let nz: Vec<usize> = t.basis().to_vec();
        for &a in &nz {
            for &b in &nz {
                let f = AlgebraElement::from_terms(&s, [(a, Scalar::gaussian(1, 2)), (b, Scalar::ratio(-1, 3))]).unwrap();
                let g = AlgebraElement::from_terms(&s, [(b, Scalar::from_int(2))]).unwrap();
                let fg = convolve(&s, &f, &g).unwrap();
                let lf = lambda_matrix(&s, &f, &t).unwrap().matrix;
                let lg = lambda_matrix(&s, &g, &t).unwrap().matrix;
                assert_eq!(lambda_matrix(&s, &fg, &t).unwrap().matrix, lf.mul(&lg));
                assert_eq!(lambda_matrix(&s, &involution(&s, &f), &t).unwrap().matrix, lf.adjoint());
            }
        }
    }

    #[test]
    fn rho_sends_range_idempotent_to_element() {
        let s = closure5();
        let t = all(&s);
        for &a in t.basis() {
            let r = rho_matrix(&s, &AlgebraElement::basis(&s, a, Scalar::from_int(1)), &t).unwrap();
            let col = t.index_of(&s.op(a, s.inv(a))).unwrap();
            assert_eq!(r.matrix.get(t.index_of(&a).unwrap(), col), Scalar::from_int(1));
        }
    }

    #[test]
    fn action_of_shift_expectation_is_tridiagonal() {
        let ctx = shift_context(5).unwrap();
        let m = action_matrix(&ctx.epsilon_x_x_star, &ctx.window_points()).matrix;
        for i in 0usize..6 {
            for j in 0usize..6 {
                let want = match i.abs_diff(j) {
                    0 => 1,
                    1 => -1,
                    _ => 0,
                };
                assert_eq!(m.get(i, j), Scalar::from_int(want), "({i},{j})");
            }
        }
        let pi_star = action_matrix(&involution(&ShiftSemigroup, &ctx.x), &ctx.window_points()).matrix;
        let pi = action_matrix(&ctx.x, &ctx.window_points()).matrix;
        assert_eq!(pi_star, pi.adjoint());
    }

    #[test]
    fn identity_acts_as_identity() {
        let id = PartialBijection::identity(4);
        let s = close_generators(&[id.clone()], 4).unwrap();
        let f = AlgebraElement::from_terms(&s.semigroup, [(0usize, Scalar::from_int(1))]).unwrap();
        assert_eq!(lambda_matrix(&s.semigroup, &f, &all(&s.semigroup)).unwrap().matrix, SparseMatrix::identity(1));
        let g: AlgebraElement<PartialBijection> = {
            let mut g = AlgebraElement::zero();
            g.add_term(id, Scalar::from_int(1));
            g
        };
        assert_eq!(action_matrix(&g, &[0, 1, 2, 3]).matrix, SparseMatrix::identity(4));
    }
}
