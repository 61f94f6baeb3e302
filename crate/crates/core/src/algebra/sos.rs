//! Sum-of-squares witnesses for `ε(f*f)` inside the kernel algebra.
//!
//! For a homogeneous `f_g` each constructor returns `f'` supported in the
//! kernel with `f'* f' = f_g* f_g`, checked in exact arithmetic.

use super::element::{star_square, AlgebraElement};
use super::scalar::Coefficient;
use crate::error::{IsgError, Result};
use crate::semigroup::InverseSemigroup;

fn assert_same_square<S, K>(
    s: &S,
    witness: &AlgebraElement<S::Elem, K>,
    f: &AlgebraElement<S::Elem, K>,
) -> Result<()>
where
    S: InverseSemigroup,
    K: Coefficient,
{
    let lhs = star_square(s, witness)?;
    let rhs = star_square(s, f)?;
    match lhs.first_difference(&rhs) {
        Some((e, l, r)) => Err(IsgError::WitnessFailure { elem: s.render(&e), left: l.to_string(), right: r.to_string() }),
        None => Ok(()),
    }
}

/// `f' = Σ α_s s*s`, valid when the kernel of the grading is `E(S)`.
pub fn sos_witness_idempotent_kernel<S, K>(s: &S, f_g: &AlgebraElement<S::Elem, K>) -> Result<AlgebraElement<S::Elem, K>>
where
    S: InverseSemigroup,
    K: Coefficient,
{
    let mut witness = AlgebraElement::zero();
    for (e, c) in f_g.terms() {
        let src = s.mul(&s.star(e), e);
        witness.add_term(src, c.clone());
    }
    assert_same_square(s, &witness, f_g)?;
    Ok(witness)
}

/// `f' = Σ α_s s_g* s_g h_s` with `h_s = s_g* s`, valid when the fiber
/// equals the coset `s_g H`.
pub fn sos_witness_coset<S, K>(
    s: &S,
    f_g: &AlgebraElement<S::Elem, K>,
    s_g: &S::Elem,
) -> Result<AlgebraElement<S::Elem, K>>
where
    S: InverseSemigroup,
    K: Coefficient,
{
    let rep_star = s.star(s_g);
    let rep_src = s.mul(&rep_star, s_g);
    let mut witness = AlgebraElement::zero();
    for (e, c) in f_g.terms() {
        let h = s.mul(&rep_star, e);
        if s.mul(s_g, &h) != *e {
            return Err(IsgError::NotInCoset(s.render(e)));
        }
        let term = s.mul(&rep_src, &h);
        if !s.is_zero(&term) {
            witness.add_term(term, c.clone());
        }
    }
    assert_same_square(s, &witness, f_g)?;
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;
    use crate::semigroup::{close_generators, FiniteInverseSemigroup, GroupTable, PartialBijection};

    #[test]
    fn single_term_idempotent_witness() {
        let a = PartialBijection::from_pairs(2, [(0, 1)]).unwrap();
        let c = close_generators(&[a.clone()], 16).unwrap();
        let s = &c.semigroup;
        let a_id = c.id_of(&a).unwrap();
        let f = AlgebraElement::basis(s, a_id, Scalar::gaussian(2, 1));
        let w = sos_witness_idempotent_kernel(s, &f).unwrap();
        let src = s.op(s.inv(a_id), a_id);
        assert_eq!(w.coeff(&src), Scalar::gaussian(2, 1));
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn idempotent_witness_fails_outside_hypothesis() {
        // In the group Z3 the kernel of the identity map is not E(S).
        let g = GroupTable::cyclic(3);
        let s = FiniteInverseSemigroup::from_table(g.product_rows(), None, None, None).unwrap();
        let f = AlgebraElement::from_terms(&s, [(0, Scalar::one()), (1, Scalar::one())]).unwrap();
        assert!(matches!(sos_witness_idempotent_kernel(&s, &f), Err(IsgError::WitnessFailure { .. })));
    }

    #[test]
    fn coset_witness_in_group() {
        let g = GroupTable::cyclic(4);
        let s = FiniteInverseSemigroup::from_table(g.product_rows(), None, None, None).unwrap();
        // fiber of 1 under Z4 -> Z2 is {1, 3} = 1·{0, 2}
        let f = AlgebraElement::from_terms(&s, [(1, Scalar::gaussian(1, 2)), (3, Scalar::from_int(-3))]).unwrap();
        let w = sos_witness_coset(&s, &f, &1).unwrap();
        assert!(w.support().all(|&h| h == 0 || h == 2));
    }

    #[test]
    fn coset_witness_rejects_outsiders() {
        let a = PartialBijection::from_pairs(2, [(0, 1)]).unwrap();
        let c = close_generators(&[a.clone()], 16).unwrap();
        let s = &c.semigroup;
        let a_id = c.id_of(&a).unwrap();
        let f = AlgebraElement::basis(s, s.inv(a_id), Scalar::one());
        assert!(matches!(sos_witness_coset(s, &f, &a_id), Err(IsgError::NotInCoset(_))));
    }
}
