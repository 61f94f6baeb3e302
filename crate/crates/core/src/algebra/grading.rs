use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use super::element::{convolve, epsilon_restrict, involution, AlgebraElement};
use super::scalar::Coefficient;
use crate::error::{IsgError, Result};
use crate::report::{push_violation, Violation};
use crate::semigroup::{Group, InverseSemigroup};

type DegreeFn<E, G> = Arc<dyn Fn(&E) -> Option<<G as Group>::Elem> + Send + Sync>;

/// A map `φ: S → G⁰`; `None` stands for the adjoined zero of the group.
///
/// A homomorphism onto a group is the special case where `degree` never
/// returns `None`.
pub struct Grading<E, G: Group> {
    group: G,
    degree: DegreeFn<E, G>,
}

impl<E, G: Group + Clone> Clone for Grading<E, G> {
    fn clone(&self) -> Self {
        Self { group: self.group.clone(), degree: Arc::clone(&self.degree) }
    }
}

impl<E: 'static, G: Group + Clone + 'static> Grading<E, G> {
    pub fn new(group: G, degree: impl Fn(&E) -> Option<G::Elem> + Send + Sync + 'static) -> Self {
        Self { group, degree: Arc::new(degree) }
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn degree(&self, e: &E) -> Option<G::Elem> {
        (self.degree)(e)
    }

    /// True iff `e` lies in the kernel fiber `φ⁻¹(1)`.
    pub fn in_kernel(&self, e: &E) -> bool {
        self.degree(e) == Some(self.group.identity())
    }

    /// A copy of this grading with `target` sent to `value` instead.
    pub fn remapped(&self, target: E, value: Option<G::Elem>) -> Self
    where
        E: PartialEq + Send + Sync,
        G::Elem: Send + Sync,
    {
        let inner = Arc::clone(&self.degree);
        Self {
            group: self.group.clone(),
            degree: Arc::new(move |e: &E| if *e == target { value.clone() } else { inner(e) }),
        }
    }
}

/// Splits `f` into its homogeneous components `f_g`, supported on `φ⁻¹(g)`.
pub fn fiber_decompose<E, G, K>(f: &AlgebraElement<E, K>, phi: &Grading<E, G>) -> BTreeMap<G::Elem, AlgebraElement<E, K>>
where
    E: Ord + Clone + 'static,
    G: Group + Clone + 'static,
    K: Coefficient,
{
    let mut out: BTreeMap<G::Elem, AlgebraElement<E, K>> = BTreeMap::new();
    for (e, c) in f.terms() {
        let g = phi.degree(e).expect("support never contains the zero");
        out.entry(g).or_default().add_term(e.clone(), c.clone());
    }
    out
}

/// `Σ_g f_g* f_g`, asserted equal to `ε(f*f)` for `H = φ⁻¹(1)`.
pub fn epsilon_star_square<S, G, K>(
    s: &S,
    f: &AlgebraElement<S::Elem, K>,
    phi: &Grading<S::Elem, G>,
) -> Result<AlgebraElement<S::Elem, K>>
where
    S: InverseSemigroup,
    S::Elem: 'static,
    G: Group + Clone + 'static,
    K: Coefficient,
{
    let mut fiberwise = AlgebraElement::zero();
    for part in fiber_decompose(f, phi).values() {
        fiberwise = fiberwise.plus(&convolve(s, &involution(s, part), part)?);
    }
    let full = epsilon_restrict(&convolve(s, &involution(s, f), f)?, |e| phi.in_kernel(e));
    if let Some((e, left, right)) = fiberwise.first_difference(&full) {
        return Err(IsgError::IdentityMismatch { elem: s.render(&e), left: left.to_string(), right: right.to_string() });
    }
    Ok(fiberwise)
}

/// Result of checking the grading axioms on a finite set of elements.
#[derive(Debug, Clone, Serialize)]
pub struct GradingReport {
    pub elements: usize,
    pub checked_pairs: usize,
    pub zero_products: usize,
    /// Pairs whose product falls outside the truncation.
    pub skipped_pairs: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    /// `φ⁻¹(1)` equals the nonzero idempotents among the elements.
    pub idempotent_pure: bool,
}

impl GradingReport {
    pub fn valid(&self) -> bool {
        self.violation_count == 0
    }
}

/// Checks `φ⁻¹(0) = {0}` and `φ(ab) = φ(a)φ(b)` for every nonzero product
/// that stays inside `elems`.
pub fn check_grading<S, G>(s: &S, elems: &[S::Elem], phi: &Grading<S::Elem, G>) -> GradingReport
where
    S: InverseSemigroup,
    S::Elem: 'static,
    G: Group + Clone + 'static,
{
    let members: BTreeSet<&S::Elem> = elems.iter().collect();
    let degrees: Vec<Option<G::Elem>> = elems.iter().map(|e| phi.degree(e)).collect();
    let group = phi.group();
    let mut violations = Vec::new();
    let mut count = 0;
    let mut idempotent_pure = true;

    for (e, d) in elems.iter().zip(&degrees) {
        if d.is_none() != s.is_zero(e) {
            push_violation(
                &mut violations,
                &mut count,
                Violation::new("zero-fiber", format!("{} has degree {:?}", s.render(e), d.as_ref().map(|g| group.render(g)))),
            );
        }
        if !s.is_zero(e) && (d.as_ref() == Some(&group.identity())) != s.is_idempotent(e) {
            idempotent_pure = false;
        }
    }

    let (mut checked, mut zero_products, mut skipped) = (0, 0, 0);
    for (a, da) in elems.iter().zip(&degrees) {
        for (b, db) in elems.iter().zip(&degrees) {
            let ab = s.mul(a, b);
            if s.is_zero(&ab) {
                zero_products += 1;
                continue;
            }
            if !members.contains(&ab) {
                skipped += 1;
                continue;
            }
            checked += 1;
            let (Some(da), Some(db)) = (da, db) else {
                push_violation(
                    &mut violations,
                    &mut count,
                    Violation::new("zero-factor", format!("{} · {} is nonzero", s.render(a), s.render(b))),
                );
                continue;
            };
            let want = group.op(da, db);
            let got = phi.degree(&ab);
            if got.as_ref() != Some(&want) {
                push_violation(
                    &mut violations,
                    &mut count,
                    Violation::new(
                        "multiplicativity",
                        format!(
                            "phi({} · {}) = {:?}, expected {}",
                            s.render(a),
                            s.render(b),
                            got.as_ref().map(|g| group.render(g)),
                            group.render(&want)
                        ),
                    ),
                );
            }
        }
    }

    GradingReport {
        elements: elems.len(),
        checked_pairs: checked,
        zero_products,
        skipped_pairs: skipped,
        violation_count: count,
        violations,
        idempotent_pure,
    }
}

/// The support-level Fell bundle: nonzero elements grouped by degree, with
/// the axioms `S_g* = S_{g⁻¹}` and `S_g S_h ⊆ S_{gh} ∪ {0}` checked.
#[derive(Debug, Clone)]
pub struct FiberFamily<E, G: Group> {
    pub fibers: BTreeMap<G::Elem, Vec<E>>,
    pub report: BundleReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct BundleReport {
    pub fibers: usize,
    pub star_checks: usize,
    pub product_checks: usize,
    pub skipped: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl BundleReport {
    pub fn valid(&self) -> bool {
        self.violation_count == 0
    }
}

pub fn bundle_fibers<S, G>(s: &S, elems: &[S::Elem], phi: &Grading<S::Elem, G>) -> FiberFamily<S::Elem, G>
where
    S: InverseSemigroup,
    S::Elem: 'static,
    G: Group + Clone + 'static,
{
    let group = phi.group();
    let members: BTreeSet<&S::Elem> = elems.iter().collect();
    let mut fibers: BTreeMap<G::Elem, Vec<S::Elem>> = BTreeMap::new();
    for e in elems.iter().filter(|e| !s.is_zero(e)) {
        if let Some(g) = phi.degree(e) {
            fibers.entry(g).or_default().push(e.clone());
        }
    }

    let mut violations = Vec::new();
    let mut count = 0;
    let (mut star_checks, mut product_checks, mut skipped) = (0, 0, 0);

    for (g, members_g) in &fibers {
        let g_inv = group.inverse(g);
        for e in members_g {
            let es = s.star(e);
            if !members.contains(&es) {
                skipped += 1;
                continue;
            }
            star_checks += 1;
            let in_inverse_fiber = fibers.get(&g_inv).is_some_and(|f| f.contains(&es));
            if !in_inverse_fiber {
                push_violation(
                    &mut violations,
                    &mut count,
                    Violation::new(
                        "star",
                        format!("{}* = {} is not in fiber {}", s.render(e), s.render(&es), group.render(&g_inv)),
                    ),
                );
            }
        }
    }

    for (g, fg) in &fibers {
        for (h, fh) in &fibers {
            let gh = group.op(g, h);
            for a in fg {
                for b in fh {
                    let ab = s.mul(a, b);
                    if s.is_zero(&ab) {
                        continue;
                    }
                    if !members.contains(&ab) {
                        skipped += 1;
                        continue;
                    }
                    product_checks += 1;
                    if phi.degree(&ab).as_ref() != Some(&gh) {
                        push_violation(
                            &mut violations,
                            &mut count,
                            Violation::new(
                                "product",
                                format!(
                                    "{} · {} = {} is not in fiber {}",
                                    s.render(a),
                                    s.render(b),
                                    s.render(&ab),
                                    group.render(&gh)
                                ),
                            ),
                        );
                    }
                }
            }
        }
    }

    let report = BundleReport {
        fibers: fibers.len(),
        star_checks,
        product_checks,
        skipped,
        violation_count: count,
        violations,
    };
    FiberFamily { fibers, report }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;
    use crate::semigroup::{close_generators, FiniteInverseSemigroup, GroupTable, Integers, PartialBijection};

    /// The five-element closure graded by Z: arrow +1, its inverse -1.
    fn brandt_graded() -> (FiniteInverseSemigroup, Grading<usize, Integers>) {
        let a = PartialBijection::from_pairs(2, [(0, 1)]).unwrap();
        let c = close_generators(&[a.clone()], 16).unwrap();
        let s = c.semigroup.clone();
        let a_id = c.id_of(&a).unwrap();
        let a_inv = c.id_of(&a.inverse()).unwrap();
        let zero = s.zero().unwrap();
        let phi = Grading::new(Integers, move |x: &usize| match *x {
            x if x == zero => None,
            x if x == a_id => Some(1),
            x if x == a_inv => Some(-1),
            _ => Some(0),
        });
        (s, phi)
    }

    #[test]
    fn brandt_grading_is_valid_and_pure() {
        let (s, phi) = brandt_graded();
        let elems: Vec<usize> = s.elements().collect();
        let r = check_grading(&s, &elems, &phi);
        assert!(r.valid(), "{:?}", r.violations);
        assert!(r.idempotent_pure);
        assert_eq!(r.skipped_pairs, 0);
    }

    #[test]
    fn group_graded_by_itself() {
        for n in [2usize, 3] {
            let g = GroupTable::cyclic(n);
            let s = FiniteInverseSemigroup::from_table(g.product_rows(), None, None, None).unwrap();
            let phi = Grading::new(g, |x: &usize| Some(*x));
            let elems: Vec<usize> = s.elements().collect();
            let r = check_grading(&s, &elems, &phi);
            assert!(r.valid());
            assert!(r.idempotent_pure);
        }
    }

    #[test]
    fn trivial_grading_one_fiber() {
        let (s, _) = brandt_graded();
        let zero = s.zero().unwrap();
        let phi = Grading::new(GroupTable::trivial(), move |x: &usize| (*x != zero).then_some(0));
        let elems: Vec<usize> = s.elements().collect();
        let fam = bundle_fibers(&s, &elems, &phi);
        assert_eq!(fam.fibers.len(), 1);
        assert!(fam.report.valid());
    }

    #[test]
    fn corrupted_grading_is_reported() {
        let (s, phi) = brandt_graded();
        let idem = (0..s.len()).find(|&x| s.op(x, x) == x && Some(x) != s.zero()).unwrap();
        let bad = phi.remapped(idem, Some(5));
        let elems: Vec<usize> = s.elements().collect();
        assert!(!check_grading(&s, &elems, &bad).valid());
        let fam = bundle_fibers(&s, &elems, &bad);
        assert!(!fam.report.valid());
        assert!(!fam.report.violations.is_empty());
    }

    #[test]
    fn fibers_split_and_epsilon_identity() {
        let (s, phi) = brandt_graded();
        let f = AlgebraElement::from_terms(
            &s,
            s.elements().filter(|x| Some(*x) != s.zero()).map(|x| (x, Scalar::gaussian(x as i64 + 1, 1 - x as i64))),
        )
        .unwrap();
        let parts = fiber_decompose(&f, &phi);
        assert_eq!(parts.len(), 3);
        let total = parts.values().fold(AlgebraElement::zero(), |acc, p| acc.plus(p));
        assert_eq!(total, f);
        epsilon_star_square(&s, &f, &phi).unwrap();
    }

    #[test]
    fn broken_grading_fails_epsilon_identity() {
        let (s, phi) = brandt_graded();
        // Moving the arrow into the kernel fiber puts a and aa* in one fiber,
        // so a* appears in the fiberwise sum but has degree -1 and is dropped by ε.
        let a = (0..s.len()).find(|&x| s.op(x, x) == s.zero().unwrap() && x < s.inv(x)).unwrap();
        let bad = phi.remapped(a, Some(0));
        let f = AlgebraElement::from_terms(&s, [(a, Scalar::one()), (s.op(a, s.inv(a)), Scalar::one())]).unwrap();
        assert!(matches!(epsilon_star_square(&s, &f, &bad), Err(IsgError::IdentityMismatch { .. })));
    }
}
