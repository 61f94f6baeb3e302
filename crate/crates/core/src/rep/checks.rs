use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::SparseMatrix;
use super::regular::{in_domain, lambda_image, lambda_matrix, rho_image, rho_matrix, Truncation};
use crate::algebra::{epsilon_restrict, star_square, AlgebraElement, Grading, Scalar};
use crate::error::Result;
use crate::report::{push_violation, Violation};
use crate::semigroup::{Group, InverseSemigroup};

/// Outcome of a vector-by-vector identity scan.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckReport {
    pub checked: usize,
    /// Cases where both sides are the zero vector.
    pub zero: usize,
    /// Cases skipped because a vector left the truncation.
    pub skipped: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn fail(&mut self, kind: &str, witness: String) {
        push_violation(&mut self.violations, &mut self.violation_count, Violation::new(kind, witness));
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.zero += other.zero;
        self.skipped += other.skipped;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < crate::report::MAX_VIOLATIONS {
                self.violations.push(v);
            }
        }
    }
}

/// Checks that `Λ(t)` maps `δ_b` into the `φ(t)φ(b)` fiber.
pub fn graded_block_check<S, G>(s: &S, phi: &Grading<S::Elem, G>, trunc: &Truncation<S::Elem>, ts: &[S::Elem]) -> CheckReport
where
    S: InverseSemigroup,
    S::Elem: 'static,
    G: Group + Clone + 'static,
{
    let group = phi.group();
    let mut report = CheckReport::default();
    for t in ts {
        for b in trunc.basis() {
            match lambda_image(s, t, b, trunc) {
                Err(()) => report.skipped += 1,
                Ok(None) => report.zero += 1,
                Ok(Some(i)) => {
                    report.checked += 1;
                    let image = &trunc.basis()[i];
                    let want = match (phi.degree(t), phi.degree(b)) {
                        (Some(x), Some(y)) => Some(group.op(&x, &y)),
                        _ => None,
                    };
                    let got = phi.degree(image);
                    if got.is_none() || got != want {
                        report.fail(
                            "graded-block",
                            format!(
                                "Λ({})δ_{} = δ_{} has degree {:?}, expected {:?}",
                                s.render(t),
                                s.render(b),
                                s.render(image),
                                got.map(|g| group.render(&g)),
                                want.map(|g| group.render(&g))
                            ),
                        );
                    }
                }
            }
        }
    }
    report
}

/// Checks `W(Λ(t)⊗I)W*(δ_s⊗δ_g) = Λ(t)δ_s ⊗ δ_{φ(t)g}` on the tensor basis
/// `trunc × group_window`, ordered lexicographically.
pub fn coaction_unitary_check<S, G>(
    s: &S,
    phi: &Grading<S::Elem, G>,
    trunc: &Truncation<S::Elem>,
    group_window: &[G::Elem],
    ts: &[S::Elem],
) -> CheckReport
where
    S: InverseSemigroup,
    S::Elem: 'static,
    G: Group + Clone + 'static,
{
    let group = phi.group();
    let in_window = |g: &G::Elem| group_window.contains(g);
    let mut report = CheckReport::default();
    for t in ts {
        let Some(dt) = phi.degree(t) else {
            continue;
        };
        for x in trunc.basis() {
            let Some(dx) = phi.degree(x) else {
                continue;
            };
            for g in group_window {
                // Right-hand side: δ_{tx} ⊗ δ_{φ(t)g}.
                let rhs_group = group.op(&dt, g);
                let image = lambda_image(s, t, x, trunc);
                let Ok(image) = image else {
                    report.skipped += 1;
                    continue;
                };
                // Left-hand side, one operator at a time.
                let pulled = group.op(&group.inverse(&dx), g);
                if !in_window(&pulled) {
                    report.skipped += 1;
                    continue;
                }
                let lhs = match image {
                    None => None,
                    Some(i) => {
                        let tx = &trunc.basis()[i];
                        let Some(dtx) = phi.degree(tx) else {
                            report.fail("coaction", format!("{} has no degree", s.render(tx)));
                            continue;
                        };
                        Some((i, group.op(&dtx, &pulled)))
                    }
                };
                let rhs = image.map(|i| (i, rhs_group.clone()));
                if let Some((_, h)) = &rhs {
                    if !in_window(h) {
                        report.skipped += 1;
                        continue;
                    }
                }
                match (&lhs, &rhs) {
                    (None, None) => report.zero += 1,
                    _ if lhs == rhs => report.checked += 1,
                    _ => report.fail(
                        "coaction",
                        format!(
                            "t = {}, s = {}, g = {}: left {:?}, right {:?}",
                            s.render(t),
                            s.render(x),
                            group.render(g),
                            lhs.map(|(i, h)| (s.render(&trunc.basis()[i]), group.render(&h))),
                            rhs.map(|(i, h)| (s.render(&trunc.basis()[i]), group.render(&h)))
                        ),
                    ),
                }
            }
        }
    }
    report
}

/// Checks that `Λ(h)` leaves `span{δ_s : s ∈ H}` and its complement
/// invariant and that the block on `H` is the regular matrix of `H`.
pub fn h_block_check<S>(s: &S, h: &S::Elem, in_h: impl Fn(&S::Elem) -> bool, trunc: &Truncation<S::Elem>) -> Result<CheckReport>
where
    S: InverseSemigroup,
{
    let mut report = CheckReport::default();
    for x in trunc.basis() {
        if !in_domain(s, h, x) {
            report.zero += 1;
            continue;
        }
        let hx = s.mul(h, x);
        if s.is_zero(&hx) {
            report.zero += 1;
            continue;
        }
        report.checked += 1;
        if in_h(&hx) != in_h(x) {
            report.fail("h-invariance", format!("{} · {} = {}", s.render(h), s.render(x), s.render(&hx)));
        }
    }
    let f = AlgebraElement::basis(s, h.clone(), Scalar::from_int(1));
    let full = lambda_matrix(s, &f, trunc)?.matrix;
    let h_idx: Vec<usize> = (0..trunc.len()).filter(|&i| in_h(&trunc.basis()[i])).collect();
    let h_trunc = trunc.filter(|e| in_h(e));
    let block = full.submatrix(&h_idx);
    let regular = lambda_matrix(s, &f, &h_trunc)?.matrix;
    if block != regular {
        report.fail("h-block", format!("block of Λ({}) differs from the H-regular matrix", s.render(h)));
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct FaithfulnessReport {
    pub trials: usize,
    pub seed: u64,
    pub zero_images: usize,
    pub violations: Vec<Violation>,
}

impl FaithfulnessReport {
    pub fn passed(&self) -> bool {
        self.zero_images == 0
    }
}

/// Random `g` with Gaussian-integer coefficients on up to four basis
/// elements; never zero.
pub fn random_element<S: InverseSemigroup>(s: &S, pool: &[S::Elem], rng: &mut impl Rng) -> AlgebraElement<S::Elem> {
    loop {
        let k = rng.gen_range(1..=4.min(pool.len()));
        let terms = pool.choose_multiple(rng, k).map(|e| (e.clone(), Scalar::gaussian(rng.gen_range(-3..=3), rng.gen_range(-3..=3))));
        let g = AlgebraElement::from_terms(s, terms).expect("pool elements belong to s");
        if !g.is_zero() {
            return g;
        }
    }
}

/// Checks `Λ(ε(g*g)) ≠ 0` for random nonzero `g`.
pub fn epsilon_faithfulness_check<S, G>(
    s: &S,
    phi: &Grading<S::Elem, G>,
    trunc: &Truncation<S::Elem>,
    trials: usize,
    seed: u64,
) -> Result<FaithfulnessReport>
where
    S: InverseSemigroup,
    S::Elem: 'static,
    G: Group + Clone + 'static,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zero_images = 0;
    let mut violations = Vec::new();
    for _ in 0..trials {
        let g = random_element(s, trunc.basis(), &mut rng);
        let e = epsilon_restrict(&star_square(s, &g)?, |x| phi.in_kernel(x));
        if lambda_matrix(s, &e, trunc)?.matrix.is_zero() {
            push_violation(&mut violations, &mut zero_images, Violation::new("faithfulness", g.render(s)));
        }
    }
    Ok(FaithfulnessReport { trials, seed, zero_images, violations })
}

/// Vector-wise checks that `Λ` is a `*`-representation, `R` a
/// `*`-anti-representation and that the two commute, for all `a, c ∈ ts`
/// and basis vectors `δ_b`.
pub fn representation_identity_check<S>(s: &S, trunc: &Truncation<S::Elem>, ts: &[S::Elem]) -> CheckReport
where
    S: InverseSemigroup,
{
    type Img = std::result::Result<Option<usize>, ()>;
    let mut report = CheckReport::default();
    let then = |img: Img, next: &dyn Fn(&S::Elem) -> Img| -> Img {
        match img {
            Ok(Some(i)) => next(&trunc.basis()[i]),
            other => other,
        }
    };
    let compare = |report: &mut CheckReport, kind: &str, lhs: Img, rhs: Img, w: &dyn Fn() -> String| match (lhs, rhs) {
        (Err(()), _) | (_, Err(())) => report.skipped += 1,
        (Ok(None), Ok(None)) => report.zero += 1,
        (l, r) if l == r => report.checked += 1,
        _ => report.fail(kind, w()),
    };
    let lam = |a: &S::Elem, b: &S::Elem| lambda_image(s, a, b, trunc);
    let rho = |a: &S::Elem, b: &S::Elem| rho_image(s, a, b, trunc);
    let zero_or = |ac: &S::Elem, f: &dyn Fn() -> Img| if s.is_zero(ac) { Ok(None) } else { f() };

    for a in ts {
        for c in ts {
            let ac = s.mul(a, c);
            let ca = s.mul(c, a);
            for b in trunc.basis() {
                let w = || format!("a = {}, c = {}, b = {}", s.render(a), s.render(c), s.render(b));
                compare(&mut report, "lambda-multiplicative", then(lam(c, b), &|x| lam(a, x)), zero_or(&ac, &|| lam(&ac, b)), &w);
                compare(&mut report, "rho-multiplicative", then(rho(c, b), &|x| rho(a, x)), zero_or(&ca, &|| rho(&ca, b)), &w);
                compare(&mut report, "commutation", then(rho(c, b), &|x| lam(a, x)), then(lam(a, b), &|x| rho(c, x)), &w);
            }
        }
        let a_star = s.star(a);
        for b in trunc.basis() {
            let w = || format!("a = {}, b = {}", s.render(a), s.render(b));
            for (kind, img, back) in [("lambda-star", lam(a, b), &lam as &dyn Fn(&S::Elem, &S::Elem) -> Img), ("rho-star", rho(a, b), &rho)] {
                match img {
                    Ok(Some(i)) => {
                        let returned = back(&a_star, &trunc.basis()[i]);
                        compare(&mut report, kind, returned, Ok(trunc.index_of(b)), &w);
                    }
                    Ok(None) => report.zero += 1,
                    Err(()) => report.skipped += 1,
                }
            }
        }
    }
    report
}

/// Exact matrix identities over a truncation closed under the action:
/// `Λ(ac) = Λ(a)Λ(c)`, `Λ(a*) = Λ(a)*`, `R(ca) = R(a)R(c)`, `R(a*) = R(a)*`
/// and `Λ(a)R(c) = R(c)Λ(a)`.
pub fn matrix_identity_check<S>(s: &S, trunc: &Truncation<S::Elem>, ts: &[S::Elem]) -> Result<CheckReport>
where
    S: InverseSemigroup,
{
    let mut report = CheckReport::default();
    let basis = |a: &S::Elem| {
        if s.is_zero(a) {
            AlgebraElement::zero()
        } else {
            AlgebraElement::basis(s, a.clone(), Scalar::from_int(1))
        }
    };
    let lam = |a: &S::Elem| lambda_matrix(s, &basis(a), trunc);
    let rho = |a: &S::Elem| rho_matrix(s, &basis(a), trunc);
    let mut lams: Vec<SparseMatrix> = Vec::new();
    let mut rhos: Vec<SparseMatrix> = Vec::new();
    for a in ts {
        let (l, r) = (lam(a)?, rho(a)?);
        report.skipped += l.dropped + r.dropped;
        lams.push(l.matrix);
        rhos.push(r.matrix);
    }
    for (i, a) in ts.iter().enumerate() {
        let a_star = s.star(a);
        report.checked += 2;
        if lam(&a_star)?.matrix != lams[i].adjoint() {
            report.fail("lambda-star", s.render(a));
        }
        if rho(&a_star)?.matrix != rhos[i].adjoint() {
            report.fail("rho-star", s.render(a));
        }
        for (j, c) in ts.iter().enumerate() {
            report.checked += 3;
            let w = || format!("a = {}, c = {}", s.render(a), s.render(c));
            if lam(&s.mul(a, c))?.matrix != lams[i].mul(&lams[j]) {
                report.fail("lambda-multiplicative", w());
            }
            if rho(&s.mul(c, a))?.matrix != rhos[i].mul(&rhos[j]) {
                report.fail("rho-multiplicative", w());
            }
            if lams[i].mul(&rhos[j]) != rhos[j].mul(&lams[i]) {
                report.fail("commutation", w());
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{br_phi, shift_context, in_bicyclic, BRElement, BruckReilly, Endomorphism, ShiftSemigroup};
    use crate::graph::{DirectedGraph, GraphInverseSemigroup, enumerate_pairs};
    use crate::semigroup::{close_generators, max_group_image, FiniteInverseSemigroup, GroupTable, Integers, PartialBijection};

    fn closure5() -> FiniteInverseSemigroup {
        close_generators(&[PartialBijection::from_pairs(2, [(0, 1)]).unwrap()], 16).unwrap().semigroup
    }

    fn brandt_grading(s: &FiniteInverseSemigroup) -> Grading<usize, Integers> {
        let s2 = s.clone();
        Grading::new(Integers, move |&x: &usize| {
            if Some(x) == s2.zero() {
                None
            } else if s2.is_idempotent(&x) {
                Some(0)
            } else {
                // The arrow and its inverse; orient by which point is the domain.
                Some(if s2.label(x).contains("0->1") { 1 } else { -1 })
            }
        })
    }

    #[test]
    fn finite_closure_identities() {
        let s = closure5();
        let trunc = Truncation::new(&s, s.elements());
        let ts: Vec<usize> = s.elements().collect();
        let r = matrix_identity_check(&s, &trunc, &ts).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.skipped, 0);
        let v = representation_identity_check(&s, &trunc, &ts);
        assert!(v.passed(), "{:?}", v.violations);
        assert_eq!(v.skipped, 0);
    }

    #[test]
    fn finite_closure_blocks_and_faithfulness() {
        let s = closure5();
        let trunc = Truncation::new(&s, s.elements());
        let phi = brandt_grading(&s);
        let ts: Vec<usize> = trunc.basis().to_vec();
        assert!(graded_block_check(&s, &phi, &trunc, &ts).passed());
        let window: Vec<i64> = (-3..=3).collect();
        let c = coaction_unitary_check(&s, &phi, &trunc, &window, &ts);
        assert!(c.passed() && c.checked > 0, "{:?}", c.violations);
        for h in ts.iter().filter(|h| phi.in_kernel(h)) {
            assert!(h_block_check(&s, h, |x| phi.in_kernel(x), &trunc).unwrap().passed());
        }
        let f = epsilon_faithfulness_check(&s, &phi, &trunc, 100, 7).unwrap();
        assert!(f.passed());
        let universal = max_group_image(&s);
        assert_eq!(universal.group.len(), 1);
    }

    #[test]
    fn corrupted_grading_breaks_blocks() {
        let s = closure5();
        let trunc = Truncation::new(&s, s.elements());
        let phi = brandt_grading(&s);
        let arrow = trunc.basis().iter().copied().find(|a| !s.is_idempotent(a)).unwrap();
        let bad = phi.remapped(arrow, Some(5));
        let ts: Vec<usize> = trunc.basis().to_vec();
        assert!(!graded_block_check(&s, &bad, &trunc, &ts).passed());
    }

    #[test]
    fn graph_column_lands_in_edge_fiber() {
        let sg = GraphInverseSemigroup::new(DirectedGraph::bouquet(1));
        let trunc = Truncation::new(&sg, enumerate_pairs(sg.graph(), 3).nonzero().to_vec());
        let t = sg.parse_pair("(e, v)").unwrap();
        let r = graded_block_check(&sg, &sg.grading(), &trunc, &[t]);
        assert!(r.passed() && r.checked > 0 && r.skipped > 0);
        let window = sg.free_group().ball(2);
        let ts: Vec<_> = trunc.basis().to_vec();
        let c = coaction_unitary_check(&sg, &sg.grading(), &trunc, &window, &ts);
        assert!(c.passed() && c.checked > 0, "{:?}", c.violations);
    }

    #[test]
    fn bruck_reilly_window_identities() {
        let g = GroupTable::cyclic(2);
        for theta in [Endomorphism::identity(&g), Endomorphism::trivial(&g)] {
            let br = BruckReilly::new(g.clone(), theta);
            let w = br.window(3);
            let trunc = Truncation::new(&br, w.clone());
            let r = representation_identity_check(&br, &trunc, &w);
            assert!(r.passed(), "{:?}", r.violations);
            assert!(r.checked > 0);
            let phi = Grading::new(Integers, |p: &BRElement| Some(br_phi(p)));
            let window: Vec<i64> = (-4..=4).collect();
            assert!(coaction_unitary_check(&br, &phi, &trunc, &window, &w).passed());
            for h in w.iter().filter(|p| br_phi(p) == 0) {
                assert!(h_block_check(&br, h, |x| br_phi(x) == 0, &trunc).unwrap().passed());
            }
        }
    }

    #[test]
    fn shift_window_h_block() {
        let ctx = shift_context(4).unwrap();
        let trunc = Truncation::new(&ShiftSemigroup, ctx.truncation());
        let r = h_block_check(&ShiftSemigroup, &ctx.b, in_bicyclic, &trunc).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }
}
