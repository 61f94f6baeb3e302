//! The quasi-lattice ordered group `(ℤⁿ, ℕⁿ)` and its Toeplitz inverse
//! semigroup of partial translations `β_x`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::Grading;
use crate::report::{push_violation, Violation};
use crate::semigroup::{IntLattice, InverseSemigroup, PartialBijection};

pub type QLPoint = Vec<i64>;

/// A partially ordered group with positive cone `P` and least upper bounds.
pub trait QuasiLattice {
    fn in_cone(&self, x: &QLPoint) -> bool;

    /// `x ≤ y` iff `x⁻¹y ∈ P`.
    fn leq(&self, x: &QLPoint, y: &QLPoint) -> bool;

    /// The least common upper bound, if there is a common upper bound.
    fn lub(&self, x: &QLPoint, y: &QLPoint) -> Option<QLPoint>;
}

/// `(ℤⁿ, ℕⁿ)` with the componentwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZnCone {
    pub n: usize,
}

impl QuasiLattice for ZnCone {
    fn in_cone(&self, x: &QLPoint) -> bool {
        x.iter().all(|&c| c >= 0)
    }

    fn leq(&self, x: &QLPoint, y: &QLPoint) -> bool {
        x.iter().zip(y).all(|(a, b)| a <= b)
    }

    fn lub(&self, x: &QLPoint, y: &QLPoint) -> Option<QLPoint> {
        Some(x.iter().zip(y).map(|(a, b)| *a.max(b)).collect())
    }
}

pub fn ql_lub(x: &QLPoint, y: &QLPoint) -> Option<QLPoint> {
    ZnCone { n: x.len() }.lub(x, y)
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasiLatticeReport {
    pub n: usize,
    pub bound: i64,
    pub points: usize,
    pub pairs: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl QuasiLatticeReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

fn box_points(n: usize, lo: i64, hi: i64) -> Vec<QLPoint> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: QLPoint| {
                (lo..=hi).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// Checks the order axioms and the least-upper-bound axioms over
/// `{-bound..bound}ⁿ`: for every pair the lub is an upper bound and lies
/// below every upper bound in the box, and `x ∨ 0` is the least upper bound
/// of `x` in `P`.
pub fn quasi_lattice_check(n: usize, bound: i64) -> QuasiLatticeReport {
    let ql = ZnCone { n };
    let pts = box_points(n, -bound, bound);
    let zero = vec![0; n];
    let mut violations = Vec::new();
    let mut count = 0;
    let mut fail = |kind: &str, w: String| push_violation(&mut violations, &mut count, Violation::new(kind, w));

    for x in &pts {
        let neg: QLPoint = x.iter().map(|c| -c).collect();
        if ql.in_cone(x) && ql.in_cone(&neg) && *x != zero {
            fail("cone-not-pointed", format!("{x:?}"));
        }
    }
    let mut pairs = 0;
    for x in &pts {
        for y in &pts {
            pairs += 1;
            if ql.leq(x, y) && ql.leq(y, x) && x != y {
                fail("antisymmetry", format!("{x:?} {y:?}"));
            }
            let Some(l) = ql.lub(x, y) else {
                fail("no-lub", format!("{x:?} {y:?}"));
                continue;
            };
            if !ql.leq(x, &l) || !ql.leq(y, &l) {
                fail("lub-not-upper", format!("{x:?} {y:?} -> {l:?}"));
            }
            for z in pts.iter().filter(|z| ql.leq(x, z) && ql.leq(y, z)) {
                if !ql.leq(&l, z) {
                    fail("lub-not-least", format!("{x:?} {y:?}: {l:?} not below {z:?}"));
                }
            }
        }
        match ql.lub(x, &zero) {
            Some(l) if ql.in_cone(&l) => {
                for z in pts.iter().filter(|z| ql.in_cone(z) && ql.leq(x, z)) {
                    if !ql.leq(&l, z) {
                        fail("cone-lub-not-least", format!("{x:?}: {l:?} not below {z:?}"));
                    }
                }
            }
            _ => fail("cone-lub", format!("{x:?}")),
        }
    }
    QuasiLatticeReport { n, bound, points: pts.len(), pairs, violation_count: count, violations }
}

/// `β_s β_t*`: the translation `p ↦ p − t + s` on `t + P`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ToeplitzElement {
    Zero,
    Pair(QLPoint, QLPoint),
}

impl ToeplitzElement {
    /// The normal form of `β_x`, namely `(x⁺, x⁻)`.
    pub fn beta(x: &QLPoint) -> Self {
        ToeplitzElement::Pair(x.iter().map(|c| (*c).max(0)).collect(), x.iter().map(|c| (-c).max(0)).collect())
    }

    pub fn apply(&self, p: &QLPoint) -> Option<QLPoint> {
        match self {
            ToeplitzElement::Zero => None,
            ToeplitzElement::Pair(s, t) => {
                let moved: QLPoint = p.iter().zip(t).zip(s).map(|((p, t), s)| p - t + s).collect();
                p.iter().zip(t).all(|(p, t)| p >= t).then_some(moved)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToeplitzSemigroup {
    pub n: usize,
}

pub fn toeplitz_multiply(p: &ToeplitzElement, q: &ToeplitzElement) -> ToeplitzElement {
    let (ToeplitzElement::Pair(s, t), ToeplitzElement::Pair(u, v)) = (p, q) else {
        return ToeplitzElement::Zero;
    };
    let Some(w) = ql_lub(t, u) else {
        return ToeplitzElement::Zero;
    };
    let left = s.iter().zip(&w).zip(t).map(|((s, w), t)| s + w - t).collect();
    let right = v.iter().zip(&w).zip(u).map(|((v, w), u)| v + w - u).collect();
    ToeplitzElement::Pair(left, right)
}

pub fn toeplitz_phi(p: &ToeplitzElement) -> Option<QLPoint> {
    match p {
        ToeplitzElement::Zero => None,
        ToeplitzElement::Pair(s, t) => Some(s.iter().zip(t).map(|(s, t)| s - t).collect()),
    }
}

pub fn toeplitz_star(p: &ToeplitzElement) -> ToeplitzElement {
    match p {
        ToeplitzElement::Zero => ToeplitzElement::Zero,
        ToeplitzElement::Pair(s, t) => ToeplitzElement::Pair(t.clone(), s.clone()),
    }
}

impl InverseSemigroup for ToeplitzSemigroup {
    type Elem = ToeplitzElement;

    fn mul(&self, a: &ToeplitzElement, b: &ToeplitzElement) -> ToeplitzElement {
        toeplitz_multiply(a, b)
    }

    fn star(&self, a: &ToeplitzElement) -> ToeplitzElement {
        toeplitz_star(a)
    }

    fn is_zero(&self, a: &ToeplitzElement) -> bool {
        *a == ToeplitzElement::Zero
    }

    fn contains(&self, a: &ToeplitzElement) -> bool {
        match a {
            ToeplitzElement::Zero => true,
            ToeplitzElement::Pair(s, t) => {
                s.len() == self.n && t.len() == self.n && s.iter().chain(t).all(|&c| c >= 0)
            }
        }
    }

    fn render(&self, a: &ToeplitzElement) -> String {
        match a {
            ToeplitzElement::Zero => "0".into(),
            ToeplitzElement::Pair(s, t) => format!("({s:?},{t:?})"),
        }
    }
}

impl ToeplitzSemigroup {
    pub fn grading(&self) -> Grading<ToeplitzElement, IntLattice> {
        Grading::new(IntLattice::new(self.n), toeplitz_phi)
    }

    /// `{-1, 0, 1}ⁿ`, the translations generating the semigroup.
    pub fn generators(&self) -> Vec<QLPoint> {
        box_points(self.n, -1, 1)
    }

    /// All generator words of length `1..=len`.
    pub fn words(&self, len: usize) -> Vec<Vec<QLPoint>> {
        let gens = self.generators();
        let mut layer: Vec<Vec<QLPoint>> = vec![Vec::new()];
        let mut out = Vec::new();
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    gens.iter().map(move |g| {
                        let mut w = w.clone();
                        w.push(g.clone());
                        w
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    pub fn word_product(&self, word: &[QLPoint]) -> ToeplitzElement {
        word.iter()
            .map(ToeplitzElement::beta)
            .reduce(|acc, b| toeplitz_multiply(&acc, &b))
            .unwrap_or_else(|| ToeplitzElement::beta(&vec![0; self.n]))
    }

    /// Distinct normal forms of words of length at most `len`.
    pub fn elements_up_to(&self, len: usize) -> Vec<ToeplitzElement> {
        let set: BTreeSet<ToeplitzElement> = self.words(len).iter().map(|w| self.word_product(w)).collect();
        set.into_iter().collect()
    }
}

fn window_index(p: &QLPoint, window: usize) -> Option<usize> {
    let mut idx = 0;
    for &c in p {
        if c < 0 || c > window as i64 {
            return None;
        }
        idx = idx * (window + 1) + c as usize;
    }
    Some(idx)
}

fn window_points(n: usize, window: usize) -> Vec<QLPoint> {
    box_points(n, 0, window as i64)
}

/// `β_x` restricted to the box `{0..window}ⁿ`, points indexed row-major.
pub fn beta_window(x: &QLPoint, window: usize) -> PartialBijection {
    let pts = window_points(x.len(), window);
    let map = pts
        .iter()
        .map(|p| {
            let q: QLPoint = p.iter().zip(x).map(|(p, x)| p + x).collect();
            window_index(&q, window)
        })
        .collect();
    PartialBijection::new(map).expect("translations are injective")
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub window: usize,
    pub max_len: usize,
    pub words: usize,
    pub compared_points: usize,
    pub skipped_points: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0 && self.compared_points > 0
    }
}

/// Compares normal-form products with composites of windowed `β`'s.
///
/// A point `p` of a word of length `k` is interior when every coordinate is
/// at most `window − k`: each letter moves a coordinate by at most one, so
/// no intermediate point can leave through the upper edge, while the lower
/// edge is the true boundary of `ℕⁿ` and needs no margin.
pub fn toeplitz_oracle_check(n: usize, window: usize, max_len: usize) -> OracleReport {
    let sg = ToeplitzSemigroup { n };
    let pts = window_points(n, window);
    let words = sg.words(max_len);
    let mut violations = Vec::new();
    let (mut count, mut compared, mut skipped) = (0, 0, 0);
    for word in &words {
        let normal = sg.word_product(word);
        let composite = word
            .iter()
            .map(|x| beta_window(x, window))
            .reduce(|acc, b| acc.compose(&b))
            .expect("nonempty word");
        let limit = window as i64 - word.len() as i64;
        for (i, p) in pts.iter().enumerate() {
            if p.iter().any(|&c| c > limit) {
                skipped += 1;
                continue;
            }
            compared += 1;
            let symbolic = normal.apply(p).map(|q| window_index(&q, window));
            let windowed = composite.apply(i);
            let agree = match symbolic {
                None => windowed.is_none(),
                Some(idx) => idx.is_some() && idx == windowed,
            };
            if !agree {
                push_violation(
                    &mut violations,
                    &mut count,
                    Violation::new("oracle", format!("word {word:?} at {p:?}: normal form {normal:?}")),
                );
            }
        }
    }
    OracleReport {
        n,
        window,
        max_len,
        words: words.len(),
        compared_points: compared,
        skipped_points: skipped,
        violation_count: count,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_grading;
    use proptest::prelude::*;

    fn pair(s: &[i64], t: &[i64]) -> ToeplitzElement {
        ToeplitzElement::Pair(s.to_vec(), t.to_vec())
    }

    #[test]
    fn lub_examples() {
        assert_eq!(ql_lub(&vec![1, 0], &vec![0, 2]), Some(vec![1, 2]));
        assert_eq!(ql_lub(&vec![3], &vec![3]), Some(vec![3]));
    }

    #[test]
    fn axiom_scans() {
        assert!(quasi_lattice_check(1, 5).passed());
        assert!(quasi_lattice_check(2, 2).passed());
    }

    #[test]
    fn bicyclic_law() {
        assert_eq!(toeplitz_multiply(&pair(&[1], &[0]), &pair(&[1], &[0])), pair(&[2], &[0]));
        assert_eq!(toeplitz_multiply(&pair(&[0], &[1]), &pair(&[1], &[0])), pair(&[0], &[0]));
        assert_eq!(toeplitz_multiply(&pair(&[1], &[0]), &pair(&[0], &[1])), pair(&[1], &[1]));
        let e = pair(&[2, 1], &[2, 1]);
        assert_eq!(toeplitz_multiply(&e, &e), e);
    }

    #[test]
    fn beta_normal_forms() {
        assert_eq!(ToeplitzElement::beta(&vec![1, -1]), pair(&[1, 0], &[0, 1]));
        assert_eq!(PartialBijection::identity(36), beta_window(&vec![0, 0], 5));
    }

    #[test]
    fn window_shift_relation() {
        let up = beta_window(&vec![1], 5);
        let down = beta_window(&vec![-1], 5);
        assert_eq!(up.compose(&down), PartialBijection::partial_identity(6, 1..=5));
        assert_eq!(
            toeplitz_multiply(&ToeplitzElement::beta(&vec![1]), &ToeplitzElement::beta(&vec![-1])),
            pair(&[1], &[1])
        );
    }

    #[test]
    fn oracle_agrees() {
        for n in [1, 2] {
            let r = toeplitz_oracle_check(n, 6, 3);
            assert!(r.passed(), "{:?}", r.violations);
            assert!(r.skipped_points > 0);
        }
    }

    #[test]
    fn grading_is_idempotent_pure() {
        for n in [1, 2] {
            let sg = ToeplitzSemigroup { n };
            let elems = sg.elements_up_to(2);
            let r = check_grading(&sg, &elems, &sg.grading());
            assert!(r.valid(), "{:?}", r.violations);
            assert!(r.idempotent_pure);
        }
    }

    fn arb_elem(n: usize) -> impl Strategy<Value = ToeplitzElement> {
        (proptest::collection::vec(0i64..5, n), proptest::collection::vec(0i64..5, n))
            .prop_map(|(s, t)| ToeplitzElement::Pair(s, t))
    }

    proptest! {
        #[test]
        fn associative(p in arb_elem(2), q in arb_elem(2), r in arb_elem(2)) {
            let lhs = toeplitz_multiply(&toeplitz_multiply(&p, &q), &r);
            let rhs = toeplitz_multiply(&p, &toeplitz_multiply(&q, &r));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_is_composition(p in arb_elem(2), q in arb_elem(2), x in 0i64..12, y in 0i64..12) {
            let pq = toeplitz_multiply(&p, &q);
            let pt = vec![x, y];
            prop_assert_eq!(pq.apply(&pt), q.apply(&pt).and_then(|m| p.apply(&m)));
        }

        #[test]
        fn inverse_axioms(p in arb_elem(2)) {
            let ps = toeplitz_star(&p);
            prop_assert_eq!(toeplitz_multiply(&toeplitz_multiply(&p, &ps), &p), p.clone());
            prop_assert_eq!(toeplitz_multiply(&toeplitz_multiply(&ps, &p), &ps), ps);
        }
    }
}
