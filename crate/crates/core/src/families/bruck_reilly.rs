//! Bruck-Reilly extensions `BR(G, θ)` of a finite group.

use serde::Serialize;

use crate::error::{IsgError, Result};
use crate::semigroup::{GroupTable, InverseSemigroup};

/// A validated endomorphism of a finite group.
///
/// Powers `θ^k` are memoized along the orbit of `θ` in the (finite) monoid
/// of self-maps, so any exponent is answered by table lookup.
#[derive(Debug, Clone)]
pub struct Endomorphism {
    map: Vec<usize>,
    /// `powers[k]` is `θ^k` for `k < powers.len()`.
    powers: Vec<Vec<usize>>,
    /// Start of the cycle in `powers`.
    cycle_start: usize,
}

impl Endomorphism {
    pub fn new(group: &GroupTable, map: Vec<usize>) -> Result<Self> {
        let n = group.len();
        if map.len() != n || map.iter().any(|&x| x >= n) {
            return Err(IsgError::Input(format!("endomorphism needs {n} images inside the group")));
        }
        if map[group.identity_elem()] != group.identity_elem() {
            return Err(IsgError::NotHomomorphism("theta(1) != 1".into()));
        }
        for a in group.elements() {
            for b in group.elements() {
                if map[group.mul(a, b)] != group.mul(map[a], map[b]) {
                    return Err(IsgError::NotHomomorphism(format!(
                        "theta({}·{}) != theta({})·theta({})",
                        group.label(a),
                        group.label(b),
                        group.label(a),
                        group.label(b)
                    )));
                }
            }
        }
        let mut powers: Vec<Vec<usize>> = vec![group.elements().collect()];
        let cycle_start = loop {
            let next: Vec<usize> = powers.last().unwrap().iter().map(|&x| map[x]).collect();
            if let Some(i) = powers.iter().position(|p| *p == next) {
                break i;
            }
            powers.push(next);
        };
        Ok(Self { map, powers, cycle_start })
    }

    pub fn identity(group: &GroupTable) -> Self {
        Self::new(group, group.elements().collect()).expect("identity is an endomorphism")
    }

    /// The endomorphism sending everything to the identity.
    pub fn trivial(group: &GroupTable) -> Self {
        Self::new(group, vec![group.identity_elem(); group.len()]).expect("trivial map is an endomorphism")
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `θ^k(a)`.
    pub fn power(&self, k: u64, a: usize) -> usize {
        let len = self.powers.len() as u64;
        let idx = if k < len {
            k
        } else {
            let start = self.cycle_start as u64;
            start + (k - start) % (len - start)
        };
        self.powers[idx as usize][a]
    }
}

/// `(m, a, n)` with `m, n ≥ 0` and `a` a group element index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BRElement {
    pub m: u64,
    pub a: usize,
    pub n: u64,
}

impl BRElement {
    pub fn new(m: u64, a: usize, n: u64) -> Self {
        Self { m, a, n }
    }
}

#[derive(Debug, Clone)]
pub struct BruckReilly {
    group: GroupTable,
    theta: Endomorphism,
}

impl BruckReilly {
    pub fn new(group: GroupTable, theta: Endomorphism) -> Self {
        Self { group, theta }
    }

    /// The bicyclic monoid, `BR` of the trivial group.
    pub fn bicyclic() -> Self {
        let g = GroupTable::trivial();
        let theta = Endomorphism::identity(&g);
        Self::new(g, theta)
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn theta(&self) -> &Endomorphism {
        &self.theta
    }

    pub fn one(&self) -> BRElement {
        BRElement::new(0, self.group.identity_elem(), 0)
    }

    /// All `(m, a, n)` with `m, n ≤ max`.
    pub fn window(&self, max: u64) -> Vec<BRElement> {
        let mut out = Vec::new();
        for m in 0..=max {
            for a in self.group.elements() {
                for n in 0..=max {
                    out.push(BRElement::new(m, a, n));
                }
            }
        }
        out
    }
}

pub fn br_multiply(br: &BruckReilly, p: &BRElement, q: &BRElement) -> BRElement {
    let t = p.n.max(q.m);
    let left = br.theta.power(t - p.n, p.a);
    let right = br.theta.power(t - q.m, q.a);
    BRElement::new(p.m + t - p.n, br.group.mul(left, right), q.n + t - q.m)
}

pub fn br_star(br: &BruckReilly, p: &BRElement) -> BRElement {
    BRElement::new(p.n, br.group.inv(p.a), p.m)
}

pub fn br_phi(p: &BRElement) -> i64 {
    p.m as i64 - p.n as i64
}

/// A representative of the fiber `φ⁻¹(k)`.
pub fn br_coset_rep(br: &BruckReilly, k: i64) -> BRElement {
    let one = br.group.identity_elem();
    if k >= 0 {
        BRElement::new(k as u64, one, 0)
    } else {
        BRElement::new(0, one, k.unsigned_abs())
    }
}

impl InverseSemigroup for BruckReilly {
    type Elem = BRElement;

    fn mul(&self, a: &BRElement, b: &BRElement) -> BRElement {
        br_multiply(self, a, b)
    }

    fn star(&self, a: &BRElement) -> BRElement {
        br_star(self, a)
    }

    fn is_zero(&self, _a: &BRElement) -> bool {
        false
    }

    fn contains(&self, a: &BRElement) -> bool {
        a.a < self.group.len()
    }

    fn render(&self, p: &BRElement) -> String {
        format!("({},{},{})", p.m, self.group.label(p.a), p.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_grading, Grading};
    use crate::semigroup::Integers;
    use proptest::prelude::*;

    fn z2_swap_free() -> [BruckReilly; 2] {
        let g = GroupTable::cyclic(2);
        [
            BruckReilly::new(g.clone(), Endomorphism::identity(&g)),
            BruckReilly::new(g.clone(), Endomorphism::trivial(&g)),
        ]
    }

    #[test]
    fn bicyclic_products() {
        let br = BruckReilly::bicyclic();
        let e = |m, n| BRElement::new(m, 0, n);
        assert_eq!(br_multiply(&br, &e(1, 0), &e(1, 0)), e(2, 0));
        assert_eq!(br_multiply(&br, &e(0, 1), &e(1, 0)), e(0, 0));
        assert_eq!(br_multiply(&br, &e(1, 0), &e(0, 1)), e(1, 1));
        assert_eq!(br_star(&br, &e(3, 1)), e(1, 3));
        assert_eq!(br_phi(&e(2, 0)), 2);
    }

    #[test]
    fn matching_middle_indices() {
        for br in z2_swap_free() {
            let p = BRElement::new(2, 1, 3);
            let q = BRElement::new(3, 1, 1);
            assert_eq!(br_multiply(&br, &p, &q), BRElement::new(2, 0, 1));
            assert_eq!(br_multiply(&br, &br.one(), &q), q);
            assert_eq!(br_multiply(&br, &q, &br.one()), q);
        }
    }

    #[test]
    fn theta_twist_shows_up() {
        let [_, br] = z2_swap_free();
        // (0,1,1)(0,1,0): t = 1, θ⁰(1)·θ¹(1) = 1·0 = 1 in the trivial-θ case.
        let p = BRElement::new(0, 1, 1);
        let q = BRElement::new(0, 1, 0);
        assert_eq!(br_multiply(&br, &p, &q), BRElement::new(0, 1, 1));
        let [id, _] = z2_swap_free();
        assert_eq!(br_multiply(&id, &p, &q), BRElement::new(0, 0, 1));
    }

    #[test]
    fn coset_representatives() {
        let br = BruckReilly::bicyclic();
        assert_eq!(br_coset_rep(&br, -1), BRElement::new(0, 0, 1));
        assert_eq!(br_coset_rep(&br, 2), BRElement::new(2, 0, 0));
        let g = GroupTable::cyclic(2);
        let br = BruckReilly::new(g.clone(), Endomorphism::trivial(&g));
        for s in br.window(4) {
            let rep = br_coset_rep(&br, br_phi(&s));
            let h = br_multiply(&br, &br_star(&br, &rep), &s);
            assert_eq!(br_phi(&h), 0);
            assert_eq!(br_multiply(&br, &rep, &h), s, "{s:?}");
        }
    }

    #[test]
    fn rejects_non_endomorphism() {
        let g = GroupTable::cyclic(3);
        assert!(Endomorphism::new(&g, vec![0, 2, 2]).is_err());
        assert!(Endomorphism::new(&g, vec![1, 2, 0]).is_err());
        let doubling = Endomorphism::new(&g, vec![0, 2, 1]).unwrap();
        assert_eq!(doubling.power(2, 1), 1);
        assert_eq!(doubling.power(1001, 1), 2);
    }

    #[test]
    fn power_memo_matches_iteration() {
        let g = GroupTable::cyclic(6);
        let theta = Endomorphism::new(&g, (0..6).map(|x| (2 * x) % 6).collect()).unwrap();
        for a in 0..6 {
            let mut x = a;
            for k in 0..20u64 {
                assert_eq!(theta.power(k, a), x);
                x = theta.map()[x];
            }
        }
    }

    #[test]
    fn grading_on_window() {
        for br in z2_swap_free() {
            let w = br.window(3);
            let phi = Grading::new(Integers, |p: &BRElement| Some(br_phi(p)));
            let r = check_grading(&br, &w, &phi);
            assert!(r.valid(), "{:?}", r.violations);
            assert!(r.skipped_pairs > 0);
        }
    }

    fn arb_elem(max: u64) -> impl Strategy<Value = BRElement> {
        (0..=max, 0usize..2, 0..=max).prop_map(|(m, a, n)| BRElement::new(m, a, n))
    }

    proptest! {
        #[test]
        fn associative(p in arb_elem(6), q in arb_elem(6), r in arb_elem(6), which in 0usize..2) {
            let br = &z2_swap_free()[which];
            let lhs = br_multiply(br, &br_multiply(br, &p, &q), &r);
            let rhs = br_multiply(br, &p, &br_multiply(br, &q, &r));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_axioms(p in arb_elem(8), which in 0usize..2) {
            let br = &z2_swap_free()[which];
            let ps = br_star(br, &p);
            prop_assert_eq!(br_multiply(br, &br_multiply(br, &p, &ps), &p), p);
            prop_assert_eq!(br_multiply(br, &br_multiply(br, &ps, &p), &ps), ps);
        }

        #[test]
        fn phi_is_homomorphism(p in arb_elem(8), q in arb_elem(8)) {
            let br = &z2_swap_free()[1];
            prop_assert_eq!(br_phi(&br_multiply(br, &p, &q)), br_phi(&p) + br_phi(&q));
        }
    }
}
