use std::collections::{BTreeMap, BTreeSet};

use super::table::{FiniteInverseSemigroup, GroupTable, Homomorphism};
use crate::error::{IsgError, Result};

/// `s ≤ t` in the natural partial order, decided as `s = t·(s*s)`.
pub fn natural_leq(s_grp: &FiniteInverseSemigroup, s: usize, t: usize) -> bool {
    s == s_grp.op(t, s_grp.op(s_grp.inv(s), s))
}

/// The idempotents of `s`, in id order.
pub fn idempotents(s: &FiniteInverseSemigroup) -> Vec<usize> {
    let e: Vec<usize> = s.elements().filter(|&x| s.op(x, x) == x).collect();
    debug_assert!(e.iter().all(|&a| e.iter().all(|&b| {
        let ab = s.op(a, b);
        ab == s.op(b, a) && s.op(ab, ab) == ab
    })));
    e
}

/// `D_a = {b : a*a b = b}`.
pub fn domain_members(s: &FiniteInverseSemigroup, a: usize) -> Vec<usize> {
    let src = s.op(s.inv(a), a);
    let d: Vec<usize> = s.elements().filter(|&b| s.op(src, b) == b).collect();
    debug_assert!(s.elements().all(|b| d.contains(&b) == natural_leq(s, s.op(b, s.inv(b)), src)));
    d
}

/// The maximum group image together with the quotient map.
#[derive(Debug, Clone)]
pub struct MaxGroupImage {
    pub group: GroupTable,
    /// `sigma[s]` is the class of `s`.
    pub sigma: Vec<usize>,
}

impl MaxGroupImage {
    pub fn homomorphism(&self, s: &FiniteInverseSemigroup) -> Homomorphism {
        Homomorphism::new(s.clone(), self.group.clone(), self.sigma.clone())
            .expect("least group congruence yields a homomorphism")
    }
}

/// Quotient by the least group congruence: `s ~ t` iff `es = et` for some
/// idempotent `e`.
///
/// In a finite semigroup the product `z` of all idempotents is the least
/// idempotent, and `es = et` for some `e` iff `zs = zt`.
pub fn max_group_image(s: &FiniteInverseSemigroup) -> MaxGroupImage {
    let idem = idempotents(s);
    let z = idem.iter().skip(1).fold(idem[0], |acc, &e| s.op(acc, e));

    let mut class_of_key: BTreeMap<usize, usize> = BTreeMap::new();
    let mut reps = Vec::new();
    let sigma: Vec<usize> = s
        .elements()
        .map(|x| {
            let key = s.op(z, x);
            *class_of_key.entry(key).or_insert_with(|| {
                reps.push(x);
                reps.len() - 1
            })
        })
        .collect();

    let rows = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| sigma[s.op(a, b)]).collect())
        .collect();
    let labels = reps.iter().map(|&r| format!("[{}]", s.label(r))).collect();
    let group = GroupTable::from_table(rows, Some(labels)).expect("least group congruence quotient is a group");
    MaxGroupImage { group, sigma }
}

/// True iff the kernel of the maximum group homomorphism is exactly `E(S)`.
pub fn is_e_unitary(s: &FiniteInverseSemigroup) -> bool {
    let img = max_group_image(s);
    let one = img.group.identity_elem();
    s.elements().all(|x| (img.sigma[x] == one) == (s.op(x, x) == x))
}

/// `↑H = {t : te ∈ H for some idempotent e}`.
pub fn upward_closure(s: &FiniteInverseSemigroup, h: &BTreeSet<usize>) -> BTreeSet<usize> {
    let idem = idempotents(s);
    s.elements().filter(|&t| idem.iter().any(|&e| h.contains(&s.op(t, e)))).collect()
}

pub fn upward_closed(s: &FiniteInverseSemigroup, h: &BTreeSet<usize>) -> bool {
    upward_closure(s, h) == *h
}

/// `φ⁻¹(1)`; contains the zero automatically when `S` has one, since the
/// target is then trivial.
pub fn kernel_of(phi: &Homomorphism) -> BTreeSet<usize> {
    let one = phi.target.identity_elem();
    phi.source.elements().filter(|&x| phi.map[x] == one).collect()
}

/// `↑sH = {t : te ∈ sH for some idempotent e}`.
pub fn omega_coset(s_grp: &FiniteInverseSemigroup, s: usize, h: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    let up = upward_closure(s_grp, h);
    if let Some(w) = up.difference(h).next() {
        return Err(IsgError::NotUpwardClosed { witness: s_grp.label(*w).to_string() });
    }
    Ok(omega_coset_unchecked(s_grp, s, h))
}

fn omega_coset_unchecked(s_grp: &FiniteInverseSemigroup, s: usize, h: &BTreeSet<usize>) -> BTreeSet<usize> {
    let sh: BTreeSet<usize> = h.iter().map(|&x| s_grp.op(s, x)).collect();
    let idem = idempotents(s_grp);
    s_grp
        .elements()
        .filter(|&t| idem.iter().any(|&e| sh.contains(&s_grp.op(t, e))))
        .collect()
}

/// Outcome of computing all omega cosets of an upward-closed subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDiagnostic {
    pub cosets: Vec<BTreeSet<usize>>,
    pub covers: bool,
    /// An element lying in two distinct cosets, with the two coset indices.
    pub overlap: Option<(usize, usize, usize)>,
}

impl CosetDiagnostic {
    pub fn is_partition(&self) -> bool {
        self.covers && self.overlap.is_none()
    }
}

/// Computes the distinct sets `↑sH` and reports whether they partition `S`.
///
/// No partition is claimed here; for `H` not a kernel the sets may overlap.
pub fn omega_coset_diagnostic(s: &FiniteInverseSemigroup, h: &BTreeSet<usize>) -> Result<CosetDiagnostic> {
    let up = upward_closure(s, h);
    if let Some(w) = up.difference(h).next() {
        return Err(IsgError::NotUpwardClosed { witness: s.label(*w).to_string() });
    }
    let mut cosets: Vec<BTreeSet<usize>> = Vec::new();
    for x in s.elements() {
        let c = omega_coset_unchecked(s, x, h);
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let covers = s.elements().all(|x| cosets.iter().any(|c| c.contains(&x)));
    let mut overlap = None;
    'outer: for (i, ci) in cosets.iter().enumerate() {
        for (j, cj) in cosets.iter().enumerate().skip(i + 1) {
            if let Some(&x) = ci.intersection(cj).next() {
                overlap = Some((x, i, j));
                break 'outer;
            }
        }
    }
    Ok(CosetDiagnostic { cosets, covers, overlap })
}

/// The omega cosets of the kernel of `phi`, asserted to partition `S` with
/// each coset inside a single fiber of `phi`.
pub fn omega_coset_partition(phi: &Homomorphism) -> Result<Vec<BTreeSet<usize>>> {
    let s = &phi.source;
    let h = kernel_of(phi);
    let diag = omega_coset_diagnostic(s, &h)?;
    if let Some((x, i, j)) = diag.overlap {
        return Err(IsgError::PartitionFailure {
            witness: format!("{} lies in cosets {i} and {j}", s.label(x)),
        });
    }
    if !diag.covers {
        let x = s.elements().find(|x| !diag.cosets.iter().any(|c| c.contains(x))).unwrap();
        return Err(IsgError::PartitionFailure { witness: format!("{} is in no coset", s.label(x)) });
    }
    for c in &diag.cosets {
        let first = phi.map[*c.iter().next().expect("coset contains its representative")];
        if let Some(&x) = c.iter().find(|&&x| phi.map[x] != first) {
            return Err(IsgError::PartitionFailure {
                witness: format!("coset containing {} straddles two fibers", s.label(x)),
            });
        }
    }
    Ok(diag.cosets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{close_generators, PartialBijection};

    fn brandt() -> (FiniteInverseSemigroup, Vec<PartialBijection>) {
        let g = PartialBijection::from_pairs(2, [(0, 1)]).unwrap();
        let c = close_generators(&[g], 16).unwrap();
        (c.semigroup, c.witnesses)
    }

    fn id_of(w: &[PartialBijection], p: PartialBijection) -> usize {
        w.iter().position(|x| *x == p).unwrap()
    }

    fn chain() -> FiniteInverseSemigroup {
        FiniteInverseSemigroup::from_table(vec![vec![0, 1], vec![1, 1]], None, None, None).unwrap()
    }

    /// Least group congruence straight from the definition.
    fn sigma_by_definition(s: &FiniteInverseSemigroup) -> Vec<Vec<bool>> {
        let idem = idempotents(s);
        s.elements()
            .map(|a| s.elements().map(|b| idem.iter().any(|&e| s.op(e, a) == s.op(e, b))).collect())
            .collect()
    }

    #[test]
    fn natural_order_basics() {
        let (s, _) = brandt();
        let z = s.zero().unwrap();
        for t in s.elements() {
            assert!(natural_leq(&s, z, t));
            assert!(natural_leq(&s, t, t));
        }
    }

    #[test]
    fn brandt_idempotents() {
        let (s, w) = brandt();
        let got: BTreeSet<usize> = idempotents(&s).into_iter().collect();
        let want: BTreeSet<usize> = [
            PartialBijection::partial_identity(2, [0]),
            PartialBijection::partial_identity(2, [1]),
            PartialBijection::empty(2),
        ]
        .into_iter()
        .map(|p| id_of(&w, p))
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn domain_of_arrow() {
        let (s, w) = brandt();
        let a = id_of(&w, PartialBijection::from_pairs(2, [(0, 1)]).unwrap());
        let id0 = id_of(&w, PartialBijection::partial_identity(2, [0]));
        let want: Vec<usize> = s.elements().filter(|&b| s.op(id0, b) == b).collect();
        assert_eq!(domain_members(&s, a), want);
        assert_eq!(want.len(), 3);
    }

    #[test]
    fn group_domain_is_everything() {
        let g = GroupTable::cyclic(3);
        let s = FiniteInverseSemigroup::from_table(g.product_rows(), None, None, None).unwrap();
        assert_eq!(domain_members(&s, 1).len(), 3);
        assert_eq!(idempotents(&s), vec![0]);
    }

    #[test]
    fn max_group_image_matches_definition() {
        for s in [brandt().0, chain()] {
            let img = max_group_image(&s);
            let rel = sigma_by_definition(&s);
            for a in s.elements() {
                for b in s.elements() {
                    assert_eq!(img.sigma[a] == img.sigma[b], rel[a][b]);
                }
            }
        }
    }

    #[test]
    fn zero_forces_trivial_image() {
        let (s, _) = brandt();
        assert_eq!(max_group_image(&s).group.len(), 1);
        assert!(!is_e_unitary(&s));
        assert!(is_e_unitary(&chain()));
    }

    #[test]
    fn group_is_its_own_image() {
        let g = GroupTable::cyclic(4);
        let s = FiniteInverseSemigroup::from_table(g.product_rows(), None, None, None).unwrap();
        let img = max_group_image(&s);
        assert_eq!(img.group.len(), 4);
        assert_eq!(img.sigma, vec![0, 1, 2, 3]);
        assert!(is_e_unitary(&s));
    }

    #[test]
    fn chain_cosets_overlap_for_top() {
        let s = chain();
        let top: BTreeSet<usize> = [0].into();
        assert!(upward_closed(&s, &top));
        assert_eq!(omega_coset(&s, 1, &top).unwrap(), [0, 1].into());
        let diag = omega_coset_diagnostic(&s, &top).unwrap();
        assert!(!diag.is_partition());
        assert_eq!(diag.overlap.map(|o| o.0), Some(0));
    }

    #[test]
    fn bottom_is_not_upward_closed() {
        let s = chain();
        let bottom: BTreeSet<usize> = [1].into();
        assert!(!upward_closed(&s, &bottom));
        assert!(matches!(omega_coset(&s, 0, &bottom), Err(IsgError::NotUpwardClosed { .. })));
    }

    #[test]
    fn kernel_is_upward_closed_and_partitions() {
        let (s, _) = brandt();
        let phi = Homomorphism::trivial(s.clone());
        let k = kernel_of(&phi);
        assert_eq!(k.len(), s.len());
        assert!(upward_closed(&s, &k));
        assert_eq!(omega_coset_partition(&phi).unwrap().len(), 1);
    }

    #[test]
    fn subgroup_cosets() {
        let z4 = GroupTable::cyclic(4);
        let z2 = GroupTable::cyclic(2);
        let s = FiniteInverseSemigroup::from_table(z4.product_rows(), None, None, None).unwrap();
        let phi = Homomorphism::new(s, z2, vec![0, 1, 0, 1]).unwrap();
        let cosets = omega_coset_partition(&phi).unwrap();
        assert_eq!(cosets, vec![[0, 2].into(), [1, 3].into()]);
    }
}
