use super::{Group, InverseSemigroup};
use crate::error::{IsgError, Result};

/// A finite inverse semigroup given by its multiplication table.
///
/// Elements are the ids `0..len()`; `labels` only feed rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInverseSemigroup {
    n: usize,
    product: Vec<usize>,
    star: Vec<usize>,
    zero: Option<usize>,
    labels: Vec<String>,
}

impl FiniteInverseSemigroup {
    pub(crate) fn from_parts_unchecked(
        n: usize,
        product: Vec<usize>,
        star: Vec<usize>,
        zero: Option<usize>,
        labels: Vec<String>,
    ) -> Self {
        Self { n, product, star, zero, labels }
    }

    /// Validates a multiplication table as an inverse semigroup.
    ///
    /// The involution is derived from the table when `star` is `None`. The
    /// check is associativity, regularity and commuting idempotents, which
    /// together are equivalent to uniqueness of inverses.
    pub fn from_table(
        product: Vec<Vec<usize>>,
        star: Option<Vec<usize>>,
        zero: Option<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = product.len();
        if n == 0 {
            return Err(IsgError::NotInverseSemigroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in product.iter().enumerate() {
            if row.len() != n {
                return Err(IsgError::Input(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(IsgError::Input(format!("row {i} references element {bad}")));
            }
            flat.extend_from_slice(row);
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => return Err(IsgError::Input(format!("{} labels for {n} elements", l.len()))),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let mut s = Self { n, product: flat, star: vec![0; n], zero, labels };

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if s.op(s.op(a, b), c) != s.op(a, s.op(b, c)) {
                        return Err(IsgError::NotInverseSemigroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let idem: Vec<usize> = (0..n).filter(|&e| s.op(e, e) == e).collect();
        for &e in &idem {
            for &f in &idem {
                if s.op(e, f) != s.op(f, e) {
                    return Err(IsgError::NotInverseSemigroup(format!("idempotents {e} and {f} do not commute")));
                }
            }
        }
        for a in 0..n {
            let inv = (0..n).find(|&t| s.op(s.op(a, t), a) == a && s.op(s.op(t, a), t) == t);
            match inv {
                Some(t) => s.star[a] = t,
                None => return Err(IsgError::NotInverseSemigroup(format!("{a} is not regular"))),
            }
        }
        if let Some(given) = star {
            if given.len() != n {
                return Err(IsgError::Input(format!("star table has {} entries, expected {n}", given.len())));
            }
            if let Some(a) = (0..n).find(|&a| given[a] != s.star[a]) {
                return Err(IsgError::NotInverseSemigroup(format!(
                    "star({a}) = {} but the inverse is {}",
                    given[a], s.star[a]
                )));
            }
        }
        if let Some(z) = zero {
            if z >= n {
                return Err(IsgError::Input(format!("zero id {z} out of range")));
            }
            if let Some(a) = (0..n).find(|&a| s.op(a, z) != z || s.op(z, a) != z) {
                return Err(IsgError::NotInverseSemigroup(format!("{z} is not a zero: fails against {a}")));
            }
        } else {
            s.zero = (0..n).find(|&z| (0..n).all(|a| s.op(a, z) == z && s.op(z, a) == z));
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.product[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.star[a]
    }

    pub fn product_rows(&self) -> Vec<Vec<usize>> {
        self.product.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn star_table(&self) -> &[usize] {
        &self.star
    }

    /// Returns the semigroup as a group table when it is one.
    pub fn as_group(&self) -> Option<GroupTable> {
        GroupTable::from_table(self.product_rows(), Some(self.labels.clone())).ok()
    }
}

impl InverseSemigroup for FiniteInverseSemigroup {
    type Elem = usize;

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.op(*a, *b)
    }

    fn star(&self, a: &usize) -> usize {
        self.inv(*a)
    }

    fn is_zero(&self, a: &usize) -> bool {
        self.zero == Some(*a)
    }

    fn contains(&self, a: &usize) -> bool {
        *a < self.n
    }

    fn render(&self, a: &usize) -> String {
        self.labels.get(*a).cloned().unwrap_or_else(|| format!("#{a}"))
    }
}

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    product: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl GroupTable {
    pub fn from_table(product: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = product.len();
        if n == 0 {
            return Err(IsgError::NotGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in product.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(IsgError::Input(format!("malformed group table row {i}")));
            }
            flat.extend_from_slice(row);
        }
        let op = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if op(op(a, b), c) != op(a, op(b, c)) {
                        return Err(IsgError::NotGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| op(e, a) == a && op(a, e) == a))
            .ok_or_else(|| IsgError::NotGroup("no identity".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| op(a, b) == identity && op(b, a) == identity)
                .ok_or_else(|| IsgError::NotGroup(format!("{a} has no inverse")))?;
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(IsgError::Input(format!("{} labels for {n} group elements", labels.len())));
        }
        Ok(Self { n, product: flat, identity, inverse, labels })
    }

    /// The cyclic group of order `n`, element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(rows, None).expect("cyclic table is a group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity_elem(&self) -> usize {
        self.identity
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn product_rows(&self) -> Vec<Vec<usize>> {
        self.product.chunks(self.n).map(<[usize]>::to_vec).collect()
    }
}

impl Group for GroupTable {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }
    fn op(&self, a: &usize, b: &usize) -> usize {
        self.mul(*a, *b)
    }
    fn inverse(&self, a: &usize) -> usize {
        self.inv(*a)
    }
    fn render(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }
}

/// A homomorphism from a finite inverse semigroup onto a finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: FiniteInverseSemigroup,
    pub target: GroupTable,
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: FiniteInverseSemigroup, target: GroupTable, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&g| g >= target.len()) {
            return Err(IsgError::Input("homomorphism map has the wrong shape".into()));
        }
        for s in source.elements() {
            for t in source.elements() {
                let lhs = map[source.op(s, t)];
                let rhs = target.mul(map[s], map[t]);
                if lhs != rhs {
                    return Err(IsgError::NotHomomorphism(format!(
                        "phi({s}{t}) = {lhs} but phi({s})phi({t}) = {rhs}"
                    )));
                }
            }
        }
        let mut hit = vec![false; target.len()];
        for &g in &map {
            hit[g] = true;
        }
        if let Some(g) = hit.iter().position(|h| !h) {
            return Err(IsgError::NotHomomorphism(format!("group element {g} is not in the image")));
        }
        Ok(Self { source, target, map })
    }

    /// The homomorphism onto the trivial group.
    pub fn trivial(source: FiniteInverseSemigroup) -> Self {
        let map = vec![0; source.len()];
        Self { source, target: GroupTable::trivial(), map }
    }

    pub fn apply(&self, s: usize) -> usize {
        self.map[s]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> FiniteInverseSemigroup {
        // e = 0 > f = 1
        FiniteInverseSemigroup::from_table(vec![vec![0, 1], vec![1, 1]], None, None, None).unwrap()
    }

    #[test]
    fn chain_has_zero_and_is_its_own_star() {
        let s = chain();
        assert_eq!(s.zero(), Some(1));
        assert_eq!(s.star_table(), &[0, 1]);
    }

    #[test]
    fn rejects_non_associative() {
        let t = vec![vec![1, 0], vec![0, 0]];
        assert!(matches!(
            FiniteInverseSemigroup::from_table(t, None, None, None),
            Err(IsgError::NotInverseSemigroup(_))
        ));
    }

    #[test]
    fn rejects_left_zero_band() {
        // xy = x: idempotents do not commute
        let t = vec![vec![0, 0], vec![1, 1]];
        let err = FiniteInverseSemigroup::from_table(t, None, None, None).unwrap_err();
        assert!(err.to_string().contains("commute"));
    }

    #[test]
    fn rejects_wrong_star() {
        let t = vec![vec![0, 1], vec![1, 0]];
        let err = FiniteInverseSemigroup::from_table(t, Some(vec![1, 1]), None, None).unwrap_err();
        assert!(matches!(err, IsgError::NotInverseSemigroup(_)));
    }

    #[test]
    fn cyclic_group_inverses() {
        let g = GroupTable::cyclic(5);
        for a in g.elements() {
            assert_eq!(g.mul(a, g.inv(a)), g.identity_elem());
        }
    }

    #[test]
    fn homomorphism_must_be_onto() {
        let z2 = GroupTable::cyclic(2);
        let s = FiniteInverseSemigroup::from_table(z2.product_rows(), None, None, None).unwrap();
        assert!(Homomorphism::new(s.clone(), z2.clone(), vec![0, 0]).is_err());
        assert!(Homomorphism::new(s, z2, vec![0, 1]).is_ok());
    }
}
