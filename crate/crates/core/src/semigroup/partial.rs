use std::collections::HashMap;
use std::fmt;

use super::table::FiniteInverseSemigroup;
use crate::error::{IsgError, Result};

/// A partial injection of the points `0..degree` into themselves.
///
/// Products compose right to left: `f.then_after(g)` is `f ∘ g`, the map that
/// applies `g` first, matching the convention in `I(X)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    map: Vec<Option<usize>>,
}

impl PartialBijection {
    /// Builds a partial bijection, rejecting non-injective maps and images
    /// outside the carrier.
    pub fn new(map: Vec<Option<usize>>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for (x, y) in map.iter().enumerate() {
            if let Some(y) = *y {
                if y >= n {
                    return Err(IsgError::NotInjective(format!("{x} maps outside the carrier")));
                }
                if seen[y] {
                    return Err(IsgError::NotInjective(format!("{y} is hit twice")));
                }
                seen[y] = true;
            }
        }
        Ok(Self { map })
    }

    pub fn from_pairs(degree: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut map = vec![None; degree];
        for (x, y) in pairs {
            if x >= degree {
                return Err(IsgError::Input(format!("point {x} outside carrier of size {degree}")));
            }
            if map[x].is_some() {
                return Err(IsgError::NotInjective(format!("{x} assigned twice")));
            }
            map[x] = Some(y);
        }
        Self::new(map)
    }

    pub fn identity(degree: usize) -> Self {
        Self { map: (0..degree).map(Some).collect() }
    }

    /// The identity restricted to `points`.
    pub fn partial_identity(degree: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut map = vec![None; degree];
        for p in points {
            map[p] = Some(p);
        }
        Self { map }
    }

    pub fn empty(degree: usize) -> Self {
        Self { map: vec![None; degree] }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten()
    }

    pub fn is_empty(&self) -> bool {
        self.map.iter().all(Option::is_none)
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.iter().enumerate().filter_map(|(x, y)| y.map(|_| x))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y)))
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![None; self.map.len()];
        for (x, y) in self.pairs() {
            map[y] = Some(x);
        }
        Self { map }
    }

    /// `self ∘ other`: apply `other`, then `self`, on the largest domain where
    /// both steps are defined.
    pub fn compose(&self, other: &Self) -> Self {
        let map = other.map.iter().map(|y| y.and_then(|y| self.apply(y))).collect();
        Self { map }
    }
}

impl fmt::Debug for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.pairs().map(|(x, y)| format!("{x}->{y}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A closed inverse semigroup together with the partial bijection realizing
/// each element.
#[derive(Debug, Clone)]
pub struct Closure {
    pub semigroup: FiniteInverseSemigroup,
    pub witnesses: Vec<PartialBijection>,
}

impl Closure {
    pub fn id_of(&self, p: &PartialBijection) -> Option<usize> {
        self.witnesses.iter().position(|w| w == p)
    }
}

/// Closes `gens` and their inverses under composition.
///
/// Element ids follow discovery order, so the same generator list always
/// yields the same numbering. The empty map becomes the zero when it arises.
pub fn close_generators(gens: &[PartialBijection], cap: usize) -> Result<Closure> {
    let degree = gens.first().map_or(0, PartialBijection::degree);
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(IsgError::CarrierMismatch { left: degree, right: g.degree() });
    }

    let mut index: HashMap<PartialBijection, usize> = HashMap::new();
    let mut elems: Vec<PartialBijection> = Vec::new();
    let mut intern = |p: PartialBijection, elems: &mut Vec<PartialBijection>| -> Result<usize> {
        if let Some(&id) = index.get(&p) {
            return Ok(id);
        }
        if elems.len() >= cap {
            return Err(IsgError::CapExceeded { cap });
        }
        let id = elems.len();
        index.insert(p.clone(), id);
        elems.push(p);
        Ok(id)
    };

    for g in gens {
        intern(g.clone(), &mut elems)?;
        intern(g.inverse(), &mut elems)?;
    }

    // Every pair (i, j) with max(i, j) >= done has still to be multiplied.
    let mut done = 0;
    while done < elems.len() {
        let frontier = elems.len();
        for i in 0..frontier {
            for j in 0..frontier {
                if i < done && j < done {
                    continue;
                }
                let p = elems[i].compose(&elems[j]);
                intern(p, &mut elems)?;
            }
        }
        done = frontier;
    }

    let n = elems.len();
    let mut product = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            product[i * n + j] = index[&elems[i].compose(&elems[j])];
        }
    }
    let star = elems.iter().map(|p| index[&p.inverse()]).collect();
    let zero = elems.iter().position(PartialBijection::is_empty);
    let labels = elems.iter().map(|p| format!("{p:?}")).collect();
    let semigroup = FiniteInverseSemigroup::from_parts_unchecked(n, product, star, zero, labels);
    Ok(Closure { semigroup, witnesses: elems })
}
