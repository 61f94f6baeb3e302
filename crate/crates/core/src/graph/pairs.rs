use std::collections::BTreeSet;
use std::sync::Arc;

use super::digraph::{DirectedGraph, Path};
use super::word::{free_reduce, FreeGroup, FreeWord, Letter};
use crate::algebra::Grading;
use crate::error::{IsgError, Result};
use crate::semigroup::InverseSemigroup;

/// An element `(μ, ν)` of the graph inverse semigroup, `s(μ) = s(ν)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PathPair {
    Zero,
    Pair(Path, Path),
}

impl PathPair {
    pub fn new(mu: Path, nu: Path) -> Result<Self> {
        if mu.source() != nu.source() {
            return Err(IsgError::Input("paths in a pair must share their source".into()));
        }
        Ok(PathPair::Pair(mu, nu))
    }

    /// `(μ, μ)`.
    pub fn diagonal(mu: Path) -> Self {
        PathPair::Pair(mu.clone(), mu)
    }

    /// Longest path length in the pair.
    pub fn height(&self) -> usize {
        match self {
            PathPair::Zero => 0,
            PathPair::Pair(m, n) => m.len().max(n.len()),
        }
    }

    pub fn paths(&self) -> Option<(&Path, &Path)> {
        match self {
            PathPair::Zero => None,
            PathPair::Pair(m, n) => Some((m, n)),
        }
    }
}

/// `S_E`, the graph inverse semigroup of a directed graph.
#[derive(Debug, Clone)]
pub struct GraphInverseSemigroup {
    graph: Arc<DirectedGraph>,
}

impl GraphInverseSemigroup {
    pub fn new(graph: DirectedGraph) -> Self {
        Self { graph: Arc::new(graph) }
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn free_group(&self) -> FreeGroup {
        FreeGroup::new(self.graph.edges().iter().map(|e| e.label.clone()).collect())
    }

    /// `φ((μ, ν)) = red(μν⁻¹)` as a grading by the free group on the edges.
    pub fn grading(&self) -> Grading<PathPair, FreeGroup> {
        Grading::new(self.free_group(), grading_phi)
    }

    /// Parses `"(μ, ν)"` or `"0"`.
    pub fn parse_pair(&self, text: &str) -> Result<PathPair> {
        let t = text.trim();
        if t == "0" {
            return Ok(PathPair::Zero);
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| IsgError::Input(format!("expected \"(mu, nu)\", got {t:?}")))?;
        let (m, n) = inner.split_once(',').ok_or_else(|| IsgError::Input(format!("missing comma in {t:?}")))?;
        PathPair::new(Path::parse(&self.graph, m)?, Path::parse(&self.graph, n)?)
    }

    pub fn parse_word(&self, text: &str) -> Result<FreeWord> {
        self.free_group().parse(text).ok_or_else(|| IsgError::Input(format!("bad word {text:?}")))
    }
}

/// The three-case product of `S_E`.
pub fn multiply_pairs(p: &PathPair, q: &PathPair) -> PathPair {
    let (PathPair::Pair(mu, nu), PathPair::Pair(alpha, beta)) = (p, q) else {
        return PathPair::Zero;
    };
    if let Some(nu_rest) = nu.strip_prefix(alpha) {
        let right = beta.concat(&nu_rest).expect("s(beta) = s(alpha) = r(nu')");
        return PathPair::Pair(mu.clone(), right);
    }
    if let Some(alpha_rest) = alpha.strip_prefix(nu) {
        let left = mu.concat(&alpha_rest).expect("s(mu) = s(nu) = r(alpha')");
        return PathPair::Pair(left, beta.clone());
    }
    PathPair::Zero
}

/// `(μ, ν)* = (ν, μ)`.
pub fn star_pair(p: &PathPair) -> PathPair {
    match p {
        PathPair::Zero => PathPair::Zero,
        PathPair::Pair(m, n) => PathPair::Pair(n.clone(), m.clone()),
    }
}

/// `red(μν⁻¹)`; `None` for the zero.
pub fn grading_phi(p: &PathPair) -> Option<FreeWord> {
    let (mu, nu) = p.paths()?;
    let letters = mu
        .edges()
        .iter()
        .map(|&e| Letter::pos(e))
        .chain(nu.edges().iter().rev().map(|&e| Letter::neg(e)));
    Some(free_reduce(letters))
}

impl InverseSemigroup for GraphInverseSemigroup {
    type Elem = PathPair;

    fn mul(&self, a: &PathPair, b: &PathPair) -> PathPair {
        multiply_pairs(a, b)
    }

    fn star(&self, a: &PathPair) -> PathPair {
        star_pair(a)
    }

    fn is_zero(&self, a: &PathPair) -> bool {
        matches!(a, PathPair::Zero)
    }

    fn contains(&self, a: &PathPair) -> bool {
        match a {
            PathPair::Zero => true,
            PathPair::Pair(m, n) => {
                let ok = |p: &Path| {
                    p.range() < self.graph.vertex_count()
                        && (p.is_empty() || Path::new(&self.graph, p.edges().to_vec()).as_ref() == Ok(p))
                };
                m.source() == n.source() && ok(m) && ok(n)
            }
        }
    }

    fn render(&self, a: &PathPair) -> String {
        match a {
            PathPair::Zero => "0".into(),
            PathPair::Pair(m, n) => format!("({}, {})", m.render(&self.graph), n.render(&self.graph)),
        }
    }
}

/// The truncation `{(μ, ν) : |μ|, |ν| ≤ L} ∪ {0}` of `S_E`.
#[derive(Debug, Clone)]
pub struct PairEnumeration {
    pub max_len: usize,
    /// Nonzero pairs in deterministic order, then the zero.
    pub elements: Vec<PathPair>,
    /// Products of pairs of height at most `L/2` were all found inside.
    pub closure_certified: bool,
}

impl PairEnumeration {
    pub fn nonzero(&self) -> &[PathPair] {
        &self.elements[..self.elements.len() - 1]
    }
}

pub fn enumerate_pairs(graph: &DirectedGraph, max_len: usize) -> PairEnumeration {
    let paths = graph.paths_up_to(max_len);
    let mut elements = Vec::new();
    for mu in &paths {
        for nu in &paths {
            if mu.source() == nu.source() {
                elements.push(PathPair::Pair(mu.clone(), nu.clone()));
            }
        }
    }
    elements.push(PathPair::Zero);

    let members: BTreeSet<&PathPair> = elements.iter().collect();
    let half: Vec<&PathPair> = elements.iter().filter(|p| p.height() <= max_len / 2).collect();
    let closure_certified = half.iter().all(|p| half.iter().all(|q| members.contains(&multiply_pairs(p, q))));
    PairEnumeration { max_len, elements, closure_certified }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop1() -> GraphInverseSemigroup {
        GraphInverseSemigroup::new(DirectedGraph::bouquet(1))
    }

    #[test]
    fn idempotent_pair() {
        let s = loop1();
        let p = s.parse_pair("(e e, e e)").unwrap();
        assert_eq!(multiply_pairs(&p, &p), p);
    }

    #[test]
    fn loop_square() {
        let s = loop1();
        let p = s.parse_pair("(e, v)").unwrap();
        assert_eq!(multiply_pairs(&p, &p), s.parse_pair("(e e, v)").unwrap());
    }

    #[test]
    fn distinct_loops_annihilate() {
        let s = GraphInverseSemigroup::new(DirectedGraph::bouquet(2));
        let p = s.parse_pair("(v, e)").unwrap();
        let q = s.parse_pair("(f, v)").unwrap();
        assert_eq!(multiply_pairs(&p, &q), PathPair::Zero);
    }

    #[test]
    fn grading_examples() {
        let s = GraphInverseSemigroup::new(DirectedGraph::bouquet(2));
        let fg = s.free_group();
        assert!(grading_phi(&s.parse_pair("(e f, e f)").unwrap()).unwrap().is_empty());
        assert_eq!(grading_phi(&s.parse_pair("(e e, e)").unwrap()).unwrap(), fg.parse("e").unwrap());
        assert_eq!(grading_phi(&s.parse_pair("(e, f)").unwrap()).unwrap(), fg.parse("e f^-1").unwrap());
        assert_eq!(grading_phi(&PathPair::Zero), None);
    }

    #[test]
    fn enumeration_counts() {
        let single = DirectedGraph::new(["v"], Vec::<(String, String, String)>::new()).unwrap();
        assert_eq!(enumerate_pairs(&single, 4).elements.len(), 2);
        assert_eq!(enumerate_pairs(&DirectedGraph::bouquet(1), 1).elements.len(), 5);
        assert_eq!(enumerate_pairs(&DirectedGraph::bouquet(2), 1).nonzero().len(), 9);
    }

    #[test]
    fn enumeration_closure_certificate() {
        for l in 0..=4 {
            assert!(enumerate_pairs(&DirectedGraph::bouquet(2), l).closure_certified);
            assert!(enumerate_pairs(&DirectedGraph::parallel_edges(2), l).closure_certified);
        }
    }

    #[test]
    fn pairs_need_common_source() {
        let s = GraphInverseSemigroup::new(DirectedGraph::parallel_edges(1));
        assert!(s.parse_pair("(e, v)").is_ok());
        assert!(s.parse_pair("(e, w)").is_err());
    }
}
