use std::collections::HashMap;

use crate::error::{IsgError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub src: usize,
    pub rng: usize,
}

/// A finite directed graph `(E⁰, E¹, r, s)` with labelled vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl DirectedGraph {
    /// `edges` are `(label, src, rng)` triples naming declared vertices.
    ///
    /// Labels must be unique across vertices and edges, since empty paths are
    /// written by their vertex.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(IsgError::Input(format!("duplicate vertex {v:?}")));
            }
        }
        let mut out = Vec::new();
        let mut edge_index = HashMap::new();
        for (label, src, rng) in edges {
            let lookup = |v: &str| {
                vertex_index.get(v).copied().ok_or_else(|| IsgError::Input(format!("edge {label:?} uses undeclared vertex {v:?}")))
            };
            let (s, r) = (lookup(&src)?, lookup(&rng)?);
            if vertex_index.contains_key(&label) || edge_index.insert(label.clone(), out.len()).is_some() {
                return Err(IsgError::Input(format!("label {label:?} is not unique")));
            }
            out.push(Edge { label, src: s, rng: r });
        }
        Ok(Self { vertices, edges: out, vertex_index, edge_index })
    }

    /// One vertex `v` with `n` loops labelled `e`, `f`, `g`, ... (then `x4`, `x5`, ...).
    pub fn bouquet(n: usize) -> Self {
        let names = ["e", "f", "g", "h"];
        let edges = (0..n).map(|i| {
            let label = names.get(i).map_or_else(|| format!("x{i}"), |s| s.to_string());
            (label, "v".to_string(), "v".to_string())
        });
        Self::new(["v"], edges).expect("bouquet is well formed")
    }

    /// Two vertices `v -> w` joined by `n` parallel edges `e`, `f`, ...
    pub fn parallel_edges(n: usize) -> Self {
        let names = ["e", "f", "g", "h"];
        let edges = (0..n).map(|i| {
            let label = names.get(i).map_or_else(|| format!("x{i}"), |s| s.to_string());
            (label, "v".to_string(), "w".to_string())
        });
        Self::new(["v", "w"], edges).expect("parallel graph is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, label: &str) -> Option<usize> {
        self.vertex_index.get(label).copied()
    }

    pub fn edge_id(&self, label: &str) -> Option<usize> {
        self.edge_index.get(label).copied()
    }

    /// All paths of length at most `max_len`, shortest first.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.vertices.len()).map(Path::empty).collect();
        let mut layer = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &layer {
                for (id, e) in self.edges.iter().enumerate() {
                    if e.src == p.range() {
                        next.push(Path::from_parts(e.rng, p.source(), std::iter::once(id).chain(p.edges().iter().copied()).collect()));
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// A finite path `μ = μ_n ⋯ μ_1`, stored most significant edge first.
///
/// `range` is `r(μ_n)` and `source` is `s(μ_1)`; the empty path at `v` has
/// both equal to `v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Path {
    range: usize,
    source: usize,
    edges: Vec<usize>,
}

impl Path {
    pub fn empty(v: usize) -> Self {
        Self { range: v, source: v, edges: Vec::new() }
    }

    pub(crate) fn from_parts(range: usize, source: usize, edges: Vec<usize>) -> Self {
        Self { range, source, edges }
    }

    /// Validates composability `s(μ_{i+1}) = r(μ_i)` along `edges`.
    pub fn new(g: &DirectedGraph, edges: Vec<usize>) -> Result<Self> {
        let Some(&first) = edges.first() else {
            return Err(IsgError::Input("use Path::empty for the empty path".into()));
        };
        if let Some(&bad) = edges.iter().find(|&&e| e >= g.edge_count()) {
            return Err(IsgError::Input(format!("unknown edge id {bad}")));
        }
        for w in edges.windows(2) {
            if g.edge(w[0]).src != g.edge(w[1]).rng {
                return Err(IsgError::Input(format!(
                    "edges {} and {} do not compose",
                    g.edge(w[0]).label,
                    g.edge(w[1]).label
                )));
            }
        }
        let last = *edges.last().unwrap();
        Ok(Self { range: g.edge(first).rng, source: g.edge(last).src, edges })
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `μν`, defined when `s(μ) = r(ν)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        (self.source == other.range).then(|| {
            let mut edges = self.edges.clone();
            edges.extend_from_slice(&other.edges);
            Path { range: self.range, source: other.source, edges }
        })
    }

    /// The `ν'` with `self = prefix · ν'`, if any.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if prefix.range != self.range || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path { range: prefix.source, source: self.source, edges: self.edges[prefix.edges.len()..].to_vec() })
    }

    pub fn render(&self, g: &DirectedGraph) -> String {
        if self.edges.is_empty() {
            g.vertex_label(self.range).to_string()
        } else {
            self.edges.iter().map(|&e| g.edge(e).label.as_str()).collect::<Vec<_>>().join(" ")
        }
    }

    /// Parses a path written as space or dot separated edge labels, or a
    /// single vertex label for an empty path.
    pub fn parse(g: &DirectedGraph, text: &str) -> Result<Path> {
        let tokens: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == '.').filter(|t| !t.is_empty()).collect();
        if let [one] = tokens.as_slice() {
            if let Some(v) = g.vertex_id(one) {
                return Ok(Path::empty(v));
            }
        }
        if tokens.is_empty() {
            return Err(IsgError::Input("empty path text; write the vertex label".into()));
        }
        let edges = tokens
            .iter()
            .map(|t| g.edge_id(t).ok_or_else(|| IsgError::Input(format!("unknown edge or vertex {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Path::new(g, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_endpoints_follow_convention() {
        // v --e--> w --f--> x ; the path "f e" goes v to x
        let g = DirectedGraph::new(
            ["v", "w", "x"],
            [("e".into(), "v".into(), "w".into()), ("f".into(), "w".into(), "x".into())],
        )
        .unwrap();
        let p = Path::parse(&g, "f e").unwrap();
        assert_eq!(g.vertex_label(p.range()), "x");
        assert_eq!(g.vertex_label(p.source()), "v");
        assert!(Path::parse(&g, "e f").is_err());
    }

    #[test]
    fn empty_prefix_needs_matching_range() {
        let g = DirectedGraph::parallel_edges(1);
        let e = Path::parse(&g, "e").unwrap();
        let w = Path::parse(&g, "w").unwrap();
        let v = Path::parse(&g, "v").unwrap();
        assert_eq!(e.strip_prefix(&w), Some(e.clone()));
        assert_eq!(e.strip_prefix(&v), None);
        assert_eq!(e.strip_prefix(&e), Some(v));
    }

    #[test]
    fn path_counts() {
        let g = DirectedGraph::bouquet(2);
        // 1 + 2 + 4 + 8
        assert_eq!(g.paths_up_to(3).len(), 15);
        let p = DirectedGraph::parallel_edges(2);
        // two empty paths and two edges; nothing composes
        assert_eq!(p.paths_up_to(3).len(), 4);
    }

    #[test]
    fn labels_must_be_unique() {
        assert!(DirectedGraph::new(["v"], [("v".into(), "v".into(), "v".into())]).is_err());
        assert!(DirectedGraph::new(["v"], [("e".into(), "v".into(), "u".into())]).is_err());
    }
}
