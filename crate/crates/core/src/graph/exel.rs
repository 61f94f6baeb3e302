//! Orthogonality and semi-saturation of the Fell bundle graded by the free
//! group on the edges.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::digraph::{DirectedGraph, Path};
use super::pairs::{enumerate_pairs, grading_phi, multiply_pairs, GraphInverseSemigroup, PathPair};
use super::word::{FreeWord, Letter};
use crate::algebra::{convolve, AlgebraElement, Coefficient, Scalar};
use crate::error::{IsgError, Result};
use crate::report::{push_violation, Violation};
use crate::semigroup::InverseSemigroup;

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    pub max_len: usize,
    pub edge_pairs: usize,
    pub checked_products: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Checks `S_{x⁻¹} S_y = {0}` for distinct edges `x`, `y` over all fiber
/// elements with paths of length at most `max_len`.
pub fn orthogonality_check(graph: &DirectedGraph, max_len: usize) -> OrthogonalityReport {
    let s = GraphInverseSemigroup::new(graph.clone());
    let elems = enumerate_pairs(graph, max_len);
    let mut by_degree: BTreeMap<FreeWord, Vec<&PathPair>> = BTreeMap::new();
    for p in elems.nonzero() {
        by_degree.entry(grading_phi(p).expect("nonzero")).or_default().push(p);
    }
    let fiber = |w: FreeWord| by_degree.get(&w).cloned().unwrap_or_default();

    let mut violations = Vec::new();
    let (mut count, mut checked, mut edge_pairs) = (0, 0, 0);
    for x in 0..graph.edge_count() {
        for y in 0..graph.edge_count() {
            if x == y {
                continue;
            }
            edge_pairs += 1;
            let left = fiber(FreeWord::positive(&[x]).inverse());
            let right = fiber(FreeWord::positive(&[y]));
            for p in &left {
                for q in &right {
                    checked += 1;
                    let pq = multiply_pairs(p, q);
                    if pq != PathPair::Zero {
                        push_violation(
                            &mut violations,
                            &mut count,
                            Violation::new("orthogonality", format!("{} · {} = {}", s.render(p), s.render(q), s.render(&pq))),
                        );
                    }
                }
            }
        }
    }
    OrthogonalityReport { max_len, edge_pairs, checked_products: checked, violation_count: count, violations }
}

/// `st⁻¹` as the pair of positive paths `(a, b)` with `st⁻¹ = ab⁻¹`.
///
/// `Ok(None)` means the word has the right shape but no such paths exist in
/// the graph, so the fiber is empty.
fn positive_split(graph: &DirectedGraph, s: &FreeWord, t: &FreeWord) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let t_inv = t.inverse();
    let word = s.mul(&t_inv);
    if s.cancels_with(&t_inv) {
        return Err(IsgError::CancellationPresent(format!("{word:?}")));
    }
    let (a, b) = word.split_positive_negative().ok_or_else(|| IsgError::NotPositivePair(format!("{word:?}")))?;
    let valid = |edges: &[usize]| edges.is_empty() || Path::new(graph, edges.to_vec()).is_ok();
    if !valid(&a) || !valid(&b) {
        return Ok(None);
    }
    if let (Some(&la), Some(&lb)) = (a.last(), b.last()) {
        if graph.edge(la).src != graph.edge(lb).src {
            return Ok(None);
        }
    }
    Ok(Some((a, b)))
}

/// The common source vertex of `a` and `b`, or `None` when both are empty.
fn split_vertex(graph: &DirectedGraph, a: &[usize], b: &[usize]) -> Option<usize> {
    a.last().or(b.last()).map(|&e| graph.edge(e).src)
}

fn path_at(graph: &DirectedGraph, edges: &[usize], v: usize) -> Path {
    if edges.is_empty() {
        Path::empty(v)
    } else {
        Path::new(graph, edges.to_vec()).expect("validated path")
    }
}

/// `S_{st⁻¹} = (a,v) E^v (v,b)`: all `(aw, bw)` with `r(w) = v` and both
/// paths of length at most `max_len`.
pub fn fiber_support(graph: &DirectedGraph, s: &FreeWord, t: &FreeWord, max_len: usize) -> Result<Vec<PathPair>> {
    let Some((a, b)) = positive_split(graph, s, t)? else {
        return Ok(Vec::new());
    };
    let vertices: Vec<usize> = match split_vertex(graph, &a, &b) {
        Some(v) => vec![v],
        None => (0..graph.vertex_count()).collect(),
    };
    let longest = a.len().max(b.len());
    if longest > max_len {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for w in graph.paths_up_to(max_len - longest) {
        if !vertices.contains(&w.range()) {
            continue;
        }
        let v = w.range();
        let aw = path_at(graph, &a, v).concat(&w).expect("r(w) = v");
        let bw = path_at(graph, &b, v).concat(&w).expect("r(w) = v");
        out.push(PathPair::Pair(aw, bw));
    }
    out.sort();
    Ok(out)
}

/// The same fiber found by scanning the truncation for `φ(p) = st⁻¹`.
pub fn fiber_scan(graph: &DirectedGraph, word: &FreeWord, max_len: usize) -> Vec<PathPair> {
    let mut out: Vec<PathPair> = enumerate_pairs(graph, max_len)
        .nonzero()
        .iter()
        .filter(|p| grading_phi(p).as_ref() == Some(word))
        .cloned()
        .collect();
    out.sort();
    out
}

/// Which prefix relation fixed the path `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrefixCase {
    /// `a` is a prefix of `s`, `s = a c⁻¹`.
    APrefixOfS,
    /// `b` is a prefix of `t`, `t = b c⁻¹`.
    BPrefixOfT,
}

/// One product `f_k f'_k` of the factorization.
#[derive(Debug, Clone)]
pub struct FactorPair<K: Coefficient> {
    pub k: usize,
    pub left: AlgebraElement<PathPair, K>,
    pub right: AlgebraElement<PathPair, K>,
}

#[derive(Debug, Clone)]
pub enum FactorSet {
    /// Every coefficient had a Gaussian-rational square root.
    Exact(Vec<FactorPair<Scalar>>),
    Float(Vec<FactorPair<Complex64>>),
}

#[derive(Debug, Clone)]
pub struct Factorization {
    pub case: PrefixCase,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub factors: FactorSet,
    /// Largest coefficient error of `Σ f_k f'_k - f`; zero in exact mode.
    pub max_residual: f64,
}

impl Factorization {
    pub fn is_exact(&self) -> bool {
        matches!(self.factors, FactorSet::Exact(_))
    }

    pub fn ks(&self) -> Vec<usize> {
        match &self.factors {
            FactorSet::Exact(v) => v.iter().map(|p| p.k).collect(),
            FactorSet::Float(v) => v.iter().map(|p| p.k).collect(),
        }
    }
}

/// Tolerance for the identity when square roots leave the rationals.
pub const FLOAT_FACTOR_TOL: f64 = 1e-12;

/// Writes `f ∈ span S_{st⁻¹}` as `Σ_k f_k f'_k` with `f_k` in the span of
/// `S_s` and `f'_k` in the span of `S_{t⁻¹}`, then checks the identity and
/// the supports.
pub fn semisaturation_factorize(
    sg: &GraphInverseSemigroup,
    f: &AlgebraElement<PathPair>,
    s: &FreeWord,
    t: &FreeWord,
) -> Result<Factorization> {
    let graph = sg.graph();
    let (a, b) = positive_split(graph, s, t)?.unwrap_or_else(|| {
        let (a, b) = s.mul(&t.inverse()).split_positive_negative().expect("shape checked");
        (a, b)
    });

    let a_word = FreeWord::positive(&a);
    let b_word = FreeWord::positive(&b);
    let (case, c_inv) = if s.starts_with(&a_word) {
        (PrefixCase::APrefixOfS, s.suffix(a.len()))
    } else if t.starts_with(&b_word) {
        (PrefixCase::BPrefixOfT, t.suffix(b.len()))
    } else {
        return Err(IsgError::NotPositivePair(format!("{:?}", s.mul(&t.inverse()))));
    };
    let c_word = c_inv.inverse();
    if !c_word.is_positive() {
        return Err(IsgError::NotPositivePair(format!("{c_inv:?}")));
    }
    let c: Vec<usize> = c_word.letters().iter().map(|l: &Letter| l.gen).collect();
    debug_assert_eq!(a_word.mul(&c_inv), *s);
    debug_assert_eq!(b_word.mul(&c_inv), *t);

    // Each term is λ_w (aw, bw); collect (k, w, λ_w).
    let fixed_v = split_vertex(graph, &a, &b);
    let mut terms: Vec<(usize, Path, Scalar)> = Vec::new();
    for (p, lambda) in f.terms() {
        let outside = || IsgError::UnsupportedCoefficient(sg.render(p));
        let (alpha, beta) = p.paths().ok_or_else(outside)?;
        let v = fixed_v.unwrap_or(alpha.source());
        let w = alpha.strip_prefix(&path_at(graph, &a, v)).ok_or_else(outside)?;
        let w2 = beta.strip_prefix(&path_at(graph, &b, v)).ok_or_else(outside)?;
        if w != w2 || w.range() != v {
            return Err(outside());
        }
        terms.push((w.len(), w, lambda.clone()));
    }

    let c_at = |v: usize| path_at(graph, &c, v);
    let left_elem = |w: &Path| PathPair::Pair(path_at(graph, &a, w.range()).concat(w).unwrap(), c_at(w.range()).concat(w).unwrap());
    let right_elem = |w: &Path| PathPair::Pair(c_at(w.range()).concat(w).unwrap(), path_at(graph, &b, w.range()).concat(w).unwrap());

    let roots: Option<Vec<Scalar>> = terms.iter().map(|(_, _, l)| l.exact_sqrt()).collect();
    let factors = match roots {
        Some(roots) => {
            let pairs = build_pairs(&terms, &roots, &left_elem, &right_elem);
            let mut sum = AlgebraElement::zero();
            for fp in &pairs {
                sum = sum.plus(&convolve(sg, &fp.left, &fp.right)?);
            }
            if let Some((e, l, r)) = sum.first_difference(f) {
                return Err(IsgError::IdentityMismatch { elem: sg.render(&e), left: l.to_string(), right: r.to_string() });
            }
            FactorSet::Exact(pairs)
        }
        None => {
            let roots: Vec<Complex64> = terms.iter().map(|(_, _, l)| l.principal_sqrt_c64()).collect();
            FactorSet::Float(build_pairs(&terms, &roots, &left_elem, &right_elem))
        }
    };

    let mut max_residual = 0.0f64;
    if let FactorSet::Float(pairs) = &factors {
        let mut sum = AlgebraElement::<PathPair, Complex64>::zero();
        for fp in pairs {
            sum = sum.plus(&convolve(sg, &fp.left, &fp.right)?);
        }
        let target = f.to_float();
        let keys: std::collections::BTreeSet<&PathPair> = sum.support().chain(target.support()).collect();
        for e in keys {
            let diff = (sum.coeff(e) - target.coeff(e)).norm();
            max_residual = max_residual.max(diff);
            if diff > FLOAT_FACTOR_TOL * target.coeff(e).norm().max(1.0) {
                return Err(IsgError::IdentityMismatch {
                    elem: sg.render(e),
                    left: sum.coeff(e).to_string(),
                    right: target.coeff(e).to_string(),
                });
            }
        }
    }

    let t_inv = t.inverse();
    let check_support = |elems: Vec<&PathPair>, want: &FreeWord| -> Result<()> {
        for e in elems {
            if grading_phi(e).as_ref() != Some(want) {
                return Err(IsgError::UnsupportedCoefficient(format!("factor term {} has the wrong degree", sg.render(e))));
            }
        }
        Ok(())
    };
    match &factors {
        FactorSet::Exact(v) => {
            for fp in v {
                check_support(fp.left.support().collect(), s)?;
                check_support(fp.right.support().collect(), &t_inv)?;
            }
        }
        FactorSet::Float(v) => {
            for fp in v {
                check_support(fp.left.support().collect(), s)?;
                check_support(fp.right.support().collect(), &t_inv)?;
            }
        }
    }

    Ok(Factorization { case, a, b, c, factors, max_residual })
}

fn build_pairs<K: Coefficient>(
    terms: &[(usize, Path, Scalar)],
    roots: &[K],
    left_elem: &dyn Fn(&Path) -> PathPair,
    right_elem: &dyn Fn(&Path) -> PathPair,
) -> Vec<FactorPair<K>> {
    let mut by_k: BTreeMap<usize, FactorPair<K>> = BTreeMap::new();
    for ((k, w, _), r) in terms.iter().zip(roots) {
        let entry = by_k
            .entry(*k)
            .or_insert_with(|| FactorPair { k: *k, left: AlgebraElement::zero(), right: AlgebraElement::zero() });
        entry.left.add_term(left_elem(w), r.clone());
        entry.right.add_term(right_elem(w), r.clone());
    }
    by_k.into_values().collect()
}
