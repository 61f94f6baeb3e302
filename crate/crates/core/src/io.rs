//! JSON documents describing semigroups, gradings and algebra elements.
//!
//! Scalars travel as `"p/q"` strings so that round trips are exact.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{format_rational, parse_rational, AlgebraElement, Grading, Scalar};
use crate::error::{IsgError, Result};
use crate::families::{BRElement, BruckReilly, Endomorphism, ShiftMap, ShiftSemigroup, ToeplitzElement, ToeplitzSemigroup};
use crate::graph::{DirectedGraph, GraphInverseSemigroup, PathPair};
use crate::semigroup::{
    close_generators, max_group_image, FiniteInverseSemigroup, Group, GroupTable, InverseSemigroup, PartialBijection,
};

/// Deserializes `value`, reporting the JSON pointer of the first schema
/// violation.
pub fn from_value<T: DeserializeOwned>(value: &Value, what: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let pointer = if path == "." { String::new() } else { format!(" at {path}") };
        IsgError::Input(format!("{what}{pointer}: {}", e.inner()))
    })
}

/// A group given either as `"Z"` or as a finite multiplication table.
#[derive(Debug, Clone)]
pub enum AnyGroup {
    Integers,
    Table(GroupTable),
}

impl Group for AnyGroup {
    type Elem = i64;

    fn identity(&self) -> i64 {
        match self {
            AnyGroup::Integers => 0,
            AnyGroup::Table(g) => g.identity_elem() as i64,
        }
    }

    fn op(&self, a: &i64, b: &i64) -> i64 {
        match self {
            AnyGroup::Integers => a + b,
            AnyGroup::Table(g) => g.mul(*a as usize, *b as usize) as i64,
        }
    }

    fn inverse(&self, a: &i64) -> i64 {
        match self {
            AnyGroup::Integers => -a,
            AnyGroup::Table(g) => g.inv(*a as usize) as i64,
        }
    }

    fn render(&self, a: &i64) -> String {
        match self {
            AnyGroup::Integers => a.to_string(),
            AnyGroup::Table(g) => g.label(*a as usize).to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    table: Vec<Vec<usize>>,
    #[serde(default)]
    star: Option<Vec<usize>>,
    #[serde(default)]
    zero: Option<usize>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    grading: Option<GradingDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    map: BTreeMap<String, usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorsDoc {
    carrier: usize,
    generators: Vec<MapDoc>,
    #[serde(default = "default_cap")]
    cap: usize,
    #[serde(default)]
    grading: Option<GradingDoc>,
}

fn default_cap() -> usize {
    100_000
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GradingDoc {
    group: Value,
    degrees: Vec<Option<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    id: String,
    src: String,
    rng: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BRDoc {
    group: Vec<Vec<usize>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    theta: BTreeMap<String, usize>,
    #[serde(default)]
    window: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QLDoc {
    pub n: usize,
    #[serde(rename = "box", default)]
    pub bound: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ShiftDoc {
    #[allow(dead_code)]
    family: String,
}

/// A finite inverse semigroup together with a grading for the algebraic
/// commands.
#[derive(Debug, Clone)]
pub struct FiniteContext {
    pub semigroup: FiniteInverseSemigroup,
    pub group: AnyGroup,
    pub degrees: Vec<Option<i64>>,
    /// Present when the semigroup came from partial bijections.
    pub witnesses: Option<Vec<PartialBijection>>,
}

impl FiniteContext {
    pub fn grading(&self) -> Grading<usize, AnyGroup> {
        let degrees = self.degrees.clone();
        Grading::new(self.group.clone(), move |&x: &usize| degrees.get(x).copied().flatten())
    }
}

/// Any semigroup the command line can load.
#[derive(Debug, Clone)]
pub enum Context {
    Finite(FiniteContext),
    Graph(GraphInverseSemigroup),
    BruckReilly { br: BruckReilly, window: Option<u64> },
    Toeplitz(ToeplitzSemigroup),
    Shift,
}

fn parse_group(v: &Value) -> Result<AnyGroup> {
    match v {
        Value::String(s) if s == "Z" => Ok(AnyGroup::Integers),
        Value::Object(o) if o.contains_key("table") => {
            let table: Vec<Vec<usize>> = from_value(&o["table"], "grading group table")?;
            Ok(AnyGroup::Table(GroupTable::from_table(table, None)?))
        }
        _ => Err(IsgError::Input("grading group must be \"Z\" or {\"table\": [[...]]}".into())),
    }
}

fn finite_with_grading(
    semigroup: FiniteInverseSemigroup,
    grading: Option<GradingDoc>,
    witnesses: Option<Vec<PartialBijection>>,
) -> Result<FiniteContext> {
    let (group, degrees) = match grading {
        Some(g) => {
            if g.degrees.len() != semigroup.len() {
                return Err(IsgError::Input(format!(
                    "grading has {} degrees for {} elements",
                    g.degrees.len(),
                    semigroup.len()
                )));
            }
            (parse_group(&g.group)?, g.degrees)
        }
        None => {
            let m = max_group_image(&semigroup);
            let degrees = m.sigma.iter().map(|&x| Some(x as i64)).collect();
            (AnyGroup::Table(m.group), degrees)
        }
    };
    Ok(FiniteContext { semigroup, group, degrees, witnesses })
}

fn parse_theta(group: &GroupTable, theta: &BTreeMap<String, usize>) -> Result<Endomorphism> {
    let mut map = vec![usize::MAX; group.len()];
    for (k, &v) in theta {
        let key = k.parse::<usize>().ok().or_else(|| (0..group.len()).find(|&i| group.label(i) == k));
        match key {
            Some(i) if i < group.len() => map[i] = v,
            _ => return Err(IsgError::Input(format!("theta key {k:?} is not a group element"))),
        }
    }
    if let Some(i) = map.iter().position(|&x| x == usize::MAX) {
        return Err(IsgError::Input(format!("theta is missing element {i}")));
    }
    Endomorphism::new(group, map)
}

/// Loads a semigroup document, choosing the family by its keys.
pub fn load_context(v: &Value) -> Result<Context> {
    let obj = v.as_object().ok_or_else(|| IsgError::Input("semigroup document must be an object".into()))?;
    if obj.contains_key("table") {
        let d: TableDoc = from_value(v, "semigroup")?;
        let s = FiniteInverseSemigroup::from_table(d.table, d.star, d.zero, d.labels)?;
        Ok(Context::Finite(finite_with_grading(s, d.grading, None)?))
    } else if obj.contains_key("generators") {
        let d: GeneratorsDoc = from_value(v, "semigroup")?;
        let mut gens = Vec::new();
        for (i, g) in d.generators.iter().enumerate() {
            let mut pairs = Vec::new();
            for (k, &img) in &g.map {
                let x = k.parse::<usize>().map_err(|_| IsgError::Input(format!("/generators/{i}/map key {k:?} is not a point")))?;
                pairs.push((x, img));
            }
            gens.push(PartialBijection::from_pairs(d.carrier, pairs)?);
        }
        let closure = close_generators(&gens, d.cap)?;
        Ok(Context::Finite(finite_with_grading(closure.semigroup, d.grading, Some(closure.witnesses))?))
    } else if obj.contains_key("vertices") {
        let d: GraphDoc = from_value(v, "graph")?;
        let g = DirectedGraph::new(d.vertices, d.edges.into_iter().map(|e| (e.id, e.src, e.rng)))?;
        Ok(Context::Graph(GraphInverseSemigroup::new(g)))
    } else if obj.contains_key("theta") {
        let d: BRDoc = from_value(v, "bruck-reilly")?;
        let group = GroupTable::from_table(d.group, d.labels)?;
        let theta = parse_theta(&group, &d.theta)?;
        Ok(Context::BruckReilly { br: BruckReilly::new(group, theta), window: d.window })
    } else if obj.contains_key("n") {
        let d: QLDoc = from_value(v, "quasi-lattice")?;
        Ok(Context::Toeplitz(ToeplitzSemigroup { n: d.n }))
    } else if obj.contains_key("family") {
        let d: ShiftDoc = from_value(v, "family")?;
        if d.family != "shift" {
            return Err(IsgError::Input(format!("unknown family {:?}", d.family)));
        }
        Ok(Context::Shift)
    } else {
        Err(IsgError::Input(
            "semigroup document needs one of \"table\", \"generators\", \"vertices\", \"theta\", \"n\", \"family\"".into(),
        ))
    }
}

/// Parsing and printing of single elements for each family.
pub trait ElementCodec: InverseSemigroup {
    fn parse_elem(&self, v: &Value) -> Result<Self::Elem>;

    fn elem_json(&self, e: &Self::Elem) -> Value {
        Value::String(self.render(e))
    }
}

impl ElementCodec for FiniteInverseSemigroup {
    fn parse_elem(&self, v: &Value) -> Result<usize> {
        let found = match v {
            Value::Number(n) => n.as_u64().map(|x| x as usize).filter(|&x| x < self.len()),
            Value::String(s) => self.labels().iter().position(|l| l == s),
            _ => None,
        };
        found.ok_or_else(|| IsgError::Input(format!("{v} is not an element id or label")))
    }
}

impl ElementCodec for GraphInverseSemigroup {
    fn parse_elem(&self, v: &Value) -> Result<PathPair> {
        match v {
            Value::String(s) => self.parse_pair(s),
            _ => Err(IsgError::Input(format!("expected \"(mu, nu)\", got {v}"))),
        }
    }
}

impl ElementCodec for BruckReilly {
    fn parse_elem(&self, v: &Value) -> Result<BRElement> {
        let (m, a, n): (u64, Value, u64) = from_value(v, "bruck-reilly element [m, a, n]")?;
        let g = self.group();
        let a = match &a {
            Value::Number(x) => x.as_u64().map(|x| x as usize).filter(|&x| x < g.len()),
            Value::String(s) => (0..g.len()).find(|&i| g.label(i) == s),
            _ => None,
        }
        .ok_or_else(|| IsgError::Input(format!("{a} is not a group element")))?;
        Ok(BRElement::new(m, a, n))
    }

    fn elem_json(&self, e: &BRElement) -> Value {
        json!([e.m, self.group().label(e.a), e.n])
    }
}

impl ElementCodec for ToeplitzSemigroup {
    fn parse_elem(&self, v: &Value) -> Result<ToeplitzElement> {
        if v.as_str() == Some("0") {
            return Ok(ToeplitzElement::Zero);
        }
        let (s, t): (Vec<i64>, Vec<i64>) = from_value(v, "toeplitz element [s, t]")?;
        let e = ToeplitzElement::Pair(s, t);
        if !self.contains(&e) {
            return Err(IsgError::Input(format!("{v} is not a pair of points of N^{}", self.n)));
        }
        Ok(e)
    }

    fn elem_json(&self, e: &ToeplitzElement) -> Value {
        match e {
            ToeplitzElement::Zero => json!("0"),
            ToeplitzElement::Pair(s, t) => json!([s, t]),
        }
    }
}

impl ElementCodec for ShiftSemigroup {
    fn parse_elem(&self, v: &Value) -> Result<ShiftMap> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct D {
            shift: i64,
            #[serde(default)]
            from: Option<i64>,
        }
        let d: D = from_value(v, "shift element")?;
        Ok(ShiftMap { shift: d.shift, from: d.from })
    }

    fn elem_json(&self, e: &ShiftMap) -> Value {
        json!({"shift": e.shift, "from": e.from})
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    elem: Value,
    re: String,
    #[serde(default)]
    im: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementDoc {
    terms: Vec<TermDoc>,
}

pub fn parse_element<S: ElementCodec>(s: &S, v: &Value) -> Result<AlgebraElement<S::Elem>> {
    let d: ElementDoc = from_value(v, "element")?;
    let mut terms = Vec::new();
    for (i, t) in d.terms.iter().enumerate() {
        let at = |e: IsgError| IsgError::Input(format!("/terms/{i}: {e}"));
        let elem = s.parse_elem(&t.elem).map_err(at)?;
        let re = parse_rational(&t.re).map_err(at)?;
        let im = match &t.im {
            Some(x) => parse_rational(x).map_err(at)?,
            None => BigRational::zero(),
        };
        terms.push((elem, Scalar::new(re, im)));
    }
    AlgebraElement::from_terms(s, terms)
}

pub fn element_json<S: ElementCodec>(s: &S, f: &AlgebraElement<S::Elem>) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(e, c)| json!({"elem": s.elem_json(e), "re": format_rational(c.re()), "im": format_rational(c.im())}))
        .collect();
    json!({"terms": terms, "text": f.render(s)})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_each_family() {
        let table = json!({"table": [[0, 0], [0, 1]]});
        assert!(matches!(load_context(&table).unwrap(), Context::Finite(_)));
        let gens = json!({"carrier": 2, "generators": [{"map": {"0": 1}}]});
        match load_context(&gens).unwrap() {
            Context::Finite(c) => assert_eq!(c.semigroup.len(), 5),
            _ => panic!(),
        }
        let graph = json!({"vertices": ["v"], "edges": [{"id": "e", "src": "v", "rng": "v"}]});
        assert!(matches!(load_context(&graph).unwrap(), Context::Graph(_)));
        let br = json!({"group": [[0, 1], [1, 0]], "theta": {"0": 0, "1": 0}, "window": 3});
        assert!(matches!(load_context(&br).unwrap(), Context::BruckReilly { window: Some(3), .. }));
        assert!(matches!(load_context(&json!({"n": 2, "box": 3})).unwrap(), Context::Toeplitz(_)));
        assert!(matches!(load_context(&json!({"family": "shift"})).unwrap(), Context::Shift));
    }

    #[test]
    fn schema_errors_carry_paths() {
        let bad = json!({"carrier": 2, "generators": [{"map": {"0": "x"}}]});
        let err = load_context(&bad).unwrap_err().to_string();
        assert!(err.contains("generators[0].map"), "{err}");
        let not_endo = json!({"group": [[0, 1], [1, 0]], "theta": {"0": 1, "1": 0}});
        assert!(matches!(load_context(&not_endo), Err(IsgError::NotHomomorphism(_))));
    }

    #[test]
    fn element_round_trip() {
        let sg = GraphInverseSemigroup::new(DirectedGraph::bouquet(1));
        let doc = json!({"terms": [{"elem": "(e, v)", "re": "1/2", "im": "-3"}, {"elem": "(v, v)", "re": "2"}]});
        let f = parse_element(&sg, &doc).unwrap();
        let back = element_json(&sg, &f);
        let again = parse_element(&sg, &json!({"terms": back["terms"].clone()})).unwrap();
        assert_eq!(f, again);
        assert!(parse_element(&sg, &json!({"terms": [{"elem": "(x, v)", "re": "1"}]}))
            .unwrap_err()
            .to_string()
            .contains("/terms/0"));
    }
}
