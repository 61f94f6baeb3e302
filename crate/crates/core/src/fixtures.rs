//! The shipped fixture corpus, embedded so the acceptance suite runs from any
//! working directory.

use serde_json::Value;

macro_rules! fixture {
    ($name:literal) => {
        ($name, include_str!(concat!("../fixtures/", $name, ".json")))
    };
}

pub const ALL: &[(&str, &str)] = &[
    fixture!("bicyclic_window"),
    fixture!("bouquet1"),
    fixture!("bouquet2"),
    fixture!("br_z2_identity"),
    fixture!("br_z2_trivial"),
    fixture!("chain"),
    fixture!("closure5"),
    fixture!("cyclic4"),
    fixture!("edge_and_loop"),
    fixture!("epsilon_bouquet2"),
    fixture!("factorize_bouquet1"),
    fixture!("parallel2"),
    fixture!("ql_n1"),
    fixture!("ql_n2"),
    fixture!("shift"),
    fixture!("shift_expectation"),
    fixture!("sos_br_coset"),
    fixture!("sos_closure5"),
];

/// The fixture named `name`, parsed.
pub fn get(name: &str) -> Value {
    let (_, text) = ALL.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no fixture {name}"));
    serde_json::from_str(text).expect("fixtures are valid JSON")
}

/// Fixtures that describe finite semigroups (tables or generators).
pub fn finite() -> Vec<(&'static str, Value)> {
    ALL.iter()
        .filter_map(|(n, t)| {
            let v: Value = serde_json::from_str(t).ok()?;
            (v.get("table").is_some() || v.get("generators").is_some()).then(|| (*n, v))
        })
        .collect()
}
