use serde::Serialize;

/// One failed assertion inside a check, with a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    pub witness: String,
}

impl Violation {
    pub fn new(kind: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { kind: kind.into(), witness: witness.into() }
    }
}

/// Bounds how many violations a scan keeps; the count keeps going.
pub(crate) const MAX_VIOLATIONS: usize = 64;

pub(crate) fn push_violation(list: &mut Vec<Violation>, total: &mut usize, v: Violation) {
    *total += 1;
    if list.len() < MAX_VIOLATIONS {
        list.push(v);
    }
}
