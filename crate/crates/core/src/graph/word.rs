use std::fmt;

use crate::semigroup::Group;

/// A generator `x` or its inverse `x⁻¹`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Self { gen, inv: false }
    }

    pub fn neg(gen: usize) -> Self {
        Self { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Self { gen: self.gen, inv: !self.inv }
    }
}

/// A reduced word in the free group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

/// Cancels adjacent `x x⁻¹` and `x⁻¹ x` pairs until none remain.
pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> FreeWord {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    FreeWord { letters: stack }
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word spelled by a positive edge sequence.
    pub fn positive(gens: &[usize]) -> Self {
        Self { letters: gens.iter().map(|&g| Letter::pos(g)).collect() }
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        free_reduce(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inv)
    }

    /// True iff `self · other` cancels at the junction.
    pub fn cancels_with(&self, other: &Self) -> bool {
        match (self.letters.last(), other.letters.first()) {
            (Some(&a), Some(&b)) => a == b.inverse(),
            _ => false,
        }
    }

    pub fn starts_with(&self, prefix: &Self) -> bool {
        self.letters.starts_with(&prefix.letters)
    }

    pub fn suffix(&self, from: usize) -> Self {
        Self { letters: self.letters[from..].to_vec() }
    }

    /// Splits into a positive prefix and the generators of the negative
    /// suffix read as a path, i.e. `self = a b⁻¹`.
    pub fn split_positive_negative(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let k = self.letters.iter().position(|l| l.inv).unwrap_or(self.letters.len());
        if self.letters[k..].iter().any(|l| !l.inv) {
            return None;
        }
        let a = self.letters[..k].iter().map(|l| l.gen).collect();
        let b = self.letters[k..].iter().rev().map(|l| l.gen).collect();
        Some((a, b))
    }

    pub fn render(&self, labels: &[impl AsRef<str>]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|l| {
                let name = labels.get(l.gen).map_or_else(|| format!("x{}", l.gen), |s| s.as_ref().to_string());
                if l.inv {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = Vec::new();
        write!(f, "{}", self.render(&labels))
    }
}

/// The free group on a labelled alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroup {
    pub labels: Vec<String>,
}

impl FreeGroup {
    pub fn new(labels: Vec<String>) -> Self {
        Self { labels }
    }

    /// Parses words like `"e f^-1"`; `"1"` or `""` is the identity.
    pub fn parse(&self, text: &str) -> Option<FreeWord> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, inv) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let gen = self.labels.iter().position(|l| l == name)?;
            letters.push(Letter { gen, inv });
        }
        Some(free_reduce(letters))
    }

    /// All reduced words of length at most `radius`.
    pub fn ball(&self, radius: usize) -> Vec<FreeWord> {
        let mut out = vec![FreeWord::identity()];
        let mut layer = out.clone();
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &layer {
                for gen in 0..self.labels.len() {
                    for l in [Letter::pos(gen), Letter::neg(gen)] {
                        if w.letters.last() != Some(&l.inverse()) {
                            let mut letters = w.letters.clone();
                            letters.push(l);
                            next.push(FreeWord { letters });
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl Group for FreeGroup {
    type Elem = FreeWord;

    fn identity(&self) -> FreeWord {
        FreeWord::identity()
    }
    fn op(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.mul(b)
    }
    fn inverse(&self, a: &FreeWord) -> FreeWord {
        a.inverse()
    }
    fn render(&self, a: &FreeWord) -> String {
        a.render(&self.labels)
    }
}
