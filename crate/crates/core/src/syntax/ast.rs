use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A set label: `[a-zA-Z][a-zA-Z0-9_]*`, excluding the keyword `sub`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(name: &str) -> Result<Self> {
        if Self::is_valid(name) {
            Ok(Label(Arc::from(name)))
        } else {
            Err(Error::InvalidLabel(name.to_string()))
        }
    }

    pub fn is_valid(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return false,
        }
        name != "sub" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An ordered label registry. Labels are kept in lexicographic order; the
/// position of a label fixes its bit in every atom index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Labels {
    names: Vec<Label>,
}

impl Labels {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut seen = BTreeSet::new();
        for name in names {
            let label = Label::new(name.as_ref())?;
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
        }
        Ok(Labels {
            names: seen.into_iter().collect(),
        })
    }

    /// Labels mentioned anywhere in the given formulas.
    pub fn collect<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Self {
        let mut seen = BTreeSet::new();
        for f in formulas {
            f.visit_terms(&mut |t| t.collect_labels(&mut seen));
        }
        Labels {
            names: seen.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|l| l.as_str().cmp(name)).ok()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Label> {
        self.names.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Label> {
        self.names.get(i)
    }
}

/// Set terms. `Union`, `Empty` and `Full` are conveniences on top of the
/// core constructors; see [`super::expand_term`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetTerm {
    Label(Label),
    Complement(Box<SetTerm>),
    Intersection(Box<SetTerm>, Box<SetTerm>),
    Union(Box<SetTerm>, Box<SetTerm>),
    Empty,
    Full,
}

impl SetTerm {
    /// Panics on an invalid name; intended for tests and generators.
    pub fn label(name: &str) -> Self {
        SetTerm::Label(Label::new(name).expect("valid label"))
    }

    pub fn complement(self) -> Self {
        SetTerm::Complement(Box::new(self))
    }

    pub fn meet(self, other: SetTerm) -> Self {
        SetTerm::Intersection(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: SetTerm) -> Self {
        SetTerm::Union(Box::new(self), Box::new(other))
    }

    /// Union of all terms, `0` when empty.
    pub fn union_all(terms: impl IntoIterator<Item = SetTerm>) -> Self {
        terms
            .into_iter()
            .reduce(SetTerm::join)
            .unwrap_or(SetTerm::Empty)
    }

    /// Intersection of all terms, `1` when empty.
    pub fn meet_all(terms: impl IntoIterator<Item = SetTerm>) -> Self {
        terms
            .into_iter()
            .reduce(SetTerm::meet)
            .unwrap_or(SetTerm::Full)
    }

    pub(crate) fn collect_labels(&self, out: &mut BTreeSet<Label>) {
        match self {
            SetTerm::Label(l) => {
                out.insert(l.clone());
            }
            SetTerm::Complement(t) => t.collect_labels(out),
            SetTerm::Intersection(a, b) | SetTerm::Union(a, b) => {
                a.collect_labels(out);
                b.collect_labels(out);
            }
            SetTerm::Empty | SetTerm::Full => {}
        }
    }
}

/// Formulas. `Or`, `Implies`, `Iff` and `Xor` are eliminable connectives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `|lhs| >= |rhs|`
    Geq(SetTerm, SetTerm),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn geq(lhs: SetTerm, rhs: SetTerm) -> Self {
        Formula::Geq(lhs, rhs)
    }

    /// `|lhs| <= |rhs|`
    pub fn leq(lhs: SetTerm, rhs: SetTerm) -> Self {
        Formula::Geq(rhs, lhs)
    }

    /// `|lhs| = |rhs|`
    pub fn equinumerous(lhs: SetTerm, rhs: SetTerm) -> Self {
        Formula::geq(lhs.clone(), rhs.clone()).and(Formula::geq(rhs, lhs))
    }

    /// `|lhs| > |rhs|`
    pub fn gt(lhs: SetTerm, rhs: SetTerm) -> Self {
        Formula::geq(rhs, lhs).not()
    }

    /// `s sub t`, i.e. `|0| >= |s & t'|`.
    pub fn subset(s: SetTerm, t: SetTerm) -> Self {
        Formula::geq(SetTerm::Empty, s.meet(t.complement()))
    }

    /// `s = t` as two inclusions.
    pub fn set_eq(s: SetTerm, t: SetTerm) -> Self {
        Formula::subset(s.clone(), t.clone()).and(Formula::subset(t, s))
    }

    /// Pairwise disjointness of the given terms.
    pub fn disjoint(terms: &[SetTerm]) -> Option<Self> {
        let mut parts = Vec::new();
        for (i, a) in terms.iter().enumerate() {
            for b in &terms[i + 1..] {
                parts.push(Formula::set_eq(a.clone().meet(b.clone()), SetTerm::Empty));
            }
        }
        Formula::conjunction(parts)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Self {
        Formula::Iff(Box::new(self), Box::new(other))
    }

    pub fn xor(self, other: Formula) -> Self {
        Formula::Xor(Box::new(self), Box::new(other))
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Self> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn visit_terms(&self, visit: &mut impl FnMut(&SetTerm)) {
        match self {
            Formula::Geq(a, b) => {
                visit(a);
                visit(b);
            }
            Formula::Not(f) => f.visit_terms(visit),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::Xor(a, b) => {
                a.visit_terms(visit);
                b.visit_terms(visit);
            }
        }
    }
}

/// A possibly negated comparison `|lhs| >= |rhs|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub positive: bool,
    pub lhs: SetTerm,
    pub rhs: SetTerm,
}

impl Literal {
    pub fn pos(lhs: SetTerm, rhs: SetTerm) -> Self {
        Literal {
            positive: true,
            lhs,
            rhs,
        }
    }

    pub fn neg(lhs: SetTerm, rhs: SetTerm) -> Self {
        Literal {
            positive: false,
            lhs,
            rhs,
        }
    }

    pub fn negated(&self) -> Self {
        Literal {
            positive: !self.positive,
            ..self.clone()
        }
    }

    pub fn to_formula(&self) -> Formula {
        let atom = Formula::Geq(self.lhs.clone(), self.rhs.clone());
        if self.positive {
            atom
        } else {
            atom.not()
        }
    }
}
