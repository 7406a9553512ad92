//! Measures models: a carrier of atoms, a valuation of the labels, and a
//! nonempty list of additive measures with values in the naturals extended
//! by infinity. `s ≼ t` holds when every measure gives `s` at most the value
//! of `t`.

mod json;
mod oracle;
mod random;
mod zf;

pub use oracle::{brute_force_sat, OracleBounds};
pub use random::{random_model, RandomBounds};
pub use zf::{symbolic_zf_witness, LabelWitness, SymbolicZfWitness};

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::Add;
use std::str::FromStr;

use num_traits::Unsigned;
use serde::{Deserialize, Serialize};

use crate::algebra::{Atom, AtomSet, AtomSpace};
use crate::error::{Error, Result};
use crate::syntax::{Formula, Labels, Literal, SetTerm};

/// Unsigned integer types usable as finite measure values.
pub trait Natural:
    Unsigned + Clone + Ord + Hash + Debug + Display + FromStr + From<u64> + Send + Sync
{
}

impl<N> Natural for N where
    N: Unsigned + Clone + Ord + Hash + Debug + Display + FromStr + From<u64> + Send + Sync
{
}

/// A natural number or infinity. Infinity is above every finite value and
/// absorbs addition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat<N> {
    Fin(N),
    Inf,
}

impl<N: Natural> ExtNat<N> {
    pub fn zero() -> Self {
        ExtNat::Fin(N::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtNat::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtNat::Fin(n) if n.is_zero())
    }

    pub fn finite(&self) -> Option<&N> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Inf => None,
        }
    }

    pub fn map<M>(&self, f: impl FnOnce(&N) -> M) -> ExtNat<M> {
        match self {
            ExtNat::Fin(n) => ExtNat::Fin(f(n)),
            ExtNat::Inf => ExtNat::Inf,
        }
    }
}

impl<N: Natural> Add for ExtNat<N> {
    type Output = ExtNat<N>;

    fn add(self, other: Self) -> Self {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a + b),
            _ => ExtNat::Inf,
        }
    }
}

impl<N: Display> Display for ExtNat<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

impl<N: Natural> FromStr for ExtNat<N> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(ExtNat::Inf);
        }
        s.parse::<N>()
            .map(ExtNat::Fin)
            .map_err(|_| Error::Invalid(format!("not a measure value: {s:?}")))
    }
}

/// An additive measure given by its value on each atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Measure<N> {
    values: Vec<ExtNat<N>>,
}

impl<N: Natural> Measure<N> {
    pub fn new(values: Vec<ExtNat<N>>) -> Self {
        Measure { values }
    }

    pub fn finite(values: impl IntoIterator<Item = N>) -> Self {
        Measure {
            values: values.into_iter().map(ExtNat::Fin).collect(),
        }
    }

    pub fn values(&self) -> &[ExtNat<N>] {
        &self.values
    }

    pub fn atom_value(&self, atom: Atom) -> &ExtNat<N> {
        &self.values[atom.index()]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_finitary(&self) -> bool {
        self.values.iter().all(|v| !v.is_infinite())
    }

    pub fn of(&self, set: &AtomSet) -> ExtNat<N> {
        set.iter()
            .fold(ExtNat::zero(), |acc, a| acc + self.values[a.index()].clone())
    }

    pub fn convert<M: Natural>(&self, f: impl Fn(&N) -> M) -> Measure<M> {
        Measure {
            values: self.values.iter().map(|v| v.map(&f)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Finitary,
    Infinitary,
}

impl Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Finitary => "finitary",
            ModelKind::Infinitary => "infinitary",
        })
    }
}

/// `|lhs| ≥ |rhs|` or its negation, over atom sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomLiteral {
    pub positive: bool,
    pub lhs: AtomSet,
    pub rhs: AtomSet,
}

impl AtomLiteral {
    pub fn from_literal(space: &AtomSpace, lit: &Literal) -> Result<Self> {
        Ok(AtomLiteral {
            positive: lit.positive,
            lhs: space.atomize(&lit.lhs)?,
            rhs: space.atomize(&lit.rhs)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasuresModel<N> {
    kind: ModelKind,
    labels: Labels,
    atoms: usize,
    valuation: Vec<AtomSet>,
    measures: Vec<Measure<N>>,
}

impl<N: Natural> MeasuresModel<N> {
    /// Checks shapes, the kind (no infinity in a finitary model) and
    /// admissibility (some measure gives the whole carrier a positive value).
    pub fn new(
        kind: ModelKind,
        labels: Labels,
        atoms: usize,
        valuation: Vec<AtomSet>,
        measures: Vec<Measure<N>>,
    ) -> Result<Self> {
        if valuation.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                got: valuation.len(),
            });
        }
        if let Some(v) = valuation.iter().find(|v| v.universe_size() != atoms) {
            return Err(Error::DimensionMismatch {
                expected: atoms,
                got: v.universe_size(),
            });
        }
        if measures.is_empty() {
            return Err(Error::Invalid("a model needs at least one measure".into()));
        }
        if let Some(m) = measures.iter().find(|m| m.len() != atoms) {
            return Err(Error::DimensionMismatch {
                expected: atoms,
                got: m.len(),
            });
        }
        if kind == ModelKind::Finitary && !measures.iter().all(Measure::is_finitary) {
            return Err(Error::Invalid("finitary model with an infinite value".into()));
        }
        let universe = AtomSet::full(atoms);
        if measures.iter().all(|m| m.of(&universe).is_zero()) {
            return Err(Error::Invalid(
                "inadmissible model: every measure vanishes on the carrier".into(),
            ));
        }
        Ok(MeasuresModel {
            kind,
            labels,
            atoms,
            valuation,
            measures,
        })
    }

    /// The model whose carrier is the atom space itself, each label denoting
    /// the atoms where it holds.
    pub fn canonical(kind: ModelKind, space: &AtomSpace, measures: Vec<Measure<N>>) -> Result<Self> {
        let valuation = space
            .labels()
            .iter()
            .map(|l| space.label_set(l))
            .collect::<Result<_>>()?;
        Self::new(
            kind,
            space.labels().clone(),
            space.atom_count(),
            valuation,
            measures,
        )
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    pub fn valuation(&self) -> &[AtomSet] {
        &self.valuation
    }

    pub fn measures(&self) -> &[Measure<N>] {
        &self.measures
    }

    pub fn eval_term(&self, t: &SetTerm) -> Result<AtomSet> {
        Ok(match t {
            SetTerm::Label(l) => {
                let i = self
                    .labels
                    .index_of(l.as_str())
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
                self.valuation[i].clone()
            }
            SetTerm::Complement(s) => self.eval_term(s)?.complement(),
            SetTerm::Intersection(a, b) => self.eval_term(a)?.intersection(&self.eval_term(b)?),
            SetTerm::Union(a, b) => self.eval_term(a)?.union(&self.eval_term(b)?),
            SetTerm::Empty => AtomSet::empty(self.atoms),
            SetTerm::Full => AtomSet::full(self.atoms),
        })
    }

    /// `|lhs| ≥ |rhs|` on carrier subsets.
    pub fn geq_sets(&self, lhs: &AtomSet, rhs: &AtomSet) -> bool {
        self.measures.iter().all(|m| m.of(lhs) >= m.of(rhs))
    }

    pub fn holds_atom_literal(&self, lit: &AtomLiteral) -> bool {
        self.geq_sets(&lit.lhs, &lit.rhs) == lit.positive
    }

    pub fn eval(&self, f: &Formula) -> Result<bool> {
        Ok(match f {
            Formula::Geq(s, t) => self.geq_sets(&self.eval_term(s)?, &self.eval_term(t)?),
            Formula::Not(g) => !self.eval(g)?,
            Formula::And(a, b) => self.eval(a)? && self.eval(b)?,
            Formula::Or(a, b) => self.eval(a)? || self.eval(b)?,
            Formula::Implies(a, b) => !self.eval(a)? || self.eval(b)?,
            Formula::Iff(a, b) => self.eval(a)? == self.eval(b)?,
            Formula::Xor(a, b) => self.eval(a)? != self.eval(b)?,
        })
    }

    pub fn convert<M: Natural>(&self, f: impl Fn(&N) -> M) -> MeasuresModel<M> {
        MeasuresModel {
            kind: self.kind,
            labels: self.labels.clone(),
            atoms: self.atoms,
            valuation: self.valuation.clone(),
            measures: self.measures.iter().map(|m| m.convert(&f)).collect(),
        }
    }
}

pub fn eval_formula<N: Natural>(m: &MeasuresModel<N>, f: &Formula) -> Result<bool> {
    m.eval(f)
}

pub fn model_satisfies<N: Natural>(m: &MeasuresModel<N>, gamma: &[Formula]) -> Result<bool> {
    for f in gamma {
        if !m.eval(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}
