use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Logic;
use crate::algebra::{is_balanced_weighted, Atom, AtomSet};
use crate::error::{Error, Result};
use crate::semantics::AtomLiteral;

/// A premise of a cancellation step, read as `|a| ≥ |b|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PremiseRef {
    /// A positive literal of the branch, by index.
    Literal(usize),
    /// `|y| ≥ |x|` from a negative literal `!(|x| >= |y|)`; single-measure
    /// (finite) reasoning only.
    Totality(usize),
    /// `|t| ≥ |0|` for an atom `t`.
    Positivity(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PremiseUse {
    pub premise: PremiseRef,
    pub multiplicity: BigUint,
}

/// What the derived comparison contradicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutes {
    /// The negative literal at this index.
    Literal { index: usize },
    /// The carrier is not below the empty set.
    NonTriviality,
}

/// A derivation of `|e| ≤ |f|` by one cancellation instance: the sequence
/// of premise left sides followed by `scale` copies of `e` is balanced
/// against the premise right sides followed by `scale` copies of `f`.
///
/// Under [`Logic::Card`] `coverage[i]` lists the positive literals (branch
/// indices) whose right sides, joined onto `f` in order, grow a set that
/// covers the left side of premise `i`; each step's own left side must
/// already be covered when it is applied.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CancellationCertificate {
    pub logic: Logic,
    pub branch: usize,
    pub refutes: Option<Refutes>,
    pub e: AtomSet,
    pub f: AtomSet,
    pub scale: BigUint,
    pub premises: Vec<PremiseUse>,
    pub coverage: Vec<Vec<usize>>,
}

fn premise_sets(
    logic: Logic,
    branch: &[AtomLiteral],
    universe: usize,
    p: PremiseRef,
) -> Option<(AtomSet, AtomSet)> {
    match p {
        PremiseRef::Literal(i) => {
            let l = branch.get(i)?;
            l.positive.then(|| (l.lhs.clone(), l.rhs.clone()))
        }
        PremiseRef::Totality(i) => {
            let l = branch.get(i)?;
            (logic == Logic::Fin && !l.positive).then(|| (l.rhs.clone(), l.lhs.clone()))
        }
        PremiseRef::Positivity(t) => (t < universe).then(|| {
            (
                AtomSet::singleton(universe, Atom(t)),
                AtomSet::empty(universe),
            )
        }),
    }
}

/// Checks a certificate against the branch it claims to refute using only
/// counting and subset tests.
pub fn verify_certificate(cert: &CancellationCertificate, branch: &[AtomLiteral]) -> bool {
    let universe = cert.e.universe_size();
    if cert.f.universe_size() != universe
        || branch
            .iter()
            .any(|l| l.lhs.universe_size() != universe || l.rhs.universe_size() != universe)
    {
        return false;
    }
    if cert.scale.is_zero() || cert.premises.iter().any(|p| p.multiplicity.is_zero()) {
        return false;
    }
    let mut sets = Vec::with_capacity(cert.premises.len());
    for p in &cert.premises {
        match premise_sets(cert.logic, branch, universe, p.premise) {
            Some(s) => sets.push(s),
            None => return false,
        }
    }

    let weights: Vec<BigInt> = cert
        .premises
        .iter()
        .map(|p| BigInt::from(p.multiplicity.clone()))
        .collect();
    let scale = BigInt::from(cert.scale.clone());
    let mut left: Vec<(&AtomSet, &BigInt)> = sets.iter().map(|s| &s.0).zip(&weights).collect();
    let mut right: Vec<(&AtomSet, &BigInt)> = sets.iter().map(|s| &s.1).zip(&weights).collect();
    left.push((&cert.e, &scale));
    right.push((&cert.f, &scale));
    if !is_balanced_weighted(&left, &right) {
        return false;
    }

    if cert.logic == Logic::Card {
        if cert.coverage.len() != cert.premises.len() {
            return false;
        }
        for ((lhs, _), chain) in sets.iter().zip(&cert.coverage) {
            let mut top = cert.f.clone();
            for &step in chain {
                match branch.get(step) {
                    Some(l) if l.positive && l.lhs.is_subset(&top) => top.union_with(&l.rhs),
                    _ => return false,
                }
            }
            if !lhs.is_subset(&top) {
                return false;
            }
        }
    } else if !cert.coverage.is_empty() {
        return false;
    }

    match cert.refutes {
        None => true,
        Some(Refutes::NonTriviality) => cert.e.is_full() && cert.f.is_empty(),
        Some(Refutes::Literal { index }) => branch
            .get(index)
            .is_some_and(|l| !l.positive && l.lhs == cert.f && l.rhs == cert.e),
    }
}

#[derive(Serialize, Deserialize)]
struct ConclusionWire {
    e: Vec<usize>,
    f: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PremiseWire {
    kind: String,
    index: usize,
    multiplicity: String,
}

#[derive(Serialize, Deserialize)]
struct CertificateWire {
    logic: Logic,
    branch: usize,
    atoms: usize,
    refutes: Option<Refutes>,
    conclusion: ConclusionWire,
    scale: String,
    premises: Vec<PremiseWire>,
    coverage: Vec<Vec<usize>>,
}

impl CancellationCertificate {
    fn to_wire(&self) -> CertificateWire {
        CertificateWire {
            logic: self.logic,
            branch: self.branch,
            atoms: self.e.universe_size(),
            refutes: self.refutes,
            conclusion: ConclusionWire {
                e: self.e.indices(),
                f: self.f.indices(),
            },
            scale: self.scale.to_string(),
            premises: self
                .premises
                .iter()
                .map(|p| {
                    let (kind, index) = match p.premise {
                        PremiseRef::Literal(i) => ("literal", i),
                        PremiseRef::Totality(i) => ("totality", i),
                        PremiseRef::Positivity(t) => ("positivity", t),
                    };
                    PremiseWire {
                        kind: kind.to_string(),
                        index,
                        multiplicity: p.multiplicity.to_string(),
                    }
                })
                .collect(),
            coverage: self.coverage.clone(),
        }
    }

    fn from_wire(w: CertificateWire) -> Result<Self> {
        let number = |s: &str| {
            s.parse::<BigUint>()
                .map_err(|_| Error::Invalid(format!("not a natural number: {s:?}")))
        };
        let premises = w
            .premises
            .iter()
            .map(|p| {
                let premise = match p.kind.as_str() {
                    "literal" => PremiseRef::Literal(p.index),
                    "totality" => PremiseRef::Totality(p.index),
                    "positivity" => PremiseRef::Positivity(p.index),
                    other => return Err(Error::Invalid(format!("unknown premise kind {other:?}"))),
                };
                Ok(PremiseUse {
                    premise,
                    multiplicity: number(&p.multiplicity)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CancellationCertificate {
            logic: w.logic,
            branch: w.branch,
            refutes: w.refutes,
            e: AtomSet::from_indices(w.atoms, &w.conclusion.e)?,
            f: AtomSet::from_indices(w.atoms, &w.conclusion.f)?,
            scale: number(&w.scale)?,
            premises,
            coverage: w.coverage,
        })
    }
}

impl Serialize for CancellationCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CancellationCertificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::from_wire(CertificateWire::deserialize(d)?).map_err(D::Error::custom)
    }
}
