//! Decision procedures for the three logics.
//!
//! A formula is put in disjunctive normal form; each branch (a conjunction
//! of comparisons and negated comparisons) is decided on its own. A branch
//! is unsatisfiable exactly when one of its negated comparisons, or the
//! comparison `|0'| <= |0|`, follows from its positive comparisons by a
//! single cancellation instance; the instance is returned as a
//! [`CancellationCertificate`]. Otherwise a measures model is built.

mod branch;
mod certificate;
mod closure;
mod kps;

pub use branch::{sat_branch, BranchOutcome};
pub use certificate::{verify_certificate, CancellationCertificate, PremiseRef, PremiseUse, Refutes};
pub use closure::Closure;
pub use kps::{extend_to_total_order, kps_measure, subsets, MAX_ORDER_ATOMS};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{AtomSet, AtomSpace, MAX_LABELS};
use crate::error::{Error, Result};
use crate::lp::SolveOptions;
use crate::semantics::{AtomLiteral, ModelKind};
use crate::syntax::{to_dnf_bounded, Formula, Labels, Literal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Logic {
    /// Finite sets: a single finite measure.
    Fin,
    /// Dedekind-finite sets: several finite measures.
    Ded,
    /// Arbitrary sets without choice: several measures with infinite values.
    Card,
}

impl Logic {
    pub const ALL: [Logic; 3] = [Logic::Fin, Logic::Ded, Logic::Card];

    pub fn model_kind(self) -> ModelKind {
        match self {
            Logic::Fin | Logic::Ded => ModelKind::Finitary,
            Logic::Card => ModelKind::Infinitary,
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::Fin => "fin",
            Logic::Ded => "ded",
            Logic::Card => "card",
        })
    }
}

impl FromStr for Logic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fin" => Ok(Logic::Fin),
            "ded" => Ok(Logic::Ded),
            "card" => Ok(Logic::Card),
            _ => Err(Error::Invalid(format!("unknown logic {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub max_labels: usize,
    pub max_branches: usize,
    pub solve: SolveOptions,
    /// Decide negative literals of a branch on the rayon pool. Results are
    /// merged in literal order either way.
    pub parallel: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_labels: MAX_LABELS,
            max_branches: 4096,
            solve: SolveOptions::default(),
            parallel: true,
        }
    }
}

/// Which requirement a witness measure discharges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// The negative literal at this branch index.
    Literal { index: usize },
    /// Some measure is nonzero on the carrier.
    Admissibility,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRole {
    /// Finite on its support, separating the literal's sides by at least one.
    Strict,
    /// Zero on an ideal and infinite elsewhere.
    Rho,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Annotation {
    pub target: Target,
    pub measure: usize,
    pub role: WitnessRole,
    /// The ideal the measure was built on (multi-measure infinite case).
    pub ideal_top: Option<AtomSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessBundle {
    pub model: crate::MeasuresModel,
    pub annotations: Vec<Annotation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    /// The first satisfiable branch and its model.
    Sat { branch: usize, witness: WitnessBundle },
    /// Every branch refuted; certificates in branch order.
    Unsat(Vec<CancellationCertificate>),
}

impl SatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Sat { .. })
    }
}

/// Atomizes literal branches in `space`.
pub fn atomize_branches(space: &AtomSpace, branches: &[Vec<Literal>]) -> Result<Vec<Vec<AtomLiteral>>> {
    branches
        .iter()
        .map(|b| b.iter().map(|l| AtomLiteral::from_literal(space, l)).collect())
        .collect()
}

/// Re-checks an outcome against its branches without any LP: every
/// certificate must verify against the branch it names, and a witness must
/// satisfy its branch.
pub fn check_outcome(space: &AtomSpace, branches: &[Vec<Literal>], outcome: &SatOutcome) -> Result<bool> {
    let atomized = atomize_branches(space, branches)?;
    Ok(match outcome {
        SatOutcome::Sat { branch, witness } => atomized
            .get(*branch)
            .is_some_and(|b| b.iter().all(|l| witness.model.holds_atom_literal(l))),
        SatOutcome::Unsat(certs) => {
            // every branch needs at least one certificate
            (0..atomized.len()).all(|i| certs.iter().any(|c| c.branch == i))
                && certs.iter().all(|c| {
                    atomized
                        .get(c.branch)
                        .is_some_and(|b| c.refutes.is_some() && verify_certificate(c, b))
                })
        }
    })
}

impl SatReport {
    pub fn check(&self) -> Result<bool> {
        check_outcome(&self.space, &self.branches, &self.outcome)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatReport {
    pub logic: Logic,
    pub space: AtomSpace,
    pub branches: Vec<Vec<Literal>>,
    pub outcome: SatOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entailment {
    Entailed(Vec<CancellationCertificate>),
    NotEntailed(WitnessBundle),
}

impl Entailment {
    pub fn holds(&self) -> bool {
        matches!(self, Entailment::Entailed(_))
    }
}

impl EntailReport {
    pub fn check(&self) -> Result<bool> {
        let outcome = match &self.outcome {
            Entailment::Entailed(certs) => SatOutcome::Unsat(certs.clone()),
            Entailment::NotEntailed(w) => {
                // the witness satisfies some branch of the refuted formula
                let atomized = atomize_branches(&self.space, &self.branches)?;
                return Ok(atomized
                    .iter()
                    .any(|b| b.iter().all(|l| w.model.holds_atom_literal(l))));
            }
        };
        check_outcome(&self.space, &self.branches, &outcome)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntailReport {
    pub logic: Logic,
    pub space: AtomSpace,
    /// The formula actually refuted: assumptions and the negated goal.
    pub refuted: Formula,
    pub branches: Vec<Vec<Literal>>,
    pub outcome: Entailment,
}

/// The atom space over the labels of `formulas` together with `declared`.
pub fn space_for<'a>(
    formulas: impl IntoIterator<Item = &'a Formula>,
    declared: Option<&Labels>,
    max_labels: usize,
) -> Result<AtomSpace> {
    let found = Labels::collect(formulas);
    let names: Vec<String> = found
        .iter()
        .chain(declared.into_iter().flat_map(|d| d.iter()))
        .map(|l| l.to_string())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    AtomSpace::with_cap(Labels::new(names)?, max_labels)
}

/// Normal-form branches paired with their atomized form.
pub type Branches = (Vec<Vec<Literal>>, Vec<Vec<AtomLiteral>>);

/// The branches of `f` in normal form, atomized in `space`.
pub fn atomized_branches(space: &AtomSpace, f: &Formula, max_branches: usize) -> Result<Branches> {
    let branches = to_dnf_bounded(f, max_branches)?;
    let atomized = atomize_branches(space, &branches)?;
    Ok((branches, atomized))
}

/// Entry point bundling [`Options`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Decider {
    pub options: Options,
}

impl Decider {
    pub fn new(options: Options) -> Self {
        Decider { options }
    }

    pub fn sat(&self, f: &Formula, logic: Logic) -> Result<SatReport> {
        let space = space_for([f], None, self.options.max_labels)?;
        self.sat_in(&space, f, logic)
    }

    pub fn sat_in(&self, space: &AtomSpace, f: &Formula, logic: Logic) -> Result<SatReport> {
        let (branches, atomized) = atomized_branches(space, f, self.options.max_branches)?;
        let mut certs = Vec::new();
        for (i, b) in atomized.iter().enumerate() {
            match sat_branch(space, b, logic, &self.options)? {
                BranchOutcome::Sat(witness) => {
                    return Ok(SatReport {
                        logic,
                        space: space.clone(),
                        branches,
                        outcome: SatOutcome::Sat { branch: i, witness },
                    })
                }
                BranchOutcome::Unsat(cs) => certs.extend(cs.into_iter().map(|mut c| {
                    c.branch = i;
                    c
                })),
            }
        }
        Ok(SatReport {
            logic,
            space: space.clone(),
            branches,
            outcome: SatOutcome::Unsat(certs),
        })
    }

    pub fn entails(&self, gamma: &[Formula], goal: &Formula, logic: Logic) -> Result<EntailReport> {
        let space = space_for(gamma.iter().chain([goal]), None, self.options.max_labels)?;
        self.entails_in(&space, gamma, goal, logic)
    }

    pub fn entails_in(
        &self,
        space: &AtomSpace,
        gamma: &[Formula],
        goal: &Formula,
        logic: Logic,
    ) -> Result<EntailReport> {
        let refuted = refutation_formula(gamma, goal);
        let report = self.sat_in(space, &refuted, logic)?;
        Ok(EntailReport {
            logic,
            space: report.space,
            refuted,
            branches: report.branches,
            outcome: match report.outcome {
                SatOutcome::Sat { witness, .. } => Entailment::NotEntailed(witness),
                SatOutcome::Unsat(certs) => Entailment::Entailed(certs),
            },
        })
    }
}

/// `gamma_1 /\ ... /\ !goal`.
pub fn refutation_formula(gamma: &[Formula], goal: &Formula) -> Formula {
    Formula::conjunction(gamma.iter().cloned().chain([goal.clone().not()]))
        .expect("nonempty conjunction")
}

pub fn sat(f: &Formula, logic: Logic) -> Result<SatReport> {
    Decider::default().sat(f, logic)
}

pub fn entails(gamma: &[Formula], goal: &Formula, logic: Logic) -> Result<EntailReport> {
    Decider::default().entails(gamma, goal, logic)
}

/// Derivability of `e ≼ f` from the positive literals of `branch`.
pub fn derivable(
    branch: &[AtomLiteral],
    e: &AtomSet,
    f: &AtomSet,
    logic: Logic,
    opts: &SolveOptions,
) -> Result<Option<CancellationCertificate>> {
    if e.universe_size() != f.universe_size() {
        return Err(Error::DimensionMismatch {
            expected: e.universe_size(),
            got: f.universe_size(),
        });
    }
    Closure::new(branch, e.universe_size(), logic, *opts).derivable(e, f)
}
