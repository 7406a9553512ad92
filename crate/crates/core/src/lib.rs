//! Decision procedures for comparing the cardinalities of Boolean
//! combinations of sets.
//!
//! Three logics are supported, strictly nested in strength:
//!
//! * [`Logic::Fin`] reasons about finite sets (single counting measure).
//! * [`Logic::Ded`] reasons about Dedekind-finite sets; its central rule is
//!   generalized finite cancellation.
//! * [`Logic::Card`] reasons about arbitrary sets in ZF without choice; it
//!   restricts cancellation to premises covered by a finite multiple of the
//!   conclusion's larger side.
//!
//! Satisfiable inputs produce a measures model as a witness, unsatisfiable
//! inputs produce cancellation certificates that can be re-checked by
//! counting alone.
//!
//! The numeric core is generic over an exact ordered field ([`lp::ExactField`])
//! and over the unsigned integer type carried by measures; the aliases below
//! fix the arbitrary-precision instantiations used by the decision path.

pub mod algebra;
pub mod decide;
pub mod error;
pub mod lp;
pub mod semantics;
pub mod syntax;

pub use algebra::{Atom, AtomSet, AtomSpace, AtomVector, ConeResult, IdealTop};
pub use decide::{
    CancellationCertificate, Decider, Entailment, Logic, Options, SatOutcome, WitnessBundle,
};
pub use error::{Error, Result};
pub use semantics::{ExtNat, ModelKind};
pub use syntax::{Formula, Label, Labels, Literal, SetTerm};

/// Exact arbitrary-precision rational used by the decision path.
pub type Rational = num_rational::BigRational;

/// Linear system over [`Rational`].
pub type LinearSystem = lp::LinearSystem<Rational>;

/// Signed atom multiplicities, as used for balance and cone arithmetic.
pub type Counts = AtomVector<num_bigint::BigInt>;

/// Measure with arbitrary-precision natural values (possibly infinite).
pub type Measure = semantics::Measure<num_bigint::BigUint>;

/// Measures model with arbitrary-precision values.
pub type MeasuresModel = semantics::MeasuresModel<num_bigint::BigUint>;

/// Measures model with machine-word values, used by fuzzing and the
/// bounded oracle.
pub type SmallModel = semantics::MeasuresModel<u64>;
