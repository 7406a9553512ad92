//! The free Boolean algebra over a problem's labels, represented by its atoms
//! (minterms). Label `i` (in sorted order) is bit `i` of an atom index.

mod cone;
mod ideal;

pub use cone::{cone_member, ConeResult};
pub use ideal::{ideal_top, ideal_top_by_oracle, IdealTop};

use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::syntax::{Label, Labels, SetTerm};

/// Hard ceiling on the number of labels (65536 atoms).
pub const MAX_LABELS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Atom(pub usize);

impl Atom {
    pub fn index(self) -> usize {
        self.0
    }

    /// Polarity of label `i` in this minterm.
    pub fn has_label(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
}

/// The atom universe for a fixed, sorted label list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSpace {
    labels: Labels,
}

impl AtomSpace {
    pub fn new(labels: Labels) -> Result<Self> {
        Self::with_cap(labels, MAX_LABELS)
    }

    pub fn with_cap(labels: Labels, cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_LABELS);
        if labels.len() > cap {
            return Err(Error::LimitExceeded(format!(
                "{} labels exceeds the cap of {cap}",
                labels.len()
            )));
        }
        Ok(AtomSpace { labels })
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn atom_count(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn empty(&self) -> AtomSet {
        AtomSet::empty(self.atom_count())
    }

    pub fn universe(&self) -> AtomSet {
        AtomSet::full(self.atom_count())
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> {
        (0..self.atom_count()).map(Atom)
    }

    /// Atoms where the given label holds.
    pub fn label_set(&self, label: &Label) -> Result<AtomSet> {
        let i = self
            .labels
            .index_of(label.as_str())
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(AtomSet::from_fn(self.atom_count(), |a| Atom(a).has_label(i)))
    }

    pub fn atomize(&self, t: &SetTerm) -> Result<AtomSet> {
        Ok(match t {
            SetTerm::Label(l) => self.label_set(l)?,
            SetTerm::Complement(s) => self.atomize(s)?.complement(),
            SetTerm::Intersection(a, b) => self.atomize(a)?.intersection(&self.atomize(b)?),
            SetTerm::Union(a, b) => self.atomize(a)?.union(&self.atomize(b)?),
            SetTerm::Empty => self.empty(),
            SetTerm::Full => self.universe(),
        })
    }

    /// The minterm as a term, e.g. `a & b'`; `0'` when there are no labels.
    pub fn atom_term(&self, atom: Atom) -> SetTerm {
        let lits = self.labels.iter().enumerate().map(|(i, l)| {
            let t = SetTerm::Label(l.clone());
            if atom.has_label(i) {
                t
            } else {
                t.complement()
            }
        });
        SetTerm::meet_all(lits)
    }

    /// A term denoting exactly the given atoms.
    pub fn set_term(&self, set: &AtomSet) -> SetTerm {
        if set.is_full() {
            return SetTerm::Full;
        }
        SetTerm::union_all(set.iter().map(|a| self.atom_term(a)))
    }
}

/// A set of atoms over a universe of fixed size.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet {
    bits: FixedBitSet,
}

impl AtomSet {
    pub fn empty(universe: usize) -> Self {
        AtomSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        AtomSet { bits }
    }

    pub fn from_fn(universe: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(universe);
        for a in 0..universe {
            if pred(a) {
                s.bits.insert(a);
            }
        }
        s
    }

    pub fn singleton(universe: usize, atom: Atom) -> Self {
        let mut s = Self::empty(universe);
        s.insert(atom);
        s
    }

    pub fn from_indices(universe: usize, indices: &[usize]) -> Result<Self> {
        let mut s = Self::empty(universe);
        for &i in indices {
            if i >= universe {
                return Err(Error::Invalid(format!(
                    "atom {i} outside a universe of {universe}"
                )));
            }
            s.bits.insert(i);
        }
        Ok(s)
    }

    pub fn universe_size(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.bits.contains(atom.0)
    }

    pub fn insert(&mut self, atom: Atom) {
        self.bits.insert(atom.0);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe_size()
    }

    pub fn iter(&self) -> impl Iterator<Item = Atom> + '_ {
        self.bits.ones().map(Atom)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        AtomSet { bits }
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        AtomSet { bits }
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        AtomSet { bits }
    }

    pub fn complement(&self) -> AtomSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        AtomSet { bits }
    }

    pub fn union_with(&mut self, other: &AtomSet) {
        self.bits.union_with(&other.bits);
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

impl Serialize for AtomSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.bits.ones())
    }
}

/// Per-atom multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomVector<T> {
    counts: Vec<T>,
}

impl<T: Clone + Zero> AtomVector<T> {
    pub fn zeros(universe: usize) -> Self {
        AtomVector {
            counts: vec![T::zero(); universe],
        }
    }

    pub fn from_counts(counts: Vec<T>) -> Self {
        AtomVector { counts }
    }

    pub fn counts(&self) -> &[T] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, atom: Atom) -> &T {
        &self.counts[atom.0]
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(Zero::is_zero)
    }

    /// Adds `weight` copies of `set`.
    pub fn add_set(&mut self, set: &AtomSet, weight: &T) {
        for a in set.iter() {
            self.counts[a.0] = self.counts[a.0].clone() + weight.clone();
        }
    }
}

impl<T: Clone + Zero + One> AtomVector<T> {
    pub fn indicator(set: &AtomSet) -> Self {
        let mut v = Self::zeros(set.universe_size());
        v.add_set(set, &T::one());
        v
    }
}

impl<T: Clone + Zero + std::ops::Sub<Output = T>> AtomVector<T> {
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(AtomVector {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }
}

impl<T: Clone + Zero> std::ops::Add for &AtomVector<T> {
    type Output = AtomVector<T>;

    fn add(self, other: &AtomVector<T>) -> AtomVector<T> {
        assert_eq!(self.len(), other.len(), "atom universes differ");
        AtomVector {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

pub fn indicator(set: &AtomSet) -> AtomVector<BigInt> {
    AtomVector::indicator(set)
}

/// `χ_f - χ_e`, the signed vector that must lie in a cone for `e ≼ f`.
pub fn difference_vector(f: &AtomSet, e: &AtomSet) -> AtomVector<BigInt> {
    let mut v = indicator(f);
    v.add_set(e, &-BigInt::one());
    v
}

/// True iff every atom occurs equally often on both sides.
pub fn is_balanced(left: &[AtomSet], right: &[AtomSet]) -> bool {
    let one = BigInt::one();
    let l: Vec<_> = left.iter().map(|s| (s, &one)).collect();
    let r: Vec<_> = right.iter().map(|s| (s, &one)).collect();
    is_balanced_weighted(&l, &r)
}

/// Balance where each set is repeated the given number of times.
pub fn is_balanced_weighted(left: &[(&AtomSet, &BigInt)], right: &[(&AtomSet, &BigInt)]) -> bool {
    let universe = left
        .iter()
        .chain(right)
        .map(|(s, _)| s.universe_size())
        .max()
        .unwrap_or(0);
    if left.iter().chain(right).any(|(s, _)| s.universe_size() != universe) {
        return false;
    }
    let mut v: AtomVector<BigInt> = AtomVector::zeros(universe);
    for (s, w) in left {
        v.add_set(s, w);
    }
    for (s, w) in right {
        v.add_set(s, &-(*w).clone());
    }
    v.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use proptest::prelude::*;

    fn space(names: &[&str]) -> AtomSpace {
        AtomSpace::new(Labels::new(names).unwrap()).unwrap()
    }

    fn at(sp: &AtomSpace, src: &str) -> AtomSet {
        sp.atomize(&parse_term(src).unwrap()).unwrap()
    }

    #[test]
    fn minterms() {
        let sp = space(&["a", "b"]);
        // a is bit 0, b is bit 1: a & b' is atom 0b01
        assert_eq!(at(&sp, "a & b'").indices(), vec![1]);
        assert!(at(&sp, "a & a'").is_empty());
        assert_eq!(at(&sp, "(a & b)'").indices(), vec![0, 1, 2]);
        assert_eq!(at(&sp, "0'").len(), 4);
        assert!(matches!(
            sp.atomize(&parse_term("c").unwrap()),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn label_cap() {
        let many = Labels::new((0..17).map(|i| format!("l{i}"))).unwrap();
        assert!(matches!(AtomSpace::new(many), Err(Error::LimitExceeded(_))));
        let few = Labels::new((0..3).map(|i| format!("l{i}"))).unwrap();
        assert!(AtomSpace::with_cap(few, 2).is_err());
    }

    #[test]
    fn balance_examples() {
        let t1 = AtomSet::singleton(2, Atom(0));
        let t2 = AtomSet::singleton(2, Atom(1));
        let both = t1.union(&t2);
        let none = AtomSet::empty(2);
        assert!(is_balanced(&[both.clone(), none], &[t1.clone(), t2]));
        assert!(is_balanced(std::slice::from_ref(&both), std::slice::from_ref(&both)));
        assert!(!is_balanced(&[t1.clone(), t1.clone()], &[t1]));
    }

    #[test]
    fn indicators() {
        assert!(indicator(&AtomSet::empty(4)).is_zero());
        assert!(indicator(&AtomSet::full(4))
            .counts()
            .iter()
            .all(|c| *c == BigInt::one()));
        let unit = indicator(&AtomSet::singleton(4, Atom(2)));
        assert_eq!(unit.counts().iter().filter(|c| !c.is_zero()).count(), 1);
        assert_eq!(*unit.get(Atom(2)), BigInt::one());
    }

    #[test]
    fn atom_terms_round_trip() {
        let sp = space(&["a", "b", "c"]);
        for a in sp.atoms() {
            assert_eq!(sp.atomize(&sp.atom_term(a)).unwrap().indices(), vec![a.0]);
        }
        let s = at(&sp, "a + b & c'");
        assert_eq!(sp.atomize(&sp.set_term(&s)).unwrap(), s);
        assert_eq!(sp.atomize(&sp.set_term(&sp.empty())).unwrap(), sp.empty());
    }

    #[test]
    fn serializes_as_sorted_indices() {
        let s = AtomSet::from_indices(8, &[5, 1, 3]).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3,5]");
        assert!(AtomSet::from_indices(4, &[4]).is_err());
    }

    fn arb_term() -> impl Strategy<Value = SetTerm> {
        let leaf = prop_oneof![
            Just(SetTerm::label("a")),
            Just(SetTerm::label("b")),
            Just(SetTerm::label("c")),
            Just(SetTerm::Empty),
            Just(SetTerm::Full),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|t| t.complement()),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.meet(b)),
                (inner.clone(), inner).prop_map(|(a, b)| a.join(b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn atomize_is_a_homomorphism(s in arb_term(), t in arb_term()) {
            let sp = space(&["a", "b", "c"]);
            let (x, y) = (sp.atomize(&s).unwrap(), sp.atomize(&t).unwrap());
            prop_assert_eq!(sp.atomize(&s.clone().complement()).unwrap(), x.complement());
            prop_assert_eq!(sp.atomize(&s.clone().meet(t.clone())).unwrap(), x.intersection(&y));
            // De Morgan and double complement hold up to atomization
            let dm = s.clone().complement().join(t.clone().complement()).complement();
            prop_assert_eq!(sp.atomize(&dm).unwrap(), x.intersection(&y));
            prop_assert_eq!(sp.atomize(&s.clone().complement().complement()).unwrap(), x.clone());
            // the expanded core form denotes the same set
            prop_assert_eq!(sp.atomize(&crate::syntax::expand_term(&s)).unwrap(), x);
        }

        #[test]
        fn balance_matches_indicator_sums(
            left in proptest::collection::vec(0u8..16, 0..4),
            right in proptest::collection::vec(0u8..16, 0..4),
        ) {
            let sets = |v: &[u8]| -> Vec<AtomSet> {
                v.iter().map(|m| AtomSet::from_fn(4, |a| m >> a & 1 == 1)).collect()
            };
            let (l, r) = (sets(&left), sets(&right));
            let sum = |s: &[AtomSet]| s.iter().fold(AtomVector::<BigInt>::zeros(4), |acc, x| &acc + &indicator(x));
            prop_assert_eq!(is_balanced(&l, &r), sum(&l) == sum(&r));
        }
    }
}
