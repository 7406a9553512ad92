//! Symbolic rendering of a measures model as sets built from pairwise
//! disjoint amorphous families, one family per measure: a label whose
//! measures are `(n_1, .., n_k)` denotes `n_1` copies of `A_1`, ..., `n_k`
//! copies of `A_k`, with infinitely many copies written `ω × A_i`.

use std::cmp::Ordering;
use std::fmt::Write;

use serde::Serialize;

use super::{ExtNat, MeasuresModel, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelWitness {
    pub label: String,
    /// Copies of each family, indexed like `SymbolicZfWitness::families`;
    /// decimal strings or `"inf"`.
    pub copies: Vec<String>,
    pub dedekind_infinite: bool,
    pub expression: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicZfWitness {
    pub families: Vec<String>,
    pub labels: Vec<LabelWitness>,
    pub text: String,
}

impl SymbolicZfWitness {
    /// Compares two labels' witness sets: `Some(Less)` etc. when comparable,
    /// `None` when neither injects into the other.
    pub fn compare(&self, a: &str, b: &str) -> Option<Option<Ordering>> {
        let find = |name: &str| self.labels.iter().find(|w| w.label == name);
        let (x, y) = (find(a)?, find(b)?);
        let parse = |s: &String| -> (bool, String) { (s == "inf", s.clone()) };
        let mut le = true;
        let mut ge = true;
        for (u, v) in x.copies.iter().zip(&y.copies) {
            let ord = match (parse(u), parse(v)) {
                ((true, _), (true, _)) => Ordering::Equal,
                ((true, _), _) => Ordering::Greater,
                (_, (true, _)) => Ordering::Less,
                ((_, p), (_, q)) => (p.len(), p).cmp(&(q.len(), q)),
            };
            le &= ord != Ordering::Greater;
            ge &= ord != Ordering::Less;
        }
        Some(match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        })
    }
}

fn render<N: Natural>(copies: &[ExtNat<N>], families: &[String]) -> String {
    let parts: Vec<String> = copies
        .iter()
        .zip(families)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, fam)| match c {
            ExtNat::Inf => format!("ω × {fam}"),
            ExtNat::Fin(n) => format!("{n} × {fam}"),
        })
        .collect();
    if parts.is_empty() {
        "∅".to_string()
    } else {
        parts.join(" ⊔ ")
    }
}

pub fn symbolic_zf_witness<N: Natural>(m: &MeasuresModel<N>) -> SymbolicZfWitness {
    let families: Vec<String> = (1..=m.measures().len()).map(|i| format!("A_{i}")).collect();
    let labels: Vec<LabelWitness> = m
        .labels()
        .iter()
        .zip(m.valuation())
        .map(|(l, set)| {
            let copies: Vec<ExtNat<N>> = m.measures().iter().map(|mu| mu.of(set)).collect();
            LabelWitness {
                label: l.to_string(),
                copies: copies.iter().map(|c| c.to_string()).collect(),
                dedekind_infinite: copies.iter().any(ExtNat::is_infinite),
                expression: render(&copies, &families),
            }
        })
        .collect();

    let mut text = String::new();
    let _ = writeln!(
        text,
        "families: {} (pairwise disjoint, each amorphous, hence Dedekind-finite)",
        families.join(", ")
    );
    for w in &labels {
        let _ = write!(text, "{}* = {}", w.label, w.expression);
        if w.dedekind_infinite {
            text.push_str("   [Dedekind-infinite]");
        }
        text.push('\n');
    }
    let _ = writeln!(
        text,
        "|s*| ≤ |t*| iff s has at most as many copies of every family as t"
    );
    SymbolicZfWitness {
        families,
        labels,
        text,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AtomSpace;
    use crate::semantics::{Measure, ModelKind};
    use crate::syntax::Labels;

    fn space() -> AtomSpace {
        AtomSpace::new(Labels::new(["a", "b"]).unwrap()).unwrap()
    }

    #[test]
    fn single_measure() {
        // a only: atom 1, b only: atom 2
        let m = MeasuresModel::canonical(
            ModelKind::Finitary,
            &space(),
            vec![Measure::finite([0u64, 2, 1, 0])],
        )
        .unwrap();
        let w = symbolic_zf_witness(&m);
        assert_eq!(w.labels[0].expression, "2 × A_1");
        assert_eq!(w.labels[1].expression, "1 × A_1");
        assert_eq!(w.compare("b", "a"), Some(Some(Ordering::Less)));
        assert!(!w.labels[0].dedekind_infinite);
    }

    #[test]
    fn incomparable_families() {
        let m = MeasuresModel::canonical(
            ModelKind::Finitary,
            &space(),
            vec![Measure::finite([0u64, 1, 0, 0]), Measure::finite([0u64, 0, 1, 0])],
        )
        .unwrap();
        let w = symbolic_zf_witness(&m);
        assert_eq!(w.families.len(), 2);
        assert_eq!(w.compare("a", "b"), Some(None));
        assert_eq!(w.compare("a", "zz"), None);
    }

    #[test]
    fn infinite_rendering() {
        let m = MeasuresModel::canonical(
            ModelKind::Infinitary,
            &space(),
            vec![Measure::new(vec![
                ExtNat::Fin(0u64),
                ExtNat::Inf,
                ExtNat::Fin(10),
                ExtNat::Fin(0),
            ])],
        )
        .unwrap();
        let w = symbolic_zf_witness(&m);
        assert_eq!(w.labels[0].expression, "ω × A_1");
        assert!(w.labels[0].dedekind_infinite);
        assert!(w.text.contains("Dedekind-infinite"));
        assert_eq!(w.compare("a", "b"), Some(Some(Ordering::Greater)));
    }
}
