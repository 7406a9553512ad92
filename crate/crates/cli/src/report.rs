//! Text and JSON rendering of verdicts.

use std::fmt::Write;

use cardcomp::decide::{Annotation, PremiseRef, Refutes, Target, WitnessRole};
use cardcomp::semantics::AtomLiteral;
use cardcomp::{Atom, AtomSet, AtomSpace, CancellationCertificate, MeasuresModel};
use serde_json::{json, Value};

/// A short name for `set`: a constant, a label or a complemented label when
/// one matches, the union of its atoms otherwise.
fn set_text(space: &AtomSpace, set: &AtomSet) -> String {
    if set.is_empty() {
        return "0".into();
    }
    if set.is_full() {
        return "0'".into();
    }
    for l in space.labels().iter() {
        let ls = space.label_set(l).expect("label of the space");
        if &ls == set {
            return l.to_string();
        }
        if ls.complement() == *set {
            return format!("{l}'");
        }
    }
    space.set_term(set).to_string()
}

pub fn literal_text(space: &AtomSpace, l: &AtomLiteral) -> String {
    let body = format!("|{}| >= |{}|", set_text(space, &l.lhs), set_text(space, &l.rhs));
    if l.positive {
        body
    } else {
        format!("!({body})")
    }
}

fn premise_text(space: &AtomSpace, branch: &[AtomLiteral], p: PremiseRef) -> String {
    match p {
        PremiseRef::Literal(i) => format!("literal {i}: {}", literal_text(space, &branch[i])),
        PremiseRef::Totality(i) => format!(
            "totality of literal {i}: |{}| >= |{}|",
            set_text(space, &branch[i].rhs),
            set_text(space, &branch[i].lhs)
        ),
        PremiseRef::Positivity(t) => format!("positivity: |{}| >= |0|", space.atom_term(Atom(t))),
    }
}

pub fn certificate_text(
    space: &AtomSpace,
    branches: &[Vec<AtomLiteral>],
    n: usize,
    c: &CancellationCertificate,
) -> String {
    let mut out = String::new();
    let target = match c.refutes {
        Some(Refutes::Literal { index }) => format!("refutes literal {index}"),
        Some(Refutes::NonTriviality) => "refutes non-triviality".into(),
        None => "no target".into(),
    };
    let _ = writeln!(
        out,
        "certificate {n} ({} logic, branch {}, {target}): {} x |{}| <= {} x |{}|",
        c.logic,
        c.branch,
        c.scale,
        set_text(space, &c.e),
        c.scale,
        set_text(space, &c.f)
    );
    let branch = branches.get(c.branch).map(Vec::as_slice).unwrap_or(&[]);
    for (i, p) in c.premises.iter().enumerate() {
        let _ = write!(out, "  {} x {}", p.multiplicity, premise_text(space, branch, p.premise));
        if let Some(chain) = c.coverage.get(i) {
            let steps: Vec<String> = chain.iter().map(|s| s.to_string()).collect();
            let _ = write!(out, "  [covered via literals {}]", steps.join(", "));
        }
        out.push('\n');
    }
    out
}

pub fn model_text(space: &AtomSpace, m: &MeasuresModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model ({}, {} measure(s))", m.kind(), m.measures().len());
    let names: Vec<String> = space.atoms().map(|a| space.atom_term(a).to_string()).collect();
    let width = names.iter().map(|n| n.chars().count()).max().unwrap_or(0).max(4);
    let _ = write!(out, "  {:width$}", "atom");
    for i in 1..=m.measures().len() {
        let _ = write!(out, "  m{i:<5}");
    }
    out.push('\n');
    for (a, name) in space.atoms().zip(&names) {
        let _ = write!(out, "  {name:width$}");
        for mu in m.measures() {
            let _ = write!(out, "  {:<6}", mu.atom_value(a).to_string());
        }
        out.push('\n');
    }
    out
}

pub fn annotation_text(space: &AtomSpace, branch: &[AtomLiteral], a: &Annotation) -> String {
    let target = match a.target {
        Target::Literal { index } => format!("literal {index}: {}", literal_text(space, &branch[index])),
        Target::Admissibility => "admissibility".into(),
    };
    let role = match a.role {
        WitnessRole::Strict => "strict",
        WitnessRole::Rho => "zero on ideal, infinite elsewhere",
    };
    let ideal = a
        .ideal_top
        .as_ref()
        .map(|k| format!(", ideal top {}", set_text(space, k)))
        .unwrap_or_default();
    format!("  m{} witnesses {target} ({role}{ideal})\n", a.measure + 1)
}

pub fn space_json(space: &AtomSpace) -> Value {
    json!({
        "labels": space.labels().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "atoms": space.atom_count(),
    })
}

/// Adds the fields of `extra` to the object `base`.
pub fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}
