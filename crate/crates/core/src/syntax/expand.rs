use super::ast::{Formula, SetTerm};

/// Rewrites a term into labels, `0`, complement and intersection.
/// `1` becomes `0'` and `s + t` becomes `(s' & t')'`.
pub fn expand_term(t: &SetTerm) -> SetTerm {
    match t {
        SetTerm::Label(_) | SetTerm::Empty => t.clone(),
        SetTerm::Full => SetTerm::Empty.complement(),
        SetTerm::Complement(inner) => expand_term(inner).complement(),
        SetTerm::Intersection(a, b) => expand_term(a).meet(expand_term(b)),
        SetTerm::Union(a, b) => expand_term(a)
            .complement()
            .meet(expand_term(b).complement())
            .complement(),
    }
}

/// Rewrites a formula into `>=`, `!` and `/\` over core terms. Idempotent.
pub fn expand_abbreviations(f: &Formula) -> Formula {
    match f {
        Formula::Geq(a, b) => Formula::Geq(expand_term(a), expand_term(b)),
        Formula::Not(inner) => expand_abbreviations(inner).not(),
        Formula::And(a, b) => expand_abbreviations(a).and(expand_abbreviations(b)),
        Formula::Or(a, b) => or(expand_abbreviations(a), expand_abbreviations(b)),
        Formula::Implies(a, b) => implies(expand_abbreviations(a), expand_abbreviations(b)),
        Formula::Iff(a, b) => {
            let (a, b) = (expand_abbreviations(a), expand_abbreviations(b));
            implies(a.clone(), b.clone()).and(implies(b, a))
        }
        Formula::Xor(a, b) => {
            let (a, b) = (expand_abbreviations(a), expand_abbreviations(b));
            or(a.clone(), b.clone()).and(a.and(b).not())
        }
    }
}

fn or(a: Formula, b: Formula) -> Formula {
    a.not().and(b.not()).not()
}

fn implies(a: Formula, b: Formula) -> Formula {
    a.and(b.not()).not()
}

fn is_core_term(t: &SetTerm) -> bool {
    match t {
        SetTerm::Label(_) | SetTerm::Empty => true,
        SetTerm::Complement(inner) => is_core_term(inner),
        SetTerm::Intersection(a, b) => is_core_term(a) && is_core_term(b),
        SetTerm::Union(..) | SetTerm::Full => false,
    }
}

/// True when only `>=`, `!`, `/\` and core term constructors occur.
pub fn is_core(f: &Formula) -> bool {
    match f {
        Formula::Geq(a, b) => is_core_term(a) && is_core_term(b),
        Formula::Not(inner) => is_core(inner),
        Formula::And(a, b) => is_core(a) && is_core(b),
        _ => false,
    }
}
