use super::ast::{Formula, Literal};
use super::expand::expand_abbreviations;
use crate::error::{Error, Result};

/// Disjunctive normal form as a list of literal conjunctions.
///
/// Branches are produced in syntactic order and duplicate literals within a
/// branch are merged. Contradictory branches are kept, so that every branch
/// of an unsatisfiable formula can be refuted by its own certificate.
pub fn to_dnf(f: &Formula) -> Vec<Vec<Literal>> {
    to_dnf_bounded(f, usize::MAX).expect("unbounded")
}

/// Like [`to_dnf`], failing once more than `max_branches` branches would
/// be materialized.
pub fn to_dnf_bounded(f: &Formula, max_branches: usize) -> Result<Vec<Vec<Literal>>> {
    let core = expand_abbreviations(f);
    dnf(&core, true, max_branches)
}

fn dnf(f: &Formula, polarity: bool, max: usize) -> Result<Vec<Vec<Literal>>> {
    match f {
        Formula::Geq(a, b) => Ok(vec![vec![Literal {
            positive: polarity,
            lhs: a.clone(),
            rhs: b.clone(),
        }]]),
        Formula::Not(inner) => dnf(inner, !polarity, max),
        Formula::And(a, b) if polarity => product(dnf(a, true, max)?, dnf(b, true, max)?, max),
        Formula::And(a, b) => {
            let mut out = dnf(a, false, max)?;
            out.extend(dnf(b, false, max)?);
            check(out, max)
        }
        _ => unreachable!("expand_abbreviations leaves only core connectives"),
    }
}

fn product(
    left: Vec<Vec<Literal>>,
    right: Vec<Vec<Literal>>,
    max: usize,
) -> Result<Vec<Vec<Literal>>> {
    let mut out = Vec::new();
    for l in &left {
        for r in &right {
            let mut branch = l.clone();
            for lit in r {
                if !branch.contains(lit) {
                    branch.push(lit.clone());
                }
            }
            out.push(branch);
            if out.len() > max {
                return Err(too_many(max));
            }
        }
    }
    Ok(out)
}

fn check(out: Vec<Vec<Literal>>, max: usize) -> Result<Vec<Vec<Literal>>> {
    if out.len() > max {
        Err(too_many(max))
    } else {
        Ok(out)
    }
}

fn too_many(max: usize) -> Error {
    Error::LimitExceeded(format!("normal form exceeds {max} branches"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, SetTerm};

    fn lit(positive: bool, a: &str, b: &str) -> Literal {
        Literal {
            positive,
            lhs: SetTerm::label(a),
            rhs: SetTerm::label(b),
        }
    }

    #[test]
    fn single_comparison() {
        let f = parse_formula("|a| >= |b|").unwrap();
        assert_eq!(to_dnf(&f), vec![vec![lit(true, "a", "b")]]);
    }

    #[test]
    fn de_morgan() {
        let f = parse_formula("!(|x| >= |y| /\\ |y| >= |x|)").unwrap();
        assert_eq!(
            to_dnf(&f),
            vec![vec![lit(false, "x", "y")], vec![lit(false, "y", "x")]]
        );
    }

    #[test]
    fn exclusive_or_keeps_mixed_and_contradictory_branches() {
        let f = parse_formula("|a| >= |b| <+> |c| >= |d|").unwrap();
        assert_eq!(
            to_dnf(&f),
            vec![
                vec![lit(true, "a", "b"), lit(false, "a", "b")],
                vec![lit(true, "a", "b"), lit(false, "c", "d")],
                vec![lit(true, "c", "d"), lit(false, "a", "b")],
                vec![lit(true, "c", "d"), lit(false, "c", "d")],
            ]
        );
    }

    #[test]
    fn contradiction_is_kept() {
        let f = parse_formula("|a| >= |b| /\\ !|a| >= |b| /\\ |a| >= |b|").unwrap();
        assert_eq!(to_dnf(&f), vec![vec![lit(true, "a", "b"), lit(false, "a", "b")]]);
    }

    #[test]
    fn branch_budget() {
        let f = parse_formula(
            "(|a|>=|b| \\/ |b|>=|a|) /\\ (|a|>=|c| \\/ |c|>=|a|) /\\ (|b|>=|c| \\/ |c|>=|b|)",
        )
        .unwrap();
        assert_eq!(to_dnf(&f).len(), 8);
        assert!(matches!(to_dnf_bounded(&f, 5), Err(Error::LimitExceeded(_))));
    }
}
