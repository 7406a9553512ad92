//! Pretty printing in the concrete syntax with minimal parentheses, so that
//! printing and re-parsing is the identity on syntax trees.

use std::fmt;

use super::ast::{Formula, Literal, SetTerm};

fn term_prec(t: &SetTerm) -> u8 {
    match t {
        SetTerm::Union(..) => 1,
        SetTerm::Intersection(..) => 2,
        _ => 3,
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &SetTerm, min: u8) -> fmt::Result {
    let paren = term_prec(t) < min;
    if paren {
        f.write_str("(")?;
    }
    match t {
        SetTerm::Label(l) => write!(f, "{l}")?,
        SetTerm::Empty => f.write_str("0")?,
        SetTerm::Full => f.write_str("1")?,
        SetTerm::Complement(inner) => {
            write_term(f, inner, 3)?;
            f.write_str("'")?;
        }
        SetTerm::Intersection(a, b) => {
            write_term(f, a, 2)?;
            f.write_str(" & ")?;
            write_term(f, b, 3)?;
        }
        SetTerm::Union(a, b) => {
            write_term(f, a, 1)?;
            f.write_str(" + ")?;
            write_term(f, b, 2)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for SetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, 0)
    }
}

fn formula_prec(p: &Formula) -> u8 {
    match p {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Xor(..) => 3,
        Formula::Or(..) => 4,
        Formula::And(..) => 5,
        Formula::Not(..) | Formula::Geq(..) => 6,
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, p: &Formula, min: u8) -> fmt::Result {
    let paren = formula_prec(p) < min;
    if paren {
        f.write_str("(")?;
    }
    // left-associative operators bind their right operand one level tighter;
    // implication is right-associative
    let binary = |f: &mut fmt::Formatter<'_>, a, b, op: &str, prec: u8, right_assoc: bool| {
        let (lmin, rmin) = if right_assoc {
            (prec + 1, prec)
        } else {
            (prec, prec + 1)
        };
        write_formula(f, a, lmin)?;
        write!(f, " {op} ")?;
        write_formula(f, b, rmin)
    };
    match p {
        Formula::Geq(a, b) => write!(f, "|{a}| >= |{b}|")?,
        Formula::Not(inner) => {
            f.write_str("!")?;
            write_formula(f, inner, 6)?;
        }
        Formula::And(a, b) => binary(f, a, b, "/\\", 5, false)?,
        Formula::Or(a, b) => binary(f, a, b, "\\/", 4, false)?,
        Formula::Xor(a, b) => binary(f, a, b, "<+>", 3, false)?,
        Formula::Implies(a, b) => binary(f, a, b, "->", 2, true)?,
        Formula::Iff(a, b) => binary(f, a, b, "<->", 1, false)?,
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "|{}| >= |{}|", self.lhs, self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::{parse_formula, parse_term};
    use super::*;
    use proptest::prelude::*;

    fn arb_term() -> impl Strategy<Value = SetTerm> {
        let leaf = prop_oneof![
            prop::sample::select(vec!["a", "b", "c1", "x_y"]).prop_map(SetTerm::label),
            Just(SetTerm::Empty),
            Just(SetTerm::Full),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(SetTerm::complement),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.meet(b)),
                (inner.clone(), inner).prop_map(|(a, b)| a.join(b)),
            ]
        })
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = (arb_term(), arb_term()).prop_map(|(a, b)| Formula::geq(a, b));
        leaf.prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.iff(b)),
                (inner.clone(), inner).prop_map(|(a, b)| a.xor(b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn term_round_trip(t in arb_term()) {
            prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }

        #[test]
        fn formula_round_trip(f in arb_formula()) {
            prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn printing_is_minimal() {
        let t = parse_term("(a + b) & c'").unwrap();
        assert_eq!(t.to_string(), "(a + b) & c'");
        let t = parse_term("a & (b & c)").unwrap();
        assert_eq!(t.to_string(), "a & (b & c)");
        let f = parse_formula("a sub b").unwrap();
        assert_eq!(f.to_string(), "|0| >= |a & b'|");
    }
}
