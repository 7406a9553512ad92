//! Recursive-descent parser for the concrete syntax.
//!
//! ```text
//! term    := IDENT | '0' | '1' | term "'" | term '&' term | term '+' term | '(' term ')'
//! atom    := '|' term '|' CMP '|' term '|' | term 'sub' term | term '=' term
//! formula := atom | '!' formula | formula '/\' formula | formula '\/' formula
//!          | formula '<+>' formula | formula '->' formula | formula '<->' formula
//!          | '(' formula ')'
//! ```
//!
//! Term precedence is `'` over `&` over `+`, both binary operators left
//! associative. Connective precedence, loosest first: `<->`, `->` (right
//! associative), `<+>`, `\/`, `/\`, `!`. Comparison sugar (`<=`, `=`, `>`,
//! `<`, `sub`, set `=`) is expanded into `>=`, negation and conjunction while
//! parsing.

use super::ast::{Formula, Label, Labels, SetTerm};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Prime,
    Amp,
    Plus,
    LParen,
    RParen,
    Bar,
    Ge,
    Le,
    Eq,
    Gt,
    Lt,
    Sub,
    Bang,
    AndOp,
    OrOp,
    Arrow,
    IffOp,
    XorOp,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::End => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Ident(_) => "identifier",
            Tok::Zero => "0",
            Tok::One => "1",
            Tok::Prime => "'",
            Tok::Amp => "&",
            Tok::Plus => "+",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Bar => "|",
            Tok::Ge => ">=",
            Tok::Le => "<=",
            Tok::Eq => "=",
            Tok::Gt => ">",
            Tok::Lt => "<",
            Tok::Sub => "sub",
            Tok::Bang => "!",
            Tok::AndOp => "/\\",
            Tok::OrOp => "\\/",
            Tok::Arrow => "->",
            Tok::IffOp => "<->",
            Tok::XorOp => "<+>",
            Tok::End => "end of input",
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    const SYMBOLS: &[(&str, Tok)] = &[
        ("<->", Tok::IffOp),
        ("<+>", Tok::XorOp),
        ("/\\", Tok::AndOp),
        ("\\/", Tok::OrOp),
        ("->", Tok::Arrow),
        (">=", Tok::Ge),
        ("<=", Tok::Le),
        ("=", Tok::Eq),
        (">", Tok::Gt),
        ("<", Tok::Lt),
        ("'", Tok::Prime),
        ("&", Tok::Amp),
        ("+", Tok::Plus),
        ("(", Tok::LParen),
        (")", Tok::RParen),
        ("|", Tok::Bar),
        ("!", Tok::Bang),
        ("0", Tok::Zero),
        ("1", Tok::One),
    ];

    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let tok = if word == "sub" {
                Tok::Sub
            } else {
                Tok::Ident(word.to_string())
            };
            out.push((tok, start));
            continue;
        }
        for (sym, tok) in SYMBOLS {
            if text[i..].starts_with(sym) {
                out.push((tok.clone(), i));
                i += sym.len();
                continue 'outer;
            }
        }
        let ch = text[i..].chars().next().unwrap_or('?');
        return Err(Error::syntax(i, &["a token"], Some(format!("`{ch}`"))));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    labels: Option<&'a Labels>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, labels: Option<&'a Labels>) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            labels,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        Err(Error::syntax(
            self.offset(),
            expected,
            Some(self.peek().describe()),
        ))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&[tok.text()])
        }
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.fail(&["end of input"])
        }
    }

    // term := union
    fn term(&mut self) -> Result<SetTerm> {
        let mut lhs = self.meet()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.meet()?;
            lhs = lhs.join(rhs);
        }
        Ok(lhs)
    }

    fn meet(&mut self) -> Result<SetTerm> {
        let mut lhs = self.postfix()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.postfix()?;
            lhs = lhs.meet(rhs);
        }
        Ok(lhs)
    }

    fn postfix(&mut self) -> Result<SetTerm> {
        let mut t = self.primary_term()?;
        while *self.peek() == Tok::Prime {
            self.bump();
            t = t.complement();
        }
        Ok(t)
    }

    fn primary_term(&mut self) -> Result<SetTerm> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Ident(name) => {
                if let Some(labels) = self.labels {
                    if !labels.contains(&name) {
                        return Err(Error::syntax(
                            offset,
                            &["a declared label"],
                            Some(format!("`{name}`")),
                        ));
                    }
                }
                self.bump();
                Ok(SetTerm::Label(Label::new(&name)?))
            }
            Tok::Zero => {
                self.bump();
                Ok(SetTerm::Empty)
            }
            Tok::One => {
                self.bump();
                Ok(SetTerm::Full)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => self.fail(&["term"]),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::IffOp {
            self.bump();
            let rhs = self.implication()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.exclusive()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn exclusive(&mut self) -> Result<Formula> {
        let mut lhs = self.disjunction()?;
        while *self.peek() == Tok::XorOp {
            self.bump();
            let rhs = self.disjunction()?;
            lhs = lhs.xor(rhs);
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::OrOp {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = lhs.or(rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::AndOp {
            self.bump();
            let rhs = self.unary()?;
            lhs = lhs.and(rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Tok::LParen => {
                // A parenthesis opens either a formula or a term that starts
                // an inclusion/equality atom; the two readings are disjoint.
                let saved = self.pos;
                let as_formula = self.bump_then(|p| {
                    let f = p.formula()?;
                    p.expect(Tok::RParen)?;
                    Ok(f)
                });
                match as_formula {
                    Ok(f) => Ok(f),
                    Err(formula_err) => {
                        self.pos = saved;
                        match self.atom() {
                            Ok(f) => Ok(f),
                            Err(term_err) => Err(furthest(formula_err, term_err)),
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn bump_then<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        self.bump();
        f(self)
    }

    fn atom(&mut self) -> Result<Formula> {
        if *self.peek() == Tok::Bar {
            self.bump();
            let lhs = self.term()?;
            self.expect(Tok::Bar)?;
            if !matches!(
                self.peek(),
                Tok::Ge | Tok::Le | Tok::Eq | Tok::Gt | Tok::Lt
            ) {
                return self.fail(&[">=", "<=", "=", ">", "<"]);
            }
            let cmp = self.bump();
            self.expect(Tok::Bar)?;
            let rhs = self.term()?;
            self.expect(Tok::Bar)?;
            return Ok(match cmp {
                Tok::Ge => Formula::geq(lhs, rhs),
                Tok::Le => Formula::leq(lhs, rhs),
                Tok::Eq => Formula::equinumerous(lhs, rhs),
                Tok::Gt => Formula::gt(lhs, rhs),
                Tok::Lt => Formula::gt(rhs, lhs),
                _ => unreachable!(),
            });
        }
        if !matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Zero | Tok::One | Tok::LParen
        ) {
            return self.fail(&["`|`", "`!`", "`(`", "term"]);
        }
        let lhs = self.term()?;
        match self.peek() {
            Tok::Sub => {
                self.bump();
                let rhs = self.term()?;
                Ok(Formula::subset(lhs, rhs))
            }
            Tok::Eq => {
                self.bump();
                let rhs = self.term()?;
                Ok(Formula::set_eq(lhs, rhs))
            }
            _ => self.fail(&["sub", "=", "'", "&", "+"]),
        }
    }
}

fn furthest(a: Error, b: Error) -> Error {
    match (&a, &b) {
        (Error::Syntax { offset: oa, .. }, Error::Syntax { offset: ob, .. }) if ob > oa => b,
        (Error::Syntax { .. }, Error::Syntax { .. }) => a,
        (Error::Syntax { .. }, _) => b,
        _ => a,
    }
}

/// Parses a set term. Any identifier is accepted as a label.
pub fn parse_term(text: &str) -> Result<SetTerm> {
    let mut p = Parser::new(text, None)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses a set term whose labels must be registered in `labels`.
pub fn parse_term_in(text: &str, labels: &Labels) -> Result<SetTerm> {
    let mut p = Parser::new(text, Some(labels))?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser::new(text, None)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_formula_in(text: &str, labels: &Labels) -> Result<Formula> {
    let mut p = Parser::new(text, Some(labels))?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}
