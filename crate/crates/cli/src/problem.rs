//! Line-oriented problem files.
//!
//! ```text
//! # comment
//! logic: ded
//! labels: a b c
//! |a| >= |b|
//! assume: !(|b| >= |a|)
//! goal: |a + b| >= |b|
//! ```
//!
//! Blank lines and `#` comments are ignored. `logic:` and `labels:` may
//! appear at most once each, `goal:` at most once; every other line is an
//! assumption. When `labels:` is present, formulas may only use declared
//! labels.

use cardcomp::decide::{refutation_formula, space_for, Logic};
use cardcomp::syntax::{parse_formula, parse_formula_in};
use cardcomp::{AtomSpace, Formula, Labels};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct Problem {
    pub logic: Option<Logic>,
    pub labels: Option<Labels>,
    pub assumptions: Vec<Formula>,
    pub goal: Option<Formula>,
}

fn input_error(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {msg}"))
}

impl Problem {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut logic = None;
        let mut labels: Option<Labels> = None;
        let mut formulas: Vec<(usize, bool, &str)> = Vec::new();
        let mut goal_seen = false;

        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = match line.split_once(':') {
                Some((k, r)) if k.trim().chars().all(|c| c.is_ascii_alphabetic()) => {
                    (Some(k.trim()), r.trim())
                }
                _ => (None, line),
            };
            match key {
                Some("logic") => {
                    if logic.is_some() {
                        return Err(input_error(n, "duplicate `logic:` header"));
                    }
                    logic = Some(rest.parse::<Logic>().map_err(|e| input_error(n, e))?);
                }
                Some("labels") => {
                    if labels.is_some() {
                        return Err(input_error(n, "duplicate `labels:` declaration"));
                    }
                    let names: Vec<&str> = rest
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .collect();
                    labels = Some(Labels::new(names).map_err(|e| input_error(n, e))?);
                }
                Some("goal") => {
                    if goal_seen {
                        return Err(input_error(n, "more than one goal"));
                    }
                    goal_seen = true;
                    formulas.push((n, true, rest));
                }
                Some("assume") => formulas.push((n, false, rest)),
                Some(other) => return Err(input_error(n, format!("unknown header `{other}:`"))),
                None => formulas.push((n, false, rest)),
            }
        }

        let mut assumptions = Vec::new();
        let mut goal = None;
        for (n, is_goal, src) in formulas {
            let f = match &labels {
                Some(l) => parse_formula_in(src, l),
                None => parse_formula(src),
            }
            .map_err(|e| input_error(n, e))?;
            if is_goal {
                goal = Some(f);
            } else {
                assumptions.push(f);
            }
        }
        Ok(Problem {
            logic,
            labels,
            assumptions,
            goal,
        })
    }

    /// Every formula of the file, goal last.
    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.assumptions.iter().chain(self.goal.as_ref())
    }

    pub fn space(&self, max_labels: usize) -> Result<AtomSpace, CliError> {
        Ok(space_for(self.formulas(), self.labels.as_ref(), max_labels)?)
    }

    /// The conjunction of the assumptions; `0 sub 0` when there are none.
    pub fn assumption_formula(&self) -> Formula {
        Formula::conjunction(self.assumptions.iter().cloned()).unwrap_or_else(|| {
            parse_formula("0 sub 0").expect("constant formula")
        })
    }

    /// What `entail` refutes: the assumptions together with the negated goal.
    pub fn refuted_formula(&self) -> Option<Formula> {
        self.goal
            .as_ref()
            .map(|g| refutation_formula(&self.assumptions, g))
    }
}
