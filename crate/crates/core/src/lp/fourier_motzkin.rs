//! Fourier-Motzkin elimination, used as an independent feasibility check
//! for small systems.

use std::collections::HashSet;

use super::{ExactField, LinearSystem, Relation};

#[derive(Clone, PartialEq, Eq, Hash)]
struct Ineq<T> {
    coeffs: Vec<T>,
    strict: bool,
    rhs: T,
}

impl<T: ExactField> Ineq<T> {
    /// Scales so the first nonzero coefficient has magnitude one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() {
            let d = lead.abs();
            for c in self.coeffs.iter_mut() {
                *c = c.clone() / d.clone();
            }
            self.rhs = self.rhs / d;
        }
        self
    }
}

/// Decides feasibility of `sys` (variables nonnegative) by eliminating one
/// variable at a time. Returns `None` once the working set exceeds
/// `max_rows`.
pub fn fm_feasible<T: ExactField>(sys: &LinearSystem<T>, max_rows: usize) -> Option<bool> {
    let n = sys.num_vars();
    let mut rows: HashSet<Ineq<T>> = HashSet::new();
    for c in sys.constraints() {
        let base = Ineq {
            coeffs: c.coeffs.clone(),
            strict: c.relation == Relation::Gt,
            rhs: c.rhs.clone(),
        };
        if c.relation == Relation::Eq {
            rows.insert(Ineq {
                coeffs: c.coeffs.iter().map(|v| -v.clone()).collect(),
                strict: false,
                rhs: -c.rhs.clone(),
            });
        }
        rows.insert(base);
    }
    for j in 0..n {
        let mut unit = vec![T::zero(); n];
        unit[j] = T::one();
        rows.insert(Ineq {
            coeffs: unit,
            strict: false,
            rhs: T::zero(),
        });
    }

    for j in 0..n {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), HashSet::new());
        for r in rows {
            if r.coeffs[j].is_positive() {
                pos.push(r);
            } else if r.coeffs[j].is_negative() {
                neg.push(r);
            } else {
                rest.insert(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let (a, b) = (p.coeffs[j].clone(), -q.coeffs[j].clone());
                let coeffs: Vec<T> = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(x, y)| b.clone() * x.clone() + a.clone() * y.clone())
                    .collect();
                let combined = Ineq {
                    coeffs,
                    strict: p.strict || q.strict,
                    rhs: b.clone() * p.rhs.clone() + a.clone() * q.rhs.clone(),
                }
                .normalized();
                rest.insert(combined);
                if rest.len() > max_rows {
                    return None;
                }
            }
        }
        rows = HashSet::new();
        for r in rest {
            if r.coeffs.iter().all(|c| c.is_zero()) {
                let ok = if r.strict {
                    r.rhs.is_negative()
                } else {
                    !r.rhs.is_positive()
                };
                if !ok {
                    return Some(false);
                }
            } else {
                rows.insert(r);
            }
        }
    }
    Some(rows.iter().all(|r| {
        if r.strict {
            r.rhs.is_negative()
        } else {
            !r.rhs.is_positive()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_systems() {
        let mut s = LinearSystem::new(2);
        s.add(vec![q(1), q(-1)], Relation::Gt, q(0)).unwrap();
        s.add(vec![q(-1), q(1)], Relation::Gt, q(0)).unwrap();
        assert_eq!(fm_feasible(&s, 1000), Some(false));

        let mut s = LinearSystem::new(2);
        s.add(vec![q(1), q(-1)], Relation::Ge, q(1)).unwrap();
        s.add(vec![q(0), q(1)], Relation::Ge, q(1)).unwrap();
        assert_eq!(fm_feasible(&s, 1000), Some(true));

        let mut s = LinearSystem::new(1);
        s.add(vec![q(-1)], Relation::Gt, q(0)).unwrap();
        assert_eq!(fm_feasible(&s, 1000), Some(false));
    }
}
