//! Exact linear feasibility over an ordered field.
//!
//! Systems are conjunctions of `c.x >= b`, `c.x = b` and `c.x > b` over
//! nonnegative variables. [`solve`] either returns a point satisfying every
//! constraint or a vector of multipliers whose combination of the
//! constraints is contradictory; both are re-checked exactly before they are
//! returned.
//!
//! Strict constraints are handled by homogenizing with a scale variable `t`
//! and one shared gap variable `eps`: `c.x - b t - eps >= 0`, `t >= eps`,
//! `eps >= 1`. A solution of the original system is recovered as `x / t`.

mod field;
mod fourier_motzkin;
mod simplex;

pub use field::ExactField;
pub use fourier_motzkin::fm_feasible;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Eq,
    Gt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: ExactField> Constraint<T> {
    pub fn lhs_at(&self, x: &[T]) -> T {
        self.coeffs
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (c, v)| acc + c.clone() * v.clone())
    }

    pub fn holds_at(&self, x: &[T]) -> bool {
        let lhs = self.lhs_at(x);
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Gt => lhs > self.rhs,
        }
    }
}

/// A conjunction of linear constraints over nonnegative variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem<T> {
    num_vars: usize,
    constraints: Vec<Constraint<T>>,
}

impl<T: ExactField> LinearSystem<T> {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem {
            num_vars,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint<T>] {
        &self.constraints
    }

    pub fn add(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) -> Result<()> {
        if coeffs.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: coeffs.len(),
            });
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    /// True when `x` is nonnegative and satisfies every constraint.
    pub fn check_point(&self, x: &[T]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| c.holds_at(x))
    }

    /// True when `y` certifies infeasibility: equality rows take any sign,
    /// other rows nonnegative multipliers; the combined left side is
    /// nonpositive in every variable while the combined right side is
    /// positive, or zero with a positive weight on a strict row.
    pub fn check_farkas(&self, y: &[T]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        let signs_ok = self
            .constraints
            .iter()
            .zip(y)
            .all(|(c, m)| c.relation == Relation::Eq || !m.is_negative());
        if !signs_ok {
            return false;
        }
        for j in 0..self.num_vars {
            let combined = self
                .constraints
                .iter()
                .zip(y)
                .fold(T::zero(), |acc, (c, m)| acc + m.clone() * c.coeffs[j].clone());
            if combined.is_positive() {
                return false;
            }
        }
        let rhs = self
            .constraints
            .iter()
            .zip(y)
            .fold(T::zero(), |acc, (c, m)| acc + m.clone() * c.rhs.clone());
        let strict_used = self
            .constraints
            .iter()
            .zip(y)
            .any(|(c, m)| c.relation == Relation::Gt && m.is_positive());
        rhs.is_positive() || (rhs.is_zero() && strict_used)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult<T> {
    /// A point satisfying every constraint.
    Point(Vec<T>),
    /// One multiplier per constraint, see [`LinearSystem::check_farkas`].
    Infeasible(Vec<T>),
}

impl<T> FeasibilityResult<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Point(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Exact simplex with Bland's rule.
    #[default]
    Simplex,
    /// Simplex, with the verdict re-derived by Fourier-Motzkin elimination
    /// whenever the system has at most [`CROSS_CHECK_MAX_VARS`] variables.
    CrossCheck,
}

pub const CROSS_CHECK_MAX_VARS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub engine: Engine,
    /// Maximum simplex pivots per phase.
    pub pivot_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            engine: Engine::Simplex,
            pivot_budget: 1_000_000,
        }
    }
}

pub fn solve<T: ExactField>(
    sys: &LinearSystem<T>,
    opts: &SolveOptions,
) -> Result<FeasibilityResult<T>> {
    let n = sys.num_vars;
    let (t, eps) = (n, n + 1);
    let width = n + 2;

    let mut rows = Vec::with_capacity(sys.constraints.len() + 2);
    for c in &sys.constraints {
        let mut coeffs = c.coeffs.clone();
        coeffs.push(-c.rhs.clone());
        coeffs.push(if c.relation == Relation::Gt {
            -T::one()
        } else {
            T::zero()
        });
        let eq = c.relation == Relation::Eq;
        rows.push(simplex::Row {
            coeffs,
            equality: eq,
            rhs: T::zero(),
        });
    }
    let mut scale = vec![T::zero(); width];
    scale[t] = T::one();
    scale[eps] = -T::one();
    rows.push(simplex::Row {
        coeffs: scale,
        equality: false,
        rhs: T::zero(),
    });
    let mut gap = vec![T::zero(); width];
    gap[eps] = T::one();
    rows.push(simplex::Row {
        coeffs: gap,
        equality: false,
        rhs: T::one(),
    });

    let result = match simplex::phase_one(&rows, width, opts.pivot_budget)? {
        Some(sol) => {
            let x: Vec<T> = sol[..n].iter().map(|v| v.clone() / sol[t].clone()).collect();
            if !sys.check_point(&x) {
                return Err(Error::Internal("simplex point fails re-check".into()));
            }
            FeasibilityResult::Point(x)
        }
        None => FeasibilityResult::Infeasible(farkas_multipliers(sys, opts)?),
    };

    if opts.engine == Engine::CrossCheck && n <= CROSS_CHECK_MAX_VARS {
        if let Some(feasible) = fm_feasible(sys, 20_000) {
            if feasible != result.is_feasible() {
                return Err(Error::EngineDisagreement);
            }
        }
    }
    Ok(result)
}

/// Solves the alternative system for the multipliers of an infeasible
/// system.
fn farkas_multipliers<T: ExactField>(sys: &LinearSystem<T>, opts: &SolveOptions) -> Result<Vec<T>> {
    // one column per inequality row, two (positive and negative parts) per
    // equality row, then z (scale row) and w (gap row)
    let mut col_of = Vec::with_capacity(sys.constraints.len());
    let mut cols = 0;
    for c in &sys.constraints {
        col_of.push(cols);
        cols += if c.relation == Relation::Eq { 2 } else { 1 };
    }
    let (z, w) = (cols, cols + 1);
    let width = cols + 2;
    let spread = |coeff: &dyn Fn(&Constraint<T>) -> T| -> Vec<T> {
        let mut row = vec![T::zero(); width];
        for (c, &col) in sys.constraints.iter().zip(&col_of) {
            let v = coeff(c);
            if c.relation == Relation::Eq {
                row[col + 1] = -v.clone();
            }
            row[col] = v;
        }
        row
    };

    let mut rows = Vec::new();
    for j in 0..sys.num_vars {
        rows.push(simplex::Row {
            coeffs: spread(&|c| -c.coeffs[j].clone()),
            equality: false,
            rhs: T::zero(),
        });
    }
    let mut scale = spread(&|c| c.rhs.clone());
    scale[z] = -T::one();
    rows.push(simplex::Row {
        coeffs: scale,
        equality: false,
        rhs: T::zero(),
    });
    let mut gap = spread(&|c| {
        if c.relation == Relation::Gt {
            T::one()
        } else {
            T::zero()
        }
    });
    gap[z] = T::one();
    gap[w] = -T::one();
    rows.push(simplex::Row {
        coeffs: gap,
        equality: false,
        rhs: T::zero(),
    });
    let mut norm = vec![T::zero(); width];
    norm[w] = T::one();
    rows.push(simplex::Row {
        coeffs: norm,
        equality: false,
        rhs: T::one(),
    });

    let sol = simplex::phase_one(&rows, width, opts.pivot_budget)?.ok_or_else(|| {
        Error::Internal("neither the system nor its alternative is feasible".into())
    })?;
    let y: Vec<T> = sys
        .constraints
        .iter()
        .zip(&col_of)
        .map(|(c, &col)| {
            if c.relation == Relation::Eq {
                sol[col].clone() - sol[col + 1].clone()
            } else {
                sol[col].clone()
            }
        })
        .collect();
    if !sys.check_farkas(&y) {
        return Err(Error::Internal("multipliers fail re-check".into()));
    }
    Ok(y)
}

/// Scales a nonnegative rational point by the least common multiple of its
/// denominators. Signs of integer linear forms are preserved.
pub fn integerize<T: ExactField>(point: &[T]) -> Result<Vec<BigUint>> {
    let values: Vec<_> = point.iter().map(ExactField::to_rational).collect();
    if values.iter().any(|v| v.is_negative()) {
        return Err(Error::Invalid("cannot integerize a negative value".into()));
    }
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    Ok(values
        .iter()
        .map(|v| {
            (v.numer() * (&lcm / v.denom()))
                .to_biguint()
                .expect("nonnegative")
        })
        .collect())
}
