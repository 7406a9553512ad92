use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::AtomVector;
use crate::error::{Error, Result};
use crate::lp::{self, FeasibilityResult, LinearSystem, Relation, SolveOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeResult {
    /// `Σ multipliers[i]·gen_i = scale·target`, with the multipliers and the
    /// scale jointly coprime.
    Member {
        multipliers: Vec<BigUint>,
        scale: BigUint,
    },
    NotMember,
}

impl ConeResult {
    pub fn is_member(&self) -> bool {
        matches!(self, ConeResult::Member { .. })
    }
}

/// Decides whether `target` is a nonnegative rational combination of
/// `generators`.
pub fn cone_member(
    target: &AtomVector<BigInt>,
    generators: &[AtomVector<BigInt>],
    opts: &SolveOptions,
) -> Result<ConeResult> {
    for g in generators {
        if g.len() != target.len() {
            return Err(Error::DimensionMismatch {
                expected: target.len(),
                got: g.len(),
            });
        }
    }
    let mut sys: LinearSystem<BigRational> = LinearSystem::new(generators.len());
    for atom in 0..target.len() {
        let row = generators
            .iter()
            .map(|g| BigRational::from_integer(g.counts()[atom].clone()))
            .collect();
        sys.add(
            row,
            Relation::Eq,
            BigRational::from_integer(target.counts()[atom].clone()),
        )?;
    }
    let lambda = match lp::solve(&sys, opts)? {
        FeasibilityResult::Infeasible(_) => return Ok(ConeResult::NotMember),
        FeasibilityResult::Point(x) => x,
    };
    let scale = lambda
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut ints: Vec<BigInt> = lambda
        .iter()
        .map(|v| v.numer() * (&scale / v.denom()))
        .collect();
    let g = ints.iter().fold(scale.clone(), |acc, v| acc.gcd(v));
    let scale = scale / &g;
    for v in ints.iter_mut() {
        *v = &*v / &g;
    }
    let result = ConeResult::Member {
        multipliers: ints.iter().map(|v| v.to_biguint().expect("nonnegative")).collect(),
        scale: scale.to_biguint().expect("positive"),
    };
    if !verify_member(target, generators, &result) {
        return Err(Error::Internal("cone multipliers fail re-check".into()));
    }
    Ok(result)
}

/// Re-checks a `Member` answer by exact integer arithmetic.
pub fn verify_member(
    target: &AtomVector<BigInt>,
    generators: &[AtomVector<BigInt>],
    result: &ConeResult,
) -> bool {
    let ConeResult::Member { multipliers, scale } = result else {
        return false;
    };
    if multipliers.len() != generators.len() || scale.is_zero() {
        return false;
    }
    let scale = BigInt::from(scale.clone());
    (0..target.len()).all(|a| {
        let sum = generators
            .iter()
            .zip(multipliers)
            .fold(BigInt::zero(), |acc, (g, m)| {
                acc + &g.counts()[a] * BigInt::from(m.clone())
            });
        sum == &scale * &target.counts()[a]
    })
}
