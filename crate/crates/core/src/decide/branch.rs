use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::certificate::{CancellationCertificate, PremiseRef, PremiseUse, Refutes};
use super::closure::Closure;
use super::{Annotation, Logic, Options, Target, WitnessBundle, WitnessRole};
use crate::algebra::{Atom, AtomSet, AtomSpace};
use crate::error::{Error, Result};
use crate::lp::{self, FeasibilityResult, LinearSystem, Relation};
use crate::semantics::{AtomLiteral, ExtNat, Measure, MeasuresModel, ModelKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchOutcome {
    Sat(WitnessBundle),
    /// Certificates carry branch index 0; callers renumber them.
    Unsat(Vec<CancellationCertificate>),
}

fn map_ordered<T: Sync, R: Send>(items: &[T], parallel: bool, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

fn coeffs(domain: &[Atom], plus: &AtomSet, minus: &AtomSet) -> Vec<BigRational> {
    domain
        .iter()
        .map(|&a| {
            let v = plus.contains(a) as i64 - minus.contains(a) as i64;
            BigRational::from_integer(v.into())
        })
        .collect()
}

/// A measure on the atoms of `domain` keeping every `|x| ≥ |y|` in `ge`
/// and giving `hi` strictly more than `lo`. Values outside the domain are
/// `outside`.
fn strict_measure<'p>(
    universe: usize,
    domain: &AtomSet,
    ge: impl Iterator<Item = &'p (AtomSet, AtomSet)>,
    lo: &AtomSet,
    hi: &AtomSet,
    outside: ExtNat<BigUint>,
    opts: &Options,
) -> Result<Option<Measure<BigUint>>> {
    let atoms: Vec<Atom> = domain.iter().collect();
    let mut sys = LinearSystem::new(atoms.len());
    for (x, y) in ge {
        sys.add(coeffs(&atoms, x, y), Relation::Ge, BigRational::zero())?;
    }
    sys.add(coeffs(&atoms, hi, lo), Relation::Gt, BigRational::zero())?;
    let point = match lp::solve(&sys, &opts.solve)? {
        FeasibilityResult::Point(p) => p,
        FeasibilityResult::Infeasible(_) => return Ok(None),
    };
    let ints = lp::integerize(&point)?;
    let mut values = vec![outside; universe];
    for (a, v) in atoms.iter().zip(ints) {
        values[a.index()] = ExtNat::Fin(v);
    }
    Ok(Some(Measure::new(values)))
}

fn rho(universe: usize, ideal: &AtomSet) -> Measure<BigUint> {
    Measure::new(
        (0..universe)
            .map(|a| {
                if ideal.contains(Atom(a)) {
                    ExtNat::Fin(BigUint::zero())
                } else {
                    ExtNat::Inf
                }
            })
            .collect(),
    )
}

fn negatives(branch: &[AtomLiteral]) -> Vec<usize> {
    (0..branch.len()).filter(|&i| !branch[i].positive).collect()
}

fn finish(
    space: &AtomSpace,
    branch: &[AtomLiteral],
    kind: ModelKind,
    measures: Vec<Measure<BigUint>>,
    annotations: Vec<Annotation>,
) -> Result<BranchOutcome> {
    let model = MeasuresModel::canonical(kind, space, measures)?;
    if !branch.iter().all(|l| model.holds_atom_literal(l)) {
        return Err(Error::Internal("constructed witness fails the branch".into()));
    }
    Ok(BranchOutcome::Sat(WitnessBundle { model, annotations }))
}

/// Decides one conjunction of atomized literals.
pub fn sat_branch(
    space: &AtomSpace,
    branch: &[AtomLiteral],
    logic: Logic,
    opts: &Options,
) -> Result<BranchOutcome> {
    match logic {
        Logic::Fin => sat_fin(space, branch, opts),
        Logic::Ded => sat_ded(space, branch, opts),
        Logic::Card => sat_card(space, branch, opts),
    }
}

fn sat_fin(space: &AtomSpace, branch: &[AtomLiteral], opts: &Options) -> Result<BranchOutcome> {
    let universe = space.atom_count();
    let all: Vec<Atom> = space.atoms().collect();
    let whole = space.universe();
    let empty = space.empty();

    let mut rows: Vec<Option<PremiseRef>> = Vec::new();
    let mut sys = LinearSystem::new(universe);
    for (i, l) in branch.iter().enumerate() {
        if l.positive {
            sys.add(coeffs(&all, &l.lhs, &l.rhs), Relation::Ge, BigRational::zero())?;
            rows.push(Some(PremiseRef::Literal(i)));
        }
    }
    for (i, l) in branch.iter().enumerate() {
        if !l.positive {
            sys.add(coeffs(&all, &l.rhs, &l.lhs), Relation::Gt, BigRational::zero())?;
            rows.push(Some(PremiseRef::Totality(i)));
        }
    }
    sys.add(coeffs(&all, &whole, &empty), Relation::Ge, BigRational::one())?;
    rows.push(None);

    let y = match lp::solve(&sys, &opts.solve)? {
        FeasibilityResult::Point(p) => {
            let values = lp::integerize(&p)?.into_iter().map(ExtNat::Fin).collect();
            let annotations = negatives(branch)
                .into_iter()
                .map(|j| Annotation {
                    target: Target::Literal { index: j },
                    measure: 0,
                    role: WitnessRole::Strict,
                    ideal_top: None,
                })
                .chain(std::iter::once(Annotation {
                    target: Target::Admissibility,
                    measure: 0,
                    role: WitnessRole::Strict,
                    ideal_top: None,
                }))
                .collect();
            return finish(
                space,
                branch,
                ModelKind::Finitary,
                vec![Measure::new(values)],
                annotations,
            );
        }
        FeasibilityResult::Infeasible(y) => y,
    };

    let mut mult: Vec<BigUint> = lp::integerize(&y)?;
    let g = mult.iter().fold(BigUint::zero(), |acc, v| acc.gcd(v));
    for m in mult.iter_mut() {
        *m = &*m / &g;
    }
    // atom slacks: minus the combined left-hand coefficients
    let mut slack: Vec<BigInt> = vec![BigInt::zero(); universe];
    for (c, m) in sys.constraints().iter().zip(&mult) {
        let m = BigInt::from(m.clone());
        for (s, coeff) in slack.iter_mut().zip(&c.coeffs) {
            *s -= &m * coeff.to_integer();
        }
    }

    let admissibility = mult.last().cloned().unwrap_or_default();
    let (refutes, e, f, scale, skip) = if !admissibility.is_zero() {
        (Refutes::NonTriviality, whole, empty, admissibility, None)
    } else {
        let (row, j) = rows
            .iter()
            .enumerate()
            .find_map(|(r, p)| match p {
                Some(PremiseRef::Totality(j)) if !mult[r].is_zero() => Some((r, *j)),
                _ => None,
            })
            .ok_or_else(|| Error::Internal("Farkas multipliers use no strict row".into()))?;
        (
            Refutes::Literal { index: j },
            branch[j].rhs.clone(),
            branch[j].lhs.clone(),
            mult[row].clone(),
            Some(row),
        )
    };
    let mut premises: Vec<PremiseUse> = rows
        .iter()
        .zip(&mult)
        .enumerate()
        .filter_map(|(r, (p, m))| match p {
            Some(p) if Some(r) != skip && !m.is_zero() => Some(PremiseUse {
                premise: *p,
                multiplicity: m.clone(),
            }),
            _ => None,
        })
        .collect();
    for (t, s) in slack.iter().enumerate() {
        if let Some(s) = s.to_biguint().filter(|s| !s.is_zero()) {
            premises.push(PremiseUse {
                premise: PremiseRef::Positivity(t),
                multiplicity: s,
            });
        }
    }
    Ok(BranchOutcome::Unsat(vec![CancellationCertificate {
        logic: Logic::Fin,
        branch: 0,
        refutes: Some(refutes),
        e,
        f,
        scale,
        premises,
        coverage: Vec::new(),
    }]))
}

/// Negative-literal refutations and the non-triviality check shared by the
/// multi-measure logics.
fn refutations(closure: &Closure, branch: &[AtomLiteral], space: &AtomSpace, opts: &Options) -> Result<Vec<CancellationCertificate>> {
    let negs = negatives(branch);
    let found = map_ordered(&negs, opts.parallel, |&j| {
        closure.derivable(&branch[j].rhs, &branch[j].lhs).map(|c| {
            c.map(|mut c| {
                c.refutes = Some(Refutes::Literal { index: j });
                c
            })
        })
    });
    let mut certs = Vec::new();
    for c in found {
        certs.extend(c?);
    }
    if let Some(mut c) = closure.derivable(&space.universe(), &space.empty())? {
        c.refutes = Some(Refutes::NonTriviality);
        certs.push(c);
    }
    Ok(certs)
}

fn sat_ded(space: &AtomSpace, branch: &[AtomLiteral], opts: &Options) -> Result<BranchOutcome> {
    let universe = space.atom_count();
    let closure = Closure::new(branch, universe, Logic::Ded, opts.solve);
    let certs = refutations(&closure, branch, space, opts)?;
    if !certs.is_empty() {
        return Ok(BranchOutcome::Unsat(certs));
    }
    let whole = space.universe();
    let mut targets: Vec<(Target, AtomSet, AtomSet)> = negatives(branch)
        .into_iter()
        .map(|j| (Target::Literal { index: j }, branch[j].lhs.clone(), branch[j].rhs.clone()))
        .collect();
    if targets.is_empty() {
        targets.push((Target::Admissibility, space.empty(), whole.clone()));
    }
    let built = map_ordered(&targets, opts.parallel, |(_, lo, hi)| {
        strict_measure(
            universe,
            &whole,
            closure.pairs().iter(),
            lo,
            hi,
            ExtNat::Fin(BigUint::zero()),
            opts,
        )
    });
    let mut measures = Vec::new();
    let mut annotations = Vec::new();
    for ((target, _, _), m) in targets.into_iter().zip(built) {
        let m = m?.ok_or_else(|| Error::Internal("underivable comparison without a witness".into()))?;
        annotations.push(Annotation {
            target,
            measure: measures.len(),
            role: WitnessRole::Strict,
            ideal_top: None,
        });
        measures.push(m);
    }
    finish(space, branch, ModelKind::Finitary, measures, annotations)
}

fn sat_card(space: &AtomSpace, branch: &[AtomLiteral], opts: &Options) -> Result<BranchOutcome> {
    let universe = space.atom_count();
    let closure = Closure::new(branch, universe, Logic::Card, opts.solve);
    let certs = refutations(&closure, branch, space, opts)?;
    if !certs.is_empty() {
        return Ok(BranchOutcome::Unsat(certs));
    }
    let mut targets: Vec<(Target, AtomSet, AtomSet)> = negatives(branch)
        .into_iter()
        .map(|j| (Target::Literal { index: j }, branch[j].lhs.clone(), branch[j].rhs.clone()))
        .collect();
    if targets.is_empty() {
        targets.push((Target::Admissibility, space.empty(), space.universe()));
    }
    // for each target (x, y) a measure with μ(x) < μ(y), built on the ideal
    // of x and infinite outside it
    let built = map_ordered(&targets, opts.parallel, |(target, lo, hi)| -> Result<(Annotation, Measure<BigUint>)> {
        let k = closure.ideal_top(lo);
        let (role, m) = if !hi.is_subset(&k.top) {
            (WitnessRole::Rho, rho(universe, &k.top))
        } else {
            let inside = closure.pairs().iter().filter(|(x, _)| x.is_subset(&k.top));
            let m = strict_measure(universe, &k.top, inside, lo, hi, ExtNat::Inf, opts)?
                .ok_or_else(|| Error::Internal("underivable comparison without a witness".into()))?;
            (WitnessRole::Strict, m)
        };
        Ok((
            Annotation {
                target: *target,
                measure: 0,
                role,
                ideal_top: Some(k.top),
            },
            m,
        ))
    });
    let mut measures = Vec::new();
    let mut annotations = Vec::new();
    for r in built {
        let (mut a, m) = r?;
        a.measure = measures.len();
        annotations.push(a);
        measures.push(m);
    }
    finish(space, branch, ModelKind::Infinitary, measures, annotations)
}
