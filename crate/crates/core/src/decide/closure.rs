use num_bigint::BigInt;
use num_traits::Zero;

use super::certificate::{CancellationCertificate, PremiseRef, PremiseUse};
use super::Logic;
use crate::algebra::{cone_member, difference_vector, ideal_top, Atom, AtomSet, AtomVector, ConeResult, IdealTop};
use crate::error::Result;
use crate::lp::SolveOptions;
use crate::semantics::AtomLiteral;

/// Derivability from the positive literals of one branch.
///
/// Under [`Logic::Ded`] and [`Logic::Fin`], `e ≼ f` is derivable when
/// `χ_f - χ_e` is a nonnegative combination of the premise differences
/// `χ_x - χ_y` and the atom indicators. Under [`Logic::Card`] only premises
/// whose left side lies in the ideal of `f`, and only atoms of that ideal,
/// take part.
pub struct Closure<'a> {
    logic: Logic,
    branch: &'a [AtomLiteral],
    universe: usize,
    positives: Vec<usize>,
    pairs: Vec<(AtomSet, AtomSet)>,
    opts: SolveOptions,
}

impl<'a> Closure<'a> {
    pub fn new(branch: &'a [AtomLiteral], universe: usize, logic: Logic, opts: SolveOptions) -> Self {
        let positives: Vec<usize> = (0..branch.len()).filter(|&i| branch[i].positive).collect();
        let pairs = positives
            .iter()
            .map(|&i| (branch[i].lhs.clone(), branch[i].rhs.clone()))
            .collect();
        Closure {
            logic,
            branch,
            universe,
            positives,
            pairs,
            opts,
        }
    }

    pub fn logic(&self) -> Logic {
        self.logic
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Branch indices of the positive literals.
    pub fn positives(&self) -> &[usize] {
        &self.positives
    }

    /// The positive literals as `(lhs, rhs)` pairs, in branch order.
    pub fn pairs(&self) -> &[(AtomSet, AtomSet)] {
        &self.pairs
    }

    /// The top of the ideal generated by `x`. Its `steps` index
    /// [`Closure::pairs`].
    pub fn ideal_top(&self, x: &AtomSet) -> IdealTop {
        ideal_top(x, &self.pairs)
    }

    /// A certificate for `e ≼ f`, or `None` when it is not derivable. The
    /// certificate has branch 0 and no refutation target.
    pub fn derivable(&self, e: &AtomSet, f: &AtomSet) -> Result<Option<CancellationCertificate>> {
        let ideal = match self.logic {
            Logic::Card => {
                let k = self.ideal_top(f);
                if !e.is_subset(&k.top) {
                    return Ok(None);
                }
                Some(k)
            }
            Logic::Ded | Logic::Fin => None,
        };
        let in_scope = |s: &AtomSet| ideal.as_ref().is_none_or(|k| k.contains(s));

        let mut refs = Vec::new();
        let mut gens: Vec<AtomVector<BigInt>> = Vec::new();
        for (p, (x, y)) in self.pairs.iter().enumerate() {
            if in_scope(x) {
                refs.push(PremiseRef::Literal(self.positives[p]));
                gens.push(difference_vector(x, y));
            }
        }
        for t in 0..self.universe {
            let atom = AtomSet::singleton(self.universe, Atom(t));
            if in_scope(&atom) {
                refs.push(PremiseRef::Positivity(t));
                gens.push(difference_vector(&atom, &AtomSet::empty(self.universe)));
            }
        }

        let (multipliers, scale) = match cone_member(&difference_vector(f, e), &gens, &self.opts)? {
            ConeResult::NotMember => return Ok(None),
            ConeResult::Member { multipliers, scale } => (multipliers, scale),
        };
        let premises: Vec<PremiseUse> = refs
            .into_iter()
            .zip(multipliers)
            .filter(|(_, m)| !m.is_zero())
            .map(|(premise, multiplicity)| PremiseUse {
                premise,
                multiplicity,
            })
            .collect();
        let coverage = match &ideal {
            Some(k) => premises
                .iter()
                .map(|u| self.coverage_chain(k, f, u.premise))
                .collect(),
            None => Vec::new(),
        };
        Ok(Some(CancellationCertificate {
            logic: self.logic,
            branch: 0,
            refutes: None,
            e: e.clone(),
            f: f.clone(),
            scale,
            premises,
            coverage,
        }))
    }

    fn coverage_chain(&self, k: &IdealTop, f: &AtomSet, premise: PremiseRef) -> Vec<usize> {
        let lhs = match premise {
            PremiseRef::Literal(i) => self.branch[i].lhs.clone(),
            PremiseRef::Positivity(t) => AtomSet::singleton(self.universe, Atom(t)),
            PremiseRef::Totality(_) => unreachable!("closure never uses totality"),
        };
        k.covering_prefix(f, &self.pairs, &lhs)
            .expect("premise chosen inside the ideal")
            .into_iter()
            .map(|p| self.positives[p])
            .collect()
    }
}
