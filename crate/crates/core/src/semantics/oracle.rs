//! Exhaustive search for small measures models, independent of the LP
//! machinery.

use std::collections::HashMap;

use super::{AtomLiteral, ExtNat, Measure, MeasuresModel, ModelKind};
use crate::algebra::{AtomSet, AtomSpace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub max_measures: usize,
    pub max_value: u64,
    /// Largest number of single measures the search may enumerate.
    pub step_budget: u128,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_measures: 2,
            max_value: 2,
            step_budget: 1 << 20,
        }
    }
}

/// Searches for a model of the literal conjunction whose measures take
/// values in `0..=max_value` (plus infinity for infinitary models).
///
/// Single measures are enumerated in lexicographic order of their atom
/// values (atom 0 most significant, infinity last). Every measure that keeps
/// all positive literals is classified by the negative literals it refutes
/// and whether it is nonzero on the carrier; the answer is the first
/// combination, by size and then lexicographically over first
/// representatives, that covers every negative literal and admissibility.
///
/// `Ok(None)` only means nothing was found within the bounds.
pub fn brute_force_sat(
    space: &AtomSpace,
    literals: &[AtomLiteral],
    kind: ModelKind,
    bounds: &OracleBounds,
) -> Result<Option<MeasuresModel<u64>>> {
    let mut values: Vec<ExtNat<u64>> = (0..=bounds.max_value).map(ExtNat::Fin).collect();
    if kind == ModelKind::Infinitary {
        values.push(ExtNat::Inf);
    }
    let atoms = space.atom_count();
    let required = (values.len() as u128)
        .checked_pow(atoms as u32)
        .unwrap_or(u128::MAX);
    if required > bounds.step_budget {
        return Err(Error::BoundsTooLarge {
            required,
            budget: bounds.step_budget,
        });
    }
    let negatives: Vec<&AtomLiteral> = literals.iter().filter(|l| !l.positive).collect();
    if negatives.len() >= 64 {
        return Err(Error::LimitExceeded(
            "oracle supports at most 63 negative literals".into(),
        ));
    }
    let positives: Vec<&AtomLiteral> = literals.iter().filter(|l| l.positive).collect();
    let universe = AtomSet::full(atoms);
    let goal: u64 = (1u64 << (negatives.len() + 1)) - 1;
    let admissible_bit = 1u64 << negatives.len();

    let mut reps: Vec<(u64, Measure<u64>)> = Vec::new();
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut digits = vec![0usize; atoms];
    loop {
        let mu = Measure::new(digits.iter().map(|&d| values[d].clone()).collect());
        if positives.iter().all(|l| mu.of(&l.lhs) >= mu.of(&l.rhs)) {
            let mut mask = 0u64;
            for (j, l) in negatives.iter().enumerate() {
                if mu.of(&l.lhs) < mu.of(&l.rhs) {
                    mask |= 1 << j;
                }
            }
            if !mu.of(&universe).is_zero() {
                mask |= admissible_bit;
            }
            if mask != 0 && !seen.contains_key(&mask) {
                seen.insert(mask, reps.len());
                reps.push((mask, mu));
            }
        }
        // advance the odometer, last atom fastest
        let mut i = atoms;
        loop {
            if i == 0 {
                return pick(&reps, goal, bounds.max_measures)
                    .map(|ms| MeasuresModel::canonical(kind, space, ms))
                    .transpose();
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < values.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn pick(reps: &[(u64, Measure<u64>)], goal: u64, max_measures: usize) -> Option<Vec<Measure<u64>>> {
    for size in 1..=max_measures.min(reps.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mask = idx.iter().fold(0u64, |m, &i| m | reps[i].0);
            if mask == goal {
                return Some(idx.iter().map(|&i| reps[i].1.clone()).collect());
            }
            if !next_combination(&mut idx, reps.len()) {
                break;
            }
        }
    }
    None
}

/// Advances `idx` to the next `idx.len()`-subset of `0..n` in lexicographic
/// order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, to_dnf, Labels};

    fn branch(space: &AtomSpace, src: &str) -> Vec<AtomLiteral> {
        let f = parse_formula(src).unwrap();
        let dnf = to_dnf(&f);
        assert_eq!(dnf.len(), 1);
        dnf[0]
            .iter()
            .map(|l| AtomLiteral::from_literal(space, l).unwrap())
            .collect()
    }

    fn bounds(max_measures: usize, max_value: u64) -> OracleBounds {
        OracleBounds {
            max_measures,
            max_value,
            ..Default::default()
        }
    }

    #[test]
    fn incomparability_needs_two_measures() {
        let sp = AtomSpace::new(Labels::new(["a", "b"]).unwrap()).unwrap();
        let lits = branch(&sp, "!(|a| >= |b|) /\\ !(|b| >= |a|)");
        let one = brute_force_sat(&sp, &lits, ModelKind::Finitary, &bounds(1, 3)).unwrap();
        assert!(one.is_none());
        let m = brute_force_sat(&sp, &lits, ModelKind::Finitary, &bounds(2, 1))
            .unwrap()
            .expect("two measures suffice");
        assert_eq!(m.measures().len(), 2);
        assert!(lits.iter().all(|l| m.holds_atom_literal(l)));
    }

    #[test]
    fn non_triviality_blocks_everything() {
        let sp = AtomSpace::new(Labels::new(["a"]).unwrap()).unwrap();
        let lits = branch(&sp, "|0'| <= |0|");
        for kind in [ModelKind::Finitary, ModelKind::Infinitary] {
            assert!(brute_force_sat(&sp, &lits, kind, &bounds(3, 3)).unwrap().is_none());
        }
    }

    #[test]
    fn infinite_counterexample() {
        let sp = AtomSpace::new(Labels::new(["e", "f"]).unwrap()).unwrap();
        let lits = branch(&sp, "|e & f| = |0| /\\ |e + f| <= |e| /\\ !(|f| <= |0|)");
        assert!(brute_force_sat(&sp, &lits, ModelKind::Finitary, &bounds(2, 2))
            .unwrap()
            .is_none());
        let m = brute_force_sat(&sp, &lits, ModelKind::Infinitary, &bounds(1, 1))
            .unwrap()
            .expect("found");
        let mu = &m.measures()[0];
        // atom 1 is e only, atom 2 is f only
        assert_eq!(mu.values()[1], ExtNat::Inf);
        assert_eq!(mu.values()[2], ExtNat::Fin(1));
    }

    #[test]
    fn budget_is_enforced() {
        let sp = AtomSpace::new(Labels::new(["a", "b", "c"]).unwrap()).unwrap();
        let r = brute_force_sat(
            &sp,
            &[],
            ModelKind::Finitary,
            &OracleBounds {
                max_measures: 1,
                max_value: 9,
                step_budget: 1000,
            },
        );
        assert!(matches!(r, Err(Error::BoundsTooLarge { .. })));
    }
}
