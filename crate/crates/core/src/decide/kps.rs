//! Single-measure representation of total preorders on a finite algebra,
//! and extension of a partial order to such a preorder.

use std::collections::{HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{cone_member, difference_vector, Atom, AtomSet, AtomVector};
use crate::error::{Error, Result};
use crate::lp::{self, FeasibilityResult, LinearSystem, Relation, SolveOptions};
use crate::semantics::{ExtNat, Measure};

/// Largest domain, in atoms, accepted by [`kps_measure`] and
/// [`extend_to_total_order`].
pub const MAX_ORDER_ATOMS: usize = 6;

/// Every subset of `domain`, ordered by the binary number formed from the
/// domain's atoms (lowest atom least significant).
pub fn subsets(domain: &AtomSet) -> Vec<AtomSet> {
    let atoms: Vec<Atom> = domain.iter().collect();
    let universe = domain.universe_size();
    (0u64..1 << atoms.len())
        .map(|mask| {
            let mut s = AtomSet::empty(universe);
            for (i, &a) in atoms.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.insert(a);
                }
            }
            s
        })
        .collect()
}

fn check_domain(domain: &AtomSet) -> Result<()> {
    if domain.len() > MAX_ORDER_ATOMS {
        return Err(Error::LimitExceeded(format!(
            "orders are limited to {MAX_ORDER_ATOMS} atoms, got {}",
            domain.len()
        )));
    }
    Ok(())
}

/// A measure `μ` with `μ(a) ≥ μ(b)` exactly when `(a, b)` is in `order`,
/// where `order` lists every related pair of subsets of `domain`. Atoms
/// outside the domain get 0.
///
/// The order must be a nontrivial, positive, total and transitive preorder
/// and must admit such a measure; otherwise `ConditionsViolated` names the
/// failing condition or the pairs whose combination cancels.
pub fn kps_measure(
    domain: &AtomSet,
    order: &[(AtomSet, AtomSet)],
    opts: &SolveOptions,
) -> Result<Measure<BigUint>> {
    check_domain(domain)?;
    let elems = subsets(domain);
    let index: HashMap<&AtomSet, usize> = elems.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut ge: HashSet<(usize, usize)> = HashSet::new();
    for (a, b) in order {
        match (index.get(a), index.get(b)) {
            (Some(&i), Some(&j)) => {
                ge.insert((i, j));
            }
            _ => {
                return Err(Error::ConditionsViolated(
                    "pair outside the domain's algebra".into(),
                ))
            }
        }
    }
    let n = elems.len();
    let (empty, full) = (0, n - 1);
    let violated = |msg: String| Err(Error::ConditionsViolated(msg));
    if ge.contains(&(empty, full)) {
        return violated("non-triviality: the domain is ranked below the empty set".into());
    }
    for i in 0..n {
        if !ge.contains(&(i, empty)) {
            return violated(format!("positivity fails for {:?}", elems[i]));
        }
        for j in 0..n {
            if !ge.contains(&(i, j)) && !ge.contains(&(j, i)) {
                return violated(format!("totality fails for {:?} and {:?}", elems[i], elems[j]));
            }
        }
    }
    for &(i, j) in &ge {
        for k in 0..n {
            if ge.contains(&(j, k)) && !ge.contains(&(i, k)) {
                return violated(format!(
                    "transitivity fails for {:?}, {:?}, {:?}",
                    elems[i], elems[j], elems[k]
                ));
            }
        }
    }

    let atoms: Vec<Atom> = domain.iter().collect();
    let row = |a: &AtomSet, b: &AtomSet| -> Vec<BigRational> {
        atoms
            .iter()
            .map(|&t| BigRational::from_integer(BigInt::from(a.contains(t) as i64 - b.contains(t) as i64)))
            .collect()
    };
    let mut sys = LinearSystem::new(atoms.len());
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (fw, bw) = (ge.contains(&(i, j)), ge.contains(&(j, i)));
            let (hi, lo, rel) = match (fw, bw) {
                (true, true) => (i, j, Relation::Eq),
                (true, false) => (i, j, Relation::Gt),
                _ => (j, i, Relation::Gt),
            };
            sys.add(row(&elems[hi], &elems[lo]), rel, BigRational::zero())?;
            pairs.push((hi, lo, rel));
        }
    }
    match lp::solve(&sys, opts)? {
        FeasibilityResult::Point(p) => {
            let ints = lp::integerize(&p)?;
            let mut values = vec![ExtNat::Fin(BigUint::zero()); domain.universe_size()];
            for (a, v) in atoms.iter().zip(ints) {
                values[a.index()] = ExtNat::Fin(v);
            }
            Ok(Measure::new(values))
        }
        FeasibilityResult::Infeasible(y) => {
            let used: Vec<String> = pairs
                .iter()
                .zip(&y)
                .filter(|(_, m)| !m.is_zero())
                .map(|((hi, lo, rel), m)| {
                    let op = if *rel == Relation::Eq { "~" } else { ">" };
                    format!("{m} x ({:?} {op} {:?})", elems[*hi], elems[*lo])
                })
                .collect();
            violated(format!(
                "cancellation fails; these comparisons combine to a balanced contradiction: {}",
                used.join(", ")
            ))
        }
    }
}

struct ConeOrder<'a> {
    domain: &'a AtomSet,
    gens: Vec<AtomVector<BigInt>>,
    opts: &'a SolveOptions,
}

impl ConeOrder<'_> {
    fn derivable(&self, extra: Option<&AtomVector<BigInt>>, c: &AtomSet, d: &AtomSet) -> Result<bool> {
        let mut gens = self.gens.clone();
        gens.extend(extra.cloned());
        let empty = AtomSet::empty(self.domain.universe_size());
        for t in self.domain.iter() {
            gens.push(difference_vector(&AtomSet::singleton(self.domain.universe_size(), t), &empty));
        }
        Ok(cone_member(&difference_vector(c, d), &gens, self.opts)?.is_member())
    }
}

/// Extends the cancellation closure of `premises` (pairs `|x| ≥ |y|` of
/// subsets of `domain`) to a total preorder on the subsets of `domain` that
/// still does not rank `seed.0` at or above `seed.1`.
///
/// Pairs are visited in order; an undecided pair `(c, d)` is oriented
/// `c ≥ d` unless that would derive the seed comparison, in which case it
/// is oriented `d ≥ c`. The result lists every related pair.
pub fn extend_to_total_order(
    domain: &AtomSet,
    premises: &[(AtomSet, AtomSet)],
    seed: (&AtomSet, &AtomSet),
    opts: &SolveOptions,
) -> Result<Vec<(AtomSet, AtomSet)>> {
    check_domain(domain)?;
    let (a, b) = seed;
    if premises
        .iter()
        .chain(std::iter::once(&(a.clone(), b.clone())))
        .any(|(x, y)| !x.is_subset(domain) || !y.is_subset(domain))
    {
        return Err(Error::Invalid("premises and seed must lie in the domain".into()));
    }
    let mut order = ConeOrder {
        domain,
        gens: premises.iter().map(|(x, y)| difference_vector(x, y)).collect(),
        opts,
    };
    if order.derivable(None, a, b)? {
        return Err(Error::SeedDerivable);
    }
    let elems = subsets(domain);
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let (c, d) = (&elems[i], &elems[j]);
            if order.derivable(None, c, d)? || order.derivable(None, d, c)? {
                continue;
            }
            let forward = difference_vector(c, d);
            let chosen = if order.derivable(Some(&forward), a, b)? {
                let backward = difference_vector(d, c);
                if order.derivable(Some(&backward), a, b)? {
                    return Err(Error::Internal(
                        "both orientations derive the seed comparison".into(),
                    ));
                }
                backward
            } else {
                forward
            };
            order.gens.push(chosen);
        }
    }
    let mut out = Vec::new();
    for c in &elems {
        for d in &elems {
            if order.derivable(None, c, d)? {
                out.push((c.clone(), d.clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(u: usize, atoms: &[usize]) -> AtomSet {
        AtomSet::from_indices(u, atoms).unwrap()
    }

    /// The preorder induced on the subsets of `domain` by atom values.
    fn induced(domain: &AtomSet, values: &[u64]) -> Vec<(AtomSet, AtomSet)> {
        let elems = subsets(domain);
        let m = |s: &AtomSet| s.iter().map(|a| values[a.index()]).sum::<u64>();
        let mut out = Vec::new();
        for c in &elems {
            for d in &elems {
                if m(c) >= m(d) {
                    out.push((c.clone(), d.clone()));
                }
            }
        }
        out
    }

    fn values(m: &Measure<BigUint>) -> Vec<u64> {
        m.values()
            .iter()
            .map(|v| v.finite().unwrap().try_into().unwrap())
            .collect()
    }

    #[test]
    fn strict_chain_on_two_atoms() {
        // smallest integer measure with t1 > t2 > 0, by enumeration up to 4
        let mut brute = None;
        'outer: for x in 0..=4u64 {
            for y in 0..=4u64 {
                if x > y && y > 0 {
                    brute = Some(vec![x, y]);
                    break 'outer;
                }
            }
        }
        let domain = AtomSet::full(2);
        let order = induced(&domain, &[2, 1]);
        let m = kps_measure(&domain, &order, &SolveOptions::default()).unwrap();
        assert_eq!(Some(values(&m)), brute);
    }

    #[test]
    fn counting_order() {
        let domain = AtomSet::full(2);
        let m = kps_measure(&domain, &induced(&domain, &[1, 1]), &SolveOptions::default()).unwrap();
        assert_eq!(values(&m), vec![1, 1]);
    }

    #[test]
    fn violations() {
        let domain = AtomSet::full(2);
        let opts = SolveOptions::default();
        let (e, t1, t2, w) = (set(2, &[]), set(2, &[0]), set(2, &[1]), set(2, &[0, 1]));
        // whole ~ t1 > t2 > empty cannot be additive
        let mut order = Vec::new();
        let rank = |s: &AtomSet| -> u8 {
            if *s == e {
                0
            } else if *s == t2 {
                1
            } else {
                2
            }
        };
        for c in [&e, &t1, &t2, &w] {
            for d in [&e, &t1, &t2, &w] {
                if rank(c) >= rank(d) {
                    order.push((c.clone(), d.clone()));
                }
            }
        }
        assert!(matches!(
            kps_measure(&domain, &order, &opts),
            Err(Error::ConditionsViolated(_))
        ));
        // ranking t1 below the empty set breaks positivity
        let mut cyclic = induced(&domain, &[2, 1]);
        cyclic.retain(|(c, d)| !(*c == t1 && *d == e));
        cyclic.push((e.clone(), t1.clone()));
        assert!(matches!(
            kps_measure(&domain, &cyclic, &opts),
            Err(Error::ConditionsViolated(_))
        ));
        let trivial: Vec<_> = subsets(&domain)
            .iter()
            .flat_map(|c| subsets(&domain).into_iter().map(move |d| (c.clone(), d)))
            .collect();
        assert!(matches!(
            kps_measure(&domain, &trivial, &opts),
            Err(Error::ConditionsViolated(_))
        ));
    }

    #[test]
    fn extension_without_premises() {
        let domain = AtomSet::full(2);
        let (a, b) = (set(2, &[0]), set(2, &[1]));
        let opts = SolveOptions::default();
        let total = extend_to_total_order(&domain, &[], (&a, &b), &opts).unwrap();
        assert!(!total.contains(&(a.clone(), b.clone())));
        assert!(total.contains(&(b.clone(), a.clone())));
        kps_measure(&domain, &total, &opts).unwrap();
    }

    #[test]
    fn extension_keeps_premises() {
        let domain = AtomSet::full(3);
        let (c, d) = (set(3, &[0, 1]), set(3, &[2]));
        let (a, b) = (set(3, &[2]), set(3, &[0]));
        let opts = SolveOptions::default();
        let total = extend_to_total_order(&domain, &[(c.clone(), d.clone())], (&a, &b), &opts).unwrap();
        assert!(total.contains(&(c, d)));
        assert!(!total.contains(&(a.clone(), b.clone())));
        kps_measure(&domain, &total, &opts).unwrap();
        assert!(matches!(
            extend_to_total_order(&domain, &[(a.clone(), b.clone())], (&a, &b), &opts),
            Err(Error::SeedDerivable)
        ));
    }
}
