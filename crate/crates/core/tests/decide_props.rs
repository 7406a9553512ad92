mod common;

use cardcomp::decide::{
    atomize_branches, derivable, verify_certificate, CancellationCertificate, Decider, Logic, Options,
    PremiseRef, SatOutcome,
};
use cardcomp::lp::SolveOptions;
use cardcomp::semantics::{brute_force_sat, random_model, AtomLiteral, MeasuresModel, OracleBounds, RandomBounds};
use cardcomp::{Atom, AtomSet, AtomSpace};
use proptest::prelude::*;

fn branch_of(inst: &common::Instance) -> Vec<AtomLiteral> {
    let branches = cardcomp::syntax::to_dnf(&inst.formula);
    atomize_branches(&inst.space, &branches).unwrap().remove(0)
}

/// The cancellation instance behind a certificate holds in `m`: if every
/// premise (and, for card, every coverage step) holds, so does `e ≼ f`.
fn instance_holds(m: &MeasuresModel<u64>, c: &CancellationCertificate, branch: &[AtomLiteral]) -> bool {
    let universe = c.e.universe_size();
    let mut hyps: Vec<(AtomSet, AtomSet)> = c
        .premises
        .iter()
        .map(|p| match p.premise {
            PremiseRef::Literal(i) => (branch[i].lhs.clone(), branch[i].rhs.clone()),
            PremiseRef::Totality(i) => (branch[i].rhs.clone(), branch[i].lhs.clone()),
            PremiseRef::Positivity(t) => (AtomSet::singleton(universe, Atom(t)), AtomSet::empty(universe)),
        })
        .collect();
    for chain in &c.coverage {
        hyps.extend(chain.iter().map(|&i| (branch[i].lhs.clone(), branch[i].rhs.clone())));
    }
    !hyps.iter().all(|(x, y)| m.geq_sets(x, y)) || m.geq_sets(&c.f, &c.e)
}

fn decider(parallel: bool) -> Decider {
    Decider::new(Options {
        parallel,
        ..Options::default()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_are_sound_in_their_model_class(seed in 0u64..1_000_000) {
        let inst = common::instance(seed);
        let branch = branch_of(&inst);
        for logic in Logic::ALL {
            let r = decider(true).sat_in(&inst.space, &inst.formula, logic).unwrap();
            if let SatOutcome::Unsat(certs) = &r.outcome {
                let bounds = RandomBounds { max_measures: if logic == Logic::Fin { 1 } else { 3 }, ..RandomBounds::default() };
                for c in certs {
                    prop_assert!(verify_certificate(c, &branch));
                    for j in 0..20 {
                        let m = random_model::<u64>(&inst.space, logic.model_kind(), seed ^ (j << 32), &bounds);
                        prop_assert!(instance_holds(&m, c, &branch), "{logic} seed {seed} model {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_satisfy_and_have_the_right_kind(seed in 0u64..1_000_000) {
        let inst = common::instance(seed);
        for logic in Logic::ALL {
            let r = decider(true).sat_in(&inst.space, &inst.formula, logic).unwrap();
            if let SatOutcome::Sat { witness, .. } = &r.outcome {
                prop_assert_eq!(witness.model.kind(), logic.model_kind());
                prop_assert_eq!(witness.model.eval(&inst.formula), Ok(true));
                if logic == Logic::Fin {
                    prop_assert_eq!(witness.model.measures().len(), 1);
                }
            }
        }
    }

    #[test]
    fn logics_are_nested(seed in 0u64..1_000_000) {
        let inst = common::instance(seed);
        let sat: Vec<bool> = Logic::ALL
            .iter()
            .map(|&l| decider(false).sat_in(&inst.space, &inst.formula, l).unwrap().outcome.is_sat())
            .collect();
        prop_assert!(!sat[0] || sat[1]);
        prop_assert!(!sat[1] || sat[2]);
    }

    #[test]
    fn oracle_models_imply_sat(seed in 0u64..1_000_000) {
        let inst = common::instance(seed);
        let branch = branch_of(&inst);
        for logic in Logic::ALL {
            let bounds = OracleBounds {
                max_measures: if logic == Logic::Fin { 1 } else { 2 },
                max_value: 2,
                step_budget: 1 << 16,
            };
            let found = brute_force_sat(&inst.space, &branch, logic.model_kind(), &bounds).unwrap();
            if let Some(m) = found {
                prop_assert!(branch.iter().all(|l| m.holds_atom_literal(l)));
                let r = decider(true).sat_in(&inst.space, &inst.formula, logic).unwrap();
                prop_assert!(r.outcome.is_sat(), "{logic} seed {seed}");
            }
        }
    }

    #[test]
    fn schedule_does_not_change_results(seed in 0u64..1_000_000) {
        let inst = common::instance(seed);
        for logic in Logic::ALL {
            let a = decider(true).sat_in(&inst.space, &inst.formula, logic).unwrap();
            let b = decider(false).sat_in(&inst.space, &inst.formula, logic).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn derivability_is_a_positive_preorder(seed in 0u64..1_000_000, x in 0u32..16, y in 0u32..16, z in 0u32..16) {
        let inst = common::instance(seed);
        let branch: Vec<AtomLiteral> = branch_of(&inst).into_iter().filter(|l| l.positive).collect();
        let n = inst.space.atom_count();
        let set = |bits: u32| AtomSet::from_fn(n, |i| bits >> i & 1 == 1);
        let (x, y, z) = (set(x), set(y), set(z));
        let opts = SolveOptions::default();
        let d = |a: &AtomSet, b: &AtomSet, logic| derivable(&branch, a, b, logic, &opts).unwrap();
        for logic in [Logic::Ded, Logic::Card] {
            prop_assert!(d(&x, &x, logic).is_some());
            prop_assert!(d(&AtomSet::empty(n), &x, logic).is_some());
            if x.is_subset(&y) {
                prop_assert!(d(&x, &y, logic).is_some());
            }
            if d(&x, &y, logic).is_some() && d(&y, &z, logic).is_some() {
                prop_assert!(d(&x, &z, logic).is_some(), "{logic}");
            }
        }
        if let Some(c) = d(&x, &y, Logic::Card) {
            prop_assert!(verify_certificate(&c, &branch));
            prop_assert!(d(&x, &y, Logic::Ded).is_some());
        }
    }
}

#[test]
fn card_ideal_of_empty_excludes_carrier_when_satisfiable() {
    // the admissibility witness relies on the carrier lying outside the
    // ideal of the empty set
    for seed in 0..300 {
        let inst = common::instance(seed);
        let branch = branch_of(&inst);
        let r = decider(false).sat_in(&inst.space, &inst.formula, Logic::Card).unwrap();
        if r.outcome.is_sat() {
            let closure = cardcomp::decide::Closure::new(&branch, inst.space.atom_count(), Logic::Card, SolveOptions::default());
            assert!(!closure.ideal_top(&inst.space.empty()).top.is_full(), "seed {seed}");
        }
    }
}

#[test]
fn space_with_unused_label_still_decides() {
    let space = AtomSpace::new(cardcomp::Labels::new(["a", "b", "c"]).unwrap()).unwrap();
    let f = common::parse("!(|a| >= |b|) /\\ !(|b| >= |a|)");
    let r = decider(true).sat_in(&space, &f, Logic::Ded).unwrap();
    assert!(r.outcome.is_sat());
    assert!(r.check().unwrap());
}
