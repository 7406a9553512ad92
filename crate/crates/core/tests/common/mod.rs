#![allow(dead_code)]

use cardcomp::syntax::schema::random_term;
use cardcomp::{AtomSpace, Formula, Labels, Literal, SetTerm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random literal conjunction over one or two labels with one to five
/// literals, with its atom space.
pub struct Instance {
    pub seed: u64,
    pub space: AtomSpace,
    pub literals: Vec<Literal>,
    pub formula: Formula,
}

fn term(labels: &Labels, rng: &mut ChaCha8Rng) -> SetTerm {
    match rng.gen_range(0..10) {
        0 => SetTerm::Empty,
        1 => SetTerm::Full,
        _ => random_term(labels, rng, 2),
    }
}

pub fn instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: &[&str] = if rng.gen_bool(0.3) { &["a"] } else { &["a", "b"] };
    let labels = Labels::new(names.iter().copied()).unwrap();
    let n = rng.gen_range(1..=5);
    let literals: Vec<Literal> = (0..n)
        .map(|_| {
            let lhs = term(&labels, &mut rng);
            let rhs = term(&labels, &mut rng);
            if rng.gen_bool(0.55) {
                Literal::pos(lhs, rhs)
            } else {
                Literal::neg(lhs, rhs)
            }
        })
        .collect();
    let formula = Formula::conjunction(literals.iter().map(Literal::to_formula)).unwrap();
    Instance {
        seed,
        space: AtomSpace::new(labels).unwrap(),
        literals,
        formula,
    }
}

pub fn corpus(size: usize, base: u64) -> Vec<Instance> {
    (0..size as u64).map(|i| instance(base + i)).collect()
}

pub fn parse(text: &str) -> Formula {
    cardcomp::syntax::parse_formula(text).unwrap()
}

/// Pairwise disjoint `a1..am` of equal size, likewise `b1..bm`, with the
/// union of the a's at most the union of the b's.
pub fn division_premises(m: usize) -> Vec<Formula> {
    let mut out = Vec::new();
    for side in ["a", "b"] {
        for i in 1..=m {
            for j in i + 1..=m {
                out.push(parse(&format!("{side}{i} & {side}{j} = 0")));
            }
            if i > 1 {
                out.push(parse(&format!("|{side}1| = |{side}{i}|")));
            }
        }
    }
    let union = |side: &str| {
        (1..=m)
            .map(|i| format!("{side}{i}"))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    out.push(parse(&format!("|{}| <= |{}|", union("a"), union("b"))));
    out
}

pub fn subtraction_premises(bounded: bool) -> Vec<Formula> {
    let mut out: Vec<Formula> = ["x & z = 0", "y & z = 0", "|y + z| >= |x + z|"]
        .iter()
        .map(|t| parse(t))
        .collect();
    if bounded {
        out.push(parse("|z| <= |y|"));
    }
    out
}
