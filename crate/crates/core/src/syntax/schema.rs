//! Generators for instances of the cancellation axiom schemas.
//!
//! Balance of `<s_1..s_k, e x l>` against `<t_1..t_k, f x l>` is expressed
//! inside the language: for every overlap count `j` in `0..=k+l`, the union
//! of regions lying outside exactly `j` of the listed sets must be equal on
//! both sides. Together these equalities say every point is covered equally
//! often on the left and on the right.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ast::{Formula, Labels, SetTerm};
use crate::error::{Error, Result};

/// A finite full binary tree: every node has zero or two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeShape {
    Leaf,
    Node(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    /// Parses `*` for a leaf and `(L R)` for an inner node. A parenthesized
    /// group with a single child is reported as [`Error::MalformedTree`].
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let tree = Self::parse_at(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::MalformedTree(format!("trailing input at {pos}")));
        }
        Ok(tree)
    }

    fn parse_at(chars: &[char], pos: &mut usize) -> Result<Self> {
        match chars.get(*pos) {
            Some('*') => {
                *pos += 1;
                Ok(TreeShape::Leaf)
            }
            Some('(') => {
                *pos += 1;
                let mut children = Vec::new();
                while chars.get(*pos) != Some(&')') {
                    if *pos >= chars.len() {
                        return Err(Error::MalformedTree("unclosed node".into()));
                    }
                    children.push(Self::parse_at(chars, pos)?);
                }
                *pos += 1;
                match <[TreeShape; 2]>::try_from(children) {
                    Ok([l, r]) => Ok(TreeShape::Node(Box::new(l), Box::new(r))),
                    Err(c) => Err(Error::MalformedTree(format!(
                        "node with {} children",
                        c.len()
                    ))),
                }
            }
            other => Err(Error::MalformedTree(format!(
                "unexpected {:?} at {}",
                other, pos
            ))),
        }
    }

    /// Builds a tree from node addresses over `{0,1}` (the root is the empty
    /// string). The address set must be prefix closed and full.
    pub fn from_addresses<S: AsRef<str>>(addresses: &[S]) -> Result<Self> {
        let set: std::collections::BTreeSet<&str> =
            addresses.iter().map(|a| a.as_ref()).collect();
        if !set.contains("") {
            return Err(Error::MalformedTree("missing root".into()));
        }
        for a in &set {
            if !a.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::MalformedTree(format!("bad address `{a}`")));
            }
            if !a.is_empty() && !set.contains(&a[..a.len() - 1]) {
                return Err(Error::MalformedTree(format!("`{a}` has no parent")));
            }
        }
        fn build(addr: String, set: &std::collections::BTreeSet<&str>) -> Result<TreeShape> {
            let l = format!("{addr}0");
            let r = format!("{addr}1");
            match (set.contains(l.as_str()), set.contains(r.as_str())) {
                (false, false) => Ok(TreeShape::Leaf),
                (true, true) => Ok(TreeShape::Node(
                    Box::new(build(l, set)?),
                    Box::new(build(r, set)?),
                )),
                _ => Err(Error::MalformedTree(format!(
                    "node `{addr}` has exactly one child"
                ))),
            }
        }
        build(String::new(), &set)
    }

    pub fn node_count(&self) -> usize {
        match self {
            TreeShape::Leaf => 1,
            TreeShape::Node(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    /// Node addresses in preorder (root, left subtree, right subtree).
    pub fn addresses(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(String::new(), &mut out);
        out
    }

    fn collect(&self, addr: String, out: &mut Vec<String>) {
        out.push(addr.clone());
        if let TreeShape::Node(l, r) = self {
            l.collect(format!("{addr}0"), out);
            r.collect(format!("{addr}1"), out);
        }
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeShape::Leaf => f.write_str("*"),
            TreeShape::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// Regions lying outside exactly `j` of `<distinct..., repeated x copies>`,
/// indexed by `j` in `0..=distinct.len() + copies`.
pub fn overlap_regions(distinct: &[SetTerm], repeated: &SetTerm, copies: usize) -> Vec<SetTerm> {
    let k = distinct.len();
    let mut buckets: Vec<Vec<SetTerm>> = vec![Vec::new(); k + copies + 1];
    for mask in 0u64..(1u64 << k) {
        let literals: Vec<SetTerm> = distinct
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if mask >> i & 1 == 1 {
                    s.clone().complement()
                } else {
                    s.clone()
                }
            })
            .collect();
        let outside = mask.count_ones() as usize;
        if copies == 0 {
            buckets[outside].push(SetTerm::meet_all(literals));
            continue;
        }
        // mixed polarities of the repeated term give an empty region
        for complemented in [false, true] {
            let r = if complemented {
                repeated.clone().complement()
            } else {
                repeated.clone()
            };
            let mut parts = literals.clone();
            parts.push(r);
            let j = outside + if complemented { copies } else { 0 };
            buckets[j].push(SetTerm::meet_all(parts));
        }
    }
    buckets.into_iter().map(SetTerm::union_all).collect()
}

/// The balance conjuncts `S_j = T_j` for all overlap counts.
pub fn balance_conjuncts(
    s: &[SetTerm],
    e: &SetTerm,
    t: &[SetTerm],
    f: &SetTerm,
    copies: usize,
) -> Vec<Formula> {
    overlap_regions(s, e, copies)
        .into_iter()
        .zip(overlap_regions(t, f, copies))
        .map(|(sj, tj)| Formula::set_eq(sj, tj))
        .collect()
}

fn check_sides(s: &[SetTerm], t: &[SetTerm]) -> Result<()> {
    if s.len() != t.len() {
        return Err(Error::DimensionMismatch {
            expected: s.len(),
            got: t.len(),
        });
    }
    if s.len() > 16 {
        return Err(Error::LimitExceeded("schema arity above 16".into()));
    }
    Ok(())
}

fn implication(hypotheses: Vec<Formula>, conclusion: Formula) -> Formula {
    match Formula::conjunction(hypotheses) {
        Some(h) => h.implies(conclusion),
        None => conclusion,
    }
}

/// Finite cancellation: `(balance /\ |s_i| >= |t_i|) -> |e| <= |f|`.
pub fn fc_schema(s: &[SetTerm], e: &SetTerm, t: &[SetTerm], f: &SetTerm) -> Result<Formula> {
    check_sides(s, t)?;
    if s.is_empty() {
        return Err(Error::Invalid("finite cancellation needs n >= 1".into()));
    }
    let mut hyps = balance_conjuncts(s, e, t, f, 1);
    hyps.extend(s.iter().zip(t).map(|(a, b)| Formula::geq(a.clone(), b.clone())));
    Ok(implication(hyps, Formula::leq(e.clone(), f.clone())))
}

/// Generalized finite cancellation with `copies` repetitions of `e` and `f`:
/// `balance -> (/\ |s_i| >= |t_i| -> |e| <= |f|)`.
pub fn gfc_schema(
    copies: usize,
    s: &[SetTerm],
    e: &SetTerm,
    t: &[SetTerm],
    f: &SetTerm,
) -> Result<Formula> {
    check_sides(s, t)?;
    if copies == 0 {
        return Err(Error::Invalid("generalized cancellation needs l >= 1".into()));
    }
    let balance = Formula::conjunction(balance_conjuncts(s, e, t, f, copies))
        .expect("at least two overlap counts");
    let premises: Vec<Formula> = s
        .iter()
        .zip(t)
        .map(|(a, b)| Formula::geq(a.clone(), b.clone()))
        .collect();
    Ok(balance.implies(implication(premises, Formula::leq(e.clone(), f.clone()))))
}

/// Covered generalized finite cancellation. `u` lists one term per tree node
/// in preorder; the root term must dominate every `s_i` and the tree witnesses
/// that the root is covered by finitely many copies of `f`.
pub fn cgfc_schema(
    copies: usize,
    tree: &TreeShape,
    s: &[SetTerm],
    e: &SetTerm,
    t: &[SetTerm],
    f: &SetTerm,
    u: &[SetTerm],
) -> Result<Formula> {
    check_sides(s, t)?;
    if copies == 0 {
        return Err(Error::Invalid("generalized cancellation needs l >= 1".into()));
    }
    if u.len() != tree.node_count() {
        return Err(Error::DimensionMismatch {
            expected: tree.node_count(),
            got: u.len(),
        });
    }
    let mut hyps = balance_conjuncts(s, e, t, f, copies);
    hyps.extend(s.iter().zip(t).map(|(a, b)| Formula::geq(a.clone(), b.clone())));
    hyps.extend(s.iter().map(|a| Formula::leq(a.clone(), u[0].clone())));
    let mut next = 0;
    cover_conjuncts(tree, u, f, &mut next, &mut hyps);
    Ok(implication(hyps, Formula::leq(e.clone(), f.clone())))
}

fn cover_conjuncts(
    tree: &TreeShape,
    u: &[SetTerm],
    f: &SetTerm,
    next: &mut usize,
    out: &mut Vec<Formula>,
) -> usize {
    let me = *next;
    *next += 1;
    match tree {
        TreeShape::Leaf => out.push(Formula::leq(u[me].clone(), f.clone())),
        TreeShape::Node(l, r) => {
            // children are numbered after the parent's conjunct is placed
            let slot = out.len();
            out.push(Formula::leq(u[me].clone(), u[me].clone()));
            let li = cover_conjuncts(l, u, f, next, out);
            let ri = cover_conjuncts(r, u, f, next, out);
            out[slot] = Formula::leq(u[me].clone(), u[li].clone().join(u[ri].clone()));
        }
    }
    me
}

/// The components of a cancellation instance. Balance is not implied by the
/// type; [`random_instance`] produces balanced ones when it can.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaInstance {
    pub s: Vec<SetTerm>,
    pub e: SetTerm,
    pub t: Vec<SetTerm>,
    pub f: SetTerm,
    pub copies: usize,
}

/// A random term over `labels` of at most the given depth.
pub fn random_term<R: Rng>(labels: &Labels, rng: &mut R, depth: u32) -> SetTerm {
    if labels.is_empty() {
        return if rng.gen_bool(0.5) {
            SetTerm::Empty
        } else {
            SetTerm::Full
        };
    }
    let leaf = |rng: &mut R| SetTerm::Label(labels.get(rng.gen_range(0..labels.len())).unwrap().clone());
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..5) {
        0 | 1 => leaf(rng),
        2 => random_term(labels, rng, depth - 1).complement(),
        3 => random_term(labels, rng, depth - 1).meet(random_term(labels, rng, depth - 1)),
        _ => random_term(labels, rng, depth - 1).join(random_term(labels, rng, depth - 1)),
    }
}

/// The union of the minterms (over `labels`) whose index bit is set in
/// `members`.
fn minterm_union(labels: &Labels, members: &[bool]) -> SetTerm {
    let atoms = members.iter().enumerate().filter(|(_, &m)| m).map(|(a, _)| {
        SetTerm::meet_all(labels.iter().enumerate().map(|(i, l)| {
            let lit = SetTerm::Label(l.clone());
            if a >> i & 1 == 1 {
                lit
            } else {
                lit.complement()
            }
        }))
    });
    SetTerm::union_all(atoms)
}

fn minterm_membership(labels: &Labels, term: &SetTerm) -> Vec<bool> {
    fn eval(t: &SetTerm, labels: &Labels, atom: usize) -> bool {
        match t {
            SetTerm::Label(l) => labels.index_of(l.as_str()).is_some_and(|i| atom >> i & 1 == 1),
            SetTerm::Complement(s) => !eval(s, labels, atom),
            SetTerm::Intersection(a, b) => eval(a, labels, atom) && eval(b, labels, atom),
            SetTerm::Union(a, b) => eval(a, labels, atom) || eval(b, labels, atom),
            SetTerm::Empty => false,
            SetTerm::Full => true,
        }
    }
    (0..1usize << labels.len()).map(|a| eval(term, labels, a)).collect()
}

/// A random instance with `k` pairs and `copies` repetitions. The left side
/// is random; the right side is solved for so that the two sides are
/// balanced on the minterms of `labels`. After repeated failures an
/// unconstrained (usually unbalanced) instance is returned.
pub fn random_instance<R: Rng>(labels: &Labels, k: usize, copies: usize, rng: &mut R) -> SchemaInstance {
    let atoms = 1usize << labels.len();
    for _ in 0..64 {
        let s: Vec<SetTerm> = (0..k).map(|_| random_term(labels, rng, 2)).collect();
        let e = random_term(labels, rng, 2);
        let mut need: Vec<usize> = vec![0; atoms];
        for term in &s {
            for (a, m) in minterm_membership(labels, term).into_iter().enumerate() {
                need[a] += m as usize;
            }
        }
        for (a, m) in minterm_membership(labels, &e).into_iter().enumerate() {
            need[a] += copies * m as usize;
        }
        // each atom either lies in f (and needs need - copies t's) or not
        let mut f_members = vec![false; atoms];
        let mut ok = true;
        for a in 0..atoms {
            let can_out = need[a] <= k;
            let can_in = need[a] >= copies && need[a] - copies <= k;
            f_members[a] = match (can_in, can_out) {
                (true, true) => rng.gen_bool(0.5),
                (true, false) => true,
                (false, true) => false,
                (false, false) => {
                    ok = false;
                    break;
                }
            };
        }
        if !ok {
            continue;
        }
        let mut t_members = vec![vec![false; atoms]; k];
        for a in 0..atoms {
            let count = need[a] - if f_members[a] { copies } else { 0 };
            let mut slots: Vec<usize> = (0..k).collect();
            slots.shuffle(rng);
            for &i in &slots[..count] {
                t_members[i][a] = true;
            }
        }
        return SchemaInstance {
            s,
            e,
            t: t_members.iter().map(|m| minterm_union(labels, m)).collect(),
            f: minterm_union(labels, &f_members),
            copies,
        };
    }
    SchemaInstance {
        s: (0..k).map(|_| random_term(labels, rng, 2)).collect(),
        e: random_term(labels, rng, 2),
        t: (0..k).map(|_| random_term(labels, rng, 2)).collect(),
        f: random_term(labels, rng, 2),
        copies,
    }
}

/// A random full binary tree with at most `max_leaves` leaves.
pub fn random_tree<R: Rng>(rng: &mut R, max_leaves: usize) -> TreeShape {
    if max_leaves <= 1 || rng.gen_bool(0.5) {
        return TreeShape::Leaf;
    }
    let left = rng.gen_range(1..max_leaves);
    TreeShape::Node(
        Box::new(random_tree(rng, left)),
        Box::new(random_tree(rng, max_leaves - left)),
    )
}

/// Node terms in preorder for a covering tree: leaves are random terms,
/// often restricted to `f`; inner nodes are the union of their children.
pub fn random_cover<R: Rng>(tree: &TreeShape, f: &SetTerm, labels: &Labels, rng: &mut R) -> Vec<SetTerm> {
    fn fill<R: Rng>(tree: &TreeShape, f: &SetTerm, labels: &Labels, rng: &mut R, out: &mut Vec<SetTerm>) -> SetTerm {
        let slot = out.len();
        out.push(SetTerm::Empty);
        let term = match tree {
            TreeShape::Leaf => match rng.gen_range(0..3) {
                0 => f.clone(),
                1 => f.clone().meet(random_term(labels, rng, 1)),
                _ => random_term(labels, rng, 2),
            },
            TreeShape::Node(l, r) => {
                let a = fill(l, f, labels, rng, out);
                let b = fill(r, f, labels, rng, out);
                a.join(b)
            }
        };
        out[slot] = term.clone();
        term
    }
    let mut out = Vec::new();
    fill(tree, f, labels, rng, &mut out);
    out
}

pub fn random_fc_instance(labels: &Labels, n: usize, seed: u64) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = random_instance(labels, n.max(1), 1, &mut rng);
    fc_schema(&i.s, &i.e, &i.t, &i.f).expect("well-formed instance")
}

pub fn random_gfc_instance(labels: &Labels, k: usize, copies: usize, seed: u64) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = random_instance(labels, k, copies.max(1), &mut rng);
    gfc_schema(i.copies, &i.s, &i.e, &i.t, &i.f).expect("well-formed instance")
}

pub fn random_cgfc_instance(labels: &Labels, k: usize, copies: usize, seed: u64) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = random_instance(labels, k, copies.max(1), &mut rng);
    let tree = random_tree(&mut rng, 3);
    let u = random_cover(&tree, &i.f, labels, &mut rng);
    cgfc_schema(i.copies, &tree, &i.s, &i.e, &i.t, &i.f, &u).expect("well-formed instance")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lbl(s: &str) -> SetTerm {
        SetTerm::label(s)
    }

    #[test]
    fn tree_parsing() {
        assert_eq!(TreeShape::parse("*").unwrap(), TreeShape::Leaf);
        let t = TreeShape::parse("(* (* *))").unwrap();
        assert_eq!(t.node_count(), 5);
        assert_eq!(t.addresses(), vec!["", "0", "1", "10", "11"]);
        assert_eq!(t.to_string(), "(* (* *))");
        assert!(matches!(
            TreeShape::parse("(*)"),
            Err(Error::MalformedTree(_))
        ));
        assert!(matches!(
            TreeShape::parse("(* * *)"),
            Err(Error::MalformedTree(_))
        ));
    }

    #[test]
    fn tree_from_addresses() {
        let t = TreeShape::from_addresses(&["", "0", "1"]).unwrap();
        assert_eq!(t, TreeShape::parse("(* *)").unwrap());
        assert!(matches!(
            TreeShape::from_addresses(&["", "0"]),
            Err(Error::MalformedTree(_))
        ));
        assert!(matches!(
            TreeShape::from_addresses(&["", "00"]),
            Err(Error::MalformedTree(_))
        ));
    }

    #[test]
    fn trivial_gfc_instance() {
        let g = gfc_schema(1, &[], &lbl("e"), &[], &lbl("f")).unwrap();
        // e and f must occupy the same regions; no comparison premises
        match g {
            Formula::Implies(_, concl) => {
                assert_eq!(*concl, Formula::leq(lbl("e"), lbl("f")))
            }
            other => panic!("unexpected shape {other}"),
        }
    }

    #[test]
    fn single_node_cgfc_has_leaf_bound() {
        let tree = TreeShape::Leaf;
        let c = cgfc_schema(1, &tree, &[lbl("s")], &lbl("e"), &[lbl("t")], &lbl("f"), &[lbl("f")])
            .unwrap();
        let text = c.to_string();
        assert!(text.contains("|f| >= |s|"));
        assert!(text.contains("|f| >= |f|"));
    }

    #[test]
    fn depth_one_tree_cover() {
        let tree = TreeShape::parse("(* *)").unwrap();
        let u = [lbl("u"), lbl("u0"), lbl("u1")];
        let c = cgfc_schema(1, &tree, &[lbl("s")], &lbl("e"), &[lbl("t")], &lbl("f"), &u).unwrap();
        let text = c.to_string();
        assert!(text.contains("|u0 + u1| >= |u|"));
        assert!(text.contains("|f| >= |u0|"));
        assert!(text.contains("|f| >= |u1|"));
        assert!(matches!(
            cgfc_schema(1, &tree, &[], &lbl("e"), &[], &lbl("f"), &u[..2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn fc_requires_a_premise() {
        assert!(fc_schema(&[], &lbl("e"), &[], &lbl("f")).is_err());
        assert!(fc_schema(&[lbl("a")], &lbl("e"), &[], &lbl("f")).is_err());
    }
}
