use super::{Atom, AtomSet};

/// The top element of a principal ideal: `b` is in the ideal iff
/// `b ⊆ top`. `steps` lists the premises, by index, in the order they
/// extended the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealTop {
    pub top: AtomSet,
    pub steps: Vec<usize>,
}

impl IdealTop {
    pub fn contains(&self, b: &AtomSet) -> bool {
        b.is_subset(&self.top)
    }

    /// The shortest prefix of `steps` after which `b` lies below the grown
    /// top, starting from `start`. `None` if `b` is not in the ideal.
    pub fn covering_prefix(
        &self,
        start: &AtomSet,
        premises: &[(AtomSet, AtomSet)],
        b: &AtomSet,
    ) -> Option<Vec<usize>> {
        let mut top = start.clone();
        let mut used = Vec::new();
        if b.is_subset(&top) {
            return Some(used);
        }
        for &s in &self.steps {
            top.union_with(&premises[s].1);
            used.push(s);
            if b.is_subset(&top) {
                return Some(used);
            }
        }
        None
    }
}

/// Least set containing `f` and closed under the premises `|x| ≥ |y|`:
/// whenever `x` lies below the current top, so does `y`.
pub fn ideal_top(f: &AtomSet, premises: &[(AtomSet, AtomSet)]) -> IdealTop {
    let mut top = f.clone();
    let mut steps = Vec::new();
    loop {
        let mut grew = false;
        for (i, (x, y)) in premises.iter().enumerate() {
            if x.is_subset(&top) && !y.is_subset(&top) {
                top.union_with(y);
                steps.push(i);
                grew = true;
            }
        }
        if !grew {
            return IdealTop { top, steps };
        }
    }
}

/// Fixpoint driven by an arbitrary order test: `below(b, c)` answers whether
/// `b ≼ c`. Atoms are added one at a time while some atom outside the top is
/// below it. `steps` is left empty.
pub fn ideal_top_by_oracle(
    f: &AtomSet,
    mut below: impl FnMut(&AtomSet, &AtomSet) -> bool,
) -> IdealTop {
    let universe = f.universe_size();
    let mut top = f.clone();
    loop {
        let next = (0..universe).map(Atom).find(|&a| {
            !top.contains(a) && below(&AtomSet::singleton(universe, a), &top)
        });
        match next {
            Some(a) => top.insert(a),
            None => {
                return IdealTop {
                    top,
                    steps: Vec::new(),
                }
            }
        }
    }
}
