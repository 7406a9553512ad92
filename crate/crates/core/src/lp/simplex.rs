//! Dense phase-one simplex with Bland's rule.

use super::ExactField;
use crate::error::{Error, Result};

pub(super) struct Row<T> {
    pub coeffs: Vec<T>,
    pub equality: bool,
    pub rhs: T,
}

/// Finds `x >= 0` with every row `coeffs.x >= rhs` (or `= rhs`), or returns
/// `None` when no such point exists.
pub(super) fn phase_one<T: ExactField>(
    rows: &[Row<T>],
    n: usize,
    budget: u64,
) -> Result<Option<Vec<T>>> {
    let m = rows.len();
    let slacks: Vec<Option<usize>> = {
        let mut next = n;
        rows.iter()
            .map(|r| {
                if r.equality {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    };
    let num_slack = slacks.iter().flatten().count();
    let art0 = n + num_slack;
    let cols = art0 + m;
    let rhs_col = cols;

    let mut tab: Vec<Vec<T>> = Vec::with_capacity(m);
    for (i, r) in rows.iter().enumerate() {
        let mut line = vec![T::zero(); cols + 1];
        line[..n].clone_from_slice(&r.coeffs);
        if let Some(s) = slacks[i] {
            line[s] = -T::one();
        }
        line[rhs_col] = r.rhs.clone();
        if r.rhs.is_negative() {
            for v in line.iter_mut() {
                *v = -v.clone();
            }
        }
        line[art0 + i] = T::one();
        tab.push(line);
    }
    let mut basis: Vec<usize> = (art0..art0 + m).collect();

    // reduced costs of the auxiliary objective (sum of artificials)
    let mut obj = vec![T::zero(); cols + 1];
    for line in &tab {
        for j in 0..art0 {
            obj[j] = obj[j].clone() - line[j].clone();
        }
        obj[rhs_col] = obj[rhs_col].clone() - line[rhs_col].clone();
    }

    let mut pivots = 0u64;
    while let Some(enter) = (0..art0).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<T> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = tab[i][rhs_col].clone() / tab[i][enter].clone();
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        // the auxiliary objective is bounded below by zero
        let r = leave.ok_or_else(|| Error::Internal("unbounded phase-one objective".into()))?;
        pivots += 1;
        if pivots > budget {
            return Err(Error::LimitExceeded(format!(
                "simplex exceeded {budget} pivots"
            )));
        }
        pivot(&mut tab, &mut obj, r, enter);
        basis[r] = enter;
    }

    if !obj[rhs_col].is_zero() {
        return Ok(None);
    }
    let mut x = vec![T::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = tab[i][rhs_col].clone();
        }
    }
    Ok(Some(x))
}

fn pivot<T: ExactField>(tab: &mut [Vec<T>], obj: &mut [T], r: usize, c: usize) {
    let p = tab[r][c].clone();
    for v in tab[r].iter_mut() {
        if !v.is_zero() {
            *v = v.clone() / p.clone();
        }
    }
    let pivot_row = tab[r].clone();
    let eliminate = |line: &mut [T]| {
        let factor = line[c].clone();
        if factor.is_zero() {
            return;
        }
        for (v, pr) in line.iter_mut().zip(&pivot_row) {
            if !pr.is_zero() {
                *v = v.clone() - factor.clone() * pr.clone();
            }
        }
    };
    for (i, line) in tab.iter_mut().enumerate() {
        if i != r {
            eliminate(line);
        }
    }
    eliminate(obj);
}
