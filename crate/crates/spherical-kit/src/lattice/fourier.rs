//! Exact feasibility by Fourier-Motzkin elimination. Independent of the
//! simplex route on purpose: the two are tested against each other.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use super::{FeasibilityProblem, Rat, Rel};

/// Row in `≤` form: `coeffs · x ≤ bound`.
type LeRow = (Vec<Rat>, Rat);

/// A rational point satisfying every row, or `None`. Variables are
/// eliminated one by one; a witness is rebuilt by back-substitution through
/// the saved elimination stages, taking the midpoint of each variable's
/// remaining interval.
pub fn feasible_oracle(problem: &FeasibilityProblem) -> Option<Vec<Rat>> {
    let n = problem.n_vars;
    let mut rows: Vec<LeRow> = Vec::new();
    for (coeffs, rel, rhs) in &problem.rows {
        let neg: Vec<Rat> = coeffs.iter().map(|c| -c.clone()).collect();
        // a·x ≥ b  <=>  -a·x ≤ -b; equalities contribute both directions.
        rows.push((neg, -rhs.clone()));
        if *rel == Rel::Eq {
            rows.push((coeffs.clone(), rhs.clone()));
        }
    }

    let mut stages: Vec<Vec<LeRow>> = Vec::with_capacity(n);
    for var in 0..n {
        rows = normalize(rows)?;
        stages.push(rows.clone());
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut rest = Vec::new();
        for row in rows {
            if row.0[var].is_positive() {
                upper.push(row);
            } else if row.0[var].is_negative() {
                lower.push(row);
            } else {
                rest.push(row);
            }
        }
        for up in &upper {
            for lo in &lower {
                // Scale so the eliminated coefficients are +1 and -1, then add.
                let mut combined = vec![Rat::zero(); n];
                for j in 0..n {
                    combined[j] = &up.0[j] / &up.0[var] - &lo.0[j] / &lo.0[var];
                }
                combined[var] = Rat::zero();
                let bound = &up.1 / &up.0[var] - &lo.1 / &lo.0[var];
                rest.push((combined, bound));
            }
        }
        rows = rest;
    }
    normalize(rows)?;

    let mut witness = vec![Rat::zero(); n];
    for var in (0..n).rev() {
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for (coeffs, bound) in &stages[var] {
            if coeffs[var].is_zero() {
                continue;
            }
            let mut rest = bound.clone();
            for j in var + 1..n {
                rest -= &coeffs[j] * &witness[j];
            }
            let v = rest / coeffs[var].clone();
            if coeffs[var].is_positive() {
                hi = Some(match hi {
                    Some(h) if h < v => h,
                    _ => v,
                });
            } else {
                lo = Some(match lo {
                    Some(l) if l > v => l,
                    _ => v,
                });
            }
        }
        witness[var] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / Rat::from_integer(2.into()),
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (None, None) => Rat::zero(),
        };
    }
    debug_assert!(problem.check(&witness));
    Some(witness)
}

/// Scale each row so its leading nonzero coefficient has absolute value 1,
/// drop duplicates and vacuous rows, and detect plain contradictions
/// (`0 ≤ negative`). Returns `None` on contradiction.
fn normalize(rows: Vec<LeRow>) -> Option<Vec<LeRow>> {
    let mut kept: BTreeSet<LeRow> = BTreeSet::new();
    for (coeffs, bound) in rows {
        match coeffs.iter().find(|c| !c.is_zero()) {
            None => {
                if bound.is_negative() {
                    return None;
                }
            }
            Some(first) => {
                let scale = first.abs();
                let coeffs: Vec<Rat> = coeffs.iter().map(|c| c / &scale).collect();
                kept.insert((coeffs, bound / scale));
            }
        }
    }
    Some(kept.into_iter().collect())
}
