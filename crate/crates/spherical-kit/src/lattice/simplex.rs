//! Exact feasibility by a phase-1 simplex method over rational numbers.
//!
//! Free variables are split as `x = u - w` with `u, w ≥ 0`, inequality rows
//! get surplus variables, and per-row artificial variables are driven to
//! zero. Bland's smallest-index rule makes the pivoting finite.

use num::{One, Signed, Zero};

use super::{FeasibilityProblem, Rat, Rel};

/// A rational point satisfying every row, or `None` when the system has no
/// solution. The result is exact; callers can re-check it with
/// [`FeasibilityProblem::check`].
pub fn feasible(problem: &FeasibilityProblem) -> Option<Vec<Rat>> {
    let n = problem.n_vars;
    let m = problem.rows.len();
    if m == 0 {
        return Some(vec![Rat::zero(); n]);
    }

    let n_surplus = problem
        .rows
        .iter()
        .filter(|(_, rel, _)| *rel == Rel::Ge)
        .count();
    // Columns: u(n) | w(n) | surplus | artificial, then the right-hand side.
    let cols = 2 * n + n_surplus + m;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut surplus_seen = 0;
    for (r, (coeffs, rel, rhs)) in problem.rows.iter().enumerate() {
        let mut row = vec![Rat::zero(); cols + 1];
        for (j, c) in coeffs.iter().enumerate() {
            row[j] = c.clone();
            row[n + j] = -c.clone();
        }
        if *rel == Rel::Ge {
            row[2 * n + surplus_seen] = -Rat::one();
            surplus_seen += 1;
        }
        row[cols] = rhs.clone();
        if row[cols].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        let art = 2 * n + n_surplus + r;
        row[art] = Rat::one();
        basis.push(art);
        tab.push(row);
    }

    // Objective: minimize the sum of artificials. With artificials basic,
    // the reduced-cost row is the negated column sum over real columns; we
    // store it negated again so that "entering column" means a positive
    // entry. Artificial columns keep reduced cost zero at the start.
    let mut obj = vec![Rat::zero(); cols + 1];
    for row in &tab {
        for j in 0..2 * n + n_surplus {
            obj[j] = &obj[j] + &row[j];
        }
        obj[cols] = &obj[cols] + &row[cols];
    }

    loop {
        let Some(enter) = (0..cols).find(|&j| obj[j].is_positive()) else {
            break;
        };
        // Ratio test; ties resolved toward the smallest basis index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..m {
            if tab[r][enter].is_positive() {
                let ratio = &tab[r][cols] / &tab[r][enter];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[r] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(leave) = leave else {
            // The phase-1 objective is bounded below by zero, so an
            // unbounded column cannot occur; treat defensively.
            unreachable!("phase-1 objective is bounded");
        };
        pivot(&mut tab, &mut obj, leave, enter, cols);
        basis[leave] = enter;
    }

    if !obj[cols].is_zero() {
        return None;
    }

    let mut values = vec![Rat::zero(); cols];
    for (r, &b) in basis.iter().enumerate() {
        values[b] = tab[r][cols].clone();
    }
    let witness: Vec<Rat> = (0..n).map(|j| &values[j] - &values[n + j]).collect();
    debug_assert!(problem.check(&witness));
    Some(witness)
}

fn pivot(tab: &mut [Vec<Rat>], obj: &mut [Rat], leave: usize, enter: usize, cols: usize) {
    let p = tab[leave][enter].clone();
    for v in tab[leave].iter_mut() {
        *v = &*v / &p;
    }
    for r in 0..tab.len() {
        if r != leave && !tab[r][enter].is_zero() {
            let f = tab[r][enter].clone();
            for j in 0..=cols {
                let d = &tab[leave][j] * &f;
                tab[r][j] = &tab[r][j] - d;
            }
        }
    }
    if !obj[enter].is_zero() {
        let f = obj[enter].clone();
        for j in 0..=cols {
            let d = &tab[leave][j] * &f;
            obj[j] = &obj[j] - d;
        }
    }
}
