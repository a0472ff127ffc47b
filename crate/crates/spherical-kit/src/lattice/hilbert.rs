//! Minimal nonnegative integer solutions of homogeneous linear systems.
//!
//! [`hilbert_basis`] is a breadth-first completion in the style of
//! Contejean-Devie: grow candidate vectors from the unit vectors, extend a
//! candidate `t` by `e_j` only while the residual `A·t` still has a strictly
//! decreasing direction along column `j`, and harvest solutions as minimal
//! elements. [`hilbert_basis_brute`] enumerates every vector up to a
//! coordinate-sum bound and keeps the pointwise-minimal solutions; it exists
//! solely to cross-check the completion on bounded ranges.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Coordinate-sum cap used by callers that do not pick their own: the
/// `SPHERICAL_KIT_CAP` environment variable when set, otherwise 64. Ranks in
/// this crate are small, so the default is generous already.
pub fn default_cap() -> u64 {
    std::env::var("SPHERICAL_KIT_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(64)
}

/// Pointwise-minimal nonzero solutions of `equations · x = 0` over
/// nonnegative integers, sorted lexicographically.
///
/// The search aborts with [`Error::CapExceeded`] once any candidate's
/// coordinate sum passes `cap`, which keeps degenerate inputs from running
/// away; every finite basis is found with a large enough cap.
pub fn hilbert_basis(equations: &[Vec<i64>], n: usize, cap: u64) -> Result<Vec<Vec<i64>>> {
    let m = equations.len();
    for eq in equations {
        assert_eq!(eq.len(), n, "equation width");
    }
    let residual = |x: &[i64]| -> Vec<i64> {
        (0..m)
            .map(|i| (0..n).map(|j| equations[i][j] * x[j]).sum())
            .collect()
    };
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let columns: Vec<Vec<i64>> = (0..n)
        .map(|j| (0..m).map(|i| equations[i][j]).collect())
        .collect();

    let mut minimal: Vec<Vec<i64>> = Vec::new();
    let mut frontier: BTreeSet<Vec<i64>> = (0..n)
        .map(|j| {
            let mut e = vec![0i64; n];
            e[j] = 1;
            e
        })
        .collect();

    while !frontier.is_empty() {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for t in &frontier {
            let r = residual(t);
            if r.iter().all(|&v| v == 0) {
                if !dominated(&minimal, t) {
                    minimal.push(t.clone());
                }
                continue;
            }
            for (j, col) in columns.iter().enumerate() {
                if dot(&r, col) < 0 {
                    let mut t2 = t.clone();
                    t2[j] += 1;
                    let sum: u64 = t2.iter().map(|&v| v as u64).sum();
                    if sum > cap {
                        return Err(Error::CapExceeded {
                            what: "hilbert basis candidate size",
                            reached: sum,
                            cap,
                        });
                    }
                    if !dominated(&minimal, &t2) {
                        next.insert(t2);
                    }
                }
            }
        }
        frontier = next;
    }

    minimal.sort();
    Ok(minimal)
}

/// Exhaustive reference: all pointwise-minimal nonzero solutions with
/// coordinate sum at most `bound`, sorted lexicographically. Breadth by
/// total sum guarantees that minimality against the kept list is final.
pub fn hilbert_basis_brute(equations: &[Vec<i64>], n: usize, bound: u64) -> Vec<Vec<i64>> {
    let mut solutions: Vec<Vec<i64>> = Vec::new();
    let mut x = vec![0i64; n];
    enumerate(equations, n, bound as i64, 0, &mut x, &mut solutions);
    solutions.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    let mut minimal: Vec<Vec<i64>> = Vec::new();
    for s in solutions {
        if !dominated(&minimal, &s) {
            minimal.push(s);
        }
    }
    minimal.sort();
    minimal
}

fn enumerate(
    equations: &[Vec<i64>],
    n: usize,
    budget: i64,
    pos: usize,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if pos == n {
        if x.iter().any(|&v| v > 0)
            && equations
                .iter()
                .all(|eq| eq.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<i64>() == 0)
        {
            out.push(x.clone());
        }
        return;
    }
    for v in 0..=budget {
        x[pos] = v;
        enumerate(equations, n, budget - v, pos + 1, x, out);
    }
    x[pos] = 0;
}

fn dominated(minimal: &[Vec<i64>], t: &[i64]) -> bool {
    minimal
        .iter()
        .any(|m| m.iter().zip(t).all(|(a, b)| a <= b))
}
