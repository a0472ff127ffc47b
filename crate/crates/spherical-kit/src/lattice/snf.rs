//! Smith normal form of an integer matrix, used to decide when a family of
//! integer vectors spans a saturated sublattice.

use num::{BigInt, Signed, Zero};

use super::Int;

/// Nonzero elementary divisors `d_1 | d_2 | ...` of the matrix whose rows
/// are `rows`, in divisibility order. Intermediate values can outgrow any
/// fixed-width integer, so the computation runs over big integers.
pub fn smith_normal_form(rows: &[Vec<i64>]) -> Vec<Int> {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n, "ragged matrix");
            r.iter().map(|&v| BigInt::from(v)).collect()
        })
        .collect();

    let mut divisors = Vec::new();
    let mut t = 0;
    while t < m && t < n {
        let Some((pi, pj)) = min_nonzero(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        // Clear row and column t by Euclidean steps; clearing one can
        // reintroduce entries in the other, so loop until both are clean.
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = div_round(&a[i][t], &a[t][t]);
                    for j in t..n {
                        let d = &a[t][j] * &q;
                        a[i][j] = &a[i][j] - d;
                    }
                    if !a[i][t].is_zero() {
                        // Remainder is strictly smaller; promote it to the
                        // pivot and continue reducing.
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = div_round(&a[t][j], &a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let d = &row[t] * &q;
                        row[j] = &row[j] - d;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }

        // Divisibility repair: the pivot must divide the remaining block.
        if let Some(bi) =
            (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()))
        {
            for j in t..n {
                let add = a[bi][j].clone();
                a[t][j] = &a[t][j] + add;
            }
            continue; // redo this pivot with the fresh row mixed in
        }

        divisors.push(a[t][t].abs());
        t += 1;
    }
    divisors
}

fn min_nonzero(a: &[Vec<Int>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Quotient rounded toward the nearest integer, which makes each Euclidean
/// step shrink remainders as fast as possible.
fn div_round(num: &Int, den: &Int) -> Int {
    let (q, r) = (num / den, num % den);
    if &r.abs() * 2 > den.abs() {
        if (r.is_negative()) == (den.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}
