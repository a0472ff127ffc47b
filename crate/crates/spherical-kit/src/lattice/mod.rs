//! Exact linear algebra over the rationals and integers: feasibility of
//! linear systems by two independent routes, Hilbert bases of pointed
//! rational cones, Smith normal form, and lattice-basis recognition.

mod fourier;
mod hilbert;
mod simplex;
mod snf;

pub use fourier::feasible_oracle;
pub use hilbert::{default_cap, hilbert_basis, hilbert_basis_brute};
pub use simplex::feasible;
pub use snf::smith_normal_form;

use num::{BigInt, BigRational, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Relation of one constraint row against its right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Ge,
    Eq,
}

/// `rows · x (≥ | =) rhs` over free rational variables.
///
/// Variables are unconstrained unless a row bounds them, so sign conditions
/// such as `x_i ≥ 1` are expressed as ordinary rows.
#[derive(Clone, Debug, Default)]
pub struct FeasibilityProblem {
    pub n_vars: usize,
    pub rows: Vec<(Vec<Rat>, Rel, Rat)>,
}

impl FeasibilityProblem {
    pub fn new(n_vars: usize) -> Self {
        FeasibilityProblem {
            n_vars,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<Rat>, rel: Rel, rhs: Rat) {
        assert_eq!(coeffs.len(), self.n_vars, "row width");
        self.rows.push((coeffs, rel, rhs));
    }

    pub fn push_i64(&mut self, coeffs: &[i64], rel: Rel, rhs: i64) {
        self.push(
            coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect(),
            rel,
            Rat::from_integer(rhs.into()),
        );
    }

    /// Whether `x` satisfies every row exactly.
    pub fn check(&self, x: &[Rat]) -> bool {
        if x.len() != self.n_vars {
            return false;
        }
        self.rows.iter().all(|(coeffs, rel, rhs)| {
            let lhs: Rat = coeffs
                .iter()
                .zip(x)
                .map(|(c, v)| c * v)
                .fold(Rat::zero(), |a, b| a + b);
            match rel {
                Rel::Ge => lhs >= *rhs,
                Rel::Eq => lhs == *rhs,
            }
        })
    }
}

/// Rank over the rationals of a family of integer rows.
pub fn rank_i64(rows: &[Vec<i64>], n: usize) -> usize {
    let mut mat: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n);
            r.iter().map(|&c| Rat::from_integer(c.into())).collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let p = mat[rank][col].clone();
        for r in 0..mat.len() {
            if r != rank && !mat[r][col].is_zero() {
                let f = &mat[r][col] / &p;
                for c in col..n {
                    let d = &mat[rank][c] * &f;
                    mat[r][c] = &mat[r][c] - d;
                }
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}

/// Whether `vectors` is a basis of the full integer solution lattice
/// `{x ∈ Z^n : equations · x = 0}`.
///
/// Criterion: the count matches the lattice rank and the Smith normal form
/// of the vector matrix has all elementary divisors equal to 1 (the span is
/// then a saturated full-rank sublattice, hence the whole lattice). A vector
/// that does not solve the equations at all is an error, not a `false`.
pub fn is_lattice_basis(
    vectors: &[Vec<i64>],
    equations: &[Vec<i64>],
    n: usize,
) -> crate::error::Result<bool> {
    for v in vectors {
        if v.len() != n {
            return Err(crate::error::Error::DimensionMismatch(format!(
                "lattice vector of width {} in ambient dimension {n}",
                v.len()
            )));
        }
        for eq in equations {
            let dot: i128 = eq.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
            if dot != 0 {
                return Err(crate::error::Error::OutsideLattice(format!("{v:?}")));
            }
        }
    }
    let lattice_rank = n - rank_i64(equations, n);
    if vectors.len() != lattice_rank {
        return Ok(false);
    }
    if vectors.is_empty() {
        return Ok(true);
    }
    let divisors = smith_normal_form(vectors);
    Ok(divisors.len() == vectors.len() && divisors.iter().all(|d| d.abs() == Int::from(1)))
}
