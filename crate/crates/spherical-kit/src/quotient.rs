//! Distinguished subsets of colours and everything they induce: quotient
//! systems, localizations, direct and fiber-product decompositions,
//! projective elements, the affineness test, and rigidity.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::lattice::{
    default_cap, feasible, hilbert_basis, is_lattice_basis, rank_i64, FeasibilityProblem, Rat,
    Rel,
};
use crate::rootsys::WeightVector;
use crate::system::{validate, ColourSet, SphericalSystem, ValidationReport};

/// Everything `is_distinguished` finds out about one colour subset.
#[derive(Clone, Debug)]
pub struct DistinguishedReport {
    /// The subset, as sorted colour indices.
    pub subset: Vec<usize>,
    /// The same subset as colour names.
    pub names: Vec<String>,
    pub distinguished: bool,
    /// Coefficients `c ≥ 1` over the subset with Σ c·ρ ≥ 0 on Σ, when
    /// distinguished.
    pub witness: Option<Vec<Rat>>,
    /// Σ(Δ′): columns of Σ where some admissible combination is positive.
    pub sigma_of: BTreeSet<usize>,
    /// Rank of ρ(Δ′) together with the duals of Σ(Δ′).
    pub v_dim: usize,
    pub smooth: bool,
    pub parabolic: bool,
    pub star: bool,
}

fn subset_rows<'a>(delta: &'a ColourSet, subset: &[usize]) -> Vec<&'a [i64]> {
    subset
        .iter()
        .map(|&i| delta.colours()[i].row.as_slice())
        .collect()
}

/// c ≥ 1 per colour, Σ c·ρ ≥ 0 per spherical root.
fn admissible_combinations(rows: &[&[i64]], n_sigma: usize) -> FeasibilityProblem {
    let mut p = FeasibilityProblem::new(rows.len());
    for k in 0..rows.len() {
        let mut unit = vec![0i64; rows.len()];
        unit[k] = 1;
        p.push_i64(&unit, Rel::Ge, 1);
    }
    for j in 0..n_sigma {
        let col: Vec<i64> = rows.iter().map(|r| r[j]).collect();
        p.push_i64(&col, Rel::Ge, 0);
    }
    p
}

/// The lattice Ξ/Δ′ in Σ-coordinates: vanishing of every ρ(δ), δ ∈ Δ′,
/// and of every coordinate in Σ(Δ′).
fn quotient_equations(rows: &[&[i64]], sigma_of: &BTreeSet<usize>, n_sigma: usize) -> Vec<Vec<i64>> {
    let mut eqs: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    for &j in sigma_of {
        let mut unit = vec![0i64; n_sigma];
        unit[j] = 1;
        eqs.push(unit);
    }
    eqs
}

/// Decides whether a colour subset is distinguished and computes the full
/// report: Σ(Δ′) by per-root strict probes (the union is simultaneously
/// achievable since any two witnesses average), V(Δ′)'s dimension, and the
/// smooth/parabolic/∗ flags.
pub fn is_distinguished(
    sys: &SphericalSystem,
    delta: &ColourSet,
    subset: &BTreeSet<usize>,
) -> Result<DistinguishedReport> {
    let n_sigma = sys.rank();
    let subset: Vec<usize> = subset.iter().copied().collect();
    assert!(
        subset.iter().all(|&i| i < delta.len()),
        "colour index out of range"
    );
    let names: Vec<String> = subset
        .iter()
        .map(|&i| delta.colours()[i].name.clone())
        .collect();
    let rows = subset_rows(delta, &subset);

    let witness = feasible(&admissible_combinations(&rows, n_sigma));
    let distinguished = witness.is_some();

    let mut sigma_of = BTreeSet::new();
    if distinguished {
        for j in 0..n_sigma {
            // Strict positivity scales to ≥ 1: multiplying a witness by a
            // large factor keeps c ≥ 1 and the sign constraints.
            let mut p = admissible_combinations(&rows, n_sigma);
            let col: Vec<i64> = rows.iter().map(|r| r[j]).collect();
            p.push_i64(&col, Rel::Ge, 1);
            if feasible(&p).is_some() {
                sigma_of.insert(j);
            }
        }
    }

    let mut generators: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    for &j in &sigma_of {
        let mut unit = vec![0i64; n_sigma];
        unit[j] = 1;
        generators.push(unit);
    }
    let v_dim = rank_i64(&generators, n_sigma);

    let smooth = distinguished && v_dim == sigma_of.len();
    let parabolic = distinguished && sigma_of.len() == n_sigma;
    let star = if distinguished {
        let eqs = quotient_equations(&rows, &sigma_of, n_sigma);
        let basis = hilbert_basis(&eqs, n_sigma, default_cap())?;
        is_lattice_basis(&basis, &eqs, n_sigma)?
    } else {
        false
    };
    debug_assert!(!parabolic || smooth, "parabolic subsets are smooth");
    debug_assert!(!smooth || star, "smooth subsets have the ∗-property");

    Ok(DistinguishedReport {
        subset,
        names,
        distinguished,
        witness,
        sigma_of,
        v_dim,
        smooth,
        parabolic,
        star,
    })
}

/// A quotient system together with where the surviving A-elements went and
/// the validation outcome of the result (reported, not assumed).
#[derive(Clone, Debug)]
pub struct QuotientTriple {
    pub result: SphericalSystem,
    /// Surviving A-element names mapped to their projected functionals.
    pub colour_image: BTreeMap<String, Vec<i64>>,
    pub report: DistinguishedReport,
    pub validation: ValidationReport,
}

/// Quotient by a distinguished subset with the ∗-property. The new Σ is
/// the Hilbert basis of the nonnegative part of Ξ/Δ′ re-expressed over
/// simple roots; S^p grows to every root all of whose colours lie in Δ′;
/// A keeps the pairs untouched by Δ′.
pub fn quotient_by(
    sys: &SphericalSystem,
    delta: &ColourSet,
    subset: &BTreeSet<usize>,
) -> Result<QuotientTriple> {
    let report = is_distinguished(sys, delta, subset)?;
    if !report.distinguished {
        return Err(Error::NotDistinguished(report.names.join(", ")));
    }
    if !report.star {
        return Err(Error::StarFails(report.names.join(", ")));
    }

    let n_sigma = sys.rank();
    let rows = subset_rows(delta, &report.subset);
    let eqs = quotient_equations(&rows, &report.sigma_of, n_sigma);
    let mut basis = hilbert_basis(&eqs, n_sigma, default_cap())?;
    // Order by earliest Σ column touched, so that surviving original roots
    // keep their relative positions (the empty subset is then an identity).
    basis.sort_by_key(|x| (x.iter().position(|&c| c != 0).unwrap_or(n_sigma), x.clone()));

    let dim = sys.group().rank();
    let new_sigma: Vec<WeightVector> = basis
        .iter()
        .map(|x| {
            let mut v = vec![0i64; dim];
            for (j, &c) in x.iter().enumerate() {
                for (i, &g) in sys.sigma()[j].vector.0.iter().enumerate() {
                    v[i] += c * g;
                }
            }
            WeightVector(v)
        })
        .collect();

    let subset_set: BTreeSet<usize> = report.subset.iter().copied().collect();
    let new_sp: BTreeSet<usize> = (0..dim)
        .filter(|&a| delta.delta_of_root(a).is_subset(&subset_set))
        .collect();

    let simple = sys.simple_sigma();
    let mut kept: Vec<(String, Vec<i64>)> = Vec::new();
    let mut colour_image = BTreeMap::new();
    for element in sys.a_elements() {
        let keeps = simple.iter().any(|&(alpha, col)| {
            element.row[col] == 1 && delta.delta_of_root(alpha).is_disjoint(&subset_set)
        });
        if !keeps {
            continue;
        }
        let new_row: Vec<i64> = basis
            .iter()
            .map(|x| x.iter().zip(&element.row).map(|(&c, &v)| c * v).sum())
            .collect();
        colour_image.insert(element.name.clone(), new_row.clone());
        kept.push((element.name.clone(), new_row));
    }

    let result = SphericalSystem::new(sys.group().clone(), new_sp, new_sigma, kept)?;
    let validation = validate(&result);
    Ok(QuotientTriple {
        result,
        colour_image,
        report,
        validation,
    })
}

/// Restriction to a subset of Σ (by column index): S^p is kept, A shrinks
/// to the pairs of the surviving simple spherical roots.
pub fn localize_sigma(sys: &SphericalSystem, keep: &BTreeSet<usize>) -> Result<SphericalSystem> {
    let n_sigma = sys.rank();
    if let Some(&bad) = keep.iter().find(|&&j| j >= n_sigma) {
        return Err(Error::UnknownSigma(format!("column {bad}")));
    }
    let cols: Vec<usize> = (0..n_sigma).filter(|j| keep.contains(j)).collect();
    let new_sigma: Vec<WeightVector> = cols
        .iter()
        .map(|&j| sys.sigma()[j].vector.clone())
        .collect();
    let simple = sys.simple_sigma();
    let surviving_simple: Vec<usize> = simple
        .iter()
        .filter(|&&(_, col)| keep.contains(&col))
        .map(|&(_, col)| col)
        .collect();
    let new_a: Vec<(String, Vec<i64>)> = sys
        .a_elements()
        .iter()
        .filter(|e| surviving_simple.iter().any(|&col| e.row[col] == 1))
        .map(|e| {
            (
                e.name.clone(),
                cols.iter().map(|&j| e.row[j]).collect(),
            )
        })
        .collect();
    let result = SphericalSystem::new(sys.group().clone(), sys.sp().clone(), new_sigma, new_a)?;
    debug_assert!(validate(&result).ok(), "restriction preserves the axioms");
    Ok(result)
}

/// Restriction to the sub-root-system generated by S′: keeps the spherical
/// roots supported there and renumbers everything into the new group.
pub fn localize_s(sys: &SphericalSystem, keep: &BTreeSet<usize>) -> Result<SphericalSystem> {
    let (sub, old_of_new) = sys.group().induced_subsystem(keep)?;
    let cols: Vec<usize> = (0..sys.rank())
        .filter(|&j| sys.sigma()[j].vector.support().is_subset(keep))
        .collect();
    let new_sigma: Vec<WeightVector> = cols
        .iter()
        .map(|&j| {
            WeightVector(
                old_of_new
                    .iter()
                    .map(|&old| sys.sigma()[j].vector.0[old])
                    .collect(),
            )
        })
        .collect();
    let new_sp: BTreeSet<usize> = old_of_new
        .iter()
        .enumerate()
        .filter(|(_, old)| sys.sp().contains(old))
        .map(|(new, _)| new)
        .collect();
    let simple = sys.simple_sigma();
    let surviving_simple: Vec<usize> = simple
        .iter()
        .filter(|&&(_, col)| cols.contains(&col))
        .map(|&(_, col)| col)
        .collect();
    let new_a: Vec<(String, Vec<i64>)> = sys
        .a_elements()
        .iter()
        .filter(|e| surviving_simple.iter().any(|&col| e.row[col] == 1))
        .map(|e| {
            (
                e.name.clone(),
                cols.iter().map(|&j| e.row[j]).collect(),
            )
        })
        .collect();
    let result = SphericalSystem::new(sub, new_sp, new_sigma, new_a)?;
    debug_assert!(validate(&result).ok(), "restriction preserves the axioms");
    Ok(result)
}

/// Restriction in both coordinates at once; requires supp(Σ′) ⊆ S′ and is
/// computed both ways round as a consistency check.
pub fn localize(
    sys: &SphericalSystem,
    keep_roots: &BTreeSet<usize>,
    keep_sigma: &BTreeSet<usize>,
) -> Result<SphericalSystem> {
    for &j in keep_sigma {
        if j >= sys.rank() {
            return Err(Error::UnknownSigma(format!("column {j}")));
        }
        if !sys.sigma()[j].vector.support().is_subset(keep_roots) {
            return Err(Error::InvalidSystem(format!(
                "spherical root {} is not supported on the kept simple roots",
                sys.sigma()[j].vector.symbol(sys.group())
            )));
        }
    }
    let first = localize_s(&localize_sigma(sys, keep_sigma)?, keep_roots)?;
    if cfg!(debug_assertions) {
        let narrowed = localize_s(sys, keep_roots)?;
        let surviving: Vec<usize> = (0..sys.rank())
            .filter(|&j| sys.sigma()[j].vector.support().is_subset(keep_roots))
            .collect();
        let renamed: BTreeSet<usize> = keep_sigma
            .iter()
            .map(|j| surviving.iter().position(|k| k == j).expect("kept column"))
            .collect();
        let second = localize_sigma(&narrowed, &renamed)?;
        debug_assert_eq!(
            crate::format::serialize_system(&first),
            crate::format::serialize_system(&second),
            "the two restriction orders agree"
        );
    }
    Ok(first)
}

/// Smallest parabolic-induction base supp(Σ) ∪ S^p, plus the cuspidality
/// flag (supp(Σ) = S).
pub fn parabolic_induction_base(sys: &SphericalSystem) -> (BTreeSet<usize>, bool) {
    let support = sys.sigma_support();
    let cuspidal = support.len() == sys.group().rank();
    let base: BTreeSet<usize> = support.union(sys.sp()).copied().collect();
    (base, cuspidal)
}

/// One factor of the finest direct decomposition.
#[derive(Clone, Debug)]
pub struct DirectFactor {
    pub roots: BTreeSet<usize>,
    pub system: SphericalSystem,
}

/// The finest partition of S compatible with the product structure:
/// parts must be mutually orthogonal, contain whole supports, and the
/// A-functionals must not reach across. Computed as connected components
/// of the graph linking adjacent roots, roots sharing a support, and each
/// simple spherical root to every support its pair touches.
pub fn direct_factors(sys: &SphericalSystem) -> Result<Vec<DirectFactor>> {
    let rs = sys.group();
    let n = rs.rank();
    let mut adjacency: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let link = |a: usize, b: usize, adjacency: &mut Vec<BTreeSet<usize>>| {
        if a != b {
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
    };
    for i in 0..n {
        for j in rs.neighbours(i) {
            link(i, j, &mut adjacency);
        }
    }
    for root in sys.sigma() {
        let supp: Vec<usize> = root.vector.support().into_iter().collect();
        for w in supp.windows(2) {
            link(w[0], w[1], &mut adjacency);
        }
    }
    for &(alpha, _) in &sys.simple_sigma() {
        for &k in &sys.a_of(alpha) {
            for (j, &v) in sys.a_elements()[k].row.iter().enumerate() {
                if v != 0 {
                    let other = *sys.sigma()[j]
                        .vector
                        .support()
                        .iter()
                        .next()
                        .expect("nonempty support");
                    link(alpha, other, &mut adjacency);
                }
            }
        }
    }

    let mut seen = vec![false; n];
    let mut factors = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut part = BTreeSet::from([start]);
        let mut queue = vec![start];
        seen[start] = true;
        while let Some(v) = queue.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    part.insert(w);
                    queue.push(w);
                }
            }
        }
        let system = localize_s(sys, &part)?;
        factors.push(DirectFactor {
            roots: part,
            system,
        });
    }
    Ok(factors)
}

/// Columns of Σ that do not survive the quotient by this subset: the
/// spherical root γ_j stays exactly when no ρ row of the subset touches
/// column j and j ∉ Σ(Δ′).
pub(crate) fn removed_columns(
    delta: &ColourSet,
    report: &DistinguishedReport,
    n_sigma: usize,
) -> BTreeSet<usize> {
    (0..n_sigma)
        .filter(|&j| {
            report.sigma_of.contains(&j)
                || report
                    .subset
                    .iter()
                    .any(|&i| delta.colours()[i].row[j] != 0)
        })
        .collect()
}

/// The parabolic set of the quotient by the reported subset: simple roots
/// all of whose colours lie inside the subset.
pub(crate) fn quotient_sp(
    sys: &SphericalSystem,
    delta: &ColourSet,
    report: &DistinguishedReport,
) -> BTreeSet<usize> {
    let subset: BTreeSet<usize> = report.subset.iter().copied().collect();
    (0..sys.group().rank())
        .filter(|&a| delta.delta_of_root(a).is_subset(&subset))
        .collect()
}

/// Pairwise conditions for a fiber-product decomposition, given two
/// distinguished ∗ reports for disjoint subsets whose union also has the
/// ∗-property: at least one side smooth, removed spherical roots disjoint,
/// and the parabolic roots added by the two sides disjoint and mutually
/// orthogonal.
pub(crate) fn fiber_pair_conditions(
    sys: &SphericalSystem,
    delta: &ColourSet,
    r1: &DistinguishedReport,
    r2: &DistinguishedReport,
) -> bool {
    if !r1.smooth && !r2.smooth {
        return false;
    }
    let n_sigma = sys.rank();
    if !removed_columns(delta, r1, n_sigma).is_disjoint(&removed_columns(delta, r2, n_sigma)) {
        return false;
    }
    let rs = sys.group();
    let added1: BTreeSet<usize> = quotient_sp(sys, delta, r1)
        .difference(sys.sp())
        .copied()
        .collect();
    let added2: BTreeSet<usize> = quotient_sp(sys, delta, r2)
        .difference(sys.sp())
        .copied()
        .collect();
    added1.is_disjoint(&added2)
        && added1
            .iter()
            .all(|&a| added2.iter().all(|&b| rs.orthogonal(a, b)))
}

/// All unordered pairs of disjoint nonempty colour subsets that decompose
/// the system as a fiber product: both sides and their union distinguished
/// with the ∗-property, removed spherical roots disjoint, the added
/// parabolic roots mutually orthogonal, and at least one side smooth.
pub fn fiber_product_decompositions(
    sys: &SphericalSystem,
    delta: &ColourSet,
) -> Result<Vec<(BTreeSet<usize>, BTreeSet<usize>)>> {
    let m = delta.len();
    if m > 24 {
        return Err(Error::CapExceeded {
            what: "colour subsets",
            reached: m as u64,
            cap: 24,
        });
    }
    // Reports are memoized per bitmask; only distinguished ∗ subsets can
    // appear on either side, so the pair loop runs over that short list.
    let mut memo: BTreeMap<u32, DistinguishedReport> = BTreeMap::new();
    let report_of = |mask: u32,
                         memo: &mut BTreeMap<u32, DistinguishedReport>|
     -> Result<DistinguishedReport> {
        if let Some(r) = memo.get(&mask) {
            return Ok(r.clone());
        }
        let subset: BTreeSet<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let r = is_distinguished(sys, delta, &subset)?;
        memo.insert(mask, r.clone());
        Ok(r)
    };

    let mut starred: Vec<u32> = Vec::new();
    for mask in 1..(1u32 << m) {
        if report_of(mask, &mut memo)?.star {
            starred.push(mask);
        }
    }

    let mut pairs = Vec::new();
    for (x, &mask1) in starred.iter().enumerate() {
        for &mask2 in &starred[x + 1..] {
            if mask1 & mask2 != 0 {
                continue;
            }
            let union = report_of(mask1 | mask2, &mut memo)?;
            if !union.star {
                continue;
            }
            let r1 = report_of(mask1, &mut memo)?;
            let r2 = report_of(mask2, &mut memo)?;
            if !fiber_pair_conditions(sys, delta, &r1, &r2) {
                continue;
            }
            let s1: BTreeSet<usize> = r1.subset.iter().copied().collect();
            let s2: BTreeSet<usize> = r2.subset.iter().copied().collect();
            pairs.push(if s1 < s2 { (s1, s2) } else { (s2, s1) });
        }
    }
    pairs.sort();
    Ok(pairs)
}

/// A-elements whose functional is nonnegative on all of Σ; by the value
/// bound this means every entry is 0 or 1.
pub fn projective_elements(sys: &SphericalSystem) -> Vec<usize> {
    sys.a_elements()
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            let nonneg = e.row.iter().all(|&v| v >= 0);
            debug_assert_eq!(
                nonneg,
                e.row.iter().all(|&v| v == 0 || v == 1),
                "nonnegative functionals take only the values 0 and 1"
            );
            nonneg
        })
        .map(|(k, _)| k)
        .collect()
}

/// Quotient by one projective element: Σ loses the simple roots the
/// element evaluates to 1 on, A keeps the pairs of the surviving simple
/// roots, S^p stays. Agrees with the general quotient route.
pub fn quotient_by_projective(sys: &SphericalSystem, element: usize) -> Result<SphericalSystem> {
    if !projective_elements(sys).contains(&element) {
        return Err(Error::InvalidSystem(format!(
            "A-element '{}' is not projective",
            sys.a_elements()[element].name
        )));
    }
    let row = &sys.a_elements()[element].row;
    let dropped: BTreeSet<usize> = sys
        .simple_sigma()
        .into_iter()
        .filter(|&(_, col)| row[col] == 1)
        .map(|(_, col)| col)
        .collect();
    let keep: BTreeSet<usize> = (0..sys.rank()).filter(|j| !dropped.contains(j)).collect();
    let result = localize_sigma(sys, &keep)?;

    #[cfg(debug_assertions)]
    {
        let delta = crate::system::build_colours(sys).expect("valid system");
        let triple = quotient_by(sys, &delta, &BTreeSet::from([element]))
            .expect("projective elements are distinguished with ∗");
        debug_assert_eq!(
            crate::format::serialize_system(&result),
            crate::format::serialize_system(&triple.result),
            "the direct and general quotient routes agree"
        );
    }
    Ok(result)
}

/// Searches for ξ = Σ c_γ γ with c ≥ 0 and ⟨ρ(δ), ξ⟩ > 0 for every colour.
pub fn affine_test(sys: &SphericalSystem, delta: &ColourSet) -> Option<Vec<Rat>> {
    let n_sigma = sys.rank();
    let mut p = FeasibilityProblem::new(n_sigma);
    for j in 0..n_sigma {
        let mut unit = vec![0i64; n_sigma];
        unit[j] = 1;
        p.push_i64(&unit, Rel::Ge, 0);
    }
    for colour in delta.colours() {
        p.push_i64(&colour.row, Rel::Ge, 1);
    }
    feasible(&p)
}

/// No two A-elements may induce the same functional.
pub fn is_rigid(sys: &SphericalSystem) -> bool {
    let mut seen = BTreeSet::new();
    sys.a_elements().iter().all(|e| seen.insert(e.row.clone()))
}
