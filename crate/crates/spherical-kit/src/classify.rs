//! Exhaustive enumeration of spherical systems over a fixed group, up to
//! diagram automorphism, together with the numeric invariants of each
//! system. A brute-force enumerator with no search-tree pruning serves as
//! an independent oracle on small groups.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::rank_i64;
use crate::quotient::{is_rigid, parabolic_induction_base};
use crate::reduction::is_primitive;
use crate::rootsys::{parse_group_spec, RootSystem};
use crate::system::{
    build_colours, canonical_key, spherical_roots_of_group, validate, CanonicalKey, RootKind,
    SphericalRoot, SphericalSystem,
};

/// Numeric invariants of a validated system.
#[derive(Clone, Debug, Serialize)]
pub struct Invariants {
    /// Dimension of the homogeneous space: positive roots outside S^p plus
    /// the number of spherical roots.
    pub dim_gh: u64,
    /// Rank of the character group: colours minus spherical roots.
    pub rank_xi_h: u64,
    pub cuspidal: bool,
    pub rigid: bool,
    pub primitive: bool,
}

pub fn invariants(sys: &SphericalSystem) -> Result<Invariants> {
    let rs = sys.group();
    let delta = build_colours(sys)?;
    let spare = delta.len() as i64 - sys.rank() as i64;
    assert!(
        spare >= 0,
        "a valid system never has fewer colours than spherical roots"
    );
    debug_assert!(sys.rank() <= rs.rank());
    debug_assert!(rs.positive_roots_outside(sys.sp()) <= rs.positive_roots_total());
    // Spherical roots wider than their Cartan span cost a lattice dimension.
    let wide = sys.sigma().iter().any(|g| {
        matches!(
            g.kind,
            Some(RootKind::A1xA1) | Some(RootKind::D3) | Some(RootKind::Dm(_))
        )
    });
    debug_assert!(!wide || sys.rank() < rs.rank());

    Ok(Invariants {
        dim_gh: rs.positive_roots_outside(sys.sp()) + sys.rank() as u64,
        rank_xi_h: spare as u64,
        cuspidal: parabolic_induction_base(sys).1,
        rigid: is_rigid(sys),
        primitive: is_primitive(sys)?.primitive,
    })
}

/// Every adjoint group of type A/D with rank at most `max`, one per
/// isomorphism class, ordered by rank and then by spec string. Components
/// D2 and D3 coincide with A1×A1 and A3 and are not listed separately.
pub fn all_groups_up_to_rank(max: usize) -> Vec<RootSystem> {
    // Component ranks in the order used inside one product: largest first,
    // A before D at equal rank.
    let mut parts: Vec<(char, usize)> = Vec::new();
    for r in (1..=max).rev() {
        parts.push(('A', r));
        if r >= 4 {
            parts.push(('D', r));
        }
    }
    parts.sort_by_key(|&(letter, r)| (usize::MAX - r, letter));

    let mut specs: Vec<(usize, String)> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn grow(
        parts: &[(char, usize)],
        max: usize,
        from: usize,
        used: usize,
        stack: &mut Vec<usize>,
        specs: &mut Vec<(usize, String)>,
    ) {
        if !stack.is_empty() {
            let spec = stack
                .iter()
                .map(|&i| format!("{}{}", parts[i].0, parts[i].1))
                .collect::<Vec<_>>()
                .join("x");
            specs.push((used, spec));
        }
        for i in from..parts.len() {
            if used + parts[i].1 <= max {
                stack.push(i);
                grow(parts, max, i, used + parts[i].1, stack, specs);
                stack.pop();
            }
        }
    }
    grow(&parts, max, 0, 0, &mut stack, &mut specs);
    specs.sort();
    specs
        .into_iter()
        .map(|(_, spec)| parse_group_spec(&spec).expect("generated group spec"))
        .collect()
}

/// Search controls for `enumerate_systems`.
#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Upper bound on |Σ|; `None` allows the group rank.
    pub max_rank: Option<usize>,
    /// Keep only systems whose spherical roots support every simple root.
    pub cuspidal_only: bool,
    /// Collapse systems related by a diagram automorphism (on by default);
    /// switching this off preserves one system per equivariant class.
    pub dedup: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_rank: None,
            cuspidal_only: false,
            dedup: true,
        }
    }
}

const GROUP_RANK_CAP: usize = 8;

struct SearchCtx<'a> {
    rs: &'a RootSystem,
    catalogue: &'a [SphericalRoot],
    max_rank: usize,
    cuspidal_only: bool,
}

/// All spherical systems over the group with at least one spherical root,
/// in deterministic order. The search walks independent subsets of the
/// root catalogue with the pairwise compatibility axioms applied early,
/// then attaches every legal S^p between the forced windows and every
/// integral A-table; each candidate is validated before it is kept.
pub fn enumerate_systems(rs: &RootSystem, opts: &EnumerateOptions) -> Result<Vec<SphericalSystem>> {
    if rs.rank() > GROUP_RANK_CAP {
        return Err(Error::CapExceeded {
            what: "group rank",
            reached: rs.rank() as u64,
            cap: GROUP_RANK_CAP as u64,
        });
    }
    let catalogue = spherical_roots_of_group(rs);
    let ctx = SearchCtx {
        rs,
        catalogue: &catalogue,
        max_rank: opts.max_rank.unwrap_or(rs.rank()).min(rs.rank()),
        cuspidal_only: opts.cuspidal_only,
    };

    // Branches of the search tree by first chosen root are independent.
    let branches: Vec<Vec<SphericalSystem>> = (0..catalogue.len())
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            if ctx.max_rank >= 1 && admissible(&ctx, &[], first) {
                let mut chosen = vec![first];
                extend(&ctx, &mut chosen, &mut found);
            }
            found
        })
        .collect();
    let all: Vec<SphericalSystem> = branches.into_iter().flatten().collect();
    Ok(if opts.dedup { dedup_canonical(all) } else { all })
}

/// Whether the chosen subset stays admissible after adding catalogue root
/// `next`: linear independence, the doubled-root parity filter, equal
/// pairing rows across orthogonal pairs, and compatible windows.
fn admissible(ctx: &SearchCtx, chosen: &[usize], next: usize) -> bool {
    let set: Vec<&SphericalRoot> = chosen
        .iter()
        .chain(std::iter::once(&next))
        .map(|&i| &ctx.catalogue[i])
        .collect();
    let rows: Vec<Vec<i64>> = set.iter().map(|r| r.vector.0.clone()).collect();
    if rank_i64(&rows, ctx.rs.rank()) != set.len() {
        return false;
    }
    for r in &set {
        match r.kind {
            // 2α against every other root: nonpositive and even.
            Some(RootKind::A1Prime) => {
                let alpha = *r.vector.support().iter().next().expect("doubled support");
                for other in &set {
                    if other.vector != r.vector {
                        let p = ctx.rs.pairing(alpha, &other.vector);
                        if p > 0 || p % 2 != 0 {
                            return false;
                        }
                    }
                }
            }
            // α + β for orthogonal α, β: the two pairing rows agree on Σ.
            Some(RootKind::A1xA1) => {
                let supp: Vec<usize> = r.vector.support().into_iter().collect();
                for other in &set {
                    if ctx.rs.pairing(supp[0], &other.vector)
                        != ctx.rs.pairing(supp[1], &other.vector)
                    {
                        return false;
                    }
                }
            }
            _ => {}
        }
    }
    let mut union_lower: BTreeSet<usize> = BTreeSet::new();
    let mut inter_upper: BTreeSet<usize> = (0..ctx.rs.rank()).collect();
    for r in &set {
        union_lower.extend(r.lower.iter().copied());
        inter_upper = inter_upper.intersection(&r.upper).copied().collect();
    }
    union_lower.is_subset(&inter_upper)
}

fn extend(ctx: &SearchCtx, chosen: &mut Vec<usize>, found: &mut Vec<SphericalSystem>) {
    emit(ctx, chosen, found);
    if chosen.len() == ctx.max_rank {
        return;
    }
    let start = chosen.last().map_or(0, |&i| i + 1);
    for next in start..ctx.catalogue.len() {
        if admissible(ctx, chosen, next) {
            chosen.push(next);
            extend(ctx, chosen, found);
            chosen.pop();
        }
    }
}

/// Attach every legal S^p and A-table to the chosen Σ.
fn emit(ctx: &SearchCtx, chosen: &[usize], found: &mut Vec<SphericalSystem>) {
    let sigma: Vec<SphericalRoot> = chosen.iter().map(|&i| ctx.catalogue[i].clone()).collect();
    if ctx.cuspidal_only {
        let support: BTreeSet<usize> = sigma.iter().flat_map(|r| r.vector.support()).collect();
        if support.len() != ctx.rs.rank() {
            return;
        }
    }
    let tables = complete_a_tables(ctx.rs, &sigma);
    if tables.is_empty() {
        return;
    }
    let mut union_lower: BTreeSet<usize> = BTreeSet::new();
    let mut inter_upper: BTreeSet<usize> = (0..ctx.rs.rank()).collect();
    for r in &sigma {
        union_lower.extend(r.lower.iter().copied());
        inter_upper = inter_upper.intersection(&r.upper).copied().collect();
    }
    let free: Vec<usize> = inter_upper.difference(&union_lower).copied().collect();

    for mask in 0..(1u32 << free.len()) {
        let mut sp = union_lower.clone();
        sp.extend(
            free.iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a),
        );
        for table in &tables {
            let sys = SphericalSystem::new(
                ctx.rs.clone(),
                sp.clone(),
                sigma.iter().map(|r| r.vector.clone()).collect(),
                table.clone(),
            )
            .expect("search candidates are well shaped");
            let ok = validate(&sys).ok();
            debug_assert!(ok, "the search should only assemble valid systems");
            if ok {
                found.push(sys);
            }
        }
    }
}

/// All A-tables compatible with the chosen Σ, independent of S^p. Simple
/// spherical roots are processed in column order; at each one the elements
/// already holding the value 1 there are its forced members, and the free
/// entries of any new pair range over the window that keeps both partners
/// at most 1 (exactly 1 only over simple spherical columns not yet
/// completed) while summing to the Cartan pairing row.
fn complete_a_tables(rs: &RootSystem, sigma: &[SphericalRoot]) -> Vec<Vec<(String, Vec<i64>)>> {
    let sa: Vec<(usize, usize)> = sigma
        .iter()
        .enumerate()
        .filter_map(|(j, r)| match r.kind {
            Some(RootKind::A1) => Some((r.vector.support().into_iter().next()?, j)),
            _ => None,
        })
        .collect();
    if sa.is_empty() {
        return vec![Vec::new()];
    }
    let position_of: BTreeMap<usize, usize> = sa.iter().enumerate().map(|(p, &(_, j))| (j, p)).collect();
    let cartan_rows: Vec<Vec<i64>> = sa
        .iter()
        .map(|&(a, _)| sigma.iter().map(|r| rs.pairing(a, &r.vector)).collect())
        .collect();

    let mut tables = Vec::new();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    assign(
        rs,
        sigma.len(),
        &sa,
        &position_of,
        &cartan_rows,
        0,
        &mut rows,
        &mut names,
        &mut tables,
    );
    tables
}

#[allow(clippy::too_many_arguments)]
fn assign(
    rs: &RootSystem,
    n_sigma: usize,
    sa: &[(usize, usize)],
    position_of: &BTreeMap<usize, usize>,
    cartan_rows: &[Vec<i64>],
    k: usize,
    rows: &mut Vec<Vec<i64>>,
    names: &mut Vec<String>,
    tables: &mut Vec<Vec<(String, Vec<i64>)>>,
) {
    if k == sa.len() {
        tables.push(
            names
                .iter()
                .cloned()
                .zip(rows.iter().cloned())
                .collect(),
        );
        return;
    }
    let (alpha, col) = sa[k];
    let c = &cartan_rows[k];
    // The value 1 is available at this column and at simple spherical
    // columns still to be completed; everywhere else entries stay ≤ 0,
    // because a third element at a finished column would break the pair.
    let cap = |j: usize| -> i64 {
        match position_of.get(&j) {
            Some(&p) if p >= k => 1,
            _ => 0,
        }
    };
    let members: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] == 1).collect();
    match members.len() {
        0 => {
            // Free pair {r, c − r}: walk the per-column windows.
            let mut r = vec![0i64; n_sigma];
            fill(rs, n_sigma, sa, position_of, cartan_rows, k, col, c, &cap, 0, &mut r, rows, names, tables);
        }
        1 => {
            let partner: Vec<i64> = (0..n_sigma).map(|j| c[j] - rows[members[0]][j]).collect();
            if (0..n_sigma).all(|j| partner[j] <= cap(j)) {
                rows.push(partner);
                names.push(format!("d-({})", rs.root_name(alpha)));
                assign(rs, n_sigma, sa, position_of, cartan_rows, k + 1, rows, names, tables);
                rows.pop();
                names.pop();
            }
        }
        2 => {
            let sums_match =
                (0..n_sigma).all(|j| rows[members[0]][j] + rows[members[1]][j] == c[j]);
            if sums_match {
                assign(rs, n_sigma, sa, position_of, cartan_rows, k + 1, rows, names, tables);
            }
        }
        _ => {}
    }
}

/// Enumerate the free entries of a fresh pair column by column; at the end
/// keep the lexicographically larger partner as d+ to visit each unordered
/// pair once.
#[allow(clippy::too_many_arguments)]
fn fill(
    rs: &RootSystem,
    n_sigma: usize,
    sa: &[(usize, usize)],
    position_of: &BTreeMap<usize, usize>,
    cartan_rows: &[Vec<i64>],
    k: usize,
    col: usize,
    c: &[i64],
    cap: &dyn Fn(usize) -> i64,
    j: usize,
    r: &mut Vec<i64>,
    rows: &mut Vec<Vec<i64>>,
    names: &mut Vec<String>,
    tables: &mut Vec<Vec<(String, Vec<i64>)>>,
) {
    if j == n_sigma {
        let partner: Vec<i64> = (0..n_sigma).map(|i| c[i] - r[i]).collect();
        if *r >= partner {
            let alpha = sa[k].0;
            rows.push(r.clone());
            rows.push(partner);
            names.push(format!("d+({})", rs.root_name(alpha)));
            names.push(format!("d-({})", rs.root_name(alpha)));
            assign(rs, n_sigma, sa, position_of, cartan_rows, k + 1, rows, names, tables);
            rows.pop();
            rows.pop();
            names.pop();
            names.pop();
        }
        return;
    }
    let (low, high) = if j == col {
        (1, 1)
    } else {
        (c[j] - cap(j), cap(j))
    };
    for v in low..=high {
        r[j] = v;
        fill(rs, n_sigma, sa, position_of, cartan_rows, k, col, c, cap, j + 1, r, rows, names, tables);
    }
    r[j] = 0;
}

fn dedup_canonical(systems: Vec<SphericalSystem>) -> Vec<SphericalSystem> {
    let mut seen: BTreeSet<CanonicalKey> = BTreeSet::new();
    systems
        .into_iter()
        .filter(|s| seen.insert(canonical_key(s)))
        .collect()
}

/// Independent oracle for small groups: every catalogue subset, every S^p
/// subset, and every per-root A-pair choice with no search-tree pruning;
/// candidates are merged by shared rows, validated, and deduplicated. Runs
/// in time exponential in the catalogue, hence the rank cap.
pub fn brute_force_systems(rs: &RootSystem) -> Result<Vec<SphericalSystem>> {
    if rs.rank() > 3 {
        return Err(Error::CapExceeded {
            what: "brute-force group rank",
            reached: rs.rank() as u64,
            cap: 3,
        });
    }
    let catalogue = spherical_roots_of_group(rs);
    let n = rs.rank();
    let mut out = Vec::new();
    for mask in 1u32..(1 << catalogue.len()) {
        if mask.count_ones() as usize > n {
            continue;
        }
        let sigma: Vec<SphericalRoot> = catalogue
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, r)| r.clone())
            .collect();
        let tables = brute_a_tables(rs, &sigma);
        for sp_mask in 0..(1u32 << n) {
            let sp: BTreeSet<usize> = (0..n).filter(|&a| sp_mask >> a & 1 == 1).collect();
            for table in &tables {
                let sys = SphericalSystem::new(
                    rs.clone(),
                    sp.clone(),
                    sigma.iter().map(|r| r.vector.clone()).collect(),
                    table.clone(),
                )
                .expect("oracle candidates are well shaped");
                if validate(&sys).ok() {
                    out.push(sys);
                }
            }
        }
    }
    Ok(dedup_canonical(out))
}

/// A-tables with no ordering discipline: choose an unordered pair summing
/// to the Cartan row for every simple spherical root independently, demand
/// that rows reaching across two columns appear in both pairs, then merge
/// equal rows into shared elements.
fn brute_a_tables(rs: &RootSystem, sigma: &[SphericalRoot]) -> Vec<Vec<(String, Vec<i64>)>> {
    let n_sigma = sigma.len();
    let sa: Vec<(usize, usize)> = sigma
        .iter()
        .enumerate()
        .filter_map(|(j, r)| match r.kind {
            Some(RootKind::A1) => Some((r.vector.support().into_iter().next()?, j)),
            _ => None,
        })
        .collect();
    if sa.is_empty() {
        return vec![Vec::new()];
    }
    let simple_cols: BTreeSet<usize> = sa.iter().map(|&(_, j)| j).collect();

    // Candidate unordered pairs per simple spherical root.
    let mut choices: Vec<Vec<(Vec<i64>, Vec<i64>)>> = Vec::new();
    for &(alpha, col) in &sa {
        let c: Vec<i64> = sigma.iter().map(|r| rs.pairing(alpha, &r.vector)).collect();
        let mut pairs = Vec::new();
        let mut r = vec![0i64; n_sigma];
        walk_box(&c, col, &simple_cols, 0, &mut r, &mut pairs);
        choices.push(pairs);
    }

    let mut tables = Vec::new();
    let mut picked: Vec<usize> = Vec::new();
    fn product(
        sa: &[(usize, usize)],
        choices: &[Vec<(Vec<i64>, Vec<i64>)>],
        picked: &mut Vec<usize>,
        tables: &mut Vec<Vec<(String, Vec<i64>)>>,
    ) {
        let p = picked.len();
        if p == choices.len() {
            if let Some(table) = merge_choices(sa, choices, picked) {
                tables.push(table);
            }
            return;
        }
        for i in 0..choices[p].len() {
            picked.push(i);
            product(sa, choices, picked, tables);
            picked.pop();
        }
    }
    product(&sa, &choices, &mut picked, &mut tables);
    tables
}

fn walk_box(
    c: &[i64],
    col: usize,
    simple_cols: &BTreeSet<usize>,
    j: usize,
    r: &mut Vec<i64>,
    pairs: &mut Vec<(Vec<i64>, Vec<i64>)>,
) {
    if j == c.len() {
        let partner: Vec<i64> = (0..c.len()).map(|i| c[i] - r[i]).collect();
        if *r >= partner {
            pairs.push((r.clone(), partner));
        }
        return;
    }
    let (low, high) = if j == col {
        (1, 1)
    } else if simple_cols.contains(&j) {
        (c[j] - 1, 1)
    } else {
        (c[j], 0)
    };
    for v in low..=high {
        r[j] = v;
        walk_box(c, col, simple_cols, j + 1, r, pairs);
    }
    r[j] = 0;
}

/// Check cross-column consistency of one global choice and merge shared
/// rows into single elements. Returns the named table, or `None` when some
/// row claims membership at a column whose pair does not contain it.
fn merge_choices(
    sa: &[(usize, usize)],
    choices: &[Vec<(Vec<i64>, Vec<i64>)>],
    picked: &[usize],
) -> Option<Vec<(String, Vec<i64>)>> {
    let pair_rows = |p: usize| -> [&Vec<i64>; 2] {
        let (ref a, ref b) = choices[p][picked[p]];
        [a, b]
    };
    // Rows with 1 at two columns must occur in both pairs, with matching
    // multiplicity.
    for p in 0..sa.len() {
        for q in p + 1..sa.len() {
            let (col_p, col_q) = (sa[p].1, sa[q].1);
            let mut from_p: Vec<&Vec<i64>> = pair_rows(p)
                .into_iter()
                .filter(|r| r[col_q] == 1)
                .collect();
            let mut from_q: Vec<&Vec<i64>> = pair_rows(q)
                .into_iter()
                .filter(|r| r[col_p] == 1)
                .collect();
            from_p.sort();
            from_q.sort();
            if from_p != from_q {
                return None;
            }
        }
    }
    let mut table: Vec<(String, Vec<i64>)> = Vec::new();
    for p in 0..sa.len() {
        for row in pair_rows(p) {
            let first = (0..sa.len()).find(|&q| row[sa[q].1] == 1).unwrap_or(p);
            if first == p {
                table.push((format!("x{}", table.len() + 1), row.clone()));
            }
        }
    }
    Some(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::WeightVector;
    use crate::system::systems_equal_up_to_automorphism;

    fn system(
        spec: &str,
        sp: &[usize],
        sigma: &[&[i64]],
        a: &[(&str, &[i64])],
    ) -> SphericalSystem {
        SphericalSystem::new(
            parse_group_spec(spec).unwrap(),
            sp.iter().copied().collect(),
            sigma.iter().map(|v| WeightVector(v.to_vec())).collect(),
            a.iter()
                .map(|&(name, row)| (name.to_string(), row.to_vec()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn twelve_groups_up_to_rank_four() {
        let groups = all_groups_up_to_rank(4);
        let specs: Vec<String> = groups.iter().map(|g| g.spec_string()).collect();
        assert_eq!(
            specs,
            vec![
                "A1",
                "A1xA1",
                "A2",
                "A1xA1xA1",
                "A2xA1",
                "A3",
                "A1xA1xA1xA1",
                "A2xA1xA1",
                "A2xA2",
                "A3xA1",
                "A4",
                "D4",
            ]
        );
    }

    #[test]
    fn rank_one_cuspidal_counts_match_the_inventory() {
        let opts = EnumerateOptions {
            max_rank: Some(1),
            cuspidal_only: true,
            ..EnumerateOptions::default()
        };
        for (spec, expected) in [("A1", 2), ("A1xA1", 1), ("A2", 1), ("A3", 2), ("D4", 1)] {
            let rs = parse_group_spec(spec).unwrap();
            let found = enumerate_systems(&rs, &opts).unwrap();
            assert_eq!(found.len(), expected, "cuspidal rank-1 systems over {spec}");
        }
    }

    #[test]
    fn the_two_rank_one_a1_systems() {
        let rs = parse_group_spec("A1").unwrap();
        let found = enumerate_systems(&rs, &EnumerateOptions::default()).unwrap();
        assert_eq!(found.len(), 2);
        let simple = found
            .iter()
            .find(|s| s.sigma()[0].vector.0 == vec![1])
            .expect("the simple-root system");
        assert_eq!(simple.a_elements().len(), 2);
        assert!(simple.a_elements().iter().all(|e| e.row == vec![1]));
        let doubled = found
            .iter()
            .find(|s| s.sigma()[0].vector.0 == vec![2])
            .expect("the doubled-root system");
        assert!(doubled.a_elements().is_empty());
    }

    #[test]
    fn forced_windows_pin_down_the_d4_fork_root() {
        let rs = parse_group_spec("D4").unwrap();
        let opts = EnumerateOptions {
            max_rank: Some(1),
            cuspidal_only: true,
            ..EnumerateOptions::default()
        };
        let found = enumerate_systems(&rs, &opts).unwrap();
        assert_eq!(found.len(), 1);
        let expected = system("D4", &[1, 2, 3], &[&[2, 2, 1, 1]], &[]);
        assert!(systems_equal_up_to_automorphism(&found[0], &expected).is_some());
        assert!(matches!(found[0].sigma()[0].kind, Some(RootKind::Dm(4))));
    }

    #[test]
    fn rank_one_cuspidal_kinds_follow_the_group() {
        let opts = EnumerateOptions {
            max_rank: Some(1),
            cuspidal_only: true,
            ..EnumerateOptions::default()
        };
        let a4 = enumerate_systems(&parse_group_spec("A4").unwrap(), &opts).unwrap();
        assert_eq!(a4.len(), 1);
        assert!(matches!(a4[0].sigma()[0].kind, Some(RootKind::Am(4))));

        let d5 = enumerate_systems(&parse_group_spec("D5").unwrap(), &opts).unwrap();
        assert_eq!(d5.len(), 1);
        assert_eq!(d5[0].sigma()[0].vector.0, vec![2, 2, 2, 1, 1]);
        assert!(matches!(d5[0].sigma()[0].kind, Some(RootKind::Dm(5))));
    }

    #[test]
    fn dedup_collapses_the_diagram_flip() {
        let rs = parse_group_spec("A2").unwrap();
        let with = enumerate_systems(&rs, &EnumerateOptions::default()).unwrap();
        let without = enumerate_systems(
            &rs,
            &EnumerateOptions {
                dedup: false,
                ..EnumerateOptions::default()
            },
        )
        .unwrap();
        assert!(without.len() > with.len());
        // The single simple-root systems on either end are flip images.
        let ends: Vec<&SphericalSystem> = without
            .iter()
            .filter(|s| s.rank() == 1 && s.sigma()[0].vector.support().len() == 1)
            .filter(|s| !s.a_elements().is_empty())
            .collect();
        assert_eq!(ends.len(), 2);
        assert!(systems_equal_up_to_automorphism(ends[0], ends[1]).is_some());
    }

    #[test]
    fn enumeration_agrees_with_the_brute_oracle() {
        for spec in ["A1", "A1xA1", "A2", "A1xA1xA1", "A2xA1", "A3"] {
            let rs = parse_group_spec(spec).unwrap();
            let fast = enumerate_systems(&rs, &EnumerateOptions::default()).unwrap();
            let brute = brute_force_systems(&rs).unwrap();
            assert_eq!(fast.len(), brute.len(), "system count over {spec}");
            for sys in &fast {
                assert!(
                    brute
                        .iter()
                        .any(|other| systems_equal_up_to_automorphism(sys, other).is_some()),
                    "missing from the oracle over {spec}: {:?}",
                    sys.sigma().iter().map(|r| &r.vector.0).collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn invariants_match_hand_calculations() {
        let do13 = system("D4", &[2, 3], &[&[2, 0, 0, 0], &[0, 2, 1, 1]], &[]);
        let inv = invariants(&do13).unwrap();
        assert_eq!(inv.dim_gh, 12);
        assert_eq!(inv.rank_xi_h, 0);
        assert!(inv.cuspidal && inv.rigid && inv.primitive);

        let fork = system(
            "D5",
            &[],
            &[
                &[1, 1, 0, 0, 0],
                &[0, 1, 1, 0, 0],
                &[0, 0, 1, 1, 0],
                &[0, 0, 1, 0, 1],
            ],
            &[],
        );
        let inv = invariants(&fork).unwrap();
        assert_eq!(inv.dim_gh, 24);
        assert_eq!(inv.rank_xi_h, 1);
        assert!(inv.cuspidal && inv.rigid && inv.primitive);

        let flag = system("A2", &[0, 1], &[], &[]);
        let inv = invariants(&flag).unwrap();
        assert_eq!(inv.dim_gh, 0);
        assert_eq!(inv.rank_xi_h, 0);
        assert!(!inv.cuspidal);
    }
}
