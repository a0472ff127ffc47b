//! The spherical-system data model: the catalogue of spherical roots a
//! group admits, the triple (S^p, Σ, A), full axiom validation, and
//! isomorphism up to diagram automorphism.

mod colours;

pub use colours::{build_colours, Colour, ColourKind, ColourSet};

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::rank_i64;
use crate::rootsys::{RootSystem, WeightVector};

/// Shape class of a spherical root, following the rank-one catalogue for
/// simply-laced groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RootKind {
    /// A simple root α.
    A1,
    /// A doubled simple root 2α.
    A1Prime,
    /// The sum of a chain of m ≥ 2 simple roots.
    Am(usize),
    /// α + β for orthogonal simple roots α, β.
    A1xA1,
    /// α + 2β + γ along a 3-vertex chain with middle β.
    D3,
    /// Coefficients 2,…,2,1,1 on a D_m subdiagram, m ≥ 4: the two short
    /// fork ends carry 1, the tail (branch vertex included) carries 2.
    Dm(usize),
}

impl RootKind {
    pub fn label(&self) -> String {
        match self {
            RootKind::A1 => "a1".into(),
            RootKind::A1Prime => "a1'".into(),
            RootKind::Am(m) => format!("a{m}"),
            RootKind::A1xA1 => "a1xa1".into(),
            RootKind::D3 => "d3".into(),
            RootKind::Dm(m) => format!("d{m}"),
        }
    }
}

/// One spherical root: its weight vector, its shape class when the vector
/// belongs to the group's catalogue (`None` marks a vector produced by a
/// quotient that is not itself catalogued), and the window that axiom (S)
/// imposes on S^p: `lower ⊆ S^p ⊆ upper` elementwise over all of Σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalRoot {
    pub vector: WeightVector,
    pub kind: Option<RootKind>,
    pub lower: BTreeSet<usize>,
    pub upper: BTreeSet<usize>,
}

/// `lower` = vanishing pairings inside the support, `upper` = vanishing
/// pairings anywhere. Both are read off the Cartan matrix, which reproduces
/// the catalogue's per-shape constraints (chain interiors for a_m, the
/// non-branch tail tip excluded for d_m, everything orthogonal for the rest).
fn windows(rs: &RootSystem, v: &WeightVector) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let upper: BTreeSet<usize> = (0..rs.rank()).filter(|&i| rs.pairing(i, v) == 0).collect();
    let supp = v.support();
    let lower = upper.intersection(&supp).copied().collect();
    (lower, upper)
}

/// All spherical roots the group admits, sorted by weight vector.
pub fn spherical_roots_of_group(rs: &RootSystem) -> Vec<SphericalRoot> {
    let n = rs.rank();
    let mut table: BTreeMap<WeightVector, RootKind> = BTreeMap::new();
    let mut put = |v: Vec<i64>, kind: RootKind| {
        let prev = table.insert(WeightVector(v), kind);
        debug_assert!(prev.is_none() || prev == Some(kind), "conflicting root shapes");
    };

    for i in 0..n {
        let mut unit = vec![0; n];
        unit[i] = 1;
        put(unit, RootKind::A1);
        let mut doubled = vec![0; n];
        doubled[i] = 2;
        put(doubled, RootKind::A1Prime);
    }

    for i in 0..n {
        for j in i + 1..n {
            if rs.orthogonal(i, j) {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = 1;
                put(v, RootKind::A1xA1);
            }
            // Chains: the tree path between any same-component pair is an
            // induced A_m subdiagram.
            if let Some(path) = rs.tree_path(i, j) {
                let mut v = vec![0; n];
                for &k in &path {
                    v[k] = 1;
                }
                put(v, RootKind::Am(path.len()));
                if path.len() == 3 {
                    let mut w = vec![0; n];
                    w[path[0]] = 1;
                    w[path[1]] = 2;
                    w[path[2]] = 1;
                    put(w, RootKind::D3);
                }
            }
        }
    }

    // D_m shapes: a branch vertex c with neighbours y, z carrying 1 and a
    // doubled tail from c out through a third neighbour. The support is
    // automatically an induced D_m fork.
    for c in 0..n {
        let nb = rs.neighbours(c);
        if nb.len() < 3 {
            continue;
        }
        for (yi, &y) in nb.iter().enumerate() {
            for &z in nb.iter().skip(yi + 1) {
                for w in 0..n {
                    let Some(path) = rs.tree_path(c, w) else { continue };
                    if path.len() < 2 || path[1] == y || path[1] == z {
                        continue;
                    }
                    let mut v = vec![0; n];
                    v[y] = 1;
                    v[z] = 1;
                    for &k in &path {
                        v[k] = 2;
                    }
                    put(v, RootKind::Dm(path.len() + 2));
                }
            }
        }
    }

    table
        .into_iter()
        .map(|(vector, kind)| {
            let (lower, upper) = windows(rs, &vector);
            SphericalRoot {
                vector,
                kind: Some(kind),
                lower,
                upper,
            }
        })
        .collect()
}

/// One element of A with its functional row over Σ (in Σ order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AElement {
    pub name: String,
    pub row: Vec<i64>,
}

/// The triple (S^p, Σ, A) over a fixed adjoint group. Immutable once built;
/// validation is a separate, total report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalSystem {
    group: RootSystem,
    sp: BTreeSet<usize>,
    sigma: Vec<SphericalRoot>,
    a_elements: Vec<AElement>,
}

impl SphericalSystem {
    /// Builds the triple, resolving each Σ vector against the group's root
    /// catalogue (unknown vectors are kept with `kind: None`). Only shape
    /// errors are rejected here; axiom violations are `validate`'s job.
    pub fn new(
        group: RootSystem,
        sp: BTreeSet<usize>,
        sigma: Vec<WeightVector>,
        a_elements: Vec<(String, Vec<i64>)>,
    ) -> Result<SphericalSystem> {
        let n = group.rank();
        if let Some(&bad) = sp.iter().find(|&&i| i >= n) {
            return Err(Error::UnknownRoot(format!("index {bad}")));
        }
        for v in &sigma {
            if v.0.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "spherical root of width {} over a rank-{n} group",
                    v.0.len()
                )));
            }
        }
        let catalogue: BTreeMap<WeightVector, RootKind> = spherical_roots_of_group(&group)
            .into_iter()
            .map(|r| (r.vector, r.kind.unwrap()))
            .collect();
        let sigma: Vec<SphericalRoot> = sigma
            .into_iter()
            .map(|vector| {
                let (lower, upper) = windows(&group, &vector);
                SphericalRoot {
                    kind: catalogue.get(&vector).copied(),
                    vector,
                    lower,
                    upper,
                }
            })
            .collect();
        let mut seen = BTreeSet::new();
        for (name, row) in &a_elements {
            if row.len() != sigma.len() {
                return Err(Error::DimensionMismatch(format!(
                    "A-element '{name}' has {} values for {} spherical roots",
                    row.len(),
                    sigma.len()
                )));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidSystem(format!(
                    "duplicate A-element name '{name}'"
                )));
            }
        }
        let a_elements = a_elements
            .into_iter()
            .map(|(name, row)| AElement { name, row })
            .collect();
        Ok(SphericalSystem {
            group,
            sp,
            sigma,
            a_elements,
        })
    }

    /// The rank-zero system over the empty group.
    pub fn trivial() -> SphericalSystem {
        SphericalSystem {
            group: crate::rootsys::parse_group_spec("1").expect("trivial group"),
            sp: BTreeSet::new(),
            sigma: Vec::new(),
            a_elements: Vec::new(),
        }
    }

    pub fn group(&self) -> &RootSystem {
        &self.group
    }

    pub fn sp(&self) -> &BTreeSet<usize> {
        &self.sp
    }

    pub fn sigma(&self) -> &[SphericalRoot] {
        &self.sigma
    }

    pub fn a_elements(&self) -> &[AElement] {
        &self.a_elements
    }

    /// Number of spherical roots (the rank of the system).
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma_index(&self, v: &WeightVector) -> Option<usize> {
        self.sigma.iter().position(|r| &r.vector == v)
    }

    /// Union of the supports of all spherical roots.
    pub fn sigma_support(&self) -> BTreeSet<usize> {
        self.sigma
            .iter()
            .flat_map(|r| r.vector.support())
            .collect()
    }

    /// Simple roots that are themselves spherical roots, as (root index,
    /// Σ column) pairs sorted by root index.
    pub fn simple_sigma(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .sigma
            .iter()
            .enumerate()
            .filter_map(|(j, r)| match r.kind {
                Some(RootKind::A1) => Some((r.vector.support().into_iter().next()?, j)),
                _ => None,
            })
            .collect();
        out.sort();
        out
    }

    /// ⟨α∨, γ⟩ for every γ ∈ Σ, in Σ order.
    pub fn cartan_row(&self, alpha: usize) -> Vec<i64> {
        self.sigma
            .iter()
            .map(|r| self.group.pairing(alpha, &r.vector))
            .collect()
    }

    /// A(α): indices of the A-elements with value 1 at the column of α.
    /// Empty unless α is itself a spherical root.
    pub fn a_of(&self, alpha: usize) -> Vec<usize> {
        let Some((_, col)) = self.simple_sigma().into_iter().find(|&(a, _)| a == alpha) else {
            return Vec::new();
        };
        self.a_elements
            .iter()
            .enumerate()
            .filter(|(_, e)| e.row[col] == 1)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Verdict on one axiom, with the offending tuples spelled out.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Total validation result: every axiom is evaluated even after a failure.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> String {
        if self.ok() {
            return "all axioms pass".into();
        }
        let failing: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.axiom)
            .collect();
        format!("failing: {}", failing.join(", "))
    }
}

/// Checks, in order: catalogue membership of every γ, linear independence
/// of Σ, A1 (values ≤ 1, equality only at simple spherical roots), A2 (two
/// elements per simple spherical root, rows summing to the Cartan pairings),
/// A3 (no stray A-elements), Σ1 (doubled roots force even nonpositive
/// pairings), Σ2 (orthogonal summed pairs force equal pairing rows), and S
/// (the S^p window).
pub fn validate(sys: &SphericalSystem) -> ValidationReport {
    let rs = &sys.group;
    let mut checks = Vec::new();

    let membership: Vec<String> = sys
        .sigma
        .iter()
        .filter(|r| r.kind.is_none())
        .map(|r| format!("{} is not a spherical root of {}", r.vector.symbol(rs), rs.spec_string()))
        .collect();
    checks.push(AxiomCheck {
        axiom: "membership",
        passed: membership.is_empty(),
        failures: membership,
    });

    let vectors: Vec<Vec<i64>> = sys.sigma.iter().map(|r| r.vector.0.clone()).collect();
    let independent = rank_i64(&vectors, rs.rank()) == vectors.len();
    checks.push(AxiomCheck {
        axiom: "independence",
        passed: independent,
        failures: if independent {
            Vec::new()
        } else {
            vec!["spherical roots are linearly dependent".into()]
        },
    });

    let simple = sys.simple_sigma();
    let simple_cols: BTreeSet<usize> = simple.iter().map(|&(_, j)| j).collect();

    let mut a1 = Vec::new();
    for e in &sys.a_elements {
        for (j, &v) in e.row.iter().enumerate() {
            if v > 1 || (v == 1 && !simple_cols.contains(&j)) {
                a1.push(format!(
                    "⟨ρ({}),{}⟩ = {v}",
                    e.name,
                    sys.sigma[j].vector.symbol(rs)
                ));
            }
        }
    }
    checks.push(AxiomCheck {
        axiom: "A1",
        passed: a1.is_empty(),
        failures: a1,
    });

    let mut a2 = Vec::new();
    for &(alpha, col) in &simple {
        let members: Vec<usize> = sys
            .a_elements
            .iter()
            .enumerate()
            .filter(|(_, e)| e.row[col] == 1)
            .map(|(i, _)| i)
            .collect();
        if members.len() != 2 {
            a2.push(format!(
                "|A({})| = {}",
                rs.root_name(alpha),
                members.len()
            ));
            continue;
        }
        let want = sys.cartan_row(alpha);
        let got: Vec<i64> = (0..sys.sigma.len())
            .map(|j| sys.a_elements[members[0]].row[j] + sys.a_elements[members[1]].row[j])
            .collect();
        if got != want {
            a2.push(format!(
                "rows of A({}) sum to {:?}, pairings are {:?}",
                rs.root_name(alpha),
                got,
                want
            ));
        }
    }
    checks.push(AxiomCheck {
        axiom: "A2",
        passed: a2.is_empty(),
        failures: a2,
    });

    let a3: Vec<String> = sys
        .a_elements
        .iter()
        .filter(|e| !simple_cols.iter().any(|&j| e.row[j] == 1))
        .map(|e| format!("{} moves no simple spherical root", e.name))
        .collect();
    checks.push(AxiomCheck {
        axiom: "A3",
        passed: a3.is_empty(),
        failures: a3,
    });

    let mut sigma1 = Vec::new();
    for (j, r) in sys.sigma.iter().enumerate() {
        if r.kind != Some(RootKind::A1Prime) {
            continue;
        }
        let alpha = *r.vector.support().first().expect("doubled root support");
        for (k, other) in sys.sigma.iter().enumerate() {
            if k == j {
                continue;
            }
            let p = rs.pairing(alpha, &other.vector);
            if p > 0 || p % 2 != 0 {
                sigma1.push(format!(
                    "⟨{}∨,{}⟩ = {p} next to the doubled root {}",
                    rs.root_name(alpha),
                    other.vector.symbol(rs),
                    r.vector.symbol(rs)
                ));
            }
        }
    }
    checks.push(AxiomCheck {
        axiom: "Sigma1",
        passed: sigma1.is_empty(),
        failures: sigma1,
    });

    let mut sigma2 = Vec::new();
    for r in &sys.sigma {
        if r.kind != Some(RootKind::A1xA1) {
            continue;
        }
        let parts: Vec<usize> = r.vector.support().into_iter().collect();
        let (a, b) = (parts[0], parts[1]);
        for other in &sys.sigma {
            let (pa, pb) = (rs.pairing(a, &other.vector), rs.pairing(b, &other.vector));
            if pa != pb {
                sigma2.push(format!(
                    "⟨{}∨,{}⟩ = {pa} but ⟨{}∨,{}⟩ = {pb} with {} ∈ Σ",
                    rs.root_name(a),
                    other.vector.symbol(rs),
                    rs.root_name(b),
                    other.vector.symbol(rs),
                    r.vector.symbol(rs)
                ));
            }
        }
    }
    checks.push(AxiomCheck {
        axiom: "Sigma2",
        passed: sigma2.is_empty(),
        failures: sigma2,
    });

    let mut window = Vec::new();
    for r in &sys.sigma {
        for &alpha in r.lower.difference(&sys.sp) {
            window.push(format!(
                "{} must lie in S^p ({} forces it)",
                rs.root_name(alpha),
                r.vector.symbol(rs)
            ));
        }
        for &alpha in sys.sp.difference(&r.upper) {
            window.push(format!(
                "{} ∈ S^p pairs nonzero with {}",
                rs.root_name(alpha),
                r.vector.symbol(rs)
            ));
        }
    }
    checks.push(AxiomCheck {
        axiom: "S",
        passed: window.is_empty(),
        failures: window,
    });

    ValidationReport { checks }
}

/// Data that determines a system up to reordering: S^p, the Σ vectors
/// sorted, and the A rows (column-permuted by the Σ sort, then sorted).
/// A-element names are presentation, not substance, and are dropped.
pub type CanonicalKey = (Vec<usize>, Vec<WeightVector>, Vec<Vec<i64>>);

fn key_under(sys: &SphericalSystem, perm: &[usize]) -> CanonicalKey {
    let n = sys.group.rank();
    let mut sp: Vec<usize> = sys.sp.iter().map(|&a| perm[a]).collect();
    sp.sort_unstable();
    let mut sigma: Vec<(WeightVector, usize)> = sys
        .sigma
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let mut v = vec![0; n];
            for (i, &c) in r.vector.0.iter().enumerate() {
                v[perm[i]] = c;
            }
            (WeightVector(v), j)
        })
        .collect();
    sigma.sort();
    let cols: Vec<usize> = sigma.iter().map(|&(_, j)| j).collect();
    let vectors: Vec<WeightVector> = sigma.into_iter().map(|(v, _)| v).collect();
    let mut rows: Vec<Vec<i64>> = sys
        .a_elements
        .iter()
        .map(|e| cols.iter().map(|&j| e.row[j]).collect())
        .collect();
    rows.sort();
    (sp, vectors, rows)
}

/// Minimum of `key_under` over all diagram automorphisms: equal keys mean
/// isomorphic systems.
pub fn canonical_key(sys: &SphericalSystem) -> CanonicalKey {
    sys.group
        .diagram_automorphisms()
        .iter()
        .map(|p| key_under(sys, p))
        .min()
        .expect("identity automorphism always present")
}

/// A diagram automorphism carrying s1 onto s2 (Σ as vector sets, A as row
/// multisets), or `None`. Systems over different groups never match.
pub fn systems_equal_up_to_automorphism(
    s1: &SphericalSystem,
    s2: &SphericalSystem,
) -> Option<Vec<usize>> {
    if s1.group != s2.group {
        return None;
    }
    let identity: Vec<usize> = (0..s2.group.rank()).collect();
    let target = key_under(s2, &identity);
    s1.group
        .diagram_automorphisms()
        .into_iter()
        .find(|p| key_under(s1, p) == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::parse_group_spec;

    fn roots_of(spec: &str) -> Vec<SphericalRoot> {
        spherical_roots_of_group(&parse_group_spec(spec).unwrap())
    }

    fn find<'a>(roots: &'a [SphericalRoot], symbol: &str, rs: &RootSystem) -> &'a SphericalRoot {
        roots
            .iter()
            .find(|r| r.vector.symbol(rs) == symbol)
            .unwrap_or_else(|| panic!("no root {symbol}"))
    }

    #[test]
    fn catalogue_counts_and_kinds() {
        assert_eq!(roots_of("A1").len(), 2);
        // A2: two a1, two a1', one a2, no orthogonal pairs.
        assert_eq!(roots_of("A2").len(), 5);
        // A3: 3+3 singles, 3 chains, 1 d3, 1 orthogonal pair.
        assert_eq!(roots_of("A3").len(), 11);
        // D4: 4+4 singles, 6 chains, 3 d3, 3 orthogonal pairs, 3 forks.
        assert_eq!(roots_of("D4").len(), 23);

        let rs = parse_group_spec("D4").unwrap();
        let roots = roots_of("D4");
        assert_eq!(find(&roots, "a1+2a2+a3", &rs).kind, Some(RootKind::D3));
        assert_eq!(
            find(&roots, "2a1+2a2+a3+a4", &rs).kind,
            Some(RootKind::Dm(4))
        );
        assert_eq!(find(&roots, "a1+a2+a4", &rs).kind, Some(RootKind::Am(3)));
        assert_eq!(find(&roots, "a1+a3", &rs).kind, Some(RootKind::A1xA1));
    }

    #[test]
    fn windows_match_the_catalogue_shapes() {
        let rs = parse_group_spec("A3").unwrap();
        let roots = roots_of("A3");
        let d3 = find(&roots, "a1+2a2+a3", &rs);
        assert_eq!(d3.lower, BTreeSet::from([0, 2]));
        assert_eq!(d3.upper, BTreeSet::from([0, 2]));
        let a3 = find(&roots, "a1+a2+a3", &rs);
        assert_eq!(a3.lower, BTreeSet::from([1]));
        assert_eq!(a3.upper, BTreeSet::from([1]));
        let a2 = find(&roots, "a1+a2", &rs);
        assert!(a2.lower.is_empty());
        assert!(a2.upper.is_empty());

        let d5 = parse_group_spec("D5").unwrap();
        let fork = spherical_roots_of_group(&d5);
        let dn = find(&fork, "2a1+2a2+2a3+a4+a5", &d5);
        assert_eq!(dn.kind, Some(RootKind::Dm(5)));
        assert_eq!(dn.lower, BTreeSet::from([1, 2, 3, 4]));

        // In a bigger group the window allows orthogonal outsiders.
        let a5 = parse_group_spec("A5").unwrap();
        let chains = spherical_roots_of_group(&a5);
        let short = find(&chains, "a1+a2+a3", &a5);
        assert_eq!(short.lower, BTreeSet::from([1]));
        assert_eq!(short.upper, BTreeSet::from([1, 4]));
    }

    #[test]
    fn catalogue_is_automorphism_stable() {
        for spec in ["A3", "D4", "D5", "A2xA2"] {
            let rs = parse_group_spec(spec).unwrap();
            let roots = spherical_roots_of_group(&rs);
            let vectors: BTreeSet<WeightVector> =
                roots.iter().map(|r| r.vector.clone()).collect();
            for perm in rs.diagram_automorphisms() {
                for v in &vectors {
                    let mut image = vec![0; rs.rank()];
                    for (i, &c) in v.0.iter().enumerate() {
                        image[perm[i]] = c;
                    }
                    assert!(vectors.contains(&WeightVector(image)));
                }
            }
        }
    }

    #[test]
    fn dcstar4_validates() {
        // Adjacent-pair sums only: no simple root lies in Σ, so the
        // A-table is empty and every simple root will carry a b-colour.
        let rs = parse_group_spec("D4").unwrap();
        let sigma = vec![
            WeightVector(vec![1, 1, 0, 0]),
            WeightVector(vec![0, 1, 1, 0]),
            WeightVector(vec![0, 1, 0, 1]),
        ];
        let sys = SphericalSystem::new(rs, BTreeSet::new(), sigma, vec![]).unwrap();
        let report = validate(&sys);
        assert!(report.ok(), "{}", report.summary());
        assert!(sys.simple_sigma().is_empty());
        assert!(sys.a_of(1).is_empty());
    }

    #[test]
    fn validate_rejects_broken_tables() {
        let rs = parse_group_spec("A1").unwrap();
        // Value 2 violates A1; with no value equal to 1 the element is
        // stray (A3) and the pair at α1 is missing (A2).
        let sys = SphericalSystem::new(
            rs.clone(),
            BTreeSet::new(),
            vec![WeightVector(vec![1])],
            vec![("d".into(), vec![2])],
        )
        .unwrap();
        let report = validate(&sys);
        assert!(!report.ok());
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.axiom)
            .collect();
        assert_eq!(failing, vec!["A1", "A2", "A3"]);

        // A doubled root whose neighbour is itself in Σ: ⟨α1∨,α2⟩ = -1 is
        // odd, so the doubled-root axiom fails while everything else holds.
        let a2 = parse_group_spec("A2").unwrap();
        let sys = SphericalSystem::new(
            a2,
            BTreeSet::new(),
            vec![WeightVector(vec![2, 0]), WeightVector(vec![0, 1])],
            vec![
                ("d+".into(), vec![0, 1]),
                ("d-".into(), vec![-2, 1]),
            ],
        )
        .unwrap();
        let report = validate(&sys);
        for check in &report.checks {
            assert_eq!(check.passed, check.axiom != "Sigma1", "{}", check.axiom);
        }

        // S^p outside a window breaks S.
        let a3 = parse_group_spec("A3").unwrap();
        let sys = SphericalSystem::new(
            a3,
            BTreeSet::from([0]),
            vec![WeightVector(vec![1, 1, 0])],
            vec![],
        )
        .unwrap();
        let s = validate(&sys);
        let w = s.checks.iter().find(|c| c.axiom == "S").unwrap();
        assert!(!w.passed);
    }

    #[test]
    fn dcstar5_validates_and_knows_its_shape() {
        let rs = parse_group_spec("D5").unwrap();
        let sigma = vec![
            WeightVector(vec![1, 1, 0, 0, 0]),
            WeightVector(vec![0, 1, 1, 0, 0]),
            WeightVector(vec![0, 0, 1, 1, 0]),
            WeightVector(vec![0, 0, 1, 0, 1]),
        ];
        let sys = SphericalSystem::new(rs, BTreeSet::new(), sigma, vec![]).unwrap();
        let report = validate(&sys);
        assert!(report.ok(), "{}", report.summary());
        assert_eq!(sys.rank(), 4);
        assert!(sys.sigma().iter().all(|r| r.kind == Some(RootKind::Am(2))));
        assert_eq!(sys.sigma_support(), BTreeSet::from([0, 1, 2, 3, 4]));
        assert_eq!(
            sys.cartan_row(2),
            vec![-1, 1, 1, 1],
            "pairings of the branch vertex against Σ"
        );
    }

    #[test]
    fn automorphism_matching_finds_the_flip() {
        let rs = parse_group_spec("A3").unwrap();
        let left = SphericalSystem::new(
            rs.clone(),
            BTreeSet::new(),
            vec![WeightVector(vec![1, 0, 0])],
            vec![
                ("d+".into(), vec![1]),
                ("d-".into(), vec![1]),
            ],
        )
        .unwrap();
        let right = SphericalSystem::new(
            rs.clone(),
            BTreeSet::new(),
            vec![WeightVector(vec![0, 0, 1])],
            vec![
                ("e+".into(), vec![1]),
                ("e-".into(), vec![1]),
            ],
        )
        .unwrap();
        let perm = systems_equal_up_to_automorphism(&left, &right).expect("flip");
        assert_eq!(perm, vec![2, 1, 0]);
        assert!(systems_equal_up_to_automorphism(&left, &left).is_some());
        assert_eq!(canonical_key(&left), canonical_key(&right));

        let other = SphericalSystem::new(
            rs,
            BTreeSet::new(),
            vec![WeightVector(vec![0, 1, 0])],
            vec![
                ("d+".into(), vec![1]),
                ("d-".into(), vec![1]),
            ],
        )
        .unwrap();
        assert!(systems_equal_up_to_automorphism(&left, &other).is_none());
    }

    #[test]
    fn trivial_system_is_well_formed() {
        let t = SphericalSystem::trivial();
        assert!(t.group().is_empty());
        assert!(validate(&t).ok());
        assert_eq!(t.rank(), 0);
    }
}
