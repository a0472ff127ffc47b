//! Strong adjacency between spherical roots, per-component erasability
//! analysis, primitivity, and the full reduction tree: stripping parabolic
//! inductions, splitting direct and fiber products, and quotienting by
//! projective elements until every leaf is primitive.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::quotient::{
    direct_factors, fiber_pair_conditions, fiber_product_decompositions, is_distinguished,
    localize_s, parabolic_induction_base, projective_elements, quotient_by,
    quotient_by_projective, DistinguishedReport,
};
use crate::system::{build_colours, ColourSet, RootKind, SphericalSystem};

/// Colours moved by the support of one spherical root.
fn colours_of_root(sys: &SphericalSystem, delta: &ColourSet, j: usize) -> BTreeSet<usize> {
    sys.sigma()[j]
        .vector
        .support()
        .into_iter()
        .flat_map(|a| delta.delta_of_root(a).iter().copied())
        .collect()
}

/// Two spherical roots are strongly adjacent when every colour moved by the
/// support of either one takes a nonzero value on the other. This is the
/// relation whose transitive closure groups Σ into blocks that erasability
/// arguments must treat together.
pub fn strongly_adjacent(
    sys: &SphericalSystem,
    delta: &ColourSet,
    j1: usize,
    j2: usize,
) -> Result<bool> {
    let n_sigma = sys.rank();
    for j in [j1, j2] {
        if j >= n_sigma {
            return Err(Error::UnknownSigma(format!("column {j}")));
        }
    }
    if j1 == j2 {
        return Err(Error::UnknownSigma(
            "strong adjacency compares two distinct spherical roots".into(),
        ));
    }
    let crosses = |from: usize, to: usize| {
        colours_of_root(sys, delta, from)
            .iter()
            .all(|&d| delta.colours()[d].row[to] != 0)
    };
    Ok(crosses(j1, j2) && crosses(j2, j1))
}

/// Σ partitioned into strong components: classes of the transitive closure
/// of strong adjacency, listed by smallest column index.
pub fn strong_components(sys: &SphericalSystem, delta: &ColourSet) -> Result<Vec<BTreeSet<usize>>> {
    let n_sigma = sys.rank();
    let mut seen = vec![false; n_sigma];
    let mut components = Vec::new();
    for start in 0..n_sigma {
        if seen[start] {
            continue;
        }
        let mut component = BTreeSet::from([start]);
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(j) = queue.pop() {
            for k in 0..n_sigma {
                if !seen[k] && strongly_adjacent(sys, delta, j, k)? {
                    seen[k] = true;
                    component.insert(k);
                    queue.push(k);
                }
            }
        }
        components.push(component);
    }
    Ok(components)
}

/// The colours attached to a set of spherical roots: moved by some root of
/// the union of supports, and vanishing on every column outside the set.
/// Only these colours can carry a quotient that erases exactly this part
/// of Σ while leaving the rest untouched.
pub fn component_colours(
    sys: &SphericalSystem,
    delta: &ColourSet,
    sigma_subset: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>> {
    let n_sigma = sys.rank();
    if let Some(&bad) = sigma_subset.iter().find(|&&j| j >= n_sigma) {
        return Err(Error::UnknownSigma(format!("column {bad}")));
    }
    let moved: BTreeSet<usize> = sigma_subset
        .iter()
        .flat_map(|&j| colours_of_root(sys, delta, j))
        .collect();
    Ok(moved
        .into_iter()
        .filter(|&d| {
            (0..n_sigma)
                .all(|j| sigma_subset.contains(&j) || delta.colours()[d].row[j] == 0)
        })
        .collect())
}

/// How a block of spherical roots can be removed, strongest claim first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentStatus {
    /// The support of the block splits off as a direct factor of the
    /// cuspidal part.
    Isolated,
    /// Some nonempty subset of its colours is distinguished and smooth.
    Erasable,
    /// Some nonempty subset of its colours is distinguished with the
    /// ∗-property, but none is smooth.
    QuasiErasable,
    /// No nonempty subset of its colours supports a quotient.
    None,
}

/// The erasability report for one union of strong components.
#[derive(Clone, Debug)]
pub struct ComponentAnalysis {
    pub sigma_subset: BTreeSet<usize>,
    /// Colours that vanish outside the block, as indices into the colour set.
    pub delta_of: BTreeSet<usize>,
    pub status: ComponentStatus,
    /// The smallest colour subset backing the status: smooth when erasable,
    /// ∗ when only quasi-erasable.
    pub witness: Option<BTreeSet<usize>>,
}

/// Nonempty subsets of `0..k` as bitmasks, smallest first, ties by value.
fn masks_by_size(k: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..(1u32 << k)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
}

fn subset_of(list: &[usize], mask: u32) -> BTreeSet<usize> {
    list.iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &d)| d)
        .collect()
}

/// Classify one block of spherical roots (a union of strong components):
/// isolated, erasable, quasi-erasable, or none, with the smallest witness
/// subset found by searching the block's colours in order of size.
pub fn analyze_component(
    sys: &SphericalSystem,
    delta: &ColourSet,
    sigma_subset: &BTreeSet<usize>,
) -> Result<ComponentAnalysis> {
    let delta_of = component_colours(sys, delta, sigma_subset)?;
    let list: Vec<usize> = delta_of.iter().copied().collect();
    if list.len() > 16 {
        return Err(Error::CapExceeded {
            what: "colour subsets",
            reached: list.len() as u64,
            cap: 16,
        });
    }

    let mut smooth_witness: Option<BTreeSet<usize>> = None;
    let mut star_witness: Option<BTreeSet<usize>> = None;
    for mask in masks_by_size(list.len()) {
        let subset = subset_of(&list, mask);
        let report = is_distinguished(sys, delta, &subset)?;
        if report.star && star_witness.is_none() {
            star_witness = Some(subset.clone());
        }
        if report.smooth {
            smooth_witness = Some(subset);
            break;
        }
    }

    // The block is isolated when its support and the rest of the support of
    // Σ never share a factor of the cuspidal part.
    let supp_all = sys.sigma_support();
    let supp_sub: BTreeSet<usize> = sigma_subset
        .iter()
        .flat_map(|&j| sys.sigma()[j].vector.support())
        .collect();
    let rest: BTreeSet<usize> = supp_all.difference(&supp_sub).copied().collect();
    let isolated = if supp_sub.is_empty() || rest.is_empty() {
        false
    } else {
        let (_, old_of_new) = sys.group().induced_subsystem(&supp_all)?;
        let new_of_old: BTreeMap<usize, usize> = old_of_new
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let part: BTreeSet<usize> = supp_sub.iter().map(|a| new_of_old[a]).collect();
        let core = localize_s(sys, &supp_all)?;
        direct_factors(&core)?
            .iter()
            .all(|f| f.roots.is_subset(&part) || f.roots.is_disjoint(&part))
    };

    let status = if isolated {
        ComponentStatus::Isolated
    } else if smooth_witness.is_some() {
        ComponentStatus::Erasable
    } else if star_witness.is_some() {
        ComponentStatus::QuasiErasable
    } else {
        ComponentStatus::None
    };
    Ok(ComponentAnalysis {
        sigma_subset: sigma_subset.clone(),
        delta_of,
        status,
        witness: smooth_witness.or(star_witness),
    })
}

/// Try to decompose the system across two disjoint blocks of spherical
/// roots: search for a pair of disjoint colour subsets, one attached to each
/// block, that passes every fiber-product condition (both distinguished
/// with ∗, union with ∗, at least one side smooth, removed roots disjoint,
/// added parabolic roots orthogonal). Pairs are tried smallest first, so a
/// returned pair is a minimal witness.
pub fn decompose_by_lemma(
    sys: &SphericalSystem,
    delta: &ColourSet,
    sigma1: &BTreeSet<usize>,
    sigma2: &BTreeSet<usize>,
) -> Result<Option<(BTreeSet<usize>, BTreeSet<usize>)>> {
    if !sigma1.is_disjoint(sigma2) {
        return Ok(None);
    }
    let list1: Vec<usize> = component_colours(sys, delta, sigma1)?.into_iter().collect();
    let list2: Vec<usize> = component_colours(sys, delta, sigma2)?.into_iter().collect();
    if list1.is_empty() || list2.is_empty() {
        return Ok(None);
    }
    if list1.len() + list2.len() > 16 {
        return Err(Error::CapExceeded {
            what: "colour subsets",
            reached: (list1.len() + list2.len()) as u64,
            cap: 16,
        });
    }

    let mut memo: BTreeMap<Vec<usize>, DistinguishedReport> = BTreeMap::new();
    let report_of = |subset: &BTreeSet<usize>,
                         memo: &mut BTreeMap<Vec<usize>, DistinguishedReport>|
     -> Result<DistinguishedReport> {
        let key: Vec<usize> = subset.iter().copied().collect();
        if let Some(r) = memo.get(&key) {
            return Ok(r.clone());
        }
        let r = is_distinguished(sys, delta, subset)?;
        memo.insert(key, r.clone());
        Ok(r)
    };

    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for m1 in 1..(1u32 << list1.len()) {
        for m2 in 1..(1u32 << list2.len()) {
            pairs.push((m1, m2));
        }
    }
    pairs.sort_by_key(|&(m1, m2)| (m1.count_ones() + m2.count_ones(), m1.count_ones(), m1, m2));

    for (m1, m2) in pairs {
        let s1 = subset_of(&list1, m1);
        let s2 = subset_of(&list2, m2);
        if !s1.is_disjoint(&s2) {
            continue;
        }
        let r1 = report_of(&s1, &mut memo)?;
        if !r1.star {
            continue;
        }
        let r2 = report_of(&s2, &mut memo)?;
        if !r2.star {
            continue;
        }
        let union: BTreeSet<usize> = s1.union(&s2).copied().collect();
        if !report_of(&union, &mut memo)?.star {
            continue;
        }
        if fiber_pair_conditions(sys, delta, &r1, &r2) {
            return Ok(Some((s1, s2)));
        }
    }
    Ok(None)
}

/// A comb: every spherical root is a simple root, no parabolic roots, Σ
/// exhausts S, the whole of Σ forms one strong component, and some
/// A-element takes the value 1 on every spherical root. The rank-1 system
/// with Σ = S = {α} satisfies all of this vacuously and counts as a comb.
pub fn is_comb(sys: &SphericalSystem, delta: &ColourSet) -> Result<bool> {
    let n = sys.group().rank();
    if n == 0 || sys.rank() != n || !sys.sp().is_empty() {
        return Ok(false);
    }
    if !sys
        .sigma()
        .iter()
        .all(|g| matches!(g.kind, Some(RootKind::A1)))
    {
        return Ok(false);
    }
    if strong_components(sys, delta)?.len() != 1 {
        return Ok(false);
    }
    Ok(sys
        .a_elements()
        .iter()
        .any(|e| e.row.iter().all(|&v| v == 1)))
}

/// Why a system is or is not primitive.
#[derive(Clone, Debug)]
pub struct PrimitiveVerdict {
    pub primitive: bool,
    /// One line per failing clause; empty exactly when primitive.
    pub reasons: Vec<String>,
}

/// A system is primitive when it is cuspidal, has no projective elements,
/// and admits no fiber-product decomposition. Primitive systems are the
/// leaves of every reduction tree.
pub fn is_primitive(sys: &SphericalSystem) -> Result<PrimitiveVerdict> {
    let mut reasons = Vec::new();
    let (_, cuspidal) = parabolic_induction_base(sys);
    if !cuspidal {
        reasons.push("not cuspidal: some simple root lies outside the support of Σ".to_string());
    }
    let projectives = projective_elements(sys);
    if !projectives.is_empty() {
        let names: Vec<&str> = projectives
            .iter()
            .map(|&e| sys.a_elements()[e].name.as_str())
            .collect();
        reasons.push(format!("projective elements: {}", names.join(", ")));
    }
    let delta = build_colours(sys)?;
    let pairs = fiber_product_decompositions(sys, &delta)?;
    if !pairs.is_empty() {
        reasons.push(format!(
            "{} fiber-product decomposition{}",
            pairs.len(),
            if pairs.len() == 1 { "" } else { "s" }
        ));
    }
    Ok(PrimitiveVerdict {
        primitive: reasons.is_empty(),
        reasons,
    })
}

/// The kind of one reduction step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    ParabolicInductionStrip,
    DirectProductSplit,
    ProjectiveFibration,
    FiberProductSplit,
}

impl StepKind {
    pub fn label(self) -> &'static str {
        match self {
            StepKind::ParabolicInductionStrip => "parabolic-induction-strip",
            StepKind::DirectProductSplit => "direct-product-split",
            StepKind::ProjectiveFibration => "projective-fibration",
            StepKind::FiberProductSplit => "fiber-product-split",
        }
    }
}

/// One applied reduction step together with the systems it produced.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub detail: String,
    pub children: Vec<ReductionNode>,
}

/// A system in the reduction tree; a node without a step is a leaf and is
/// primitive.
#[derive(Clone, Debug)]
pub struct ReductionNode {
    pub system: SphericalSystem,
    pub step: Option<ReductionStep>,
}

/// The full reduction of one system down to primitive leaves.
#[derive(Clone, Debug)]
pub struct ReductionTree {
    pub root: ReductionNode,
}

impl ReductionTree {
    /// The primitive systems at the leaves, in tree order.
    pub fn leaves(&self) -> Vec<&SphericalSystem> {
        let mut out = Vec::new();
        fn walk<'t>(node: &'t ReductionNode, out: &mut Vec<&'t SphericalSystem>) {
            match &node.step {
                None => out.push(&node.system),
                Some(step) => {
                    for child in &step.children {
                        walk(child, out);
                    }
                }
            }
        }
        walk(&self.root, &mut out);
        out
    }

    /// Every applied step in preorder.
    pub fn steps(&self) -> Vec<(StepKind, &str)> {
        let mut out = Vec::new();
        fn walk<'t>(node: &'t ReductionNode, out: &mut Vec<(StepKind, &'t str)>) {
            if let Some(step) = &node.step {
                out.push((step.kind, step.detail.as_str()));
                for child in &step.children {
                    walk(child, out);
                }
            }
        }
        walk(&self.root, &mut out);
        out
    }

    /// An indented outline, one node per line.
    pub fn outline(&self) -> String {
        let mut out = String::new();
        fn walk(node: &ReductionNode, depth: usize, out: &mut String) {
            let sys = &node.system;
            let what = match &node.step {
                None => "leaf".to_string(),
                Some(step) => format!("{} {}", step.kind.label(), step.detail),
            };
            out.push_str(&format!(
                "{}{} rank {}: {}\n",
                "  ".repeat(depth),
                sys.group().spec_string(),
                sys.rank(),
                what
            ));
            if let Some(step) = &node.step {
                for child in &step.children {
                    walk(child, depth + 1, out);
                }
            }
        }
        walk(&self.root, 0, &mut out);
        out
    }
}

/// Reduce a system to primitive leaves. Steps are applied in a fixed
/// priority order: strip a parabolic induction, split a direct product,
/// quotient by the lexicographically least projective element, split the
/// least fiber-product pair. Every leaf passes `is_primitive`.
pub fn reduce(sys: &SphericalSystem) -> Result<ReductionTree> {
    // Each step strictly shrinks (|S|, |Σ|, |S ∖ S^p|) lexicographically,
    // so this many steps along one path can never be reached.
    let budget = sys.group().rank() + sys.rank() + build_colours(sys)?.len() + 1;
    let root = expand(sys.clone(), budget)?;
    Ok(ReductionTree { root })
}

fn expand(system: SphericalSystem, budget: usize) -> Result<ReductionNode> {
    assert!(budget > 0, "reduction exceeded its step bound");
    let rs = system.group();
    let n = rs.rank();

    // A rank-0 system over a nonempty group is the parabolic induction of
    // the trivial system: its quotient data is carried entirely by S^p.
    if system.rank() == 0 && n > 0 {
        let step = ReductionStep {
            kind: StepKind::ParabolicInductionStrip,
            detail: "to the trivial system".to_string(),
            children: vec![expand(SphericalSystem::trivial(), budget - 1)?],
        };
        return Ok(ReductionNode {
            system,
            step: Some(step),
        });
    }

    let (base, _) = parabolic_induction_base(&system);
    if base.len() < n {
        let names: Vec<&str> = base.iter().map(|&a| rs.root_name(a)).collect();
        let child = localize_s(&system, &base)?;
        let step = ReductionStep {
            kind: StepKind::ParabolicInductionStrip,
            detail: format!("to {}", names.join(", ")),
            children: vec![expand(child, budget - 1)?],
        };
        return Ok(ReductionNode {
            system,
            step: Some(step),
        });
    }

    let factors = direct_factors(&system)?;
    if factors.len() >= 2 {
        let groups: Vec<String> = factors
            .iter()
            .map(|f| f.system.group().spec_string())
            .collect();
        let mut children = Vec::new();
        for factor in &factors {
            children.push(expand(factor.system.clone(), budget - 1)?);
        }
        let step = ReductionStep {
            kind: StepKind::DirectProductSplit,
            detail: format!("into {}", groups.join(" and ")),
            children,
        };
        return Ok(ReductionNode {
            system,
            step: Some(step),
        });
    }

    let projectives = projective_elements(&system);
    if let Some(&pick) = projectives
        .iter()
        .min_by_key(|&&e| system.a_elements()[e].name.as_str())
    {
        let name = system.a_elements()[pick].name.clone();
        let child = quotient_by_projective(&system, pick)?;
        let step = ReductionStep {
            kind: StepKind::ProjectiveFibration,
            detail: format!("by '{name}'"),
            children: vec![expand(child, budget - 1)?],
        };
        return Ok(ReductionNode {
            system,
            step: Some(step),
        });
    }

    let delta = build_colours(&system)?;
    let pairs = fiber_product_decompositions(&system, &delta)?;
    let name_key = |s: &BTreeSet<usize>| -> Vec<&str> {
        s.iter().map(|&d| delta.colours()[d].name.as_str()).collect()
    };
    if let Some((d1, d2)) = pairs
        .iter()
        .min_by_key(|(a, b)| (name_key(a), name_key(b)))
    {
        let q1 = quotient_by(&system, &delta, d1)?;
        let q2 = quotient_by(&system, &delta, d2)?;
        for (side, q) in [("first", &q1), ("second", &q2)] {
            if !q.validation.ok() {
                return Err(Error::InvalidSystem(format!(
                    "the {side} side of a fiber-product split is not a spherical system:\n{}",
                    q.validation.summary()
                )));
            }
        }
        let union: BTreeSet<usize> = d1.union(d2).copied().collect();
        let base_rank = quotient_by(&system, &delta, &union)?.result.rank();
        let step = ReductionStep {
            kind: StepKind::FiberProductSplit,
            detail: format!(
                "by {} and {} over their union (rank {base_rank})",
                name_key(d1).join(", "),
                name_key(d2).join(", ")
            ),
            children: vec![
                expand(q1.result, budget - 1)?,
                expand(q2.result, budget - 1)?,
            ],
        };
        return Ok(ReductionNode {
            system,
            step: Some(step),
        });
    }

    debug_assert!(
        is_primitive(&system)?.primitive,
        "a reduction leaf must be primitive"
    );
    Ok(ReductionNode { system, step: None })
}
