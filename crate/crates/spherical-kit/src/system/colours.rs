//! The colour set Δ of a valid spherical system: functionals on Σ split
//! into the three families (A-table rows, halved rows at doubled simple
//! roots, and pairing rows on the remaining non-parabolic simple roots),
//! together with the map α ↦ Δ(α) of colours moved by each simple root.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::WeightVector;

use super::{validate, RootKind, SphericalSystem};

/// Which of the three families a colour belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ColourKind {
    /// An A-table element: its row is free data of the system.
    A,
    /// The colour of a doubled simple root: row = ½⟨α∨,·⟩.
    APrime,
    /// The colour of a class of remaining simple roots: row = ⟨α∨,·⟩.
    B,
}

/// One colour: its functional on Σ (in Σ order) and the simple roots it
/// is attached to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Colour {
    pub name: String,
    pub kind: ColourKind,
    pub row: Vec<i64>,
    pub members: BTreeSet<usize>,
}

/// The full colour set, ordered A-table first (input order), then doubled
/// roots by root index, then classes by smallest member.
#[derive(Clone, Debug)]
pub struct ColourSet {
    colours: Vec<Colour>,
    moved_by: Vec<BTreeSet<usize>>,
}

impl ColourSet {
    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.colours.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.colours
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownColour(name.to_string()))
    }

    /// Δ(α): indices of the colours moved by the simple root α. Empty
    /// exactly when α lies in S^p.
    pub fn delta_of_root(&self, alpha: usize) -> &BTreeSet<usize> {
        &self.moved_by[alpha]
    }
}

/// Builds Δ for a system that passes validation; the axioms are exactly
/// what makes the construction well defined (halved rows integral, class
/// rows consistent), so an invalid system is rejected up front.
pub fn build_colours(sys: &SphericalSystem) -> Result<ColourSet> {
    let report = validate(sys);
    if !report.ok() {
        return Err(Error::InvalidSystem(report.summary()));
    }

    let rs = sys.group();
    let n = rs.rank();
    let mut colours: Vec<Colour> = Vec::new();
    let mut moved_by: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];

    let simple = sys.simple_sigma();
    let simple_roots: BTreeSet<usize> = simple.iter().map(|&(a, _)| a).collect();

    for element in sys.a_elements() {
        let members: BTreeSet<usize> = simple
            .iter()
            .filter(|&&(_, col)| element.row[col] == 1)
            .map(|&(alpha, _)| alpha)
            .collect();
        let index = colours.len();
        for &alpha in &members {
            moved_by[alpha].insert(index);
        }
        colours.push(Colour {
            name: element.name.clone(),
            kind: ColourKind::A,
            row: element.row.clone(),
            members,
        });
    }

    let mut doubled: Vec<usize> = sys
        .sigma()
        .iter()
        .filter(|r| r.kind == Some(RootKind::A1Prime))
        .map(|r| {
            r.vector
                .support()
                .into_iter()
                .next()
                .expect("doubled root has a support")
        })
        .collect();
    doubled.sort_unstable();
    for &alpha in &doubled {
        let row: Vec<i64> = sys
            .cartan_row(alpha)
            .into_iter()
            .map(|p| {
                debug_assert_eq!(p % 2, 0, "doubled-root pairings are even");
                p / 2
            })
            .collect();
        let index = colours.len();
        moved_by[alpha].insert(index);
        colours.push(Colour {
            name: format!("a'({})", rs.root_name(alpha)),
            kind: ColourKind::APrime,
            row,
            members: BTreeSet::from([alpha]),
        });
    }

    // The rest, S ∖ (S^p ∪ Σ ∪ ½Σ), is grouped by the relation
    // α ∼ β ⟺ α ⊥ β and α + β ∈ Σ; each class carries one colour.
    let doubled_set: BTreeSet<usize> = doubled.into_iter().collect();
    let rest: Vec<usize> = (0..n)
        .filter(|i| {
            !sys.sp().contains(i) && !simple_roots.contains(i) && !doubled_set.contains(i)
        })
        .collect();
    let related = |a: usize, b: usize| -> bool {
        if !rs.orthogonal(a, b) {
            return false;
        }
        let mut v = vec![0; n];
        v[a] = 1;
        v[b] = 1;
        sys.sigma_index(&WeightVector(v)).is_some()
    };
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &start in &rest {
        if seen.contains(&start) {
            continue;
        }
        let mut class = BTreeSet::from([start]);
        let mut queue = vec![start];
        seen.insert(start);
        while let Some(a) = queue.pop() {
            for &b in &rest {
                if !seen.contains(&b) && related(a, b) {
                    seen.insert(b);
                    class.insert(b);
                    queue.push(b);
                }
            }
        }
        let rows: Vec<Vec<i64>> = class.iter().map(|&a| sys.cartan_row(a)).collect();
        debug_assert!(
            rows.iter().all(|r| r == &rows[0]),
            "class members pair equally against Σ"
        );
        let name = format!(
            "b({})",
            class
                .iter()
                .map(|&a| rs.root_name(a))
                .collect::<Vec<_>>()
                .join("~")
        );
        let index = colours.len();
        for &alpha in &class {
            moved_by[alpha].insert(index);
        }
        colours.push(Colour {
            name,
            kind: ColourKind::B,
            row: rows.into_iter().next().unwrap_or_default(),
            members: class,
        });
    }

    let mut names = BTreeSet::new();
    for c in &colours {
        if !names.insert(c.name.as_str()) {
            return Err(Error::InvalidSystem(format!(
                "colour name '{}' is not unique",
                c.name
            )));
        }
    }
    for alpha in 0..n {
        debug_assert!(moved_by[alpha].len() <= 2, "a root moves at most two colours");
        debug_assert_eq!(
            moved_by[alpha].is_empty(),
            sys.sp().contains(&alpha),
            "exactly the parabolic roots move nothing"
        );
    }

    Ok(ColourSet { colours, moved_by })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::parse_group_spec;
    use std::collections::BTreeSet;

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
    fn doubled_and_class_colours() {
        // D4 with a doubled tip and a three-vertex fork root: one halved
        // colour at α1, one class colour at α2, nothing at the S^p tips.
        let sys = system(
            "D4",
            &[2, 3],
            &[&[2, 0, 0, 0], &[0, 2, 1, 1]],
            &[],
        );
        let delta = build_colours(&sys).unwrap();
        assert_eq!(delta.names(), vec!["a'(a1)", "b(a2)"]);
        assert_eq!(delta.colours()[0].kind, ColourKind::APrime);
        assert_eq!(delta.colours()[0].row, vec![2, -1]);
        assert_eq!(delta.colours()[1].kind, ColourKind::B);
        assert_eq!(delta.colours()[1].row, vec![-2, 2]);
        assert_eq!(delta.delta_of_root(0), &BTreeSet::from([0]));
        assert_eq!(delta.delta_of_root(1), &BTreeSet::from([1]));
        assert!(delta.delta_of_root(2).is_empty());
        assert!(delta.delta_of_root(3).is_empty());
    }

    #[test]
    fn orthogonal_pair_shares_one_colour() {
        let sys = system("A1xA1", &[], &[&[1, 1]], &[]);
        let delta = build_colours(&sys).unwrap();
        assert_eq!(delta.names(), vec!["b(a1~a2)"]);
        assert_eq!(delta.colours()[0].row, vec![2]);
        assert_eq!(delta.colours()[0].members, BTreeSet::from([0, 1]));
        assert_eq!(delta.delta_of_root(0), delta.delta_of_root(1));
    }

    #[test]
    fn adjacent_pair_sums_give_singleton_colours() {
        let sys = system(
            "D4",
            &[],
            &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 1, 0, 1]],
            &[],
        );
        let delta = build_colours(&sys).unwrap();
        assert_eq!(delta.names(), vec!["b(a1)", "b(a2)", "b(a3)", "b(a4)"]);
        let rows: Vec<&Vec<i64>> = delta.colours().iter().map(|c| &c.row).collect();
        assert_eq!(
            rows,
            vec![
                &vec![1, -1, -1],
                &vec![1, 1, 1],
                &vec![-1, 1, -1],
                &vec![-1, -1, 1]
            ]
        );
    }

    #[test]
    fn a_table_rows_become_colours_with_names_kept() {
        let sys = system(
            "A1xA1",
            &[],
            &[&[1, 0], &[0, 1]],
            &[
                ("shared", &[1, 1]),
                ("d-(a1)", &[1, -1]),
                ("d-(a2)", &[-1, 1]),
            ],
        );
        let delta = build_colours(&sys).unwrap();
        assert_eq!(delta.names(), vec!["shared", "d-(a1)", "d-(a2)"]);
        assert!(delta.colours().iter().all(|c| c.kind == ColourKind::A));
        assert_eq!(delta.colours()[0].members, BTreeSet::from([0, 1]));
        assert_eq!(delta.delta_of_root(0), &BTreeSet::from([0, 1]));
        assert_eq!(delta.delta_of_root(1), &BTreeSet::from([0, 2]));
        assert_eq!(delta.index_of("d-(a2)").unwrap(), 2);
        assert!(matches!(
            delta.index_of("nope"),
            Err(Error::UnknownColour(_))
        ));
    }

    #[test]
    fn parabolic_only_system_keeps_empty_rows() {
        let sys = system("A2", &[0], &[], &[]);
        let delta = build_colours(&sys).unwrap();
        assert_eq!(delta.names(), vec!["b(a2)"]);
        assert!(delta.colours()[0].row.is_empty());
        assert!(delta.delta_of_root(0).is_empty());
    }

    #[test]
    fn invalid_systems_are_rejected() {
        let sys = SphericalSystem::new(
            parse_group_spec("A1").unwrap(),
            BTreeSet::new(),
            vec![WeightVector(vec![1])],
            vec![("d".into(), vec![2])],
        )
        .unwrap();
        assert!(matches!(
            build_colours(&sys),
            Err(Error::InvalidSystem(_))
        ));
    }
}
