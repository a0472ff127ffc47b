//! Fixture builders shared by the benchmark targets.

use std::collections::BTreeSet;

use spherical_kit::{parse_group_spec, SphericalSystem, WeightVector};

/// The fork-chain system on Dn: consecutive pair sums along the chain plus
/// both fork tips, with empty S^p and A-table.
pub fn dcstar(n: usize) -> SphericalSystem {
    assert!(n >= 4, "the fork chain needs a fork");
    let mut sigma: Vec<Vec<i64>> = Vec::new();
    for i in 0..n - 3 {
        let mut v = vec![0; n];
        v[i] = 1;
        v[i + 1] = 1;
        sigma.push(v);
    }
    for tip in [n - 2, n - 1] {
        let mut v = vec![0; n];
        v[n - 3] = 1;
        v[tip] = 1;
        sigma.push(v);
    }
    SphericalSystem::new(
        parse_group_spec(&format!("D{n}")).unwrap(),
        BTreeSet::new(),
        sigma.into_iter().map(WeightVector).collect(),
        vec![],
    )
    .unwrap()
}

/// Glue a rank-one a1 factor onto `sys`: the group gains an A1 component,
/// Σ gains its simple root, and A gains the two elements that move it.
pub fn product_with_a1(sys: &SphericalSystem) -> SphericalSystem {
    let rs = sys.group();
    let old_rank = rs.rank();
    let old_sigma = sys.rank();
    let group = parse_group_spec(&format!("{}xA1", rs.spec_string())).unwrap();
    let mut sigma: Vec<WeightVector> = sys
        .sigma()
        .iter()
        .map(|g| {
            let mut v = g.vector.0.clone();
            v.push(0);
            WeightVector(v)
        })
        .collect();
    let mut last = vec![0; old_rank + 1];
    last[old_rank] = 1;
    sigma.push(WeightVector(last));
    let mut a: Vec<(String, Vec<i64>)> = sys
        .a_elements()
        .iter()
        .map(|e| {
            let mut row = e.row.clone();
            row.push(0);
            (e.name.clone(), row)
        })
        .collect();
    let new_root = format!("a{}", old_rank + 1);
    for sign in ["+", "-"] {
        let mut row = vec![0; old_sigma + 1];
        row[old_sigma] = 1;
        a.push((format!("d{sign}({new_root})"), row));
    }
    SphericalSystem::new(group, sys.sp().clone(), sigma, a).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use spherical_kit::validate;

    #[test]
    fn builders_produce_valid_systems() {
        assert!(validate(&dcstar(5)).ok());
        assert!(validate(&product_with_a1(&dcstar(4))).ok());
    }
}
