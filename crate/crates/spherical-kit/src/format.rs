//! Plain-text system files: a stable, human-editable format with fields
//! `group`, `sp`, `sigma`, and an indented `a:` block, in that order.
//!
//! ```text
//! # homogeneous fixture
//! group: D5
//! sp: a4, a5
//! sigma: a1+a2, 2a3
//! a:
//!   d+(a1): 1, 0
//! ```
//!
//! Parsing validates the result; serialization of a validated system parses
//! back to an equal one.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rootsys::{parse_group_spec, WeightVector};
use crate::system::{validate, SphericalSystem};

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses and validates a system file. Syntax problems carry the line
/// number; axiom failures carry the full validation report.
pub fn parse_system_file(text: &str) -> Result<SphericalSystem> {
    let mut group: Option<(usize, String)> = None;
    let mut sp_field: Option<(usize, String)> = None;
    let mut sigma_field: Option<(usize, String)> = None;
    let mut a_lines: Vec<(usize, String)> = Vec::new();
    let mut in_a = false;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indented = raw.starts_with(' ') || raw.starts_with('\t');
        if in_a && indented {
            a_lines.push((lineno, trimmed.to_string()));
            continue;
        }
        in_a = false;
        let Some((key, value)) = trimmed.split_once(':') else {
            return Err(parse_error(lineno, format!("expected 'key: value', got '{trimmed}'")));
        };
        let value = value.trim().to_string();
        match key.trim() {
            "group" => {
                if group.replace((lineno, value)).is_some() {
                    return Err(parse_error(lineno, "duplicate 'group' field"));
                }
            }
            "sp" => {
                if sp_field.replace((lineno, value)).is_some() {
                    return Err(parse_error(lineno, "duplicate 'sp' field"));
                }
            }
            "sigma" => {
                if sigma_field.replace((lineno, value)).is_some() {
                    return Err(parse_error(lineno, "duplicate 'sigma' field"));
                }
            }
            "a" => {
                if !value.is_empty() {
                    return Err(parse_error(
                        lineno,
                        "'a:' opens an indented block and takes no inline value",
                    ));
                }
                in_a = true;
            }
            other => {
                return Err(parse_error(lineno, format!("unknown field '{other}'")));
            }
        }
    }

    let (group_line, group_spec) =
        group.ok_or_else(|| parse_error(1, "missing 'group' field"))?;
    let rs = parse_group_spec(&group_spec)
        .map_err(|e| parse_error(group_line, e.to_string()))?;

    let mut sp = BTreeSet::new();
    if let Some((lineno, value)) = sp_field {
        for name in split_list(&value) {
            let idx = rs
                .root_index(name)
                .map_err(|e| parse_error(lineno, e.to_string()))?;
            if !sp.insert(idx) {
                return Err(parse_error(lineno, format!("repeated root '{name}' in sp")));
            }
        }
    }

    let mut sigma = Vec::new();
    if let Some((lineno, value)) = sigma_field {
        for symbol in split_list(&value) {
            let v = WeightVector::parse(symbol, &rs)
                .map_err(|e| parse_error(lineno, e.to_string()))?;
            sigma.push(v);
        }
    }

    let mut a_elements = Vec::new();
    for (lineno, line) in a_lines {
        let Some((name, values)) = line.split_once(':') else {
            return Err(parse_error(lineno, format!("expected 'name: values', got '{line}'")));
        };
        let name = name.trim().to_string();
        if name.is_empty() {
            return Err(parse_error(lineno, "empty A-element name"));
        }
        let mut row = Vec::new();
        for tok in split_list(values) {
            let v: i64 = tok
                .parse()
                .map_err(|_| parse_error(lineno, format!("'{tok}' is not an integer")))?;
            row.push(v);
        }
        if row.len() != sigma.len() {
            return Err(parse_error(
                lineno,
                format!(
                    "A-element '{name}' has {} values but sigma has {} entries",
                    row.len(),
                    sigma.len()
                ),
            ));
        }
        a_elements.push((name, row));
    }

    let sys = SphericalSystem::new(rs, sp, sigma, a_elements)?;
    let report = validate(&sys);
    if !report.ok() {
        let mut lines = vec![report.summary()];
        for check in report.checks.iter().filter(|c| !c.passed) {
            for failure in &check.failures {
                lines.push(format!("  {}: {failure}", check.axiom));
            }
        }
        return Err(Error::InvalidSystem(lines.join("\n")));
    }
    Ok(sys)
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
}

/// Renders a system in the file format; empty `sp` and `a` are omitted.
pub fn serialize_system(sys: &SphericalSystem) -> String {
    let rs = sys.group();
    let mut out = String::new();
    out.push_str(&format!("group: {}\n", rs.spec_string()));
    if !sys.sp().is_empty() {
        let names: Vec<&str> = sys.sp().iter().map(|&i| rs.root_name(i)).collect();
        out.push_str(&format!("sp: {}\n", names.join(", ")));
    }
    let symbols: Vec<String> = sys.sigma().iter().map(|r| r.vector.symbol(rs)).collect();
    if symbols.is_empty() {
        out.push_str("sigma:\n");
    } else {
        out.push_str(&format!("sigma: {}\n", symbols.join(", ")));
    }
    if !sys.a_elements().is_empty() {
        out.push_str("a:\n");
        for e in sys.a_elements() {
            let values: Vec<String> = e.row.iter().map(i64::to_string).collect();
            out.push_str(&format!("  {}: {}\n", e.name, values.join(", ")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_doubled_root_file() {
        let sys = parse_system_file("group: A1\nsigma: 2a1\n").unwrap();
        assert_eq!(sys.rank(), 1);
        assert_eq!(sys.sigma()[0].vector, WeightVector(vec![2]));
    }

    #[test]
    fn full_fixture_round_trips() {
        let text = "\
# branch chain with both tips
group: D5
sigma: a1+a2, a2+a3, a3+a4, a3+a5
";
        let sys = parse_system_file(text).unwrap();
        let serialized = serialize_system(&sys);
        let again = parse_system_file(&serialized).unwrap();
        assert_eq!(sys, again);

        let with_tables = "\
group: A1xA1
sigma: a1, a2
a:
  shared: 1, 1
  d-(a1): 1, -1
  d-(a2): -1, 1
";
        let sys = parse_system_file(with_tables).unwrap();
        assert_eq!(parse_system_file(&serialize_system(&sys)).unwrap(), sys);

        let parabolic = "group: A2\nsp: a1, a2\nsigma:\n";
        let sys = parse_system_file(parabolic).unwrap();
        assert!(sys.sigma().is_empty());
        assert_eq!(parse_system_file(&serialize_system(&sys)).unwrap(), sys);
    }

    #[test]
    fn misaligned_row_is_a_positioned_error() {
        let text = "\
group: A1xA1
sigma: a1, a2
a:
  d: 1
";
        match parse_system_file(text) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("1 values"), "{msg}");
            }
            other => panic!("expected positioned error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        assert!(matches!(
            parse_system_file("group: A2\nwhat\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_system_file("group: A2\ncolour: x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_system_file("sigma: a1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_system_file("group: A2\ngroup: A2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_system_file("group: Q9\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_system_file("group: A2\nsigma: a1+a9\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn axiom_failures_embed_the_report() {
        // a1 and 2a1 together are dependent and break the doubled-root rule.
        let text = "group: A2\nsigma: a1, 2a1\na:\n  d+: 1, 2\n  d-: 1, 2\n";
        match parse_system_file(text) {
            Err(Error::InvalidSystem(msg)) => {
                assert!(msg.contains("failing:"), "{msg}");
                assert!(msg.contains("independence"), "{msg}");
            }
            other => panic!("expected validation failure, got {other:?}"),
        }
    }
}
