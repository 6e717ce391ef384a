//! Hand transcription of the first five hierarchy levels, used as a
//! regression anchor for `hierarchy --check` and `verify`.

use pseudonull::diffalg::{parse, Generator};
use pseudonull::geometry::FrenetField;
use pseudonull::hierarchy::HierarchyLevel;

pub const HIERARCHY_FIXTURE: &str = include_str!("../golden/hierarchy.txt");

/// One transcribed row, as written in the fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenLevel {
    pub index: usize,
    pub field: String,
    pub tau_flow: String,
    pub k_flow: String,
}

pub fn golden_levels() -> Vec<GoldenLevel> {
    HIERARCHY_FIXTURE
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let cols: Vec<&str> = line.split('|').map(str::trim).collect();
            assert_eq!(cols.len(), 4, "malformed fixture row `{line}`");
            GoldenLevel {
                index: cols[0].parse().expect("fixture index"),
                field: cols[1].to_string(),
                tau_flow: cols[2].to_string(),
                k_flow: cols[3].to_string(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub column: &'static str,
    pub expected: String,
    pub actual: String,
}

/// Canonical renderings of a transcribed row: `(field, tau_flow, k_flow)`.
pub fn canonical_row(row: &GoldenLevel) -> (String, String, String) {
    let field = FrenetField::parse(&row.field).expect("fixture field parses");
    let tau = parse(&row.tau_flow, Generator::Tau).expect("fixture torsion flow parses");
    let k = parse(&row.k_flow, Generator::Kappa).expect("fixture curvature flow parses");
    (field.to_string(), tau.to_string(), k.to_string())
}

/// Compares the canonical renderings of the engine output and the fixture
/// byte for byte, over the levels both cover.
pub fn check_hierarchy(levels: &[HierarchyLevel]) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for (level, row) in levels.iter().zip(golden_levels()) {
        let (field, tau, k) = canonical_row(&row);
        let pairs = [
            ("field", field, level.field.to_string()),
            ("tau_flow", tau, level.tau_flow.to_string()),
            ("k_flow", k, level.k_flow.to_string()),
        ];
        for (column, expected, actual) in pairs {
            if expected.as_bytes() != actual.as_bytes() {
                out.push(Mismatch {
                    index: level.index,
                    column,
                    expected,
                    actual,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use pseudonull::hierarchy::generate_hierarchy;

    #[test]
    fn fixture_has_five_levels() {
        let rows = golden_levels();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().enumerate().all(|(i, r)| r.index == i));
    }

    #[test]
    fn engine_matches_fixture() {
        assert!(check_hierarchy(&generate_hierarchy(5)).is_empty());
        assert!(check_hierarchy(&generate_hierarchy(8)).is_empty());
    }

    #[test]
    fn tampered_level_is_reported() {
        let mut levels = generate_hierarchy(3);
        levels[2].tau_flow = parse("t3 + 3*t*t2 + 3*t1^2 + 3*t^2*t1", Generator::Tau).unwrap();
        let bad = check_hierarchy(&levels);
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].index, bad[0].column), (2, "tau_flow"));
    }
}
