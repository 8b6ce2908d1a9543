//! Suite-level behavior on reduced grids: composition, determinism, and the
//! report fields downstream tooling relies on.

use friable_lab::suites::{self, GridSpec};

#[test]
fn run_suite_dispatch() {
    let grid = GridSpec::new(vec![2, 3], 12);
    assert!(suites::run_suite("nonsense", &grid).is_none());
    let all = suites::run_suite("all", &grid).unwrap();
    assert_eq!(all.len(), suites::SUITE_NAMES.len());
    for r in &all {
        assert!(
            r.passed,
            "suite {} failed on the reduced grid: {:?}",
            r.suite_id, r.notes
        );
    }
}

#[test]
fn positivity_spot_value() {
    // (q=3, n=4, m=2): diff = 39/81 - 10/24, normalized by m q^ceil((m+1)/2)
    let grid = GridSpec::new(vec![3], 4);
    let report = suites::suite_positivity(&grid);
    assert!(report.passed);
    let expect = (39.0f64 / 81.0 - 10.0 / 24.0) * 2.0 * 9.0;
    assert!((expect - 1.1667).abs() < 1e-4);
    assert!(report.empirical_constant.unwrap() >= expect - 1e-12);
}

#[test]
fn positivity_is_deterministic() {
    let grid = GridSpec::new(vec![2, 3, 4], 16);
    let a = suites::suite_positivity(&grid);
    let b = suites::suite_positivity(&grid);
    assert_eq!(a.empirical_constant, b.empirical_constant);
    assert_eq!(
        serde_json::to_string(&a.worst_case).unwrap(),
        serde_json::to_string(&b.worst_case).unwrap()
    );
}

#[test]
fn delta_rows_expose_the_decomposition() {
    let (rows, report) = suites::suite_delta(20);
    assert!(report.passed);
    // Delta(3,2) = (2/3)/rho(1.5) - 1 with rho(1.5) = 1 - ln 1.5
    let d32 = rows.iter().find(|r| r.n == 3 && r.m == 2).unwrap();
    let expect = (2.0 / 3.0) / (1.0 - 1.5f64.ln()) - 1.0;
    assert!((d32.delta - expect).abs() < 1e-12);
    assert!((expect - 0.1213).abs() < 1e-4);
    // the split reproduces Delta
    assert!((d32.delta - d32.s1 - d32.s2).abs() < 1e-12);
    // Delta(2,1) = S1(2,1): the S2 term uses Delta(1,1) = 0
    let d21 = rows.iter().find(|r| r.n == 2 && r.m == 1).unwrap();
    assert!((d21.delta - d21.s1).abs() < 1e-12);
    assert_eq!(d21.s2, 0.0);
}

#[test]
fn gap_suite_reports_band() {
    let report = suites::suite_gap(&GridSpec::new(vec![2, 3, 5], 14));
    assert!(report.passed);
    let c = report.empirical_constant.unwrap();
    assert!(c.is_finite() && c > 0.0);
    assert!(report.notes.iter().any(|n| n.contains("band")));
}
