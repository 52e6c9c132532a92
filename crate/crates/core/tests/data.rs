//! Built-in data checked against the expected verdicts.

use std::collections::BTreeSet;

use novikov::catalog::{self, builtin};
use novikov::degeneration::{self, EntryStatus, RunOptions, Tier};

#[test]
fn golden_rows_match() {
    let cat = builtin();
    assert_eq!(cat.golden.len(), 7);
    for row in &cat.golden {
        let r = catalog::verify_golden(cat, row).unwrap();
        assert!(r.pass(), "{r:?}");
    }
}

#[test]
fn catalog_entries_satisfy_invariants() {
    let r = catalog::verify_catalog(11).unwrap();
    assert!(r.invariant_failures.is_empty(), "{:?}", r.invariant_failures);
}

#[test]
fn extension_witnesses() {
    let cat = builtin();
    let split_reps: BTreeSet<&str> = ["N3s_01/2b", "N3s_01/5b", "N3s_01/6b"].into();
    for w in &cat.extensions {
        let r = catalog::verify_extension(cat, w, 5).unwrap();
        assert!(r.is_cocycle && r.matches_target && r.annihilator_formula, "{r:?}");
        // Cocycles with a shared annihilator direction give split extensions.
        assert_eq!(r.trivial_intersection, !split_reps.contains(w.id.as_str()), "{}", w.id);
    }
}

#[test]
fn printed_constraints_not_carried_are_flagged() {
    let cat = builtin();
    let flagged: BTreeSet<String> = cat
        .extensions
        .iter()
        .filter(|w| !catalog::verify_extension(cat, w, 5).unwrap().flags.is_empty())
        .map(|w| w.id.clone())
        .collect();
    assert_eq!(flagged, ["N3_02/1", "N3s_01/1a", "N3s_01/2b"].map(String::from).into());
}

#[test]
fn action_cases_as_expected() {
    let cat = builtin();
    for a in &cat.actions {
        let o = catalog::verify_action(cat, a, 5, 3).unwrap();
        assert!(o.as_expected(), "{:?}", o.report);
    }
    let n302 = cat.actions.iter().find(|a| a.case.id == "N3_02").unwrap();
    let r = catalog::verify_action(cat, n302, 5, 3).unwrap().report;
    assert!(r.projected_matches);
    assert_eq!(r.raw_matches, Some(true));
}

#[test]
fn table_b_verdicts() {
    let cat = builtin();
    let res = degeneration::run_witnesses(cat, &cat.table_b, &RunOptions::default()).unwrap();
    let failing: BTreeSet<&str> = ["B11", "B22", "B24"].into();
    let numeric: BTreeSet<&str> = ["B05", "B23", "B24", "B24f"].into();
    for r in &res {
        let id = r.witness.id.as_str();
        assert_eq!(r.report.pass, !failing.contains(id), "{id}: {:?}", r.report.failures().collect::<Vec<_>>());
        assert_eq!(r.report.tier == Tier::Numeric, numeric.contains(id), "{id}");
        if let Some(c) = &r.cross_check {
            assert!(c.pass, "{id} numeric cross-check");
        }
        assert!(r.necessary.family_bound, "{id}");
    }
    let b22 = res.iter().find(|r| r.witness.id == "B22").unwrap();
    assert!(b22.report.failures().all(|e| e.status == EntryStatus::Pole));
    let b24 = res.iter().find(|r| r.witness.id == "B24").unwrap();
    assert!(b24.report.failures().all(|e| e.status == EntryStatus::AboveTolerance));
}

#[test]
fn strict_der_condition_fails_only_on_moving_sources() {
    let cat = builtin();
    let strict_fail: BTreeSet<String> = cat
        .table_b
        .iter()
        .filter(|w| !degeneration::check_necessary(cat, w, 3, 1).unwrap().strict)
        .map(|w| w.id.clone())
        .collect();
    let expected = ["B15", "B17", "B19", "B20", "B21", "B22", "B22e"].map(String::from).into();
    assert_eq!(strict_fail, expected);
    for id in &strict_fail {
        let w = cat.table_b_row(id).unwrap();
        assert!(degeneration::check_necessary(cat, w, 3, 1).unwrap().t_dependent, "{id}");
    }
}

#[test]
fn zero_algebra_degenerates_to_nothing() {
    let cat = builtin();
    let r = degeneration::check_necessary_pair(cat, "zero_4", "N4_01", 2, 0).unwrap();
    assert!(!r.strict);
}
