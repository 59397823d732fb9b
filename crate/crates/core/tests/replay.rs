use std::collections::BTreeSet;

use permut3::replay::fixtures::EMBEDDED;
use permut3::replay::{all_steps, run_all, run_steps, FixtureSet, ReplayReport, Status};

fn failing(r: &ReplayReport) -> BTreeSet<String> {
    r.failed().map(|s| s.step.clone()).collect()
}

#[test]
fn parallel_and_serial_reports_agree() {
    let fx = FixtureSet::embedded().unwrap();
    let par = run_all(&fx, true).without_timings();
    let ser = run_all(&fx, false).without_timings();
    assert_eq!(par, ser);
    assert_eq!(par, run_all(&fx, true).without_timings());
}

#[test]
fn known_sign_conflicts_are_the_only_failures() {
    let fx = FixtureSet::embedded().unwrap();
    let r = run_all(&fx, true);
    let expected: BTreeSet<String> =
        ["3.15", "3.56-res-S1", "3.56-res-S2", "after-3.135-P11", "after-3.135-Q11"].map(String::from).into();
    assert_eq!(failing(&r), expected, "{}", r.summary());
    for s in r.failed() {
        assert!(s.diff_terms_count > 0, "{} should be a polynomial mismatch", s.step);
    }
}

/// A sign flip in `id` fails exactly the value steps whose inputs reach it.
/// The integrity preamble only checks syntax and variables, so it stays green.
fn check_fault(id: &str) {
    let clean = FixtureSet::embedded().unwrap();
    let base = run_all(&clean, true);
    let bad = FixtureSet::from_sources(&EMBEDDED, Some(id)).unwrap();
    let broken = run_all(&bad, true);
    let mut dependents = BTreeSet::new();
    for (b, s) in base.steps.iter().zip(&broken.steps) {
        assert_eq!(b.step, s.step);
        if b.case != "fixtures" && clean.closure(b.inputs.iter().map(String::as_str)).contains(id) {
            dependents.insert(b.step.clone());
        } else {
            assert_eq!(b.status, s.status, "{} does not read {id}", b.step);
        }
    }
    assert!(!dependents.is_empty());
    let newly: BTreeSet<String> = failing(&broken).difference(&failing(&base)).cloned().collect();
    let expected: BTreeSet<String> = dependents.difference(&failing(&base)).cloned().collect();
    assert_eq!(newly, expected, "corrupting {id}");
    assert!(broken.steps.iter().filter(|s| dependents.contains(&s.step)).all(|s| s.status == Status::Fail));
}

#[test]
fn corrupted_appendix_fixture_fails_its_dependents() {
    check_fault("A1");
    check_fault("A23");
}

#[test]
fn corrupted_body_fixture_fails_its_dependents() {
    check_fault("K1");
    check_fault("c21_q");
}

#[test]
fn corruption_of_a_leaf_leaves_other_cases_alone() {
    let bad = FixtureSet::from_sources(&EMBEDDED, Some("c3_h1_v0")).unwrap();
    let steps: Vec<_> = all_steps().into_iter().filter(|s| s.case != "3.2").collect();
    let clean = FixtureSet::embedded().unwrap();
    assert_eq!(run_steps(&bad, &steps, true).without_timings(), run_steps(&clean, &steps, true).without_timings());
}
