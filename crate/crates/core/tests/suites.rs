//! Every invariant suite must pass; this is the same battery the CLI runs
//! under `verify --suite all`.

#[test]
fn all_invariant_suites_pass() {
    for suite in ["steenrod", "comodule", "linalg", "ext", "kq"] {
        for report in kqcoop_core::verify::run_suite(suite) {
            assert!(
                report.pass,
                "suite {suite}, check {}: {:?}",
                report.name, report.violations
            );
        }
    }
}
