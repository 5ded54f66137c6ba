//! Acceptance suite: runs every criterion of the verification suite at full
//! strength and prints one status line per criterion. Criteria with a
//! stated wall-clock budget assert it.
//!
//! Run with `cargo test -p trienum --test acceptance -- --nocapture` to see
//! the per-criterion lines, or `trienum repro` for the same checks as a
//! command.

use std::time::Duration;
use trienum::suite::run_criterion;

fn check(id: u32, budget: Option<Duration>) {
    let report = run_criterion(id, false);
    println!("{}", report.status_line());
    for d in &report.details {
        println!("    {d}");
    }
    assert!(report.passed, "criterion {id} failed: {:?}", report.details);
    if let Some(budget) = budget {
        assert!(
            report.elapsed <= budget,
            "criterion {id} took {:?}, budget {:?}",
            report.elapsed,
            budget
        );
    }
}

#[test]
fn criterion_01_convex_polygon_row() {
    check(1, Some(Duration::from_secs(10)));
}

#[test]
fn criterion_02_double_chain_counts() {
    check(2, Some(Duration::from_secs(60)));
}

#[test]
fn criterion_03_double_circle_counts() {
    check(3, Some(Duration::from_secs(60)));
}

#[test]
fn criterion_04_modified_double_chain_counts() {
    check(4, Some(Duration::from_secs(60)));
}

#[test]
fn criterion_05_oracle_equivalence() {
    check(5, Some(Duration::from_secs(300)));
}

#[test]
fn criterion_06_degree_identity_suite() {
    check(6, None);
}

#[test]
fn criterion_07_deletion_lemma_suite() {
    check(7, None);
}

#[test]
fn criterion_08_insertion_lemma_suite() {
    check(8, None);
}

#[test]
fn criterion_09_duality_and_covering() {
    check(9, None);
}

#[test]
fn criterion_10_triangulation_count_bound() {
    check(10, None);
}

#[test]
fn criterion_11_subset_vertex_count_bound() {
    check(11, None);
}

#[test]
fn criterion_12_formula_identities() {
    check(12, None);
}

/// Headline numbers, frozen directly in the acceptance target on top of
/// the criterion implementations.
#[test]
fn headline_counts_direct() {
    use std::sync::Arc;
    use trienum::enumerate::{enumerate_all, EnumOptions};
    use trienum::families::{gen_family, FamilySpec};
    use trienum::tri::GroundSet;
    use trienum::BigCount;

    let count = |spec: FamilySpec| -> BigCount {
        let fam = gen_family(&spec).unwrap();
        let g = GroundSet::full(Arc::new(fam.points)).unwrap();
        enumerate_all(&g, &EnumOptions::default()).unwrap().count
    };
    assert_eq!(count(FamilySpec::Convex { n: 10 }), BigCount::from(1430u32));
    assert_eq!(
        count(FamilySpec::DoubleChain { k: 5 }),
        BigCount::from(1750u32)
    );
    assert_eq!(
        count(FamilySpec::DoubleCircle {
            k: 5,
            extra_interior: false
        }),
        BigCount::from(250u32)
    );
    assert_eq!(
        count(FamilySpec::ModifiedDoubleChain { k: 4 }),
        BigCount::from(150u32)
    );
}
