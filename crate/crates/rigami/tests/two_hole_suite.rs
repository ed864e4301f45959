//! Multi-hole coverage: a flat grid with two holes exercises hole ordering,
//! the per-hole incidence rows, and the cross-checks with more than one
//! 6-row constraint block.

mod common;

use rigami::barjoint::correspondence_check;
use rigami::model::{build_incidence, extract_single_units, UnitKind};
use rigami::statics::{
    classify_static, counting_report, first_order_flexes, self_stresses, DEFAULT_RANK_TOL,
};

#[test]
fn two_hole_grid_loads_and_counts() {
    let case = common::load_case("two-hole grid", &rigami::fixtures::two_hole_grid());
    let counts = case.paper.counts();
    assert_eq!(counts.inner_vertices, 0);
    assert_eq!(counts.holes, 2);
    assert_eq!(counts.panels, 13);
    assert_eq!(counts.inner_creases, 14);
    // Euler: K = -I + J - H + 1.
    assert_eq!(13, 14 - 2 + 1);

    let units = extract_single_units(&case.paper).unwrap();
    assert_eq!(units.len(), 2);
    for unit in &units {
        assert!(matches!(unit.kind, UnitKind::Hole { .. }));
        assert_eq!(unit.degree(), 8, "each hole fans through eight creases");
    }
    assert_eq!(case.system.rows, 12);
}

#[test]
fn two_hole_incidence_rows_sum_over_each_boundary() {
    let case = common::load_case("two-hole grid", &rigami::fixtures::two_hole_grid());
    let inc = build_incidence(&case.paper);
    assert_eq!(inc.l_h.nrows(), 2);
    for (row, cycle) in case.paper.hole_boundaries.iter().enumerate() {
        for col in 0..inc.d.ncols() {
            let summed: i64 = cycle.iter().map(|&v| inc.d[(v, col)]).sum();
            assert_eq!(inc.l_h[(row, col)], summed);
        }
    }
}

#[test]
fn two_hole_identities_and_correspondence() {
    let case = common::load_case("two-hole grid", &rigami::fixtures::two_hole_grid());
    let counts = case.paper.counts();
    let report = classify_static(&case.jacobian, &counts, DEFAULT_RANK_TOL);
    assert!(report.counting_identity);
    assert!(counting_report(&counts, report.flexes).identity_holds);

    let flexes = first_order_flexes(&case.jacobian, DEFAULT_RANK_TOL);
    let stresses = self_stresses(&case.jacobian, DEFAULT_RANK_TOL);
    let correspondence = correspondence_check(
        &case.paper,
        flexes.dimension(),
        stresses.dimension(),
        DEFAULT_RANK_TOL,
    )
    .unwrap();
    assert!(correspondence.rigidity_match);
    assert!(correspondence.flex_dim_match);
    assert!(correspondence.stress_dim_match);
    assert!(correspondence.count_identities);
}
