//! Double-coning correspondence across the built-in structures, and the
//! general-load resolution path.

mod common;

use common::suite_cases;
use rigami::barjoint::{
    correspondence_check, double_cone, resolve_general_load, rigidity_matrix, PanelWrench,
};
use rigami::geometry::Vec3;
use rigami::model::{load_creased_paper, LoadOptions};
use rigami::sampling::SplitMix64;
use rigami::statics::{first_order_flexes, self_stresses, DEFAULT_RANK_TOL};

#[test]
fn correspondence_holds_on_every_structure() {
    for case in suite_cases() {
        let flexes = first_order_flexes(&case.jacobian, DEFAULT_RANK_TOL);
        let stresses = self_stresses(&case.jacobian, DEFAULT_RANK_TOL);
        let report = correspondence_check(
            &case.paper,
            flexes.dimension(),
            stresses.dimension(),
            DEFAULT_RANK_TOL,
        )
        .unwrap();
        assert!(report.rigidity_match, "{}: rigidity mismatch", case.name);
        assert!(report.flex_dim_match, "{}: flex dims differ", case.name);
        assert!(report.stress_dim_match, "{}: stress dims differ", case.name);
        assert!(report.count_identities, "{}: counts drift", case.name);
    }
}

#[test]
fn tetrahedron_resolves_random_equilibrium_wrenches() {
    let paper =
        load_creased_paper(&rigami::fixtures::tetrahedron(), &LoadOptions::default()).unwrap();
    let mut rng = SplitMix64::new(23);
    for round in 0..20 {
        // Random wrenches on all but the last panel; the last takes the
        // balancing force and torque so the total wrench vanishes.
        let fw = double_cone(&paper).unwrap();
        let v = paper.vertices.len();
        let mut wrenches: Vec<PanelWrench> = (0..paper.panels.len() - 1)
            .map(|_| PanelWrench {
                force: Vec3::new(rng.next_normal(), rng.next_normal(), rng.next_normal()),
                torque: Vec3::new(rng.next_normal(), rng.next_normal(), rng.next_normal()),
            })
            .collect();
        let net_force: Vec3 = wrenches.iter().map(|w| w.force).sum();
        let balance_force = -net_force;
        let last_apex = fw.joints[v + 2 * (paper.panels.len() - 1)];
        let net_torque: Vec3 = wrenches
            .iter()
            .enumerate()
            .map(|(k, w)| fw.joints[v + 2 * k].cross(&w.force) + w.torque)
            .sum();
        let balance_torque = -(net_torque + last_apex.cross(&balance_force));
        wrenches.push(PanelWrench {
            force: balance_force,
            torque: balance_torque,
        });
        let resolution = resolve_general_load(&paper, &wrenches, DEFAULT_RANK_TOL)
            .unwrap_or_else(|e| panic!("round {round}: {e}"));
        assert!(resolution.residual <= 1e-8 * 10.0);
        // Reactions at the surface vertices balance the applied joint forces.
        for (i, reaction) in resolution.vertex_reactions.iter().enumerate() {
            assert!(
                (reaction + resolution.joint_forces[i]).norm() < 1e-7,
                "vertex {i} not in equilibrium"
            );
        }
    }
}

#[test]
fn zero_wrench_gives_zero_stresses() {
    let paper =
        load_creased_paper(&rigami::fixtures::tetrahedron(), &LoadOptions::default()).unwrap();
    let wrenches = vec![
        PanelWrench {
            force: Vec3::zeros(),
            torque: Vec3::zeros(),
        };
        paper.panels.len()
    ];
    let resolution = resolve_general_load(&paper, &wrenches, DEFAULT_RANK_TOL).unwrap();
    assert!(resolution.bar_stresses.amax() < 1e-12);
}

#[test]
fn mechanism_exciting_wrench_is_unresolvable() {
    // The degree-4 cone vertex folds; a torque pair about its free crease
    // works on the mechanism and cannot be balanced by bar stresses.
    let paper =
        load_creased_paper(&rigami::fixtures::degree4_cone(), &LoadOptions::default()).unwrap();
    // Panels 2 and 3 share the flat crease (id 3): apply opposite torques
    // along that crease's direction to drive the fold.
    let axis = paper.crease_direction(3);
    let mut wrenches = vec![
        PanelWrench {
            force: Vec3::zeros(),
            torque: Vec3::zeros(),
        };
        paper.panels.len()
    ];
    wrenches[3].torque = axis;
    wrenches[2].torque = -axis;
    match resolve_general_load(&paper, &wrenches, DEFAULT_RANK_TOL) {
        Err(rigami::Error::Document(msg)) => assert!(msg.contains("not resolvable")),
        other => panic!("expected unresolvable general load, got {other:?}"),
    }
}

#[test]
fn non_equilibrium_wrench_is_rejected() {
    let paper =
        load_creased_paper(&rigami::fixtures::tetrahedron(), &LoadOptions::default()).unwrap();
    let mut wrenches = vec![
        PanelWrench {
            force: Vec3::zeros(),
            torque: Vec3::zeros(),
        };
        paper.panels.len()
    ];
    wrenches[0].force = Vec3::new(1.0, 0.0, 0.0);
    assert!(matches!(
        resolve_general_load(&paper, &wrenches, DEFAULT_RANK_TOL),
        Err(rigami::Error::NonEquilibriumLoad { .. })
    ));
}

#[test]
fn framework_kernel_contains_exactly_the_rigid_motions_for_rigid_papers() {
    let paper =
        load_creased_paper(&rigami::fixtures::tetrahedron(), &LoadOptions::default()).unwrap();
    let fw = double_cone(&paper).unwrap();
    let r = rigidity_matrix(&fw);
    let kernel = rigami::linalg::kernel_basis(&r, DEFAULT_RANK_TOL);
    assert_eq!(kernel.ncols(), 6);
}
