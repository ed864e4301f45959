//! Cross-validate an origami verdict with the double-coning bar-joint
//! framework, then resolve a random general (force + torque) load on the
//! tetrahedron surface through the framework.
//!
//!     cargo run --example double_coning

use rigami::barjoint::{correspondence_check, double_cone, resolve_general_load, PanelWrench};
use rigami::consistency::ConstraintSystem;
use rigami::derivatives::assemble_jacobian;
use rigami::geometry::Vec3;
use rigami::model::{load_creased_paper, LoadOptions};
use rigami::sampling::SplitMix64;
use rigami::statics::{first_order_flexes, self_stresses, DEFAULT_RANK_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let paper = load_creased_paper(&rigami::fixtures::tetrahedron(), &LoadOptions::default())?;
    let system = ConstraintSystem::new(&paper)?;
    let jacobian = assemble_jacobian(&system);
    let flexes = first_order_flexes(&jacobian, DEFAULT_RANK_TOL);
    let stresses = self_stresses(&jacobian, DEFAULT_RANK_TOL);

    let report = correspondence_check(
        &paper,
        flexes.dimension(),
        stresses.dimension(),
        DEFAULT_RANK_TOL,
    )?;
    println!(
        "origami rigid: {} | framework rigid: {} | flex dims {}/{} | stress dims {}/{}",
        report.origami_rigid,
        report.framework_rigid,
        report.origami_flex_dim,
        report.framework_flex_dim,
        report.origami_stress_dim,
        report.framework_stress_dim,
    );
    assert!(report.rigidity_match && report.stress_dim_match);

    // A random equilibrium wrench set: arbitrary wrenches on three panels,
    // the fourth takes the balance.
    let fw = double_cone(&paper)?;
    let v = paper.vertices.len();
    let mut rng = SplitMix64::new(5);
    let mut wrenches: Vec<PanelWrench> = (0..3)
        .map(|_| PanelWrench {
            force: Vec3::new(rng.next_normal(), rng.next_normal(), rng.next_normal()),
            torque: Vec3::new(rng.next_normal(), rng.next_normal(), rng.next_normal()),
        })
        .collect();
    let net_force: Vec3 = wrenches.iter().map(|w| w.force).sum();
    let balance_force = -net_force;
    let last_apex = fw.joints[v + 2 * 3];
    let net_torque: Vec3 = wrenches
        .iter()
        .enumerate()
        .map(|(k, w)| fw.joints[v + 2 * k].cross(&w.force) + w.torque)
        .sum();
    wrenches.push(PanelWrench {
        force: balance_force,
        torque: -(net_torque + last_apex.cross(&balance_force)),
    });

    let resolution = resolve_general_load(&paper, &wrenches, DEFAULT_RANK_TOL)?;
    println!(
        "general load resolved with residual {:.3e}; max |bar stress| = {:.3}",
        resolution.residual,
        resolution.bar_stresses.amax()
    );
    for (i, r) in resolution.vertex_reactions.iter().enumerate() {
        println!(
            "  vertex {i}: net bar force [{:+.3}, {:+.3}, {:+.3}]",
            r.x, r.y, r.z
        );
    }
    Ok(())
}
