//! Find a stabilizing self-stress for the triangulated-face tetrahedron: the
//! flat centroid vertex is first-order flexible, but a positive stress on it
//! makes the restricted geometric stiffness positive definite, with a
//! certified scaling of the tangent stiffness matrix.
//!
//!     cargo run --example prestress_search

use rigami::consistency::ConstraintSystem;
use rigami::derivatives::{assemble_hessian, assemble_jacobian};
use rigami::model::{load_creased_paper, LoadOptions};
use rigami::stability::{
    find_stabilizing_stress, is_prestress_stable, StabilityOptions, StiffnessModel,
};
use rigami::statics::{first_order_flexes, self_stresses, stress_report, DEFAULT_RANK_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let paper = load_creased_paper(
        &rigami::fixtures::tetrahedron_triangulated(),
        &LoadOptions::default(),
    )?;
    let system = ConstraintSystem::new(&paper)?;
    let jacobian = assemble_jacobian(&system);
    let hessian = assemble_hessian(&system);
    let flexes = first_order_flexes(&jacobian, DEFAULT_RANK_TOL);
    let stresses = self_stresses(&jacobian, DEFAULT_RANK_TOL);
    println!(
        "flex space dimension m = {}, self-stress dimension s = {}",
        flexes.dimension(),
        stresses.dimension()
    );

    let options = StabilityOptions::default();
    let (stress, eig) = find_stabilizing_stress(&hessian, &flexes, &stresses, &options)?
        .expect("a stabilizing stress exists for this structure");
    println!("found a stabilizing stress; smallest restricted eigenvalue {eig:.6e}");
    for entry in stress_report(&system, &stress)? {
        let t = entry.torque;
        println!(
            "  unit {} ({}): torque [{:+.3}, {:+.3}, {:+.3}]",
            entry.unit, entry.kind, t[0], t[1], t[2]
        );
    }

    let b = StiffnessModel::identity_for(&system);
    let verdict = is_prestress_stable(&jacobian, &hessian, &flexes, &stress, &b, &options)?;
    println!(
        "verdict: stable = {}, certified t = {:?}",
        verdict.stable, verdict.certified_t
    );
    Ok(())
}
