//! Assemble the constraint Jacobian and Hessian of the composite example and
//! verify both against central finite differences of the residual.
//!
//!     cargo run --example jacobian_oracle

use nalgebra::DVector;
use rigami::consistency::ConstraintSystem;
use rigami::derivatives::{assemble_hessian, assemble_jacobian};
use rigami::model::{load_creased_paper, LoadOptions};
use rigami::sampling::SplitMix64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let paper = load_creased_paper(&rigami::fixtures::fig3_composite(), &LoadOptions::default())?;
    let system = ConstraintSystem::new(&paper)?;
    let jacobian = assemble_jacobian(&system);
    let hessian = assemble_hessian(&system);
    let rho0 = paper.folding_angles();

    println!(
        "Jacobian is {}x{} with {} nonzero entries",
        jacobian.matrix.nrows(),
        jacobian.matrix.ncols(),
        jacobian.coordinate_list().len()
    );

    let h = 1e-5;
    let mut rng = SplitMix64::new(1);
    let mut worst_j = 0.0f64;
    let mut worst_h = 0.0f64;
    for _ in 0..20 {
        let d = rng.next_unit_vector(rho0.len());
        let plus = system.residual(&(&rho0 + &d * h))?;
        let minus = system.residual(&(&rho0 - &d * h))?;
        let fd: DVector<f64> = (plus - minus) / (2.0 * h);
        worst_j = worst_j.max((fd - &jacobian.matrix * &d).amax());

        let jp = system.jacobian_at(&(&rho0 + &d * h))?;
        let jm = system.jacobian_at(&(&rho0 - &d * h))?;
        let fd_h = (jp - jm) / (2.0 * h);
        worst_h = worst_h.max((fd_h - hessian.directional(&d)?).amax());
    }
    println!("max Jacobian deviation from finite differences: {worst_j:.3e}");
    println!("max Hessian deviation from finite differences:  {worst_h:.3e}");
    assert!(worst_j < 1e-6 && worst_h < 1e-6);
    println!("both within 1e-6");
    Ok(())
}
