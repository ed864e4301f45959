//! Load resolution on the flat degree-3 vertex: zero-sum torque loads
//! resolve with the closed-form stress, anything else does work on the
//! mechanism flex and cannot be balanced.
//!
//!     cargo run --example resolve_load

use nalgebra::DVector;
use rigami::consistency::ConstraintSystem;
use rigami::derivatives::assemble_jacobian;
use rigami::model::{load_creased_paper, LoadOptions};
use rigami::statics::{
    first_order_flexes, resolve_load, stress_report, LoadResolution, DEFAULT_RANK_TOL,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let paper = load_creased_paper(&rigami::fixtures::degree3_vertex(), &LoadOptions::default())?;
    let system = ConstraintSystem::new(&paper)?;
    let jacobian = assemble_jacobian(&system);
    let flexes = first_order_flexes(&jacobian, DEFAULT_RANK_TOL);

    let balanced = DVector::from_row_slice(&[0.8, -0.3, -0.5]);
    match resolve_load(&jacobian, &flexes, &balanced, DEFAULT_RANK_TOL)? {
        LoadResolution::Resolved { stress, residual } => {
            println!("balanced load resolves (residual {residual:.3e})");
            for entry in stress_report(&system, &stress)? {
                println!(
                    "  unit {} ({}): torque {:?}",
                    entry.unit, entry.kind, entry.torque
                );
            }
        }
        LoadResolution::Unresolvable { .. } => unreachable!(),
    }

    let unbalanced = DVector::from_row_slice(&[1.0, 1.0, 1.0]);
    match resolve_load(&jacobian, &flexes, &unbalanced, DEFAULT_RANK_TOL)? {
        LoadResolution::Unresolvable { witness_flex, work } => {
            println!(
                "uniform load is unresolvable: it does work {work:.3} on the flex {:?}",
                witness_flex
                    .iter()
                    .map(|x| (x * 1e3).round() / 1e3)
                    .collect::<Vec<_>>()
            );
        }
        LoadResolution::Resolved { .. } => unreachable!(),
    }
    Ok(())
}
