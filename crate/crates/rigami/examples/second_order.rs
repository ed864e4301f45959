//! Second-order analysis: the degree-4 cone vertex is a genuine mechanism, so
//! its first-order flex extends to a second-order flex; the flat degree-3
//! vertex is blocked by a self-stress and is second-order rigid.
//!
//!     cargo run --example second_order

use nalgebra::DVector;
use rigami::consistency::ConstraintSystem;
use rigami::derivatives::{assemble_hessian, assemble_jacobian};
use rigami::model::{load_creased_paper, LoadOptions};
use rigami::stability::{
    extend_to_second_order, second_order_classify, second_order_residual, SecondOrderExtension,
    SecondOrderVerdict, StabilityOptions,
};
use rigami::statics::{first_order_flexes, self_stresses, DEFAULT_RANK_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let options = StabilityOptions::default();

    let cone = load_creased_paper(&rigami::fixtures::degree4_cone(), &LoadOptions::default())?;
    let system = ConstraintSystem::new(&cone)?;
    let jacobian = assemble_jacobian(&system);
    let hessian = assemble_hessian(&system);
    let flexes = first_order_flexes(&jacobian, DEFAULT_RANK_TOL);
    let stresses = self_stresses(&jacobian, DEFAULT_RANK_TOL);
    let flex = flexes.column(0);
    println!("cone vertex flex: {:?}", round3(&flex));
    match extend_to_second_order(&jacobian, &hessian, &stresses, &flex, &options)? {
        SecondOrderExtension::Extended { rho_second } => {
            let residual = second_order_residual(&jacobian, &hessian, &flex, &rho_second)?;
            println!(
                "extends to second order: acceleration {:?} (residual {residual:.3e})",
                round3(&rho_second)
            );
        }
        SecondOrderExtension::Blocked { .. } => unreachable!("independent mechanisms extend"),
    }
    let class = second_order_classify(&jacobian, &hessian, &flexes, &stresses, &options)?;
    match class.verdict {
        SecondOrderVerdict::Foldable { .. } => println!("classified second-order foldable"),
        SecondOrderVerdict::Rigid => println!("classified second-order rigid"),
    }

    let d3 = load_creased_paper(&rigami::fixtures::degree3_vertex(), &LoadOptions::default())?;
    let system = ConstraintSystem::new(&d3)?;
    let jacobian = assemble_jacobian(&system);
    let hessian = assemble_hessian(&system);
    let stresses = self_stresses(&jacobian, DEFAULT_RANK_TOL);
    let flex = DVector::from_row_slice(&[1.0, 1.0, 1.0]);
    match extend_to_second_order(&jacobian, &hessian, &stresses, &flex, &options)? {
        SecondOrderExtension::Blocked {
            witness,
            form_value,
        } => println!(
            "degree-3 vertex flex is blocked: witness stress {:?} with form value {form_value:.4}",
            round3(&witness)
        ),
        SecondOrderExtension::Extended { .. } => unreachable!("the flat vertex is blocked"),
    }
    Ok(())
}

fn round3(v: &DVector<f64>) -> Vec<f64> {
    v.iter().map(|x| (x * 1e3).round() / 1e3).collect()
}
