//! Shared helpers for the integration suites: fixture loading and the
//! central-difference oracles used to verify assembled derivatives.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rigami::consistency::ConstraintSystem;
use rigami::derivatives::{assemble_hessian, assemble_jacobian, Hessian, Jacobian};
use rigami::fixtures;
use rigami::model::{load_creased_paper, CreasedPaper, LoadOptions};

pub struct Case {
    pub name: &'static str,
    pub paper: CreasedPaper,
    pub system: ConstraintSystem,
    pub jacobian: Jacobian,
    pub hessian: Hessian,
}

pub fn load_case(name: &'static str, doc: &rigami::model::Document) -> Case {
    let paper = load_creased_paper(doc, &LoadOptions::default()).expect(name);
    let system = ConstraintSystem::new(&paper).expect(name);
    let jacobian = assemble_jacobian(&system);
    let hessian = assemble_hessian(&system);
    Case {
        name,
        paper,
        system,
        jacobian,
        hessian,
    }
}

/// The six built-in structures that load strictly.
pub fn suite_cases() -> Vec<Case> {
    fixtures::suite_fixtures()
        .into_iter()
        .map(|(name, doc)| load_case(name, &doc))
        .collect()
}

/// Central difference of the residual along direction `d`.
pub fn fd_jacobian_direction(
    system: &ConstraintSystem,
    rho0: &DVector<f64>,
    d: &DVector<f64>,
    h: f64,
) -> DVector<f64> {
    let plus = system.residual(&(rho0 + d * h)).unwrap();
    let minus = system.residual(&(rho0 - d * h)).unwrap();
    (plus - minus) / (2.0 * h)
}

/// Central difference of the exact Jacobian along direction `d`; approximates
/// the Hessian contracted once with `d`.
pub fn fd_hessian_direction(
    system: &ConstraintSystem,
    rho0: &DVector<f64>,
    d: &DVector<f64>,
    h: f64,
) -> DMatrix<f64> {
    let plus = system.jacobian_at(&(rho0 + d * h)).unwrap();
    let minus = system.jacobian_at(&(rho0 - d * h)).unwrap();
    (plus - minus) / (2.0 * h)
}
