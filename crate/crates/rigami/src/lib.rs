//! Rigidity analysis for rigid origami (panel-hinge structures).
//!
//! The crate models a creased paper, assembles the folding-angle consistency
//! constraints together with their first and second derivatives, and decides
//! the rigidity ladder: first-order/static rigidity, load resolvability,
//! pre-stress stability, and second-order rigidity. An auto-generated
//! bar-joint (double-coning) framework provides an independent cross-check.
//!
//! See the `examples/` directory for one runnable example per capability and
//! the `rigami` binary for a command-line front end.

pub mod barjoint;
pub mod consistency;
pub mod derivatives;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod linalg;
pub mod model;
pub mod report;
pub mod sampling;
pub mod stability;
pub mod statics;

pub use error::{Error, Result};
