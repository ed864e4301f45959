use thiserror::Error;

/// Unified error type for the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Document(String),

    #[error("edge between vertices {a} and {b} is adjacent to {count} panels (expected 1 or 2)")]
    NonManifoldEdge { a: usize, b: usize, count: usize },

    #[error("Euler identity violated: K={panels}, expected {expected} from I={inner_vertices}, J={inner_creases}, H={holes}")]
    EulerViolation {
        panels: usize,
        expected: i64,
        inner_vertices: usize,
        inner_creases: usize,
        holes: usize,
    },

    #[error("panel {panel} is not planar: max deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NonPlanarPanel {
        panel: usize,
        deviation: f64,
        tolerance: f64,
    },

    #[error("configuration inconsistent: vertex {vertex} deviates by {deviation:.3e} (tolerance {tolerance:.3e}) when refolded from the flat state")]
    ConfigurationInconsistent {
        vertex: usize,
        deviation: f64,
        tolerance: f64,
    },

    #[error("crease {crease} has zero length")]
    DegenerateCrease { crease: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("folding angle {crease} is at the tangent-substitution pole (|rho| = pi)")]
    TangentPole { crease: usize },

    #[error(
        "stress is not a self-stress: |JA^T w| = {residual:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NotASelfStress { residual: f64, tolerance: f64 },

    #[error("vector is not a first-order flex: |JA v| = {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    NotAFlex { residual: f64, tolerance: f64 },

    #[error("joints span an affine subspace of dimension {dim} < 3; the rank test rank(R) = 3v-6 does not apply")]
    DegenerateSpan { dim: usize },

    #[error("bar {bar} joins coincident joints {a} and {b}")]
    CoincidentJoints { bar: usize, a: usize, b: usize },

    #[error("load is not in equilibrium: net force {force:.3e}, net torque {torque:.3e}")]
    NonEquilibriumLoad { force: f64, torque: f64 },

    #[error(
        "stiffness block {unit} is not positive definite (smallest eigenvalue {eigenvalue:.3e})"
    )]
    IndefiniteStiffnessBlock { unit: usize, eigenvalue: f64 },

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
