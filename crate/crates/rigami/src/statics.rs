//! Statics of the constraint system: first-order flexes, self-stresses, load
//! resolution, and the static-rigidity classification with its counting
//! identities.
//!
//! A load is a torque per inner crease (a pair of opposite torques on the two
//! adjacent panels), positive when it does positive work on an increasing
//! folding angle. A stress is a torque per vertex unit and a torque-force
//! pair per hole unit, laid out like the residual rows. Equilibrium is
//! JA^T sigma + l = 0, so resolvable loads are exactly those orthogonal to
//! every first-order flex.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::consistency::ConstraintSystem;
use crate::derivatives::Jacobian;
use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{Counts, UnitKind};

/// Default relative rank tolerance on singular values.
pub const DEFAULT_RANK_TOL: f64 = linalg::DEFAULT_RANK_TOL;

/// Orthonormal basis of first-order flexes: ker(JA), columns of length J.
#[derive(Debug, Clone)]
pub struct FlexBasis {
    pub vectors: DMatrix<f64>,
}

impl FlexBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.dimension() == 0
    }

    pub fn column(&self, i: usize) -> DVector<f64> {
        self.vectors.column(i).into_owned()
    }

    /// Combine basis vectors with the given coefficients.
    pub fn combine(&self, coefficients: &DVector<f64>) -> DVector<f64> {
        &self.vectors * coefficients
    }
}

/// Orthonormal basis of self-stresses: ker(JA^T), columns of length 3I+6H.
#[derive(Debug, Clone)]
pub struct StressBasis {
    pub vectors: DMatrix<f64>,
}

impl StressBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn column(&self, i: usize) -> DVector<f64> {
        self.vectors.column(i).into_owned()
    }

    pub fn combine(&self, coefficients: &DVector<f64>) -> DVector<f64> {
        &self.vectors * coefficients
    }

    /// Project a stress onto the self-stress space.
    pub fn project(&self, stress: &DVector<f64>) -> DVector<f64> {
        &self.vectors * (self.vectors.transpose() * stress)
    }
}

pub fn rank(jacobian: &Jacobian, rank_tol: f64) -> usize {
    linalg::rank(&jacobian.matrix, rank_tol)
}

pub fn first_order_flexes(jacobian: &Jacobian, rank_tol: f64) -> FlexBasis {
    FlexBasis {
        vectors: linalg::kernel_basis(&jacobian.matrix, rank_tol),
    }
}

pub fn self_stresses(jacobian: &Jacobian, rank_tol: f64) -> StressBasis {
    StressBasis {
        vectors: linalg::cokernel_basis(&jacobian.matrix, rank_tol),
    }
}

/// Outcome of resolving a load.
#[derive(Debug, Clone)]
pub enum LoadResolution {
    /// Minimum-norm particular stress; the full solution set is the particular
    /// stress plus the self-stress span.
    Resolved { stress: DVector<f64>, residual: f64 },
    /// No equilibrating stress exists; `witness_flex` is a first-order flex on
    /// which the load does nonzero work.
    Unresolvable {
        witness_flex: DVector<f64>,
        work: f64,
    },
}

impl LoadResolution {
    pub fn is_resolved(&self) -> bool {
        matches!(self, LoadResolution::Resolved { .. })
    }
}

/// Solve JA^T sigma = -l for the minimum-norm stress.
pub fn resolve_load(
    jacobian: &Jacobian,
    flexes: &FlexBasis,
    load: &DVector<f64>,
    rank_tol: f64,
) -> Result<LoadResolution> {
    let j = jacobian.matrix.ncols();
    if load.len() != j {
        return Err(Error::DimensionMismatch {
            expected: j,
            got: load.len(),
        });
    }
    let jt = jacobian.matrix.transpose();
    let stress = linalg::min_norm_solve(&jt, &(-load), rank_tol);
    let residual = (&jt * &stress + load).amax();
    let tol = 1e-8 * (1.0 + load.amax());
    if residual <= tol {
        return Ok(LoadResolution::Resolved { stress, residual });
    }
    // Work-conjugacy witness: the flex direction with the largest |l^T v|.
    let mut witness = DVector::zeros(j);
    let mut work = 0.0f64;
    for i in 0..flexes.dimension() {
        let v = flexes.column(i);
        let w = load.dot(&v);
        if w.abs() > work.abs() || i == 0 {
            work = w;
            witness = v;
        }
    }
    Ok(LoadResolution::Unresolvable {
        witness_flex: witness,
        work,
    })
}

/// Independent solvability test: a load resolves iff it is orthogonal to
/// every first-order flex.
pub fn resolvable_by_flex_orthogonality(flexes: &FlexBasis, load: &DVector<f64>, tol: f64) -> bool {
    (0..flexes.dimension()).all(|i| load.dot(&flexes.column(i)).abs() <= tol * (1.0 + load.amax()))
}

/// Static classification of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StaticClass {
    /// Null flex space: every load resolvable (first-order rigid).
    StaticallyRigid,
    Flexible,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StaticReport {
    pub class: StaticClass,
    pub rank: usize,
    /// Flex-space dimension m.
    pub flexes: usize,
    /// Self-stress dimension s.
    pub self_stresses: usize,
    /// Whether s = 3I - J + 6H + m held exactly.
    pub counting_identity: bool,
}

pub fn classify_static(jacobian: &Jacobian, counts: &Counts, rank_tol: f64) -> StaticReport {
    let r = rank(jacobian, rank_tol);
    let m = jacobian.matrix.ncols() - r;
    let s = jacobian.matrix.nrows() - r;
    let expected = 3 * counts.inner_vertices as i64 - counts.inner_creases as i64
        + 6 * counts.holes as i64
        + m as i64;
    StaticReport {
        class: if m == 0 {
            StaticClass::StaticallyRigid
        } else {
            StaticClass::Flexible
        },
        rank: r,
        flexes: m,
        self_stresses: s,
        counting_identity: s as i64 == expected,
    }
}

/// Self-stress counts of the three equivalent models: the creased paper, its
/// double-coning framework, and the body-hinge count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    pub s1: i64,
    pub s2: i64,
    pub s3: i64,
    /// s1 = s2 and s1 = s3 - 3I.
    pub identity_holds: bool,
}

pub fn counting_report(counts: &Counts, flex_dim: usize) -> CountingReport {
    let i = counts.inner_vertices as i64;
    let j = counts.inner_creases as i64;
    let h = counts.holes as i64;
    let z = counts.boundary_vertices as i64;
    let m = flex_dim as i64;
    let s1 = 3 * i - j + 6 * h + m;
    let bars = 5 * j + 3 * z;
    let joints = -i + 2 * j - 2 * h + z + 2;
    let s2 = bars - (3 * joints - 6 - m);
    let s3 = 6 * i - j + 6 * h + m;
    CountingReport {
        s1,
        s2,
        s3,
        identity_holds: s1 == s2 && s1 == s3 - 3 * i,
    }
}

/// JSON shape of a load file: J torques, one per inner crease.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoadFile {
    pub load: Vec<f64>,
}

/// JSON shape of a stress file: 3I+6H components in residual row order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StressFile {
    pub stress: Vec<f64>,
}

/// One unit's share of a stress vector, for reporting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StressReportEntry {
    pub unit: usize,
    pub kind: String,
    pub torque: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub force: Option<[f64; 3]>,
}

/// Group a stress vector by unit: a torque per vertex unit, a torque plus a
/// force per hole unit.
pub fn stress_report(
    system: &ConstraintSystem,
    stress: &DVector<f64>,
) -> Result<Vec<StressReportEntry>> {
    if stress.len() != system.rows {
        return Err(Error::DimensionMismatch {
            expected: system.rows,
            got: stress.len(),
        });
    }
    let mut out = Vec::with_capacity(system.constraints.len());
    for (i, (constraint, &offset)) in system
        .constraints
        .iter()
        .zip(&system.row_offsets)
        .enumerate()
    {
        let kind = match constraint.unit.kind {
            UnitKind::Vertex { .. } => "vertex",
            UnitKind::Hole { .. } => "hole",
            UnitKind::HoleAsVertex { .. } => "hole-as-vertex",
        };
        let torque = [stress[offset], stress[offset + 1], stress[offset + 2]];
        let force = if constraint.unit.is_vertex_like() {
            None
        } else {
            Some([stress[offset + 3], stress[offset + 4], stress[offset + 5]])
        };
        out.push(StressReportEntry {
            unit: i,
            kind: kind.to_string(),
            torque,
            force,
        });
    }
    Ok(out)
}
