//! Folding-angle consistency constraints.
//!
//! Around every inner vertex the local panel frames compose to the identity:
//! a product of z-rotations by the fixed sector angles and x-rotations by the
//! folding angles. Around every hole the same holds for homogeneous
//! transforms that also carry the fixed in-panel translations between crease
//! anchor points. Each unit's product is conjugated into the global frame by
//! its placement and reduced to independent scalar equations; the stacked
//! result is the residual A(rho).

use nalgebra::{DMatrix, DVector, Matrix3, Matrix4};

use crate::error::{Error, Result};
use crate::geometry::{
    self, homogeneous, homogeneous_derivative, rot_x, rot_x_prime, rot_x_second, rot_z,
    RigidTransform, Vec3,
};
use crate::model::{panel_normal, CreasedPaper, SingleUnit, UnitKind};

/// Default absolute tolerance on the stacked residual.
pub const DEFAULT_RES_TOL: f64 = 1e-9;

/// Scalar equations selected from a vertex-unit product (row, col), zero-based:
/// the (3,2), (1,3), (2,1) elements, whose first derivatives are the x, y, z
/// components of the crease directions.
pub const VERTEX_ELEMENTS: [(usize, usize); 3] = [(2, 1), (0, 2), (1, 0)];

/// Scalar equations selected from a hole-unit product: the three rotation
/// elements plus the translation column.
pub const HOLE_ELEMENTS: [(usize, usize); 6] = [(2, 1), (0, 2), (1, 0), (0, 3), (1, 3), (2, 3)];

/// Configuration-independent constants of one unit's constraint loop.
#[derive(Debug, Clone)]
pub struct UnitConstraint {
    pub unit: SingleUnit,
    /// Sector angle per fan slot: the in-panel angle from the previous crease
    /// direction to this one, measured in the panel between them. For a
    /// developable vertex in the flat state these sum to 2*pi.
    pub sector_angles: Vec<f64>,
    /// Per-slot translation between consecutive crease anchors, expressed in
    /// the previous panel's local frame. Zero for vertex units.
    pub translations: Vec<Vec3>,
    /// Rigid map from the last panel's local frame to the global frame.
    pub placement: RigidTransform,
}

impl UnitConstraint {
    pub fn from_unit(paper: &CreasedPaper, unit: &SingleUnit) -> Result<Self> {
        let n = unit.degree();
        let normals: Vec<Vec3> = unit
            .panels
            .iter()
            .map(|&p| panel_normal(paper, p))
            .collect();
        let mut sector_angles = Vec::with_capacity(n);
        let mut translations = Vec::with_capacity(n);
        for k in 0..n {
            let prev = (k + n - 1) % n;
            sector_angles.push(geometry::sector_angle(
                &unit.away_dirs[prev],
                &unit.away_dirs[k],
                &normals[prev],
            ));
            let frame_prev =
                RigidTransform::from_frame(unit.away_dirs[prev], normals[prev], unit.origins[prev]);
            translations.push(frame_prev.inverse().apply(&unit.origins[k]));
        }
        let origin = match unit.kind {
            UnitKind::Vertex { vertex } => paper.position(vertex),
            UnitKind::HoleAsVertex { centre, .. } => centre,
            UnitKind::Hole { .. } => unit.origins[n - 1],
        };
        let placement = RigidTransform::from_frame(unit.away_dirs[n - 1], normals[n - 1], origin);
        Ok(UnitConstraint {
            unit: unit.clone(),
            sector_angles,
            translations,
            placement,
        })
    }

    /// Folding angles of this unit's creases, in fan order, taken from a
    /// global angle vector.
    pub fn local_angles(&self, rho: &DVector<f64>) -> Vec<f64> {
        self.unit.creases.iter().map(|&c| rho[c]).collect()
    }

    fn factors(&self, local: &[f64]) -> Vec<Matrix4<f64>> {
        (0..local.len())
            .map(|k| {
                let trans = if self.unit.is_vertex_like() {
                    Vec3::zeros()
                } else {
                    self.translations[k]
                };
                homogeneous(&rot_z(self.sector_angles[k]), &trans)
                    * homogeneous(&rot_x(local[k]), &Vec3::zeros())
            })
            .collect()
    }

    /// The rotation product R_n(rho) of a vertex-like unit, in its local frame.
    pub fn rotation_product(&self, local: &[f64]) -> Matrix3<f64> {
        let mut r = Matrix3::identity();
        for k in 0..local.len() {
            r = r * rot_z(self.sector_angles[k]) * rot_x(local[k]);
        }
        r
    }

    /// The homogeneous product T_n(rho) of a hole unit, in its local frame.
    /// For concurrent-crease holes the translation column vanishes for every
    /// rho whenever the rotation part closes.
    pub fn transform_product(&self, local: &[f64]) -> Matrix4<f64> {
        self.factors(local)
            .into_iter()
            .fold(Matrix4::identity(), |acc, f| acc * f)
    }

    /// Product conjugated into the global frame by the placement.
    pub fn global_product(&self, local: &[f64]) -> Matrix4<f64> {
        let t = self.placement.to_homogeneous();
        let t_inv = self.placement.inverse().to_homogeneous();
        t * self.transform_product(local) * t_inv
    }

    pub fn selected_elements(&self) -> &'static [(usize, usize)] {
        if self.unit.is_vertex_like() {
            &VERTEX_ELEMENTS
        } else {
            &HOLE_ELEMENTS
        }
    }

    /// This unit's residual rows at the given global angles.
    pub fn residual(&self, rho: &DVector<f64>) -> DVector<f64> {
        let local = self.local_angles(rho);
        let m = self.global_product(&local) - Matrix4::identity();
        DVector::from_iterator(
            self.selected_elements().len(),
            self.selected_elements().iter().map(|&(r, c)| m[(r, c)]),
        )
    }

    /// Exact derivative of this unit's residual rows with respect to every
    /// folding angle, valid at any rho (not only at consistent states).
    /// Columns are indexed by global crease id.
    pub fn jacobian_rows_at(&self, rho: &DVector<f64>, num_creases: usize) -> DMatrix<f64> {
        let local = self.local_angles(rho);
        let n = local.len();
        let factors = self.factors(&local);
        let (prefix, suffix) = prefix_suffix(&factors);
        let t = self.placement.to_homogeneous();
        let t_inv = self.placement.inverse().to_homogeneous();
        let elements = self.selected_elements();
        let mut rows = DMatrix::zeros(elements.len(), num_creases);
        for k in 0..n {
            // d/drho [H(Rz, v) H(Rx, 0)] = H(Rz, v) * [Rx' | 0]; the
            // translation block is annihilated by the zero bottom row.
            let d_factor = homogeneous(&rot_z(self.sector_angles[k]), &Vec3::zeros())
                * homogeneous_derivative(&rot_x_prime(local[k]));
            let d = t * prefix[k] * d_factor * suffix[k] * t_inv;
            let col = self.unit.creases[k];
            for (i, &(r, c)) in elements.iter().enumerate() {
                rows[(i, col)] += d[(r, c)];
            }
        }
        rows
    }

    /// Exact second derivative contracted twice with a direction vector,
    /// valid at any rho. Used by the derivative oracles.
    pub fn second_directional_at(&self, rho: &DVector<f64>, dir: &DVector<f64>) -> DVector<f64> {
        let local = self.local_angles(rho);
        let n = local.len();
        let factors = self.factors(&local);
        let (prefix, suffix) = prefix_suffix(&factors);
        let t = self.placement.to_homogeneous();
        let t_inv = self.placement.inverse().to_homogeneous();
        let elements = self.selected_elements();
        let mut out = DVector::zeros(elements.len());
        let d_locals: Vec<f64> = self.unit.creases.iter().map(|&c| dir[c]).collect();
        let zrot = |k: usize| {
            let trans = if self.unit.is_vertex_like() {
                Vec3::zeros()
            } else {
                self.translations[k]
            };
            homogeneous(&rot_z(self.sector_angles[k]), &trans)
        };
        for k in 0..n {
            for j in k..n {
                let m = if k == j {
                    let dd = zrot(k) * homogeneous_derivative(&rot_x_second(local[k]));
                    t * prefix[k] * dd * suffix[k] * t_inv
                } else {
                    let dk = zrot(k) * homogeneous_derivative(&rot_x_prime(local[k]));
                    let dj = zrot(j) * homogeneous_derivative(&rot_x_prime(local[j]));
                    let mut mid = Matrix4::identity();
                    for i in (k + 1)..j {
                        mid *= factors[i];
                    }
                    t * prefix[k] * dk * mid * dj * suffix[j] * t_inv
                };
                let weight = if k == j {
                    d_locals[k] * d_locals[k]
                } else {
                    2.0 * d_locals[k] * d_locals[j]
                };
                for (i, &(r, c)) in elements.iter().enumerate() {
                    out[i] += weight * m[(r, c)];
                }
            }
        }
        out
    }
}

fn prefix_suffix(factors: &[Matrix4<f64>]) -> (Vec<Matrix4<f64>>, Vec<Matrix4<f64>>) {
    let n = factors.len();
    let mut prefix = vec![Matrix4::identity(); n];
    for k in 1..n {
        prefix[k] = prefix[k - 1] * factors[k - 1];
    }
    let mut suffix = vec![Matrix4::identity(); n];
    for k in (0..n.saturating_sub(1)).rev() {
        suffix[k] = factors[k + 1] * suffix[k + 1];
    }
    (prefix, suffix)
}

/// The stacked constraint system of a creased paper: one block of rows per
/// unit, vertex units first (ascending id) then holes.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub constraints: Vec<UnitConstraint>,
    pub row_offsets: Vec<usize>,
    pub rows: usize,
    pub num_creases: usize,
}

impl ConstraintSystem {
    pub fn new(paper: &CreasedPaper) -> Result<Self> {
        let units = crate::model::extract_single_units(paper)?;
        Self::from_units(paper, &units)
    }

    pub fn from_units(paper: &CreasedPaper, units: &[SingleUnit]) -> Result<Self> {
        let mut constraints = Vec::with_capacity(units.len());
        let mut row_offsets = Vec::with_capacity(units.len());
        let mut rows = 0;
        for unit in units {
            row_offsets.push(rows);
            rows += unit.constraint_rows();
            constraints.push(UnitConstraint::from_unit(paper, unit)?);
        }
        Ok(ConstraintSystem {
            constraints,
            row_offsets,
            rows,
            num_creases: paper.creases.len(),
        })
    }

    /// The stacked residual A(rho).
    pub fn residual(&self, rho: &DVector<f64>) -> Result<DVector<f64>> {
        if rho.len() != self.num_creases {
            return Err(Error::DimensionMismatch {
                expected: self.num_creases,
                got: rho.len(),
            });
        }
        let mut out = DVector::zeros(self.rows);
        for (constraint, &offset) in self.constraints.iter().zip(&self.row_offsets) {
            let r = constraint.residual(rho);
            out.rows_mut(offset, r.len()).copy_from(&r);
        }
        Ok(out)
    }

    /// Exact Jacobian of the residual at any rho, assembled from the loop
    /// products by the product rule. At a consistent configuration this
    /// agrees with the closed-form assembly in [`crate::derivatives`].
    pub fn jacobian_at(&self, rho: &DVector<f64>) -> Result<DMatrix<f64>> {
        if rho.len() != self.num_creases {
            return Err(Error::DimensionMismatch {
                expected: self.num_creases,
                got: rho.len(),
            });
        }
        let mut out = DMatrix::zeros(self.rows, self.num_creases);
        for (constraint, &offset) in self.constraints.iter().zip(&self.row_offsets) {
            let rows = constraint.jacobian_rows_at(rho, self.num_creases);
            out.rows_mut(offset, rows.nrows()).copy_from(&rows);
        }
        Ok(out)
    }

    /// Consistency verdict with the spurious-solution guard: the selected
    /// elements must vanish *and* every full unit product must be close to
    /// the identity, which rejects the other rotation matrices whose selected
    /// elements happen to be zero.
    pub fn consistency(&self, rho: &DVector<f64>, res_tol: f64) -> Result<ConsistencyReport> {
        let residual = self.residual(rho)?;
        let selected_inf = residual.amax();
        let mut full_inf: f64 = 0.0;
        for constraint in &self.constraints {
            let local = constraint.local_angles(rho);
            let m = constraint.global_product(&local) - Matrix4::identity();
            let take = if constraint.unit.is_vertex_like() {
                3
            } else {
                4
            };
            for r in 0..take {
                for c in 0..take {
                    full_inf = full_inf.max(m[(r, c)].abs());
                }
            }
        }
        let guard_tol = res_tol.sqrt();
        Ok(ConsistencyReport {
            selected_inf,
            full_inf,
            consistent: selected_inf <= res_tol && full_inf <= guard_tol,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyReport {
    /// Max |A_i| over the selected independent elements.
    pub selected_inf: f64,
    /// Max deviation of the full unit products from the identity.
    pub full_inf: f64,
    pub consistent: bool,
}
