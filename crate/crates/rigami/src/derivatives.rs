//! Closed-form first and second derivatives of the consistency constraints
//! in the global frame.
//!
//! At a consistent configuration the derivative of a unit's product with
//! respect to a folding angle reduces to the skew matrix of that crease's
//! direction vector (and, for holes, the moment of the anchor point), so the
//! Jacobian column for crease j carries the direction vector pointing away
//! from each incident unit, and zero elsewhere. Second derivatives are
//! products of two such skews, which keeps the Hessian block-local per unit.

use nalgebra::{DMatrix, DVector};

use crate::consistency::ConstraintSystem;
use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::model::CreasedPaper;

/// The constraint Jacobian JA, rows grouped per unit (3 per vertex-like unit,
/// 6 per hole), one column per inner crease.
#[derive(Debug, Clone)]
pub struct Jacobian {
    pub matrix: DMatrix<f64>,
    pub row_offsets: Vec<usize>,
}

impl Jacobian {
    pub fn shape(&self) -> (usize, usize) {
        self.matrix.shape()
    }

    /// Sparse view: (row, col, value) triples of the nonzero entries.
    pub fn coordinate_list(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for r in 0..self.matrix.nrows() {
            for c in 0..self.matrix.ncols() {
                let v = self.matrix[(r, c)];
                if v != 0.0 {
                    out.push((r, c, v));
                }
            }
        }
        out
    }
}

/// Second derivatives of one unit's residual rows, stored per ordered pair of
/// fan slots (k <= j). Slots map to global crease columns through `cols`;
/// a crease crossed twice by the fan owns two slots, and contractions
/// accumulate over slot pairs, which realizes the chain rule exactly.
#[derive(Debug, Clone)]
struct UnitHessian {
    row_offset: usize,
    rows: usize,
    cols: Vec<usize>,
    /// `values[pair_index(k, j)]` is the rows-long value vector for slots k <= j.
    values: Vec<DVector<f64>>,
}

impl UnitHessian {
    fn pair_index(&self, k: usize, j: usize) -> usize {
        debug_assert!(k <= j);
        // Triangular row-major indexing over slot pairs.
        let n = self.cols.len();
        k * n - k * (k + 1) / 2 + j
    }
}

/// The constraint Hessian HA: an order-3 array (constraint row, crease,
/// crease), symmetric in the crease pair and materialized only on the
/// unit-local blocks.
#[derive(Debug, Clone)]
pub struct Hessian {
    units: Vec<UnitHessian>,
    pub rows: usize,
    pub num_creases: usize,
}

impl Hessian {
    /// Contraction with a stress vector: G[j][k] = sum_i w_i HA[i][j][k],
    /// returned explicitly symmetrized as (G + G^T) / 2.
    pub fn contract_stress(&self, stress: &DVector<f64>) -> Result<DMatrix<f64>> {
        if stress.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: stress.len(),
            });
        }
        let mut g = DMatrix::zeros(self.num_creases, self.num_creases);
        for unit in &self.units {
            let w = stress.rows(unit.row_offset, unit.rows);
            let n = unit.cols.len();
            for k in 0..n {
                for j in k..n {
                    let value = w.dot(&unit.values[unit.pair_index(k, j)]);
                    let (ck, cj) = (unit.cols[k], unit.cols[j]);
                    if k == j {
                        g[(ck, cj)] += value;
                    } else {
                        g[(ck, cj)] += value;
                        g[(cj, ck)] += value;
                    }
                }
            }
        }
        Ok((&g + g.transpose()) * 0.5)
    }

    /// Quadratic contraction v^T HA v per constraint row: the length-rows
    /// vector whose i-th entry is sum_jk HA[i][j][k] v_j v_k.
    pub fn quadratic_form(&self, v: &DVector<f64>) -> Result<DVector<f64>> {
        if v.len() != self.num_creases {
            return Err(Error::DimensionMismatch {
                expected: self.num_creases,
                got: v.len(),
            });
        }
        let mut out = DVector::zeros(self.rows);
        for unit in &self.units {
            let n = unit.cols.len();
            for k in 0..n {
                for j in k..n {
                    let weight = if k == j {
                        v[unit.cols[k]] * v[unit.cols[j]]
                    } else {
                        2.0 * v[unit.cols[k]] * v[unit.cols[j]]
                    };
                    if weight != 0.0 {
                        let vals = &unit.values[unit.pair_index(k, j)];
                        for r in 0..unit.rows {
                            out[unit.row_offset + r] += weight * vals[r];
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Dense slice HA[row][.][.] as a J x J symmetric matrix.
    pub fn row_slice(&self, row: usize) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.num_creases, self.num_creases);
        for unit in &self.units {
            if row < unit.row_offset || row >= unit.row_offset + unit.rows {
                continue;
            }
            let r = row - unit.row_offset;
            let n = unit.cols.len();
            for k in 0..n {
                for j in k..n {
                    let value = unit.values[unit.pair_index(k, j)][r];
                    let (ck, cj) = (unit.cols[k], unit.cols[j]);
                    out[(ck, cj)] += value;
                    if k != j {
                        out[(cj, ck)] += value;
                    }
                }
            }
        }
        out
    }

    /// Directional contraction (HA . d) as a rows x J matrix: the derivative
    /// of the Jacobian along the folding-angle direction d.
    pub fn directional(&self, d: &DVector<f64>) -> Result<DMatrix<f64>> {
        if d.len() != self.num_creases {
            return Err(Error::DimensionMismatch {
                expected: self.num_creases,
                got: d.len(),
            });
        }
        let mut out = DMatrix::zeros(self.rows, self.num_creases);
        for unit in &self.units {
            let n = unit.cols.len();
            for k in 0..n {
                for j in k..n {
                    let vals = &unit.values[unit.pair_index(k, j)];
                    let (ck, cj) = (unit.cols[k], unit.cols[j]);
                    for r in 0..unit.rows {
                        out[(unit.row_offset + r, cj)] += vals[r] * d[ck];
                        if k != j {
                            out[(unit.row_offset + r, ck)] += vals[r] * d[cj];
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Sparse view: (row, crease j, crease k, value) quadruples with j <= k,
    /// per materialized block entry.
    pub fn coordinate_list(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for unit in &self.units {
            let n = unit.cols.len();
            for k in 0..n {
                for j in k..n {
                    let vals = &unit.values[unit.pair_index(k, j)];
                    let (lo, hi) = {
                        let (a, b) = (unit.cols[k], unit.cols[j]);
                        if a <= b {
                            (a, b)
                        } else {
                            (b, a)
                        }
                    };
                    for r in 0..unit.rows {
                        if vals[r] != 0.0 {
                            out.push((unit.row_offset + r, lo, hi, vals[r]));
                        }
                    }
                }
            }
        }
        out.sort_by_key(|a| (a.0, a.1, a.2));
        out
    }

    fn scale_slots(&mut self, factors: &[f64]) {
        for unit in &mut self.units {
            let n = unit.cols.len();
            for k in 0..n {
                for j in k..n {
                    let f = factors[unit.cols[k]] * factors[unit.cols[j]];
                    let idx = unit.pair_index(k, j);
                    unit.values[idx] *= f;
                }
            }
        }
    }
}

/// Assemble JA at the paper's stored (consistent) configuration.
pub fn assemble_jacobian(system: &ConstraintSystem) -> Jacobian {
    let mut matrix = DMatrix::zeros(system.rows, system.num_creases);
    for (constraint, &offset) in system.constraints.iter().zip(&system.row_offsets) {
        let unit = &constraint.unit;
        for (slot, &c) in unit.creases.iter().enumerate() {
            let x = unit.away_dirs[slot];
            matrix[(offset, c)] += x.x;
            matrix[(offset + 1, c)] += x.y;
            matrix[(offset + 2, c)] += x.z;
            if !unit.is_vertex_like() {
                let m = unit.origins[slot].cross(&x);
                matrix[(offset + 3, c)] += m.x;
                matrix[(offset + 4, c)] += m.y;
                matrix[(offset + 5, c)] += m.z;
            }
        }
    }
    Jacobian {
        matrix,
        row_offsets: system.row_offsets.clone(),
    }
}

/// Assemble HA at the paper's stored configuration.
pub fn assemble_hessian(system: &ConstraintSystem) -> Hessian {
    let mut units = Vec::with_capacity(system.constraints.len());
    for (constraint, &offset) in system.constraints.iter().zip(&system.row_offsets) {
        let unit = &constraint.unit;
        let n = unit.degree();
        let rows = unit.constraint_rows();
        let mut block = UnitHessian {
            row_offset: offset,
            rows,
            cols: unit.creases.clone(),
            values: Vec::with_capacity(n * (n + 1) / 2),
        };
        for k in 0..n {
            for j in k..n {
                let u = unit.away_dirs[k];
                let v = unit.away_dirs[j];
                // Selected elements of skew(u) * skew(v) = v u^T - (u.v) I.
                let mut vals = DVector::zeros(rows);
                vals[0] = v.z * u.y;
                vals[1] = v.x * u.z;
                vals[2] = v.y * u.x;
                if rows == 6 {
                    let w: Vec3 = u.cross(&unit.origins[j].cross(&v));
                    vals[3] = w.x;
                    vals[4] = w.y;
                    vals[5] = w.z;
                }
                block.values.push(vals);
            }
        }
        units.push(block);
    }
    Hessian {
        units,
        rows: system.rows,
        num_creases: system.num_creases,
    }
}

/// First and second derivatives with respect to the normalized folding angles
/// t = tan(rho / 2): each Jacobian column scales by 2 / (1 + t_j^2) and each
/// Hessian block by the product of its two column factors.
pub fn tangent_substitution(
    paper: &CreasedPaper,
    jacobian: &Jacobian,
    hessian: &Hessian,
) -> Result<(Jacobian, Hessian)> {
    let mut factors = Vec::with_capacity(paper.creases.len());
    for crease in &paper.creases {
        let rho = crease.folding_angle;
        if (rho.abs() - std::f64::consts::PI).abs() < 1e-12 {
            return Err(Error::TangentPole { crease: crease.id });
        }
        let t = (rho / 2.0).tan();
        factors.push(2.0 / (1.0 + t * t));
    }
    let mut jt = jacobian.clone();
    for (c, &f) in factors.iter().enumerate() {
        let mut col = jt.matrix.column_mut(c);
        col *= f;
    }
    let mut ht = hessian.clone();
    ht.scale_slots(&factors);
    Ok((jt, ht))
}
