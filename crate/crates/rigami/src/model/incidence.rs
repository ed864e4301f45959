//! Incidence matrix between vertices and oriented inner creases, and the
//! row selections used to assemble the constraint Jacobian.

use nalgebra::DMatrix;

use super::types::CreasedPaper;

/// D is V x J with D[v][j] = +1 when crease j's direction vector leaves v,
/// -1 when it arrives at v, 0 otherwise. `l_v` keeps the rows of the inner
/// vertices; `l_h` sums the rows over each hole's boundary vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub d: DMatrix<i64>,
    pub l_v: DMatrix<i64>,
    pub l_h: DMatrix<i64>,
}

pub fn build_incidence(paper: &CreasedPaper) -> IncidenceMatrix {
    let v = paper.vertices.len();
    let j = paper.creases.len();
    let mut d = DMatrix::<i64>::zeros(v, j);
    for crease in &paper.creases {
        d[(crease.direction_from, crease.id)] = 1;
        d[(crease.direction_to(), crease.id)] = -1;
    }
    let mut l_v = DMatrix::<i64>::zeros(paper.inner_vertex_ids.len(), j);
    for (row, &vid) in paper.inner_vertex_ids.iter().enumerate() {
        l_v.row_mut(row).copy_from(&d.row(vid));
    }
    let mut l_h = DMatrix::<i64>::zeros(paper.hole_boundaries.len(), j);
    for (row, cycle) in paper.hole_boundaries.iter().enumerate() {
        for &vid in cycle {
            for col in 0..j {
                l_h[(row, col)] += d[(vid, col)];
            }
        }
    }
    IncidenceMatrix { d, l_v, l_h }
}
