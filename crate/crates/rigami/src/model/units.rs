//! Single units: the restriction of the creased paper around one inner vertex
//! or one hole, with its ordered crease fan and per-crease geometry.

use super::types::CreasedPaper;
use crate::error::{Error, Result};
use crate::geometry::{self, Vec3};

#[derive(Debug, Clone, PartialEq)]
pub enum UnitKind {
    /// Fan around an inner vertex.
    Vertex { vertex: usize },
    /// Fan around a hole (index into `hole_boundaries`).
    Hole { hole: usize },
    /// A hole whose incident crease lines are concurrent; it behaves as a
    /// vertex unit centred on the common point, and its translation closure
    /// is automatically satisfied.
    HoleAsVertex { hole: usize, centre: Vec3 },
}

/// One consistency-constraint loop. Creases are in counter-clockwise fan
/// order starting from the lowest crease id; a crease crossed twice by the
/// fan (possible for holes) appears once per crossing.
#[derive(Debug, Clone)]
pub struct SingleUnit {
    pub kind: UnitKind,
    pub creases: Vec<usize>,
    /// Vertex each fan slot is anchored at: the centre vertex for vertex
    /// units, the hole-boundary vertex incident to the crease for holes.
    pub anchors: Vec<usize>,
    /// `panels[k]` lies between `creases[k]` and `creases[k+1]`.
    pub panels: Vec<usize>,
    /// Incidence sign per slot: +1 when the crease's direction vector points
    /// away from the unit, -1 when it points toward it.
    pub signs: Vec<f64>,
    /// Unit crease direction per slot, pointing away from the unit (global frame).
    pub away_dirs: Vec<Vec3>,
    /// Anchor positions per slot (global frame); meaningful for hole units.
    pub origins: Vec<Vec3>,
}

impl SingleUnit {
    /// Rows this unit contributes to the stacked residual: 3 for vertex-like
    /// units, 6 for holes.
    pub fn constraint_rows(&self) -> usize {
        match self.kind {
            UnitKind::Hole { .. } => 6,
            _ => 3,
        }
    }

    pub fn is_vertex_like(&self) -> bool {
        !matches!(self.kind, UnitKind::Hole { .. })
    }

    pub fn degree(&self) -> usize {
        self.creases.len()
    }
}

/// One unit per inner vertex (ascending id) followed by one per hole
/// (ascending hole index). Holes with concurrent crease lines are
/// reclassified as vertex units centred on the least-squares intersection.
pub fn extract_single_units(paper: &CreasedPaper) -> Result<Vec<SingleUnit>> {
    let mut creases_at = vec![Vec::new(); paper.vertices.len()];
    for crease in &paper.creases {
        creases_at[crease.endpoints.0].push(crease.id);
        creases_at[crease.endpoints.1].push(crease.id);
    }

    let mut units = Vec::new();
    for &v in &paper.inner_vertex_ids {
        let walk = paper
            .topology
            .vertex_fan(&paper.panels, v, &creases_at[v])?;
        let mut unit = SingleUnit {
            kind: UnitKind::Vertex { vertex: v },
            creases: walk.creases,
            anchors: walk.anchors,
            panels: walk.panels,
            signs: Vec::new(),
            away_dirs: Vec::new(),
            origins: Vec::new(),
        };
        fill_geometry(paper, &mut unit)?;
        units.push(unit);
    }
    for (h, cycle) in paper.hole_boundaries.iter().enumerate() {
        let walk = paper.topology.hole_fan(&paper.panels, cycle)?;
        let mut unit = SingleUnit {
            kind: UnitKind::Hole { hole: h },
            creases: walk.creases,
            anchors: walk.anchors,
            panels: walk.panels,
            signs: Vec::new(),
            away_dirs: Vec::new(),
            origins: Vec::new(),
        };
        fill_geometry(paper, &mut unit)?;
        let lines: Vec<(Vec3, Vec3)> = unit
            .origins
            .iter()
            .zip(&unit.away_dirs)
            .map(|(o, d)| (*o, *d))
            .collect();
        if let Some((centre, worst)) = geometry::least_squares_line_intersection(&lines) {
            if worst <= paper.geom_tol {
                unit.kind = UnitKind::HoleAsVertex { hole: h, centre };
            }
        }
        units.push(unit);
    }
    Ok(units)
}

fn fill_geometry(paper: &CreasedPaper, unit: &mut SingleUnit) -> Result<()> {
    for (&c, &anchor) in unit.creases.iter().zip(&unit.anchors) {
        let crease = &paper.creases[c];
        let other = crease.other_endpoint(anchor);
        let away = paper.position(other) - paper.position(anchor);
        let len = away.norm();
        if len <= paper.geom_tol {
            return Err(Error::DegenerateCrease { crease: c });
        }
        unit.away_dirs.push(away / len);
        unit.signs.push(if crease.direction_from == anchor {
            1.0
        } else {
            -1.0
        });
        unit.origins.push(paper.position(anchor));
    }
    Ok(())
}

/// Normal of a panel from its stored vertex positions (unit length).
pub fn panel_normal(paper: &CreasedPaper, panel: usize) -> Vec3 {
    let pts: Vec<Vec3> = paper.panels[panel]
        .vertex_cycle
        .iter()
        .map(|&v| paper.position(v))
        .collect();
    geometry::newell_normal(&pts).normalize()
}
