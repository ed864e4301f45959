//! The JSON document format and the loader that turns it into a validated
//! [`CreasedPaper`].

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::topology::{connected_panel_count, edge_key, Topology};
use super::types::{Crease, CreasedPaper, Panel, Vertex};
use crate::error::{Error, Result};
use crate::geometry::{self, Vec3};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocVertex {
    pub id: usize,
    pub xyz: [f64; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocCrease {
    pub id: usize,
    pub ends: [usize; 2],
    pub from: usize,
    pub rho: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocFlatVertex {
    pub id: usize,
    pub xyz2: [f64; 2],
}

/// On-disk creased-paper document. Angles are radians; `flat_vertices`
/// optionally carries the development (flat state) for the configuration
/// consistency check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub vertices: Vec<DocVertex>,
    pub panels: Vec<Vec<usize>>,
    pub creases: Vec<DocCrease>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat_vertices: Option<Vec<DocFlatVertex>>,
}

impl Document {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// How to treat metric defects (non-planar panels, configuration drift).
///
/// `Strict` rejects them; `Lenient` downgrades them to warnings so that
/// schematic inputs, whose crease directions and anchor points are meaningful
/// even though no planar-panel realization exists, can still be analysed
/// through the incidence-based pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GeometryChecks {
    #[default]
    Strict,
    Lenient,
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    pub geometry: GeometryChecks,
    /// Geometric tolerance; defaults to 1e-8 times the bounding-box diagonal.
    pub geom_tol: Option<f64>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            geometry: GeometryChecks::Strict,
            geom_tol: None,
        }
    }
}

impl LoadOptions {
    pub fn lenient() -> Self {
        LoadOptions {
            geometry: GeometryChecks::Lenient,
            ..Default::default()
        }
    }
}

pub fn load_creased_paper(doc: &Document, options: &LoadOptions) -> Result<CreasedPaper> {
    let vertices = check_vertices(doc)?;
    let panels = check_panels(doc, vertices.len())?;
    let mut creases = check_creases(doc, vertices.len())?;

    let mut topology = Topology::build(&panels)?;

    // Every declared crease must be an interior (two-panel) edge, and every
    // interior edge must be declared.
    let mut interior_edges: HashSet<(usize, usize)> = HashSet::new();
    let mut seen_edges: HashSet<(usize, usize)> = HashSet::new();
    for &(a, b) in topology.half_edge.keys() {
        let key = edge_key(a, b);
        if !seen_edges.insert(key) {
            continue;
        }
        match topology.edge_panel_count(a, b) {
            1 => {}
            2 => {
                interior_edges.insert(key);
            }
            n => {
                return Err(Error::NonManifoldEdge {
                    a: key.0,
                    b: key.1,
                    count: n,
                })
            }
        }
    }
    for crease in &mut creases {
        let key = edge_key(crease.endpoints.0, crease.endpoints.1);
        if !interior_edges.contains(&key) {
            return Err(Error::Document(format!(
                "crease {} between vertices {} and {} is not an interior edge",
                crease.id, crease.endpoints.0, crease.endpoints.1
            )));
        }
        if topology.crease_of_edge.insert(key, crease.id).is_some() {
            return Err(Error::Document(format!(
                "two creases declared on the edge between {} and {}",
                key.0, key.1
            )));
        }
        crease.adjacent_panels = vec![
            topology.half_edge[&(key.0, key.1)],
            topology.half_edge[&(key.1, key.0)],
        ];
    }
    for &(a, b) in &interior_edges {
        if !topology.crease_of_edge.contains_key(&(a, b)) {
            return Err(Error::Document(format!(
                "interior edge between vertices {a} and {b} is not declared as a crease"
            )));
        }
    }

    let cycles = topology.boundary_cycles(&panels)?;
    let mut warnings = Vec::new();
    let (outer_boundary, hole_boundaries) = split_outer_boundary(&vertices, cycles, &mut warnings);

    let mut on_boundary = vec![false; vertices.len()];
    for cycle in hole_boundaries.iter().chain(outer_boundary.iter()) {
        for &v in cycle {
            on_boundary[v] = true;
        }
    }
    let inner_vertex_ids: Vec<usize> = (0..vertices.len()).filter(|&v| !on_boundary[v]).collect();

    let mut paper = CreasedPaper {
        vertices,
        panels,
        creases,
        inner_vertex_ids,
        hole_boundaries,
        outer_boundary,
        warnings,
        topology,
        geom_tol: 0.0,
    };
    paper.geom_tol = options
        .geom_tol
        .unwrap_or(1e-8 * paper.bounding_box_diagonal().max(1.0));

    check_euler(&paper)?;
    if connected_panel_count(&paper) != paper.panels.len() && paper.panels.len() > 1 {
        return Err(Error::Document(
            "panels are not connected through creases".to_string(),
        ));
    }
    check_degenerate_creases(&paper)?;
    check_planarity(&mut paper, options)?;
    check_configuration(&mut paper, doc, options)?;
    Ok(paper)
}

pub fn load_creased_paper_from_file(path: &Path, options: &LoadOptions) -> Result<CreasedPaper> {
    load_creased_paper(&Document::from_file(path)?, options)
}

fn check_vertices(doc: &Document) -> Result<Vec<Vertex>> {
    let n = doc.vertices.len();
    let mut seen = vec![false; n];
    let mut out = vec![
        Vertex {
            id: 0,
            position: Vec3::zeros()
        };
        n
    ];
    for v in &doc.vertices {
        if v.id >= n || seen[v.id] {
            return Err(Error::Document(format!(
                "vertex ids must be unique and dense 0..{n}; got {}",
                v.id
            )));
        }
        if !v.xyz.iter().all(|x| x.is_finite()) {
            return Err(Error::Document(format!(
                "vertex {} has a non-finite position",
                v.id
            )));
        }
        seen[v.id] = true;
        out[v.id] = Vertex {
            id: v.id,
            position: Vec3::new(v.xyz[0], v.xyz[1], v.xyz[2]),
        };
    }
    Ok(out)
}

fn check_panels(doc: &Document, vertex_count: usize) -> Result<Vec<Panel>> {
    let mut out = Vec::with_capacity(doc.panels.len());
    for (i, cycle) in doc.panels.iter().enumerate() {
        if cycle.len() < 3 {
            return Err(Error::Document(format!(
                "panel {i} has {} vertices; a panel needs at least 3",
                cycle.len()
            )));
        }
        let mut seen = HashSet::new();
        for &v in cycle {
            if v >= vertex_count {
                return Err(Error::Document(format!(
                    "panel {i} references unknown vertex {v}"
                )));
            }
            if !seen.insert(v) {
                return Err(Error::Document(format!(
                    "panel {i} repeats vertex {v} in its cycle"
                )));
            }
        }
        out.push(Panel {
            vertex_cycle: cycle.clone(),
        });
    }
    Ok(out)
}

fn check_creases(doc: &Document, vertex_count: usize) -> Result<Vec<Crease>> {
    let n = doc.creases.len();
    let mut seen = vec![false; n];
    let mut out = vec![
        Crease {
            id: 0,
            endpoints: (0, 0),
            direction_from: 0,
            folding_angle: 0.0,
            adjacent_panels: Vec::new(),
        };
        n
    ];
    for c in &doc.creases {
        if c.id >= n || seen[c.id] {
            return Err(Error::Document(format!(
                "crease ids must be unique and dense 0..{n}; got {}",
                c.id
            )));
        }
        let [a, b] = c.ends;
        if a >= vertex_count || b >= vertex_count || a == b {
            return Err(Error::Document(format!(
                "crease {} has invalid endpoints [{a}, {b}]",
                c.id
            )));
        }
        if c.from != a && c.from != b {
            return Err(Error::Document(format!(
                "crease {}: `from` must be one of its endpoints",
                c.id
            )));
        }
        if !c.rho.is_finite() || c.rho.abs() > std::f64::consts::PI + 1e-12 {
            return Err(Error::Document(format!(
                "crease {}: folding angle {} is outside [-pi, pi]",
                c.id, c.rho
            )));
        }
        seen[c.id] = true;
        out[c.id] = Crease {
            id: c.id,
            endpoints: (a, b),
            direction_from: c.from,
            folding_angle: c.rho,
            adjacent_panels: Vec::new(),
        };
    }
    Ok(out)
}

/// Pick the outer boundary among the boundary cycles: the one bounding the
/// unbounded face, identified as the cycle with the largest area vector.
/// Closed surfaces have no boundary cycles and therefore no outer boundary.
fn split_outer_boundary(
    vertices: &[Vertex],
    cycles: Vec<Vec<usize>>,
    warnings: &mut Vec<String>,
) -> (Option<Vec<usize>>, Vec<Vec<usize>>) {
    if cycles.is_empty() {
        return (None, Vec::new());
    }
    let areas: Vec<f64> = cycles
        .iter()
        .map(|cycle| {
            let pts: Vec<Vec3> = cycle.iter().map(|&v| vertices[v].position).collect();
            geometry::newell_normal(&pts).norm()
        })
        .collect();
    let outer = areas
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    let runner_up = areas
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != outer)
        .map(|(_, &a)| a)
        .fold(0.0, f64::max);
    if runner_up > 0.0 && runner_up >= areas[outer] * (1.0 - 1e-6) {
        warnings.push(format!(
            "outer boundary selection is ambiguous: two boundary cycles enclose \
             nearly equal areas ({:.6e} vs {:.6e})",
            areas[outer], runner_up
        ));
    }
    let mut holes = Vec::new();
    let mut outer_cycle = None;
    for (i, cycle) in cycles.into_iter().enumerate() {
        if i == outer {
            outer_cycle = Some(cycle);
        } else {
            holes.push(cycle);
        }
    }
    holes.sort_by_key(|c| c.iter().copied().min().unwrap_or(usize::MAX));
    (outer_cycle, holes)
}

fn check_euler(paper: &CreasedPaper) -> Result<()> {
    let counts = paper.counts();
    let i = counts.inner_vertices as i64;
    let j = counts.inner_creases as i64;
    let h = counts.holes as i64;
    // With a boundary this is K = -I + J - H + 1; a closed (sphere-like)
    // surface has Euler characteristic 2 instead of 1 - H, giving K = -I + J + 2.
    let expected = if paper.outer_boundary.is_some() {
        -i + j - h + 1
    } else {
        -i + j + 2
    };
    if counts.panels as i64 != expected {
        return Err(Error::EulerViolation {
            panels: counts.panels,
            expected,
            inner_vertices: counts.inner_vertices,
            inner_creases: counts.inner_creases,
            holes: counts.holes,
        });
    }
    Ok(())
}

fn check_degenerate_creases(paper: &CreasedPaper) -> Result<()> {
    for crease in &paper.creases {
        let len = (paper.position(crease.endpoints.0) - paper.position(crease.endpoints.1)).norm();
        if len <= paper.geom_tol {
            return Err(Error::DegenerateCrease { crease: crease.id });
        }
    }
    Ok(())
}

fn check_planarity(paper: &mut CreasedPaper, options: &LoadOptions) -> Result<()> {
    for (i, panel) in paper.panels.iter().enumerate() {
        let pts: Vec<Vec3> = panel
            .vertex_cycle
            .iter()
            .map(|&v| paper.vertices[v].position)
            .collect();
        let deviation = geometry::planarity_deviation(&pts);
        if deviation > paper.geom_tol {
            match options.geometry {
                GeometryChecks::Strict => {
                    return Err(Error::NonPlanarPanel {
                        panel: i,
                        deviation,
                        tolerance: paper.geom_tol,
                    })
                }
                GeometryChecks::Lenient => paper.warnings.push(format!(
                    "panel {i} is not planar (deviation {deviation:.3e}); \
                     continuing with its best-fit plane"
                )),
            }
        }
    }
    Ok(())
}

/// Refold the flat development by the stored folding angles and compare the
/// result against the stored 3-D positions.
fn check_configuration(
    paper: &mut CreasedPaper,
    doc: &Document,
    options: &LoadOptions,
) -> Result<()> {
    let Some(flat) = &doc.flat_vertices else {
        paper
            .warnings
            .push("no flat_vertices given; configuration consistency check skipped".to_string());
        return Ok(());
    };
    let mut flat_pos: HashMap<usize, Vec3> = HashMap::new();
    for fv in flat {
        if fv.id >= paper.vertices.len() {
            return Err(Error::Document(format!(
                "flat_vertices references unknown vertex {}",
                fv.id
            )));
        }
        flat_pos.insert(fv.id, Vec3::new(fv.xyz2[0], fv.xyz2[1], 0.0));
    }
    for v in 0..paper.vertices.len() {
        if !flat_pos.contains_key(&v) {
            return Err(Error::Document(format!(
                "flat_vertices is missing vertex {v}"
            )));
        }
    }

    // Place panel 0 so its flat shape coincides with the stored 3-D shape,
    // then propagate placements across creases by folding.
    let k = paper.panels.len();
    let mut placement: Vec<Option<geometry::RigidTransform>> = vec![None; k];
    placement[0] = Some(seed_placement(paper, &flat_pos, 0)?);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        let t_p = placement[p].unwrap();
        for crease in &paper.creases {
            let [p0, p1] = [crease.adjacent_panels[0], crease.adjacent_panels[1]];
            if p0 != p && p1 != p {
                continue;
            }
            let q = if p0 == p { p1 } else { p0 };
            if placement[q].is_some() {
                continue;
            }
            let (a, b) = crease.endpoints;
            let left = paper.topology.half_edge[&(a, b)];
            let fa = flat_pos[&a];
            let dir = (flat_pos[&b] - fa).normalize();
            // The panel on the left of a->b sits at +rho relative to the right one.
            let fold = if q == left {
                geometry::RigidTransform::about_line(fa, dir, crease.folding_angle)
            } else {
                geometry::RigidTransform::about_line(fa, dir, -crease.folding_angle)
            };
            placement[q] = Some(t_p.compose(&fold));
            queue.push_back(q);
        }
    }

    let mut worst: Option<(usize, f64)> = None;
    for (p, panel) in paper.panels.iter().enumerate() {
        let Some(t) = placement[p] else {
            return Err(Error::Document(format!(
                "panel {p} is unreachable from panel 0; paper is disconnected"
            )));
        };
        for &v in &panel.vertex_cycle {
            let refolded = t.apply(&flat_pos[&v]);
            let dev = (refolded - paper.position(v)).norm();
            if worst.is_none_or(|(_, w)| dev > w) {
                worst = Some((v, dev));
            }
        }
    }
    if let Some((vertex, deviation)) = worst {
        if deviation > paper.geom_tol {
            match options.geometry {
                GeometryChecks::Strict => {
                    return Err(Error::ConfigurationInconsistent {
                        vertex,
                        deviation,
                        tolerance: paper.geom_tol,
                    })
                }
                GeometryChecks::Lenient => paper.warnings.push(format!(
                    "stored configuration deviates from the refolded development \
                     by {deviation:.3e} at vertex {vertex}"
                )),
            }
        }
    }
    Ok(())
}

fn seed_placement(
    paper: &CreasedPaper,
    flat_pos: &HashMap<usize, Vec3>,
    panel: usize,
) -> Result<geometry::RigidTransform> {
    let cycle = &paper.panels[panel].vertex_cycle;
    let v0 = cycle[0];
    let v1 = cycle[1];
    let flat_x = flat_pos[&v1] - flat_pos[&v0];
    let pts: Vec<Vec3> = cycle.iter().map(|&v| paper.position(v)).collect();
    let normal = geometry::newell_normal(&pts);
    let solid_x = paper.position(v1) - paper.position(v0);
    if flat_x.norm() <= paper.geom_tol || solid_x.norm() <= paper.geom_tol {
        return Err(Error::Document(format!(
            "panel {panel} has a degenerate first edge; cannot seed the refold"
        )));
    }
    let flat_frame = geometry::RigidTransform::from_frame(flat_x, Vec3::z(), flat_pos[&v0]);
    let solid_frame = geometry::RigidTransform::from_frame(solid_x, normal, paper.position(v0));
    Ok(solid_frame.compose(&flat_frame.inverse()))
}
