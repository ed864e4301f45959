//! Directed-edge bookkeeping for the panel complex: boundary cycle extraction
//! and the rotation walks that order creases around a vertex or a hole.

use std::collections::HashMap;

use super::types::{CreasedPaper, Panel};
use crate::error::{Error, Result};

/// Directed-edge maps derived from the panel cycles.
#[derive(Debug, Clone, Default)]
pub(crate) struct Topology {
    /// (a, b) -> panel containing the directed edge a->b.
    pub half_edge: HashMap<(usize, usize), usize>,
    /// Undirected edge (min, max) -> declared inner-crease id.
    pub crease_of_edge: HashMap<(usize, usize), usize>,
}

pub(crate) fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Topology {
    pub fn build(panels: &[Panel]) -> Result<Self> {
        let mut multiplicity: HashMap<(usize, usize), usize> = HashMap::new();
        for panel in panels {
            let n = panel.vertex_cycle.len();
            for k in 0..n {
                let a = panel.vertex_cycle[k];
                let b = panel.vertex_cycle[(k + 1) % n];
                *multiplicity.entry(edge_key(a, b)).or_insert(0) += 1;
            }
        }
        if let Some((&(a, b), &count)) = multiplicity.iter().find(|&(_, &c)| c > 2) {
            return Err(Error::NonManifoldEdge { a, b, count });
        }

        let mut half_edge = HashMap::new();
        for (pi, panel) in panels.iter().enumerate() {
            let n = panel.vertex_cycle.len();
            for k in 0..n {
                let a = panel.vertex_cycle[k];
                let b = panel.vertex_cycle[(k + 1) % n];
                if a == b {
                    return Err(Error::Document(format!(
                        "panel {pi} repeats vertex {a} on consecutive cycle positions"
                    )));
                }
                if half_edge.insert((a, b), pi).is_some() {
                    return Err(Error::Document(format!(
                        "directed edge {a}->{b} appears in two panel cycles; \
                         panel orientations are inconsistent"
                    )));
                }
            }
        }
        Ok(Topology {
            half_edge,
            crease_of_edge: HashMap::new(),
        })
    }

    /// Number of panels adjacent to the undirected edge {a, b}.
    pub fn edge_panel_count(&self, a: usize, b: usize) -> usize {
        self.half_edge.contains_key(&(a, b)) as usize
            + self.half_edge.contains_key(&(b, a)) as usize
    }

    /// All boundary cycles as directed half-edge chains. A boundary half-edge
    /// (a, b) is the missing twin of a panel half-edge (b, a); chaining them
    /// keeps the material on a consistent side, so hole cycles come out
    /// counter-clockwise and the outer cycle clockwise with respect to the
    /// paper orientation.
    pub fn boundary_cycles(&self, panels: &[Panel]) -> Result<Vec<Vec<usize>>> {
        let mut boundary: Vec<(usize, usize)> = self
            .half_edge
            .keys()
            .filter(|&&(a, b)| !self.half_edge.contains_key(&(b, a)))
            .map(|&(a, b)| (b, a))
            .collect();
        boundary.sort_unstable();
        let mut remaining: std::collections::HashSet<(usize, usize)> =
            boundary.iter().copied().collect();

        let mut cycles = Vec::new();
        for &start in &boundary {
            if !remaining.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut edge = start;
            loop {
                if !remaining.remove(&edge) {
                    return Err(Error::Document(format!(
                        "boundary walk revisited edge {}->{}; the complex pinches at a vertex",
                        edge.0, edge.1
                    )));
                }
                cycle.push(edge.0);
                edge = self.next_boundary_edge(edge, panels)?;
                if edge == start {
                    break;
                }
            }
            // Deterministic starting point.
            if let Some(min_pos) = cycle
                .iter()
                .enumerate()
                .min_by_key(|&(_, v)| v)
                .map(|(i, _)| i)
            {
                cycle.rotate_left(min_pos);
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }

    /// The boundary half-edge following (a, b): rotate around b through the
    /// incident panels until the far side has no panel.
    fn next_boundary_edge(
        &self,
        (a, b): (usize, usize),
        panels: &[Panel],
    ) -> Result<(usize, usize)> {
        let mut u = a;
        for _ in 0..=self.half_edge.len() {
            let Some(&p) = self.half_edge.get(&(b, u)) else {
                return Ok((b, u));
            };
            u = panels[p]
                .prev_vertex(b)
                .ok_or_else(|| Error::Document(format!("panel {p} does not contain vertex {b}")))?;
        }
        Err(Error::Document(format!(
            "rotation around vertex {b} does not terminate"
        )))
    }

    /// Creases around inner vertex `v` in counter-clockwise fan order,
    /// starting from the lowest crease id, together with the fan panels
    /// (`panels[k]` sits between creases k and k+1).
    pub fn vertex_fan(
        &self,
        paper_panels: &[Panel],
        v: usize,
        creases_at: &[usize],
    ) -> Result<FanWalk> {
        let start_crease = *creases_at
            .iter()
            .min()
            .ok_or_else(|| Error::Document(format!("inner vertex {v} has no creases")))?;
        let mut walk = FanWalk::default();
        let mut w = self.crease_other_end(start_crease, v)?;
        let first = w;
        walk.creases.push(start_crease);
        walk.anchors.push(v);
        for _ in 0..=creases_at.len() {
            let &p = self.half_edge.get(&(v, w)).ok_or_else(|| {
                Error::Document(format!(
                    "inner vertex {v} has a boundary edge to {w}; vertex classification is inconsistent"
                ))
            })?;
            walk.panels.push(p);
            let u = paper_panels[p]
                .prev_vertex(v)
                .ok_or_else(|| Error::Document(format!("panel {p} does not contain vertex {v}")))?;
            if u == first {
                if walk.creases.len() != creases_at.len() {
                    return Err(Error::Document(format!(
                        "fan around vertex {v} closed after {} creases but {} are incident; \
                         the complex pinches at this vertex",
                        walk.creases.len(),
                        creases_at.len()
                    )));
                }
                return Ok(walk);
            }
            let c = *self.crease_of_edge.get(&edge_key(v, u)).ok_or_else(|| {
                Error::Document(format!(
                    "edge between {v} and {u} is interior but not declared as a crease"
                ))
            })?;
            walk.creases.push(c);
            walk.anchors.push(v);
            w = u;
        }
        Err(Error::Document(format!(
            "fan walk around vertex {v} does not terminate"
        )))
    }

    /// Creases around a hole in fan order (rotated so the lowest crease id
    /// leads), with the boundary vertex each crease is anchored at and the
    /// fan panels between consecutive creases.
    pub fn hole_fan(&self, paper_panels: &[Panel], cycle: &[usize]) -> Result<FanWalk> {
        // Events over one trip around the hole: each interior edge crossed is
        // a crease anchored at the cycle vertex we are rotating about; the
        // panel recorded with it is the fan panel *before* that crease.
        let mut creases = Vec::new();
        let mut anchors = Vec::new();
        let mut pre_panels = Vec::new();
        let n = cycle.len();
        for i in 0..n {
            let a = cycle[i];
            let b = cycle[(i + 1) % n];
            let mut u = a;
            for _ in 0..=self.half_edge.len() {
                let Some(&p) = self.half_edge.get(&(b, u)) else {
                    break;
                };
                let next = paper_panels[p].prev_vertex(b).ok_or_else(|| {
                    Error::Document(format!("panel {p} does not contain vertex {b}"))
                })?;
                if !self.half_edge.contains_key(&(b, next)) {
                    break;
                }
                let c = *self.crease_of_edge.get(&edge_key(b, next)).ok_or_else(|| {
                    Error::Document(format!(
                        "edge between {b} and {next} is interior but not declared as a crease"
                    ))
                })?;
                creases.push(c);
                anchors.push(b);
                pre_panels.push(p);
                u = next;
            }
        }
        if creases.is_empty() {
            return Err(Error::Document(
                "hole has no incident inner creases".to_string(),
            ));
        }
        // panels[k] sits after creases[k], i.e. it is the pre-panel of the
        // next crease event around the fan.
        let m = creases.len();
        let mut walk = FanWalk {
            panels: (0..m).map(|k| pre_panels[(k + 1) % m]).collect(),
            creases,
            anchors,
        };
        // Rotate so the lowest crease id (first occurrence) leads.
        let lead = walk
            .creases
            .iter()
            .enumerate()
            .min_by_key(|&(_, c)| c)
            .map(|(i, _)| i)
            .unwrap();
        walk.creases.rotate_left(lead);
        walk.anchors.rotate_left(lead);
        walk.panels.rotate_left(lead);
        Ok(walk)
    }

    fn crease_other_end(&self, crease: usize, v: usize) -> Result<usize> {
        for (&(a, b), &c) in &self.crease_of_edge {
            if c == crease {
                return if a == v {
                    Ok(b)
                } else if b == v {
                    Ok(a)
                } else {
                    Err(Error::Document(format!(
                        "crease {crease} is not incident to vertex {v}"
                    )))
                };
            }
        }
        Err(Error::Document(format!("crease {crease} not found")))
    }
}

/// Ordered crease fan around one unit. `panels[k]` is the panel between
/// `creases[k]` and `creases[k+1]` (cyclically).
#[derive(Debug, Clone, Default)]
pub(crate) struct FanWalk {
    pub creases: Vec<usize>,
    pub anchors: Vec<usize>,
    pub panels: Vec<usize>,
}

/// Panels reachable from panel 0 across declared creases; used to reject
/// disconnected papers, whose Euler bookkeeping would silently drift.
pub(crate) fn connected_panel_count(paper: &CreasedPaper) -> usize {
    let k = paper.panels.len();
    if k == 0 {
        return 0;
    }
    let mut seen = vec![false; k];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(p) = stack.pop() {
        for crease in &paper.creases {
            if crease.adjacent_panels.contains(&p) {
                for &q in &crease.adjacent_panels {
                    if !seen[q] {
                        seen[q] = true;
                        count += 1;
                        stack.push(q);
                    }
                }
            }
        }
    }
    count
}
