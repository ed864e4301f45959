use crate::geometry::Vec3;

/// A mesh vertex with a position in the global frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub id: usize,
    pub position: Vec3,
}

/// A rigid polygonal panel, stored as its vertex cycle. Cycles wind
/// counter-clockwise with respect to the paper's orientation normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Panel {
    pub vertex_cycle: Vec<usize>,
}

impl Panel {
    pub fn len(&self) -> usize {
        self.vertex_cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_cycle.is_empty()
    }

    /// Vertex preceding `v` in the cycle.
    pub fn prev_vertex(&self, v: usize) -> Option<usize> {
        let i = self.vertex_cycle.iter().position(|&x| x == v)?;
        let n = self.vertex_cycle.len();
        Some(self.vertex_cycle[(i + n - 1) % n])
    }
}

/// An inner crease: a fold line between exactly two panels.
///
/// The direction vector runs from `direction_from` to the other endpoint;
/// the folding angle is measured with the right-hand rule in a way that does
/// not depend on that choice (positive folds are valleys with respect to the
/// orientation normal).
#[derive(Debug, Clone, PartialEq)]
pub struct Crease {
    pub id: usize,
    pub endpoints: (usize, usize),
    pub direction_from: usize,
    pub folding_angle: f64,
    /// Panels adjacent to this crease; exactly two after a successful load.
    pub adjacent_panels: Vec<usize>,
}

impl Crease {
    /// Endpoint the direction vector points to.
    pub fn direction_to(&self) -> usize {
        if self.direction_from == self.endpoints.0 {
            self.endpoints.1
        } else {
            self.endpoints.0
        }
    }

    pub fn other_endpoint(&self, v: usize) -> usize {
        if v == self.endpoints.0 {
            self.endpoints.1
        } else {
            self.endpoints.0
        }
    }

    pub fn has_endpoint(&self, v: usize) -> bool {
        v == self.endpoints.0 || v == self.endpoints.1
    }
}

/// Structure counts used throughout: I inner vertices, J inner creases,
/// H holes, K panels, Z boundary vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Counts {
    pub inner_vertices: usize,
    pub inner_creases: usize,
    pub holes: usize,
    pub panels: usize,
    pub boundary_vertices: usize,
}

/// A creased paper with its derived topology.
#[derive(Debug, Clone)]
pub struct CreasedPaper {
    pub vertices: Vec<Vertex>,
    pub panels: Vec<Panel>,
    pub creases: Vec<Crease>,
    /// Inner vertex ids in ascending order.
    pub inner_vertex_ids: Vec<usize>,
    /// Hole boundaries as cyclic vertex sequences, counter-clockwise around
    /// each hole. The outer boundary is excluded.
    pub hole_boundaries: Vec<Vec<usize>>,
    /// The outer boundary cycle, if the surface is not closed.
    pub outer_boundary: Option<Vec<usize>>,
    /// Non-fatal findings from loading (skipped checks, lenient-mode geometry).
    pub warnings: Vec<String>,
    pub(crate) topology: super::topology::Topology,
    /// Geometric tolerance used during loading, kept for downstream checks.
    pub geom_tol: f64,
}

impl CreasedPaper {
    pub fn counts(&self) -> Counts {
        let on_boundary = self.boundary_vertex_flags();
        Counts {
            inner_vertices: self.inner_vertex_ids.len(),
            inner_creases: self.creases.len(),
            holes: self.hole_boundaries.len(),
            panels: self.panels.len(),
            boundary_vertices: on_boundary.iter().filter(|&&b| b).count(),
        }
    }

    pub fn position(&self, v: usize) -> Vec3 {
        self.vertices[v].position
    }

    /// Unit direction vector of crease `c`, pointing from `direction_from`.
    pub fn crease_direction(&self, c: usize) -> Vec3 {
        let crease = &self.creases[c];
        let from = self.position(crease.direction_from);
        let to = self.position(crease.direction_to());
        (to - from).normalize()
    }

    pub fn is_inner_vertex(&self, v: usize) -> bool {
        self.inner_vertex_ids.binary_search(&v).is_ok()
    }

    pub fn folding_angles(&self) -> nalgebra::DVector<f64> {
        nalgebra::DVector::from_iterator(
            self.creases.len(),
            self.creases.iter().map(|c| c.folding_angle),
        )
    }

    /// Same paper with folding angles replaced (lengths must match).
    pub fn with_folding_angles(&self, rho: &nalgebra::DVector<f64>) -> crate::Result<Self> {
        if rho.len() != self.creases.len() {
            return Err(crate::Error::DimensionMismatch {
                expected: self.creases.len(),
                got: rho.len(),
            });
        }
        let mut out = self.clone();
        for (crease, &angle) in out.creases.iter_mut().zip(rho.iter()) {
            crease.folding_angle = angle;
        }
        Ok(out)
    }

    fn boundary_vertex_flags(&self) -> Vec<bool> {
        let mut flags = vec![false; self.vertices.len()];
        for cycle in self
            .hole_boundaries
            .iter()
            .chain(self.outer_boundary.iter())
        {
            for &v in cycle {
                flags[v] = true;
            }
        }
        flags
    }

    /// Diagonal of the axis-aligned bounding box of the vertex positions.
    pub fn bounding_box_diagonal(&self) -> f64 {
        let mut lo = Vec3::repeat(f64::INFINITY);
        let mut hi = Vec3::repeat(f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = lo.inf(&v.position);
            hi = hi.sup(&v.position);
        }
        if self.vertices.is_empty() {
            0.0
        } else {
            (hi - lo).norm()
        }
    }
}
