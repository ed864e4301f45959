//! Built-in structures used by the test suites, the examples, and the
//! `fixtures` CLI subcommand.
//!
//! All of them load strictly except [`degree5_hole_eq21`], a schematic
//! single-hole configuration whose crease directions and anchor points are the
//! interesting part: no planar-panel realization of it exists, so it must be
//! loaded with [`GeometryChecks::Lenient`](crate::model::GeometryChecks) and
//! analysed through the incidence-based pipeline only.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;

use crate::error::Result;
use crate::model::{DocCrease, DocFlatVertex, DocVertex, Document};

fn vertex(id: usize, x: f64, y: f64, z: f64) -> DocVertex {
    DocVertex { id, xyz: [x, y, z] }
}

fn crease(id: usize, a: usize, b: usize, rho: f64) -> DocCrease {
    DocCrease {
        id,
        ends: [a, b],
        from: a,
        rho,
    }
}

fn flat(id: usize, x: f64, y: f64) -> DocFlatVertex {
    DocFlatVertex { id, xyz2: [x, y] }
}

/// Planar degree-3 single-vertex paper: one flat inner vertex with three
/// creases at 120 degrees. First-order flexible, pre-stress stable with a
/// positive stress on the vertex.
pub fn degree3_vertex() -> Document {
    let s = 3.0_f64.sqrt() / 2.0;
    Document {
        vertices: vec![
            vertex(0, 0.0, 0.0, 0.0),
            vertex(1, 1.0, 0.0, 0.0),
            vertex(2, -0.5, s, 0.0),
            vertex(3, -0.5, -s, 0.0),
        ],
        panels: vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1]],
        creases: vec![
            crease(0, 0, 1, 0.0),
            crease(1, 0, 2, 0.0),
            crease(2, 0, 3, 0.0),
        ],
        flat_vertices: Some(vec![
            flat(0, 0.0, 0.0),
            flat(1, 1.0, 0.0),
            flat(2, -0.5, s),
            flat(3, -0.5, -s),
        ]),
    }
}

/// Flat square annulus with five creases around the hole (one corner carries
/// two). A valid degree-5 single-hole paper used by the fixture-wide suites.
pub fn degree5_hole() -> Document {
    let coords = [
        (-1.0, -1.0), // 0: hole corner
        (1.0, -1.0),  // 1: hole corner, carries creases 1 and 2
        (1.0, 1.0),   // 2: hole corner
        (-1.0, 1.0),  // 3: hole corner
        (-2.0, -2.0), // 4
        (1.0, -2.0),  // 5
        (2.0, -2.0),  // 6
        (2.0, -1.0),  // 7
        (2.0, 2.0),   // 8
        (-2.0, 2.0),  // 9
        (-2.0, 0.0),  // 10
    ];
    Document {
        vertices: coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| vertex(i, x, y, 0.0))
            .collect(),
        panels: vec![
            vec![4, 5, 1, 0],
            vec![5, 6, 7, 1],
            vec![7, 8, 2, 1],
            vec![8, 9, 10, 3, 2],
            vec![10, 4, 0, 3],
        ],
        creases: vec![
            crease(0, 0, 4, 0.0),
            crease(1, 1, 5, 0.0),
            crease(2, 1, 7, 0.0),
            crease(3, 2, 8, 0.0),
            crease(4, 3, 10, 0.0),
        ],
        flat_vertices: Some(
            coords
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| flat(i, x, y))
                .collect(),
        ),
    }
}

/// Flat composite with two inner vertices (degrees 5 and 4), a square hole,
/// and nine panels. Its incidence structure exercises every sign case: the
/// hole fan has two creases anchored at one corner, and several creases point
/// toward their units.
pub fn fig3_composite() -> Document {
    let coords = [
        (0.0, 0.0),   // 0: inner, degree 5
        (-2.0, 2.0),  // 1
        (0.0, 2.0),   // 2: inner, degree 4
        (2.0, 2.0),   // 3: hole corner, carries creases 2 and 10
        (0.0, -2.0),  // 4
        (-2.0, -2.0), // 5
        (0.0, 4.0),   // 6
        (2.0, 4.0),   // 7: hole corner
        (4.0, 4.0),   // 8: hole corner
        (6.0, 6.0),   // 9
        (4.0, 2.0),   // 10: hole corner
        (6.0, 0.0),   // 11
        (4.0, 0.0),   // 12
    ];
    Document {
        vertices: coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| vertex(i, x, y, 0.0))
            .collect(),
        panels: vec![
            vec![0, 3, 7, 2],
            vec![0, 2, 1],
            vec![0, 1, 5],
            vec![0, 5, 4],
            vec![0, 4, 12, 3],
            vec![12, 11, 10, 3],
            vec![10, 11, 9, 8],
            vec![8, 9, 6, 2, 7],
            vec![2, 6, 1],
        ],
        creases: vec![
            crease(0, 0, 1, 0.0),
            crease(1, 0, 2, 0.0),
            crease(2, 0, 3, 0.0),
            crease(3, 0, 4, 0.0),
            crease(4, 0, 5, 0.0),
            crease(5, 1, 2, 0.0),
            crease(6, 2, 6, 0.0),
            crease(7, 2, 7, 0.0),
            crease(8, 8, 9, 0.0),
            crease(9, 10, 11, 0.0),
            crease(10, 3, 12, 0.0),
        ],
        flat_vertices: Some(
            coords
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| flat(i, x, y))
                .collect(),
        ),
    }
}

/// Folding angle across every edge of a regular tetrahedron with outward
/// normals: a mountain fold of pi minus the dihedral angle.
pub fn tetrahedron_fold_angle() -> f64 {
    -(PI - (1.0f64 / 3.0).acos())
}

/// Closed regular tetrahedron surface: first-order (hence statically) rigid.
pub fn tetrahedron() -> Document {
    let rho = tetrahedron_fold_angle();
    Document {
        vertices: vec![
            vertex(0, 1.0, 1.0, 1.0),
            vertex(1, 1.0, -1.0, -1.0),
            vertex(2, -1.0, 1.0, -1.0),
            vertex(3, -1.0, -1.0, 1.0),
        ],
        panels: vec![vec![1, 3, 2], vec![0, 2, 3], vec![0, 3, 1], vec![0, 1, 2]],
        creases: vec![
            crease(0, 0, 1, rho),
            crease(1, 0, 2, rho),
            crease(2, 0, 3, rho),
            crease(3, 1, 2, rho),
            crease(4, 1, 3, rho),
            crease(5, 2, 3, rho),
        ],
        flat_vertices: None,
    }
}

/// Tetrahedron with one face split at its centroid into three coplanar
/// triangles. The flat centroid vertex gives a one-dimensional first-order
/// flex; a positive self-stress on it stabilizes the structure.
pub fn tetrahedron_triangulated() -> Document {
    let rho = tetrahedron_fold_angle();
    let third = 1.0 / 3.0;
    Document {
        vertices: vec![
            vertex(0, 1.0, 1.0, 1.0),
            vertex(1, 1.0, -1.0, -1.0),
            vertex(2, -1.0, 1.0, -1.0),
            vertex(3, -1.0, -1.0, 1.0),
            vertex(4, third, third, -third),
        ],
        panels: vec![
            vec![1, 3, 2],
            vec![0, 2, 3],
            vec![0, 3, 1],
            vec![0, 1, 4],
            vec![1, 2, 4],
            vec![2, 0, 4],
        ],
        creases: vec![
            crease(0, 0, 1, rho),
            crease(1, 0, 2, rho),
            crease(2, 0, 3, rho),
            crease(3, 1, 2, rho),
            crease(4, 1, 3, rho),
            crease(5, 2, 3, rho),
            crease(6, 4, 0, 0.0),
            crease(7, 4, 1, 0.0),
            crease(8, 4, 2, 0.0),
        ],
        flat_vertices: None,
    }
}

/// Degree-4 cone vertex with sector sum 270 degrees, realized as a box corner
/// with one quarter panel split in half. A one-parameter mechanism: flexible,
/// independent (zero self-stress), second-order foldable.
pub fn degree4_cone() -> Document {
    let h = 0.5f64.sqrt();
    Document {
        vertices: vec![
            vertex(0, 0.0, 0.0, 0.0),
            vertex(1, 1.0, 0.0, 0.0),
            vertex(2, 0.0, 1.0, 0.0),
            vertex(3, 0.0, 0.0, 1.0),
            vertex(4, h, 0.0, h),
        ],
        panels: vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 1]],
        creases: vec![
            crease(0, 0, 1, FRAC_PI_2),
            crease(1, 0, 2, FRAC_PI_2),
            crease(2, 0, 3, FRAC_PI_2),
            crease(3, 0, 4, 0.0),
        ],
        flat_vertices: None,
    }
}

/// Two unit squares sharing a fold: the smallest paper with an inner crease
/// and no consistency constraints at all. Mainly a loader test subject; its
/// development is included, so refolding checks the fold-angle sign
/// conventions end to end.
pub fn folded_book(theta: f64) -> Document {
    let (s, c) = theta.sin_cos();
    Document {
        vertices: vec![
            vertex(0, 0.0, 0.0, 0.0),
            vertex(1, 1.0, 0.0, 0.0),
            vertex(2, 1.0, 1.0, 0.0),
            vertex(3, 0.0, 1.0, 0.0),
            vertex(4, 1.0 + c, 0.0, s),
            vertex(5, 1.0 + c, 1.0, s),
        ],
        panels: vec![vec![0, 1, 2, 3], vec![1, 4, 5, 2]],
        creases: vec![crease(0, 1, 2, theta)],
        flat_vertices: Some(vec![
            flat(0, 0.0, 0.0),
            flat(1, 1.0, 0.0),
            flat(2, 1.0, 1.0),
            flat(3, 0.0, 1.0),
            flat(4, 2.0, 0.0),
            flat(5, 2.0, 1.0),
        ]),
    }
}

/// A lone square panel: no inner creases, trivially rigid.
pub fn lone_panel() -> Document {
    Document {
        vertices: vec![
            vertex(0, 0.0, 0.0, 0.0),
            vertex(1, 1.0, 0.0, 0.0),
            vertex(2, 1.0, 1.0, 0.0),
            vertex(3, 0.0, 1.0, 0.0),
        ],
        panels: vec![vec![0, 1, 2, 3]],
        creases: vec![],
        flat_vertices: Some(vec![
            flat(0, 0.0, 0.0),
            flat(1, 1.0, 0.0),
            flat(2, 1.0, 1.0),
            flat(3, 0.0, 1.0),
        ]),
    }
}

/// Schematic degree-5 single-hole configuration: a unit square hole with
/// creases anchored at its corners, one of them leaving the plane. The crease
/// directions and anchors make a full-rank test case for the hole Jacobian,
/// but panels 3 and 4 cannot be planar, so this document only loads with
/// lenient geometry checks.
pub fn degree5_hole_eq21() -> Document {
    let r = 0.5f64.sqrt();
    Document {
        vertices: vec![
            vertex(0, 0.0, 0.0, 0.0),
            vertex(1, 1.0, 0.0, 0.0),
            vertex(2, 1.0, 1.0, 0.0),
            vertex(3, 0.0, 1.0, 0.0),
            vertex(4, -r, -r, 0.0),
            vertex(5, 1.0, -r, 0.0),
            vertex(6, 1.0 + r, 0.0, 0.0),
            vertex(7, 1.0 + r, 1.0 + r, 0.0),
            vertex(8, 0.0, 1.0, 1.0),
        ],
        panels: vec![
            vec![5, 1, 0, 4],
            vec![6, 1, 5],
            vec![7, 2, 1, 6],
            vec![8, 3, 2, 7],
            vec![4, 0, 3, 8],
        ],
        creases: vec![
            crease(0, 0, 4, 0.0),
            crease(1, 1, 5, 0.0),
            crease(2, 1, 6, 0.0),
            crease(3, 2, 7, 0.0),
            crease(4, 3, 8, 0.0),
        ],
        flat_vertices: None,
    }
}

/// A flat 3x5 grid of unit panels with two cells removed from the middle
/// row: the smallest convenient paper with two holes. Every grid vertex lies
/// on a boundary, so the constraints come from the holes alone.
pub fn two_hole_grid() -> Document {
    let cols = 6;
    let rows = 4;
    let idx = |r: usize, c: usize| r * cols + c;
    let mut vertices = Vec::new();
    let mut flats = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            vertices.push(vertex(idx(r, c), c as f64, r as f64, 0.0));
            flats.push(flat(idx(r, c), c as f64, r as f64));
        }
    }
    let missing = [(1usize, 1usize), (1, 3)];
    let mut panels = Vec::new();
    for r in 0..rows - 1 {
        for c in 0..cols - 1 {
            if missing.contains(&(r, c)) {
                continue;
            }
            panels.push(vec![
                idx(r, c),
                idx(r, c + 1),
                idx(r + 1, c + 1),
                idx(r + 1, c),
            ]);
        }
    }
    // Every edge shared by two panels is a crease; collect them off the grid.
    let mut creases = Vec::new();
    let cell = |r: i64, c: i64| -> bool {
        r >= 0
            && c >= 0
            && r < rows as i64 - 1
            && c < cols as i64 - 1
            && !missing.contains(&(r as usize, c as usize))
    };
    let mut id = 0;
    for r in 0..rows {
        for c in 0..cols - 1 {
            // Horizontal edge (r,c)-(r,c+1): between cells (r-1,c) and (r,c).
            if cell(r as i64 - 1, c as i64) && cell(r as i64, c as i64) {
                creases.push(crease(id, idx(r, c), idx(r, c + 1), 0.0));
                id += 1;
            }
        }
    }
    for r in 0..rows - 1 {
        for c in 0..cols {
            // Vertical edge (r,c)-(r+1,c): between cells (r,c-1) and (r,c).
            if cell(r as i64, c as i64 - 1) && cell(r as i64, c as i64) {
                creases.push(crease(id, idx(r, c), idx(r + 1, c), 0.0));
                id += 1;
            }
        }
    }
    Document {
        vertices,
        panels,
        creases,
        flat_vertices: Some(flats),
    }
}

/// The named fixture set written by the `fixtures` subcommand.
pub fn builtin_fixtures() -> Vec<(&'static str, Document)> {
    vec![
        ("degree3_vertex", degree3_vertex()),
        ("degree5_hole", degree5_hole()),
        ("fig3_composite", fig3_composite()),
        ("tetrahedron", tetrahedron()),
        ("tetrahedron_triangulated", tetrahedron_triangulated()),
        ("degree4_cone", degree4_cone()),
        ("degree5_hole_eq21", degree5_hole_eq21()),
    ]
}

/// The six fixtures that load strictly; the suite-wide property tests and the
/// rigidity-hierarchy checks run over exactly these.
pub fn suite_fixtures() -> Vec<(&'static str, Document)> {
    builtin_fixtures()
        .into_iter()
        .filter(|(name, _)| *name != "degree5_hole_eq21")
        .collect()
}

/// Write every built-in fixture to `dir` as `<name>.json`.
pub fn write_fixtures(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, doc) in builtin_fixtures() {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, doc.to_json_pretty())?;
        written.push(path);
    }
    Ok(written)
}
