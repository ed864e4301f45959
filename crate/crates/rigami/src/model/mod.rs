//! Creased-paper model: geometry plus topology, inner/outer classification,
//! incidence structure, and single-unit extraction.

mod document;
mod incidence;
pub(crate) mod topology;
mod types;
mod units;

pub use document::{
    load_creased_paper, load_creased_paper_from_file, DocCrease, DocFlatVertex, DocVertex,
    Document, GeometryChecks, LoadOptions,
};
pub use incidence::{build_incidence, IncidenceMatrix};
pub use types::{Counts, Crease, CreasedPaper, Panel, Vertex};
pub use units::{extract_single_units, panel_normal, SingleUnit, UnitKind};
