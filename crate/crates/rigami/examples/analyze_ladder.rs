//! Run the full rigidity ladder on a built-in structure (or a document given
//! on the command line) and print the text report.
//!
//!     cargo run --example analyze_ladder [path/to/document.json]

use rigami::model::{load_creased_paper, load_creased_paper_from_file, LoadOptions};
use rigami::report::{analyze, render_text, AnalyzeOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let paper = match std::env::args().nth(1) {
        Some(path) => {
            load_creased_paper_from_file(std::path::Path::new(&path), &LoadOptions::default())?
        }
        None => load_creased_paper(
            &rigami::fixtures::tetrahedron_triangulated(),
            &LoadOptions::default(),
        )?,
    };
    let report = analyze(&paper, &AnalyzeOptions::default())?;
    print!("{}", render_text(&report));
    Ok(())
}
