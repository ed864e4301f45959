//! Build a creased-paper document programmatically (a folded book), write it
//! to JSON, load it back with full validation, and inspect the result. Shows
//! the document format end to end, including the optional flat development
//! that enables the refold consistency check.
//!
//!     cargo run --example build_a_paper

use rigami::model::{load_creased_paper, Document, LoadOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc: Document = rigami::fixtures::folded_book(0.7);
    let json = doc.to_json_pretty();
    println!("document:\n{json}\n");

    let parsed = Document::from_json(&json)?;
    let paper = load_creased_paper(&parsed, &LoadOptions::default())?;
    let counts = paper.counts();
    println!(
        "loaded: {} vertices, {} panels, {} inner creases, {} holes",
        paper.vertices.len(),
        counts.panels,
        counts.inner_creases,
        counts.holes
    );
    for w in &paper.warnings {
        println!("warning: {w}");
    }

    // One inner crease between two panels, no vertex or hole constraints:
    // the book folds freely.
    let system = rigami::consistency::ConstraintSystem::new(&paper)?;
    let jacobian = rigami::derivatives::assemble_jacobian(&system);
    println!(
        "constraint rows: {}, flexes: {}",
        system.rows,
        rigami::statics::first_order_flexes(&jacobian, 1e-10).dimension()
    );
    Ok(())
}
