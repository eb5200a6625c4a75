//! Reads a parity-check matrix and compares its minimum distance with the
//! tree bound.
//!
//! cargo run --example analyze_alist -- crates/core/data/fano.alist 3

use std::path::PathBuf;

use qary_pseudoweight::bounds::verify_dmin_bound;
use qary_pseudoweight::cli::load_graph;
use qary_pseudoweight::field::DEFAULT_ENUMERATION_LIMIT;
use qary_pseudoweight::{girth, Error};

fn main() -> Result<(), Error> {
    let mut args = std::env::args().skip(1);
    let path: PathBuf = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/fano.alist").into())
        .into();
    let q: u32 = args
        .next()
        .map_or(2, |s| s.parse().expect("q must be an integer"));

    let graph = load_graph(&path, q)?;
    let report = girth(&graph);
    println!(
        "{}: n = {}, r = {}, k = {} over GF({q})",
        path.display(),
        graph.n(),
        graph.r(),
        graph.dimension()
    );
    println!("left degrees {:?}", graph.left_degrees());
    println!(
        "girth {:?}, smallest left degree {}",
        report.girth, report.min_left_degree
    );

    match verify_dmin_bound(&graph, DEFAULT_ENUMERATION_LIMIT) {
        Ok(b) => println!(
            "d_min = {} against T({}, {}) = {}: {}",
            b.compared_quantity,
            b.d,
            b.g,
            b.tree_bound_value,
            if b.satisfied { "holds" } else { "VIOLATED" }
        ),
        Err(e) => println!("no comparison: {e}"),
    }
    Ok(())
}
