//! Builds a random double cover of the Fano plane code, lists a few of its
//! codewords and the pseudocodewords they project to.
//!
//! cargo run --example cover_pseudocodewords

use std::sync::Arc;

use qary_pseudoweight::covers::{lifted_code_basis, lifted_graph};
use qary_pseudoweight::field::enumerate_codewords;
use qary_pseudoweight::{
    catalog, girth, pseudocodeword_from_cover_codeword, random_lift, weight_qsc,
};

fn main() -> qary_pseudoweight::Result<()> {
    let base = Arc::new(catalog::fano_plane(2));
    let spec = random_lift(&base, 2, 42)?;
    let lifted = lifted_graph(&spec);
    println!(
        "base n = {}, girth {:?}; cover n = {}, girth {:?}",
        base.n(),
        girth(&base).girth,
        lifted.graph.n(),
        girth(&lifted.graph).girth
    );

    let basis = lifted_code_basis(&spec);
    println!("cover code dimension {}", basis.len());
    let words = enumerate_codewords(&basis, lifted.graph.n(), base.field(), 1 << 20)?;
    for word in words.skip(1).take(6) {
        let f = pseudocodeword_from_cover_codeword(&spec, &word)?;
        let kind = if f.is_integral() {
            "codeword"
        } else {
            "fractional"
        };
        println!(
            "{word:?} -> {f} ({kind}, qSC weight {})",
            weight_qsc(&f).weight
        );
    }
    println!(
        "cover JSON: {}",
        serde_json::to_string(&spec.to_json()).unwrap()
    );
    Ok(())
}
