//! Computes a q-ary symmetric channel weight and the received word that
//! makes the decoder favour the pseudocodeword.
//!
//! cargo run --example qsc_weight_and_witness

use qary_pseudoweight::weights::{decoder_prefers, distance_qsc, witness_error_vector};
use qary_pseudoweight::{weight_qsc, Pseudocodeword};

fn main() -> qary_pseudoweight::Result<()> {
    let examples = [
        Pseudocodeword::new(3, 2, vec![vec![1, 1, 0], vec![1, 1, 0], vec![2, 0, 0]])?,
        Pseudocodeword::new(
            3,
            4,
            vec![vec![0, 3, 1], vec![1, 1, 2], vec![2, 2, 0], vec![4, 0, 0]],
        )?,
        Pseudocodeword::from_word(&[1, 2, 0, 1], 3)?,
    ];
    for f in &examples {
        let detail = weight_qsc(f);
        let r = witness_error_vector(f)?;
        println!("F = {f}");
        println!(
            "  e = {}, weight = {} ({})",
            detail.e,
            detail.weight,
            if detail.equality_case {
                "equality"
            } else {
                "strict"
            }
        );
        println!(
            "  witness {:?}: d(r, F) = {}, d(r, 0) = {}, decoder {:?}",
            r.0,
            distance_qsc(&r, f)?,
            r.hamming_weight(),
            decoder_prefers(&r, f)?
        );
    }
    Ok(())
}
