//! Weighs one pseudocodeword on the AWGN channel under PAM, PSK and a custom
//! two-dimensional constellation.
//!
//! cargo run --example awgn_weights

use qary_pseudoweight::weights::{awgn_2d_terms, weight_awgn_pam_exact};
use qary_pseudoweight::{
    weight_awgn_2d, weight_awgn_pam, weight_awgn_psk, Constellation, Pseudocodeword,
};

fn main() -> qary_pseudoweight::Result<()> {
    let f = Pseudocodeword::new(3, 2, vec![vec![0, 1, 1], vec![0, 1, 1], vec![0, 1, 1]])?;
    println!("F = {f}");
    println!(
        "PAM weight {} = {:.6}",
        weight_awgn_pam_exact(&f),
        weight_awgn_pam(&f)
    );
    println!("PSK weight {:.6}", weight_awgn_psk(&f));

    // the PAM points embedded in the plane measure squared distance, so the
    // planar weight is a quarter of the one-dimensional PAM weight
    println!(
        "PAM in the plane {:.6}",
        weight_awgn_2d(&f, &Constellation::pam(3))?
    );

    let custom = Constellation::new(vec![(0.0, 0.0), (1.0, 0.5), (-0.5, 1.5)])?;
    let t = awgn_2d_terms(&f, &custom)?;
    println!(
        "custom: R = {:.4}, M = {:.4}, V = {:.4}, weight {:.6}",
        t.r,
        t.m,
        t.v,
        t.weight()
    );
    Ok(())
}
