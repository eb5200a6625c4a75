//! Prints the tree bound for small left degrees and girths.
//!
//! cargo run --example tree_bound_table

use qary_pseudoweight::tree_bound;

fn main() {
    let girths: Vec<usize> = (4..=14).step_by(2).collect();
    print!("{:>4}", "d\\g");
    for g in &girths {
        print!("{g:>8}");
    }
    println!();
    for d in 2..=6 {
        print!("{d:>4}");
        for &g in &girths {
            print!("{:>8}", tree_bound(d, g).unwrap());
        }
        println!();
    }
}
