//! Homology of P⁺ # P⁺ and of iterated sums with the model fixtures.

use floer_workbench::complex::format_dims;
use floer_workbench::connect_sum::{connected_sum_complex, iterated_sum_dims};
use floer_workbench::fixtures::{nplus_model, pplus_with};
use floer_workbench::linalg::rat;

fn main() {
    let p = pplus_with(&rat(0));
    let c = connected_sum_complex(&p, &p).expect("valid factors");
    println!("P+ # P+: {} generators, signs {}", c.total.len(), c.signs);
    println!("  homology {}", format_dims(&c.homology_dims().unwrap()));
    for (i, dims) in iterated_sum_dims(&p, &p, 4, nplus_model)
        .unwrap()
        .iter()
        .enumerate()
    {
        println!("{} copies: {}", i + 2, format_dims(dims));
    }
}
