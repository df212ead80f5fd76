//! Summing with P⁺ leaves the homology of admissible data unchanged.

use floer_workbench::complex::format_dims;
use floer_workbench::connect_sum::connected_sum_complex;
use floer_workbench::fixtures::pplus_with;
use floer_workbench::homology;
use floer_workbench::linalg::rat;
use floer_workbench::random::{random_admissible_upto, rng};

fn main() {
    let mut r = rng(7);
    for _ in 0..5 {
        let y = random_admissible_upto(&mut r, 6);
        let before = homology(&y.complex).unwrap().dims;
        let after = connected_sum_complex(&y, &pplus_with(&rat(1)))
            .unwrap()
            .homology_dims()
            .unwrap();
        println!(
            "{} gens: H(Y) = {:<16} H(Y # P+) = {}",
            y.len(),
            format_dims(&before),
            format_dims(&after)
        );
    }
}
