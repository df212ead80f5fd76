//! Nonvanishing pairing on the three-factor connected-sum cycle.

use floer_workbench::connect_sum::{verify_sum_bound, BoundFactor};
use floer_workbench::fixtures::nilpotent_ladder;
use floer_workbench::random::{change_of_basis, rng};

fn main() {
    let n = 2;
    let mut r = rng(5);
    let spans = [2, 2, 1];
    let factors = spans.map(|k| {
        BoundFactor::from_data(&change_of_basis(&mut r, &nilpotent_ladder(n, k))).unwrap()
    });
    let rep = verify_sum_bound(&factors, n).unwrap();
    println!("spans {:?}, l = {}", rep.spans, rep.l);
    println!(
        "pairing {} (expected {})",
        rep.pairing_value, rep.expected_value
    );
}
