//! P⁻ is the dual of P⁺: degrees k ↦ 5 − k, δ and δ′ exchanged.

use floer_workbench::dualize;
use floer_workbench::fixtures::{pminus_with, pplus_with, serialize};
use floer_workbench::invariants::h_of;
use floer_workbench::linalg::rat;

fn main() {
    let p = pplus_with(&rat(1));
    let dual = dualize(&p, 5).expect("sphere data dualizes with constant 5");
    print!("{}", serialize(&dual));
    let relabeled = dual
        .renamed(&[("rho4", "rho1"), ("rho0", "rho5")])
        .permuted(&[1, 0]);
    println!("matches P- fixture: {}", relabeled == pminus_with(&rat(1)));
    println!(
        "h(P+) = {}, h(dual) = {}",
        h_of(&p).unwrap().h,
        h_of(&dual).unwrap().h
    );
}
