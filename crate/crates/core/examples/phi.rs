//! φ as a span dimension and as a filtration order.

use floer_workbench::fixtures::{builtin, pplus_with, FixtureName};
use floer_workbench::invariants::phi;
use floer_workbench::linalg::{rat, unit_vector};

fn main() {
    for m in 1..=4 {
        let f = builtin(&FixtureName::NilpotentLadder(m)).unwrap();
        let r = phi(&f.data.u, f.distinguished.as_ref().unwrap()).unwrap();
        println!(
            "ladder {m}: span {} filtration {:?} agree {:?}",
            r.span_dim, r.filtration_order, r.agree
        );
    }
    // on P+ the filtration depends on the free entry u(rho0)
    for c in [0, 2] {
        let r = phi(&pplus_with(&rat(c)).u, &unit_vector(2, 1)).unwrap();
        println!(
            "P+ with u(rho0)={c}: span {} filtration {:?}",
            r.span_dim, r.filtration_order
        );
    }
}
