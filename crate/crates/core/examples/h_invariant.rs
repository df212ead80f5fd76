//! h from the reduced δ and δ′ of each homology-sphere fixture.

use floer_workbench::fixtures::{builtin, FixtureName};
use floer_workbench::invariants::h_of;

fn main() {
    let names = [FixtureName::Pplus, FixtureName::Pminus]
        .into_iter()
        .chain((1..=4).map(FixtureName::NPplusModel));
    for name in names {
        let r = h_of(&builtin(&name).unwrap().data).unwrap();
        println!(
            "{name:<16} dim Ve={} dim Ve'={} h={}",
            r.dim_ve, r.dim_ve_prime, r.h
        );
    }
}
