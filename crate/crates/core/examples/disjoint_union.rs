//! The two-summand disjoint-union complex and its symmetry relations.

use floer_workbench::complex::format_dims;
use floer_workbench::connect_sum::{disjoint_union_complex, extended_u, kernel_symmetry_check};
use floer_workbench::fixtures::trefoil_like;

fn main() {
    let t = trefoil_like();
    let c = disjoint_union_complex(&t, &t).expect("admissible factors");
    let h = c.homology().unwrap();
    println!(
        "generators {}, homology {}",
        c.total.len(),
        format_dims(&h.dims)
    );
    let u = extended_u(&c).unwrap();
    println!(
        "extended u commutes with the differential: {}",
        u.mul(&c.total.differential) == c.total.differential.mul(&u)
    );
    for (g, z) in &h.ordered {
        println!(
            "  class in degree {g}: symmetry holds = {}",
            kernel_symmetry_check(&c, z).unwrap()
        );
    }
}
