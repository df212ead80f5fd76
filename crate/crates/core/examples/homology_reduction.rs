//! Homology of a random complex and the descent of u to it.

use floer_workbench::complex::format_dims;
use floer_workbench::fixtures::serialize;
use floer_workbench::random::{random_admissible, rng};
use floer_workbench::{homology, reduce_to_homology};

fn main() {
    let d = random_admissible(&mut rng(42), 7);
    println!("chain dims    {}", format_dims(&d.dims()));
    let h = homology(&d.complex).expect("valid complex");
    println!("homology dims {}", format_dims(&h.dims));
    for (g, z) in &h.ordered {
        println!("  [{g}] {}", floer_workbench::linalg::format_vector(z));
    }
    let reduced = reduce_to_homology(&d).expect("admissible data descends");
    print!("{}", serialize(&reduced));
}
