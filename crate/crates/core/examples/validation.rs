//! Validate the built-in data, then break one invariant on purpose.

use floer_workbench::fixtures::{builtin, catalogue};
use floer_workbench::linalg::rat;
use floer_workbench::validate;

fn main() {
    for name in catalogue() {
        let f = builtin(&name).expect("builtin");
        println!("{name:<22} passed={}", validate(&f.data).passed());
    }

    let mut broken = builtin(&"Pplus".parse().unwrap()).unwrap().data;
    // δ′ must be a cycle of degree 4; moving it to degree 0 breaks support
    broken.delta_prime = vec![rat(1), rat(0)];
    for v in validate(&broken).violations {
        println!("violation: {v}");
    }
}
