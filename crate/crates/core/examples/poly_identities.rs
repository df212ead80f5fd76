//! Which telescoping exponent makes the factorization exact.

use floer_workbench::polyid::{verify_telescoping, verify_triple_identity};

fn main() {
    for n in 1..=5 {
        let r = verify_telescoping(n).unwrap();
        println!(
            "n={n}: n-1-i exact {}, n-i exact {}",
            r.holds_corrected, r.holds_as_printed
        );
    }
    let r = verify_telescoping(2).unwrap();
    println!("n=2 defect with n-i: {}", r.as_printed_defect);
    for n in 1..=3 {
        println!(
            "triple identity n={n}: {}",
            verify_triple_identity(n).unwrap()
        );
    }
}
