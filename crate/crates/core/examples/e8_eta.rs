//! Counting congruent vectors of equal norm in −nE8.

use floer_workbench::lattice::{eta, is_extremal, min_charge_k, AllPlus, LatticeVector};

fn main() {
    let w0 = LatticeVector::w0();
    println!(
        "w0 = {w0}, extremal {}, k = {}",
        is_extremal(&w0),
        min_charge_k(&w0).unwrap()
    );
    for n in 1..=3 {
        let r = eta(&LatticeVector::w0_power(n), &AllPlus);
        println!("eta(w0^{n}) = {}", r.count);
    }
    let bumped = LatticeVector::from_integers(&[3, 3, 1, 1, 0, 0, 0, 0]).unwrap();
    println!("{bumped} extremal: {}", is_extremal(&bumped));
}
