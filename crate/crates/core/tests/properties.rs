use floer_workbench::complex::{dualize, Grading, Invariant};
use floer_workbench::connect_sum::{accepted_sign_configs, connected_sum_with_signs, Shape};
use floer_workbench::fixtures::{parse, serialize};
use floer_workbench::lattice::{congruent_vectors_with_threads, is_member, norm, LatticeVector};
use floer_workbench::linalg::{inverse, kernel_basis, rank, rat, RatMatrix, Rational};
use floer_workbench::polyid::Poly;
use floer_workbench::random::{
    change_of_basis, random_admissible, random_floer_data, random_sphere, rng, small_rational,
};
use floer_workbench::{homology, reduce_to_homology, validate};
use proptest::prelude::*;
use rand::Rng;

fn matrix(rows: usize, cols: usize, seed: u64) -> RatMatrix {
    let mut r = rng(seed);
    let mut m = RatMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, small_rational(&mut r));
        }
    }
    m
}

fn invertible(n: usize, seed: u64) -> RatMatrix {
    (0..)
        .map(|k| matrix(n, n, seed.wrapping_add(k)))
        .find(|m| inverse(m).is_some())
        .unwrap()
}

fn euler(dims: &[usize; 8]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

fn poly(seed: u64) -> Poly {
    let mut r = rng(seed);
    let mut p = Poly::zero();
    for _ in 0..4 {
        let e = [r.gen_range(0..3), r.gen_range(0..3), r.gen_range(0..3)];
        p = p + Poly::monomial(e, small_rational(&mut r));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_invariant_under_invertible_change(rows in 1usize..6, cols in 1usize..6, seed: u64) {
        let m = matrix(rows, cols, seed);
        let p = invertible(rows, seed ^ 1);
        let q = invertible(cols, seed ^ 2);
        prop_assert_eq!(rank(&p.mul(&m).mul(&q)), rank(&m));
    }

    #[test]
    fn rank_nullity(rows in 1usize..7, cols in 1usize..7, seed: u64) {
        let m = matrix(rows, cols, seed);
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.len(), cols);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn dualize_is_an_involution(n in 1usize..7, seed: u64) {
        let d = random_floer_data(&mut rng(seed), n);
        let back = dualize(&dualize(&d, 5).unwrap(), 5).unwrap();
        prop_assert!(validate(&dualize(&d, 5).unwrap()).passed());
        prop_assert_eq!(back, d);
    }

    #[test]
    fn off_degree_u_entry_is_caught(n in 2usize..7, seed: u64) {
        let mut d = random_admissible(&mut rng(seed), n);
        let degrees: Vec<Grading> = d.generators().iter().map(|g| g.grading).collect();
        let slot = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| degrees[i] != degrees[j].shift(-4));
        prop_assume!(slot.is_some());
        let (i, j) = slot.unwrap();
        d.u.add_at(i, j, &rat(1));
        prop_assert!(validate(&d).violated(Invariant::UDegree));
    }

    #[test]
    fn reduction_is_idempotent(n in 1usize..8, seed: u64) {
        let d = random_admissible(&mut rng(seed), n);
        let once = reduce_to_homology(&d).unwrap();
        prop_assert_eq!(once.dims(), homology(&d.complex).unwrap().dims);
        prop_assert_eq!(reduce_to_homology(&once).unwrap(), once);
    }

    #[test]
    fn euler_characteristic_is_preserved(n in 1usize..9, seed: u64) {
        let d = random_floer_data(&mut rng(seed), n);
        let h = homology(&d.complex).unwrap();
        prop_assert_eq!(euler(&h.dims), euler(&d.complex.dims()));
    }

    #[test]
    fn homology_is_basis_independent(n in 1usize..8, seed: u64) {
        let mut r = rng(seed);
        let d = random_floer_data(&mut r, n);
        let e = change_of_basis(&mut r, &d);
        prop_assert!(validate(&e).passed());
        prop_assert_eq!(homology(&e.complex).unwrap().dims, homology(&d.complex).unwrap().dims);
    }

    #[test]
    fn delta_kills_boundaries(n in 3usize..8, seed: u64) {
        let d = random_sphere(&mut rng(seed), n);
        let h = homology(&d.complex).unwrap();
        for b in h.boundaries() {
            let value: Rational = d.delta.iter().zip(b).map(|(x, y)| x * y).sum();
            prop_assert_eq!(value, rat(0));
        }
    }

    #[test]
    fn round_trip_random_documents(n in 1usize..8, seed: u64) {
        let d = random_floer_data(&mut rng(seed), n);
        let text = serialize(&d);
        prop_assert_eq!(parse(&text).unwrap(), d);
    }

    #[test]
    fn polynomial_ring_laws(a: u64, b: u64, c: u64) {
        let (p, q, r) = (poly(a), poly(b), poly(c));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn congruent_vectors_share_norm_and_class(coords in proptest::collection::vec(-2i64..=2, 8), half: bool) {
        let doubled: Vec<i64> = coords.iter().map(|&c| if half { 2 * c + 1 } else { 2 * c }).collect();
        let w = LatticeVector::from_doubled(doubled);
        prop_assume!(w.is_ok());
        let w = w.unwrap();
        prop_assume!(w.abs_norm() <= 10);
        let vs = congruent_vectors_with_threads(&w, 1);
        prop_assert!(vs.contains(&w));
        for v in &vs {
            prop_assert!(is_member(&v.coords(), 1).unwrap());
            prop_assert_eq!(norm(v), norm(&w));
            prop_assert!(w.congruent(v));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn accepted_signs_agree_on_homology(seed: u64) {
        let mut r = rng(seed);
        let a = random_sphere(&mut r, 3);
        let b = random_admissible(&mut r, 3);
        let accepted = accepted_sign_configs(&a, &b, Shape::ConnectedSum).unwrap();
        prop_assert!(!accepted.is_empty());
        let dims = connected_sum_with_signs(&a, &b, accepted[0]).unwrap().homology_dims().unwrap();
        for s in accepted.iter().step_by(7) {
            prop_assert_eq!(connected_sum_with_signs(&a, &b, *s).unwrap().homology_dims().unwrap(), dims);
        }
    }
}
