//! Seeded generators of valid data for property checks.
//!
//! Every generator takes an explicit RNG so runs are reproducible per seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{FloerData, Generator, GradedComplex, Grading, Kind};
use crate::linalg::{
    add_vectors, inverse, kernel_basis, rat, ratio, scale_vector, zero_vector, RatMatrix, Rational,
    Vector,
};

pub type WorkbenchRng = ChaCha8Rng;

pub fn rng(seed: u64) -> WorkbenchRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small integers, occasionally halves or thirds.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let n: i64 = rng.gen_range(-3..=3);
    match rng.gen_range(0..6) {
        0 => ratio(n, 2),
        1 => ratio(n, 3),
        _ => rat(n),
    }
}

/// Random combination of `basis` with small coefficients.
pub fn combination(rng: &mut impl Rng, basis: &[Vector], len: usize) -> Vector {
    basis.iter().fold(zero_vector(len), |acc, b| {
        add_vectors(&acc, &scale_vector(b, &small_rational(rng)))
    })
}

/// Unit lower times unit upper triangular on each residue block: invertible
/// and degree-preserving.
fn block_invertible(rng: &mut impl Rng, degrees: &[Grading]) -> RatMatrix {
    let n = degrees.len();
    let mut lower = RatMatrix::identity(n);
    let mut upper = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            if degrees[i] == degrees[j] && rng.gen_bool(0.5) {
                lower.set(i, j, small_rational(rng));
            }
            if degrees[i] == degrees[j] && rng.gen_bool(0.5) {
                upper.set(j, i, small_rational(rng));
            }
        }
    }
    lower.mul(&upper)
}

/// Random degrees with a bias towards the residues that carry u and δ data.
pub fn random_degrees(rng: &mut impl Rng, n: usize) -> Vec<Grading> {
    const WEIGHTED: [i64; 12] = [0, 0, 1, 1, 4, 4, 5, 5, 2, 3, 6, 7];
    (0..n)
        .map(|_| Grading::new(*WEIGHTED.choose(rng).expect("nonempty")))
        .collect()
}

/// `P D₀ P⁻¹` where D₀ pairs disjoint generators in adjacent degrees.
pub fn random_differential(rng: &mut impl Rng, degrees: &[Grading]) -> RatMatrix {
    let n = degrees.len();
    let mut d0 = RatMatrix::zeros(n, n);
    let mut used = vec![false; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for &src in &order {
        if used[src] || !rng.gen_bool(0.6) {
            continue;
        }
        let targets: Vec<usize> = (0..n)
            .filter(|&t| !used[t] && t != src && degrees[t] == degrees[src].shift(-1))
            .collect();
        if let Some(&t) = targets.choose(rng) {
            used[src] = true;
            used[t] = true;
            d0.set(t, src, rat(1));
        }
    }
    let p = block_invertible(rng, degrees);
    let p_inv = inverse(&p).expect("triangular factors are invertible");
    p.mul(&d0).mul(&p_inv)
}

fn generators(degrees: &[Grading]) -> Vec<Generator> {
    degrees
        .iter()
        .enumerate()
        .map(|(i, g)| Generator {
            name: format!("g{i}"),
            grading: *g,
        })
        .collect()
}

/// Degree −4 maps commuting with ∂, as a basis of matrices.
pub fn commuting_u_basis(d: &RatMatrix, degrees: &[Grading]) -> Vec<RatMatrix> {
    let n = degrees.len();
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| degrees[r] == degrees[c].shift(-4))
        .collect();
    if unknowns.is_empty() {
        return Vec::new();
    }
    // Column t holds the entries of ∂E_t − E_t∂, flattened row-major.
    let mut system = RatMatrix::zeros(n * n, unknowns.len());
    for (t, &(r, c)) in unknowns.iter().enumerate() {
        for i in 0..n {
            let v = d.get(i, r);
            system.add_at(i * n + c, t, &v);
        }
        for j in 0..n {
            let v = d.get(c, j);
            system.add_at(r * n + j, t, &-v);
        }
    }
    kernel_basis(&system)
        .into_iter()
        .map(|k| {
            let mut m = RatMatrix::zeros(n, n);
            for (t, &(r, c)) in unknowns.iter().enumerate() {
                m.set(r, c, k[t].clone());
            }
            m
        })
        .collect()
}

fn random_commuting_u(rng: &mut impl Rng, d: &RatMatrix, degrees: &[Grading]) -> RatMatrix {
    let n = degrees.len();
    commuting_u_basis(d, degrees)
        .iter()
        .fold(RatMatrix::zeros(n, n), |acc, b| {
            acc.combine(b, &small_rational(rng))
        })
}

/// Admissible data on exactly `n` generators with `u∂ = ∂u`.
pub fn random_admissible(rng: &mut impl Rng, n: usize) -> FloerData {
    let degrees = random_degrees(rng, n);
    let d = random_differential(rng, &degrees);
    let u = random_commuting_u(rng, &d, &degrees);
    FloerData::new(
        GradedComplex::new(generators(&degrees), d),
        u,
        zero_vector(n),
        zero_vector(n),
        Kind::Admissible,
    )
}

/// Admissible data with between 1 and `max` generators.
pub fn random_admissible_upto(rng: &mut impl Rng, max: usize) -> FloerData {
    let n = rng.gen_range(1..=max);
    random_admissible(rng, n)
}

/// Homology-sphere data on `n ≥ 3` generators with δ ≠ 0 and δ′ ≠ 0.
///
/// δ is a cocycle on degree 1 and δ′ = ∂w for some w in degree 5; then
/// `u = −½ w∘δ + (commuting part)` satisfies the chain relation.
pub fn random_sphere(rng: &mut impl Rng, n: usize) -> FloerData {
    assert!(n >= 3, "sphere data needs room for degrees 1, 4, 5");
    loop {
        let mut degrees = random_degrees(rng, n);
        degrees[0] = Grading::new(1);
        degrees[1] = Grading::new(5);
        degrees[2] = Grading::new(4);
        let d = random_differential(rng, &degrees);
        let ones: Vec<usize> = (0..n).filter(|&i| degrees[i] == Grading::new(1)).collect();
        let fives: Vec<usize> = (0..n).filter(|&i| degrees[i] == Grading::new(5)).collect();

        // functionals f on degree 1 with f∘∂ = 0: kernel of the transpose block
        let block = d.submatrix(&ones, &(0..n).collect::<Vec<_>>()).transpose();
        let cocycles: Vec<Vector> = kernel_basis(&block)
            .into_iter()
            .map(|k| {
                let mut f = zero_vector(n);
                for (p, &i) in ones.iter().enumerate() {
                    f[i] = k[p].clone();
                }
                f
            })
            .collect();
        let delta = combination(rng, &cocycles, n);
        let mut w = zero_vector(n);
        for &i in &fives {
            w[i] = small_rational(rng);
        }
        let delta_prime = d.mul_vec(&w);
        if delta.iter().all(|x| *x == rat(0)) || delta_prime.iter().all(|x| *x == rat(0)) {
            continue;
        }
        let u = random_commuting_u(rng, &d, &degrees)
            .combine(&RatMatrix::outer(&w, &delta), &ratio(-1, 2));
        return FloerData::new(
            GradedComplex::new(generators(&degrees), d),
            u,
            delta,
            delta_prime,
            Kind::HomologySphere,
        );
    }
}

/// The same data in a random degree-preserving basis: `P∂P⁻¹`, `PuP⁻¹`,
/// `δP⁻¹`, `Pδ′`.
pub fn change_of_basis(rng: &mut impl Rng, d: &FloerData) -> FloerData {
    let degrees: Vec<Grading> = d.generators().iter().map(|g| g.grading).collect();
    let p = block_invertible(rng, &degrees);
    let p_inv = inverse(&p).expect("triangular factors are invertible");
    FloerData::new(
        GradedComplex::new(d.generators().to_vec(), p.mul(d.differential()).mul(&p_inv)),
        p.mul(&d.u).mul(&p_inv),
        p_inv.pullback(&d.delta),
        p.mul_vec(&d.delta_prime),
        d.kind,
    )
}

/// Either kind, `n` generators; sphere data may or may not let u descend.
pub fn random_floer_data(rng: &mut impl Rng, n: usize) -> FloerData {
    if n >= 3 && rng.gen_bool(0.5) {
        random_sphere(rng, n)
    } else {
        random_admissible(rng, n)
    }
}

/// Random complex on `n` generators (no u data).
pub fn random_complex(rng: &mut impl Rng, n: usize) -> GradedComplex {
    let degrees = random_degrees(rng, n);
    let d = random_differential(rng, &degrees);
    GradedComplex::new(generators(&degrees), d)
}

/// `u` on a space `E ⊕ F` (`E` in degree 1, `F` in degree 5, both of size
/// m) with `u² − 4` nilpotent of exactly the given order, plus the residues.
///
/// u = [[0, B], [A, 0]] with `BA = 4 + N`, N nilpotent of that order, then
/// conjugated by a random degree-preserving change of basis.
pub fn random_nilpotent_u(rng: &mut impl Rng, m: usize, order: usize) -> (RatMatrix, Vec<Grading>) {
    assert!((1..=m).contains(&order), "order must lie in 1..=m");
    // N: Jordan blocks, the first of size `order`, the rest random ≤ order.
    let mut sizes = vec![order];
    let mut left = m - order;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(order));
        sizes.push(s);
        left -= s;
    }
    let mut n_mat = RatMatrix::zeros(m, m);
    let mut at = 0;
    for s in sizes {
        for k in 0..s - 1 {
            n_mat.set(at + k + 1, at + k, rat(1));
        }
        at += s;
    }
    let e_degrees = vec![Grading::new(1); m];
    let q = block_invertible(rng, &e_degrees);
    let n_mat = q.mul(&n_mat).mul(&inverse(&q).expect("invertible"));
    let a = block_invertible(rng, &e_degrees);
    let b = RatMatrix::scalar(m, &rat(4))
        .add(&n_mat)
        .mul(&inverse(&a).expect("invertible"));

    let mut u = RatMatrix::zeros(2 * m, 2 * m);
    for (i, j, v) in a.iter() {
        u.set(m + i, j, v.clone());
    }
    for (i, j, v) in b.iter() {
        u.set(i, m + j, v.clone());
    }
    let mut degrees = vec![Grading::new(1); m];
    degrees.extend(vec![Grading::new(5); m]);
    let p = block_invertible(rng, &degrees);
    let u = p.mul(&u).mul(&inverse(&p).expect("invertible"));
    (u, degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate;
    use crate::invariants::{nilpotency_order, shifted_square};

    #[test]
    fn generators_are_valid() {
        let mut r = rng(1);
        for n in 1..=8 {
            let a = random_admissible(&mut r, n);
            assert!(validate(&a).passed(), "{:?}", validate(&a));
        }
        for n in 3..=8 {
            let s = random_sphere(&mut r, n);
            assert!(validate(&s).passed(), "{:?}", validate(&s));
        }
    }

    #[test]
    fn nilpotent_u_has_requested_order() {
        let mut r = rng(2);
        for order in 1..=4 {
            let (u, _) = random_nilpotent_u(&mut r, 4, order);
            assert_eq!(nilpotency_order(&shifted_square(&u)).unwrap(), order);
        }
    }

    #[test]
    fn change_of_basis_preserves_validity() {
        let mut r = rng(3);
        for n in 3..=7 {
            let s = random_sphere(&mut r, n);
            let t = change_of_basis(&mut r, &s);
            assert!(validate(&t).passed(), "{:?}", validate(&t));
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_floer_data(&mut rng(9), 6);
        let b = random_floer_data(&mut rng(9), 6);
        assert_eq!(a, b);
    }
}
