//! Tensor cycles killed by Φ̂ = u⊗I − I⊗u and the pairings evaluated on them.

use num_traits::Zero;

use crate::complex::{FloerData, Grading};
use crate::error::{Error, Result};
use crate::invariants::{phi_functional, shifted_square};
use crate::linalg::{
    add_vectors, dot, inverse, is_zero_vector, ratio, solve, unit_vector, zero_vector, RatMatrix,
    Rational, Vector,
};

/// `a ⊗ b` in the Kronecker basis.
pub fn tensor(a: &[Rational], b: &[Rational]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

pub fn tensor3(a: &[Rational], b: &[Rational], c: &[Rational]) -> Vector {
    tensor(&tensor(a, b), c)
}

/// `I ⊗ … ⊗ op ⊗ … ⊗ I` with `op` in slot `position` of factors sized `dims`.
pub fn factor_operator(op: &RatMatrix, position: usize, dims: &[usize]) -> RatMatrix {
    let mut m = RatMatrix::identity(1);
    for (slot, &d) in dims.iter().enumerate() {
        let f = if slot == position {
            op.clone()
        } else {
            RatMatrix::identity(d)
        };
        m = m.kron(&f);
    }
    m
}

fn require_nilpotent(u: &RatMatrix, n: usize, which: &str) -> Result<RatMatrix> {
    let x = shifted_square(u);
    if !x.pow(n).is_zero() {
        return Err(Error::Precondition(format!(
            "(u^2 - 4)^{n} is nonzero on the {which} factor"
        )));
    }
    Ok(x)
}

fn require_zero_differential(d: &FloerData, which: &str) -> Result<()> {
    if !d.differential().is_zero() {
        return Err(Error::Precondition(format!(
            "{which} factor must be reduced (zero differential)"
        )));
    }
    Ok(())
}

/// `½ Σ fa(a_i) fb(b_i)` for `z = Σ a_i ⊗ b_i` with `Φ̂ z = 0`.
pub fn product_functional(
    a: &FloerData,
    b: &FloerData,
    fa: &[Rational],
    fb: &[Rational],
    z: &[Rational],
) -> Result<Rational> {
    require_zero_differential(a, "first")?;
    require_zero_differential(b, "second")?;
    let dims = [a.len(), b.len()];
    if z.len() != dims[0] * dims[1] || fa.len() != dims[0] || fb.len() != dims[1] {
        return Err(Error::DimensionMismatch {
            context: "product_functional",
            expected: dims[0] * dims[1],
            found: z.len(),
        });
    }
    let phi = factor_operator(&a.u, 0, &dims).sub(&factor_operator(&b.u, 1, &dims));
    if !is_zero_vector(&phi.mul_vec(z)) {
        return Err(Error::Precondition(
            "u⊗I − I⊗u does not vanish on the tensor".into(),
        ));
    }
    Ok(ratio(1, 2) * dot(&tensor(fa, fb), z))
}

/// `α = (U₁ + U₂) Σ_{i<n} X₁^i X₂^{n−1−i} (a′ ⊗ b)` with `X = u² − 4`.
pub fn build_pair_cycle(
    a_prime: &[Rational],
    b: &[Rational],
    n: usize,
    u1: &RatMatrix,
    u2: &RatMatrix,
) -> Result<Vector> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let x1 = require_nilpotent(u1, n, "first")?;
    let x2 = require_nilpotent(u2, n, "second")?;
    let dims = [u1.rows(), u2.rows()];
    let (big_u1, big_u2) = (factor_operator(u1, 0, &dims), factor_operator(u2, 1, &dims));
    let mut sum = zero_vector(dims[0] * dims[1]);
    for i in 0..n {
        let left = x1.pow(i).mul_vec(a_prime);
        let right = x2.pow(n - 1 - i).mul_vec(b);
        sum = add_vectors(&sum, &tensor(&left, &right));
    }
    let alpha = add_vectors(&big_u1.mul_vec(&sum), &big_u2.mul_vec(&sum));
    debug_assert!(is_zero_vector(&big_u1.sub(&big_u2).mul_vec(&alpha)));
    Ok(alpha)
}

/// `α′ = Σ_{i,j<n} X₁^{i+j} X₂^{n−1−i} X₃^{n−1−j} (U₁+U₂)(U₁+U₃)(a⊗b⊗c)`.
pub fn build_triple_cycle(
    a: &[Rational],
    b: &[Rational],
    c: &[Rational],
    n: usize,
    u: [&RatMatrix; 3],
) -> Result<Vector> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let names = ["first", "second", "third"];
    let mut x = Vec::with_capacity(3);
    for (k, uk) in u.iter().enumerate() {
        x.push(require_nilpotent(uk, n, names[k])?);
    }
    let dims = [u[0].rows(), u[1].rows(), u[2].rows()];
    let big: Vec<RatMatrix> = (0..3).map(|k| factor_operator(u[k], k, &dims)).collect();
    let seed = big[0]
        .add(&big[1])
        .mul(&big[0].add(&big[2]))
        .mul_vec(&tensor3(a, b, c));

    let xs: Vec<RatMatrix> = (0..3).map(|k| factor_operator(&x[k], k, &dims)).collect();
    let mut alpha = zero_vector(seed.len());
    for i in 0..n {
        for j in 0..n {
            let op = xs[0]
                .pow(i + j)
                .mul(&xs[1].pow(n - 1 - i))
                .mul(&xs[2].pow(n - 1 - j));
            alpha = add_vectors(&alpha, &op.mul_vec(&seed));
        }
    }
    let cycle_op = big[0].sub(&big[1]).mul(&big[0].sub(&big[2]));
    if !is_zero_vector(&cycle_op.mul_vec(&alpha)) {
        return Err(Error::NotACycle(
            "(U1 - U2)(U1 - U3) does not annihilate the triple element".into(),
        ));
    }
    Ok(alpha)
}

/// One factor of a bound computation: reduced u, a homogeneous functional,
/// and the residues of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundFactor {
    pub u: RatMatrix,
    pub functional: Vector,
    pub degrees: Vec<Grading>,
}

impl BoundFactor {
    /// Uses the δ of reduced data.
    pub fn from_data(d: &FloerData) -> Result<BoundFactor> {
        Self::with_functional(d, d.delta.clone())
    }

    pub fn with_functional(d: &FloerData, functional: Vector) -> Result<BoundFactor> {
        require_zero_differential(d, "bound")?;
        if functional.len() != d.len() {
            return Err(Error::DimensionMismatch {
                context: "bound functional",
                expected: d.len(),
                found: functional.len(),
            });
        }
        Ok(BoundFactor {
            u: d.u.clone(),
            functional,
            degrees: d.generators().iter().map(|g| g.grading).collect(),
        })
    }

    fn residue(&self) -> Result<Grading> {
        let mut deg = None;
        for (g, c) in self.degrees.iter().zip(&self.functional) {
            if c.is_zero() {
                continue;
            }
            if deg.is_some_and(|d| d != *g) {
                return Err(Error::DegreeMismatch(
                    "bound functional is not homogeneous".into(),
                ));
            }
            deg = Some(*g);
        }
        deg.ok_or_else(|| Error::Precondition("bound functional is zero".into()))
    }

    /// φ-span k of the functional.
    pub fn span(&self) -> Result<usize> {
        Ok(phi_functional(&self.u, &self.functional)?.span_dim)
    }

    /// Class `a` with `f(X^i a) = 0` for `i < k−1` and `f(X^{k−1} a) = 1`.
    ///
    /// The rows `f∘X^i` are supported in the residue of `f`, so the particular
    /// solution with free variables zero is homogeneous of that residue.
    pub fn witness(&self, k: usize) -> Result<Vector> {
        let x = shifted_square(&self.u);
        let mut rows = Vec::with_capacity(k);
        let mut f = self.functional.clone();
        for _ in 0..k {
            rows.push(f.clone());
            f = x.pullback(&f);
        }
        let m = RatMatrix::from_dense(&rows);
        solve(&m, &unit_vector(k, k - 1))
            .ok_or_else(|| Error::NoWitness(format!("iterates f∘X^i, i < {k}, are dependent")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumBoundReport {
    pub n: usize,
    pub spans: [usize; 3],
    pub l: usize,
    pub witnesses: [Vector; 3],
    /// `f(X^{k−1} w)` for each witness `w`.
    pub witness_evaluations: [Rational; 3],
    pub cycle_condition: bool,
    /// `¼ (fA⊗fB⊗fC)(X₁^l α′)`
    pub pairing_value: Rational,
    /// `¼ Π witness evaluations`
    pub expected_value: Rational,
}

impl SumBoundReport {
    pub fn nonzero(&self) -> bool {
        !self.pairing_value.is_zero()
    }

    pub fn matches_expected(&self) -> bool {
        self.pairing_value == self.expected_value
    }
}

fn spans_and_witnesses<const N: usize>(
    factors: &[BoundFactor; N],
    n: usize,
) -> Result<([usize; N], [Vector; N])> {
    let mut spans = [0; N];
    let mut witnesses: [Vector; N] = std::array::from_fn(|_| Vec::new());
    for (i, f) in factors.iter().enumerate() {
        f.residue()?;
        require_nilpotent(&f.u, n, "bound")?;
        spans[i] = f.span()?;
        witnesses[i] = f.witness(spans[i])?;
    }
    Ok((spans, witnesses))
}

fn evaluation(f: &BoundFactor, w: &[Rational], k: usize) -> Rational {
    dot(&f.functional, &shifted_square(&f.u).pow(k - 1).mul_vec(w))
}

/// Three-factor bound: with spans k, k′, k″ and `k+k′+k″ ≥ 2n+1`, builds
/// α′ on `(u⁻²a, b, c)` and evaluates `¼ (fA⊗fB⊗fC)` after `X₁^l`,
/// `l = k+k′+k″−2n−1`.
///
/// Only the `U₁²` term of `(U₁+U₂)(U₁+U₃)` survives: every other term moves
/// some witness off the residue of its functional by ±4. In the surviving
/// sum only `i = n−k′`, `j = n−k″` contributes, giving `¼ Π` evaluations.
pub fn verify_sum_bound(factors: &[BoundFactor; 3], n: usize) -> Result<SumBoundReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let (spans, witnesses) = spans_and_witnesses(factors, n)?;
    let total: usize = spans.iter().sum();
    if total < 2 * n + 1 {
        return Err(Error::Precondition(format!(
            "k + k' + k'' = {total} is below 2n + 1 = {}",
            2 * n + 1
        )));
    }
    let l = total - 2 * n - 1;
    let u_sq_inv = inverse(&factors[0].u.mul(&factors[0].u))
        .ok_or_else(|| Error::Precondition("u is not invertible on the first factor".into()))?;
    let a2 = u_sq_inv.mul_vec(&witnesses[0]);
    let u = [&factors[0].u, &factors[1].u, &factors[2].u];
    let alpha = build_triple_cycle(&a2, &witnesses[1], &witnesses[2], n, u)?;

    let dims = [u[0].rows(), u[1].rows(), u[2].rows()];
    let x1 = factor_operator(&shifted_square(u[0]), 0, &dims);
    let shifted = x1.pow(l).mul_vec(&alpha);
    let f = tensor3(
        &factors[0].functional,
        &factors[1].functional,
        &factors[2].functional,
    );
    let quarter = ratio(1, 4);
    let pairing_value = &quarter * dot(&f, &shifted);

    let witness_evaluations: [Rational; 3] =
        std::array::from_fn(|i| evaluation(&factors[i], &witnesses[i], spans[i]));
    let expected_value = witness_evaluations.iter().fold(quarter, |acc, e| acc * e);
    Ok(SumBoundReport {
        n,
        spans,
        l,
        witnesses,
        witness_evaluations,
        cycle_condition: true,
        pairing_value,
        expected_value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairBoundReport {
    pub n: usize,
    pub spans: [usize; 2],
    pub l: usize,
    pub pairing_value: Rational,
    pub expected_value: Rational,
}

/// Two-factor bound: `k+k′ ≥ n+1`, α on `(u⁻¹a, b)`, value
/// `½ (fA⊗fB)(X₁^l α)` at `l = k+k′−n−1`.
pub fn verify_pair_bound(factors: &[BoundFactor; 2], n: usize) -> Result<PairBoundReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let (spans, witnesses) = spans_and_witnesses(factors, n)?;
    let total = spans[0] + spans[1];
    if total < n + 1 {
        return Err(Error::Precondition(format!(
            "k + k' = {total} is below n + 1 = {}",
            n + 1
        )));
    }
    let l = total - n - 1;
    let u_inv = inverse(&factors[0].u)
        .ok_or_else(|| Error::Precondition("u is not invertible on the first factor".into()))?;
    let a1 = u_inv.mul_vec(&witnesses[0]);
    let alpha = build_pair_cycle(&a1, &witnesses[1], n, &factors[0].u, &factors[1].u)?;
    let dims = [factors[0].u.rows(), factors[1].u.rows()];
    let x1 = factor_operator(&shifted_square(&factors[0].u), 0, &dims);
    let half = ratio(1, 2);
    let f = tensor(&factors[0].functional, &factors[1].functional);
    let pairing_value = &half * dot(&f, &x1.pow(l).mul_vec(&alpha));
    let expected_value = half
        * evaluation(&factors[0], &witnesses[0], spans[0])
        * evaluation(&factors[1], &witnesses[1], spans[1]);
    Ok(PairBoundReport {
        n,
        spans,
        l,
        pairing_value,
        expected_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{builtin, nilpotent_ladder, FixtureName};
    use crate::linalg::rat;

    #[test]
    fn pair_cycle_n1_has_closed_form() {
        let t = builtin(&FixtureName::TrefoilLikeSynthetic).unwrap().data;
        let a = unit_vector(2, 0);
        let b = unit_vector(2, 1);
        let alpha = build_pair_cycle(&a, &b, 1, &t.u, &t.u).unwrap();
        let dims = [2, 2];
        let expected = add_vectors(&tensor(&t.u.mul_vec(&a), &b), &tensor(&a, &t.u.mul_vec(&b)));
        assert_eq!(alpha, expected);
        let phi = factor_operator(&t.u, 0, &dims).sub(&factor_operator(&t.u, 1, &dims));
        assert!(is_zero_vector(&phi.mul_vec(&alpha)));
        assert!(is_zero_vector(
            &build_pair_cycle(&zero_vector(2), &b, 1, &t.u, &t.u).unwrap()
        ));
    }

    #[test]
    fn pair_cycle_rejects_non_nilpotent() {
        let l = nilpotent_ladder(2, 2);
        assert!(build_pair_cycle(&unit_vector(4, 0), &unit_vector(4, 0), 1, &l.u, &l.u).is_err());
        assert!(build_pair_cycle(&unit_vector(4, 0), &unit_vector(4, 0), 2, &l.u, &l.u).is_ok());
    }

    #[test]
    fn product_functional_on_eigen_tensor() {
        let t = builtin(&FixtureName::TrefoilLikeSynthetic).unwrap().data;
        // x1 + x5 is a u-eigenvector with eigenvalue 2.
        let v = vec![rat(1), rat(1)];
        let z = tensor(&v, &v);
        let f = unit_vector(2, 0);
        assert_eq!(product_functional(&t, &t, &f, &f, &z).unwrap(), ratio(1, 2));
        let z2: Vector = z.iter().map(|x| x * rat(2)).collect();
        assert_eq!(product_functional(&t, &t, &f, &f, &z2).unwrap(), rat(1));
        assert_eq!(
            product_functional(&t, &t, &f, &f, &zero_vector(4)).unwrap(),
            rat(0)
        );
        assert!(product_functional(&t, &t, &f, &f, &tensor(&f, &f)).is_err());
    }

    #[test]
    fn sum_bound_three_simple_factors() {
        let t = builtin(&FixtureName::TrefoilLikeSynthetic).unwrap().data;
        let f = BoundFactor::with_functional(&t, unit_vector(2, 0)).unwrap();
        let r = verify_sum_bound(&[f.clone(), f.clone(), f], 1).unwrap();
        assert_eq!(r.l, 0);
        assert_eq!(r.pairing_value, ratio(1, 4));
        assert!(r.matches_expected());
    }

    #[test]
    fn sum_bound_guard() {
        let l = nilpotent_ladder(2, 1);
        let f = BoundFactor::from_data(&l).unwrap();
        // spans 1 + 1 + 1 = 3 < 5
        assert!(matches!(
            verify_sum_bound(&[f.clone(), f.clone(), f], 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sum_bound_spans_two() {
        let l = nilpotent_ladder(2, 2);
        let f = BoundFactor::from_data(&l).unwrap();
        let r = verify_sum_bound(&[f.clone(), f.clone(), f], 2).unwrap();
        assert_eq!(r.spans, [2, 2, 2]);
        assert_eq!(r.l, 1);
        assert!(r.nonzero());
        assert!(r.matches_expected());
    }

    #[test]
    fn pair_bound() {
        let l = nilpotent_ladder(2, 2);
        let f = BoundFactor::from_data(&l).unwrap();
        let r = verify_pair_bound(&[f.clone(), f], 2).unwrap();
        assert_eq!(r.l, 1);
        assert_eq!(r.pairing_value, ratio(1, 2));
    }
}
