//! φ in its span and filtration forms, nilpotency orders and the h-invariant.

use num_traits::Zero;

use crate::complex::{validate, FloerData};
use crate::error::{Error, Result};
use crate::homology::reduce_to_homology;
use crate::linalg::{dot, is_zero_vector, rank, rat, RatMatrix, Rational, Vector};

/// `u² − 4`
pub fn shifted_square(u0: &RatMatrix) -> RatMatrix {
    u0.mul(u0).sub(&RatMatrix::scalar(u0.rows(), &rat(4)))
}

fn check_square(u0: &RatMatrix, v: &[Rational], context: &'static str) -> Result<()> {
    if !u0.is_square() {
        return Err(Error::DimensionMismatch {
            context,
            expected: u0.rows(),
            found: u0.cols(),
        });
    }
    if v.len() != u0.rows() {
        return Err(Error::DimensionMismatch {
            context,
            expected: u0.rows(),
            found: v.len(),
        });
    }
    Ok(())
}

/// The vectors `ψ, u²ψ, u⁴ψ, …` up to the first one already in the span.
pub fn even_iterates(u0: &RatMatrix, psi: &[Rational]) -> Result<Vec<Vector>> {
    check_square(u0, psi, "phi_span")?;
    let u2 = u0.mul(u0);
    let mut out: Vec<Vector> = Vec::new();
    let mut v = psi.to_vec();
    while !is_zero_vector(&v) {
        out.push(v.clone());
        if rank(&RatMatrix::from_dense(&out)) < out.len() {
            out.pop();
            break;
        }
        v = u2.mul_vec(&v);
    }
    Ok(out)
}

/// `dim span{u^{2i} ψ : i ≥ 0}`
pub fn phi_span(u0: &RatMatrix, psi: &[Rational]) -> Result<usize> {
    Ok(even_iterates(u0, psi)?.len())
}

/// Least `k` with `(u² − 4)^k ψ = 0`.
pub fn phi_filtration(u0: &RatMatrix, psi: &[Rational]) -> Result<usize> {
    check_square(u0, psi, "phi_filtration")?;
    let x = shifted_square(u0);
    let mut v = psi.to_vec();
    for k in 0..=u0.rows() {
        if is_zero_vector(&v) {
            return Ok(k);
        }
        v = x.mul_vec(&v);
    }
    Err(Error::NotNilpotent(
        "(u^2 - 4) does not annihilate the vector".into(),
    ))
}

/// Least `n ≥ 1` with `op^n = 0`.
pub fn nilpotency_order(op: &RatMatrix) -> Result<usize> {
    if !op.is_square() {
        return Err(Error::DimensionMismatch {
            context: "nilpotency_order",
            expected: op.rows(),
            found: op.cols(),
        });
    }
    let mut p = op.clone();
    for n in 1..=op.rows().max(1) {
        if p.is_zero() {
            return Ok(n);
        }
        p = p.mul(op);
    }
    Err(Error::NotNilpotent(format!(
        "power {} is nonzero",
        op.rows()
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiReport {
    pub span_dim: usize,
    /// `None` when `(u² − 4)` is not nilpotent on the cyclic subspace.
    pub filtration_order: Option<usize>,
    /// Meaningful only when the filtration order exists.
    pub agree: Option<bool>,
    pub iterates: Vec<Vector>,
}

/// Both characterizations of φ for a vector.
pub fn phi(u0: &RatMatrix, psi: &[Rational]) -> Result<PhiReport> {
    let iterates = even_iterates(u0, psi)?;
    let filtration_order = match phi_filtration(u0, psi) {
        Ok(k) => Some(k),
        Err(Error::NotNilpotent(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(PhiReport {
        span_dim: iterates.len(),
        filtration_order,
        agree: filtration_order.map(|k| k == iterates.len()),
        iterates,
    })
}

/// φ for a functional `f`, i.e. iterates `f, f∘u², …`.
pub fn phi_functional(u0: &RatMatrix, f: &[Rational]) -> Result<PhiReport> {
    phi(&u0.transpose(), f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HReport {
    pub dim_ve: usize,
    pub dim_ve_prime: usize,
    pub h: i64,
    /// At least one of the two spans is zero.
    pub mutual_triviality: bool,
}

/// `h = dim span{δ₀u^{2i}} − dim span{u^{2i}δ′₀}` on homology-level data.
pub fn h_invariant(
    u0: &RatMatrix,
    delta0: &[Rational],
    delta_prime0: &[Rational],
) -> Result<HReport> {
    let dim_ve = phi_span(&u0.transpose(), delta0)?;
    let dim_ve_prime = phi_span(u0, delta_prime0)?;
    Ok(HReport {
        dim_ve,
        dim_ve_prime,
        h: dim_ve as i64 - dim_ve_prime as i64,
        mutual_triviality: dim_ve == 0 || dim_ve_prime == 0,
    })
}

/// h of chain-level data, after reduction to homology.
pub fn h_of(d: &FloerData) -> Result<HReport> {
    validate(d).into_result()?;
    let r = reduce_to_homology(d)?;
    h_invariant(&r.u, &r.delta, &r.delta_prime)
}

/// `1 + min{j : f(u^{2j} α) ≠ 0}`, or 0 when every such evaluation vanishes.
///
/// When f(u^{2j}α) = 0 for j < m − 1 and is nonzero at m − 1, the functionals
/// f, f∘u², …, f∘u^{2(m−1)} are independent.
pub fn triangular_independence(
    f: &[Rational],
    alpha: &[Rational],
    u0: &RatMatrix,
) -> Result<usize> {
    check_square(u0, alpha, "triangular_independence")?;
    if f.len() != alpha.len() {
        return Err(Error::DimensionMismatch {
            context: "triangular_independence",
            expected: alpha.len(),
            found: f.len(),
        });
    }
    let u2 = u0.mul(u0);
    let mut v = alpha.to_vec();
    // A nonzero term, if any, appears within the first dim iterates: beyond
    // that the sequence f(u^{2j}α) satisfies a recurrence of order ≤ dim.
    for j in 0..u0.rows().max(1) {
        if !dot(f, &v).is_zero() {
            return Ok(j + 1);
        }
        v = u2.mul_vec(&v);
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{unit_vector, zero_vector};

    /// Basis x1, x5 with u swapping them up to 2; u² = 4.
    fn swap_u() -> RatMatrix {
        RatMatrix::from_i64(&[&[0, 2], &[2, 0]])
    }

    /// Basis e1, e2, f1, f2: u(e_i) = f_i, u(f_i) = 4e_i + e_{i+1}.
    fn ladder2() -> RatMatrix {
        let mut u = RatMatrix::zeros(4, 4);
        u.set(2, 0, rat(1));
        u.set(3, 1, rat(1));
        u.set(0, 2, rat(4));
        u.set(1, 2, rat(1));
        u.set(1, 3, rat(4));
        u
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_span(&swap_u(), &zero_vector(2)).unwrap(), 0);
        assert_eq!(phi_filtration(&swap_u(), &zero_vector(2)).unwrap(), 0);
        assert_eq!(phi_span(&swap_u(), &unit_vector(2, 0)).unwrap(), 1);
        assert_eq!(phi_filtration(&swap_u(), &unit_vector(2, 0)).unwrap(), 1);
        assert_eq!(phi_span(&ladder2(), &unit_vector(4, 0)).unwrap(), 2);
        assert_eq!(phi_filtration(&ladder2(), &unit_vector(4, 0)).unwrap(), 2);
        assert!(phi_span(&ladder2(), &unit_vector(3, 0)).is_err());
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(nilpotency_order(&RatMatrix::zeros(3, 3)).unwrap(), 1);
        assert_eq!(nilpotency_order(&shifted_square(&swap_u())).unwrap(), 1);
        let n = RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(nilpotency_order(&n).unwrap(), 3);
        assert!(matches!(
            nilpotency_order(&RatMatrix::identity(2)),
            Err(Error::NotNilpotent(_))
        ));
    }

    #[test]
    fn h_examples() {
        // P⁺: u(ρ4) = 2ρ0, δ′ = ρ4.
        let u = RatMatrix::from_i64(&[&[0, 2], &[0, 0]]);
        let r = h_invariant(&u, &zero_vector(2), &unit_vector(2, 1)).unwrap();
        assert_eq!(
            (r.dim_ve, r.dim_ve_prime, r.h, r.mutual_triviality),
            (0, 1, -1, true)
        );
        let r = h_invariant(&u.transpose(), &unit_vector(2, 1), &zero_vector(2)).unwrap();
        assert_eq!(r.h, 1);
        assert_eq!(
            h_invariant(&u, &zero_vector(2), &zero_vector(2)).unwrap().h,
            0
        );
    }

    #[test]
    fn triangular_examples() {
        let u = ladder2();
        assert_eq!(
            triangular_independence(&unit_vector(4, 0), &unit_vector(4, 0), &u).unwrap(),
            1
        );
        // f = e2*, α = e1: f(α) = 0, f(u²α) = f(4e1 + e2) = 1.
        assert_eq!(
            triangular_independence(&unit_vector(4, 1), &unit_vector(4, 0), &u).unwrap(),
            2
        );
        assert_eq!(
            triangular_independence(&zero_vector(4), &unit_vector(4, 0), &u).unwrap(),
            0
        );
    }
}
