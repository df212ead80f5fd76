//! Exact polynomials over ℚ in three commuting variables u₁, u₂, u₃.
//!
//! The identities checked here are the algebraic input to the connected-sum
//! cycles: with `x_k = u_k² − 4`,
//!
//! ```text
//! x₁ⁿ − x₂ⁿ = (u₁ − u₂)(u₁ + u₂) Σ_{i<n} x₁ⁱ x₂^{n−1−i}
//! ```
//!
//! and its product form in three variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat, RatMatrix, Rational};

pub type Exponent = [u32; 3];

/// No zero coefficient is ever stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial([0, 0, 0], c)
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(exp, c);
        p
    }

    /// The variable `u_k`, `k ∈ {1, 2, 3}`.
    pub fn var(k: usize) -> Self {
        assert!((1..=3).contains(&k), "variables are u1, u2, u3");
        let mut e = [0; 3];
        e[k - 1] = 1;
        Poly::monomial(e, Rational::one())
    }

    /// `u_k² − 4`
    pub fn shifted_square(k: usize) -> Self {
        Poly::var(k).pow(2) - Poly::constant(rat(4))
    }

    fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: Exponent) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Substitutes pairwise commuting square matrices for u₁, u₂, u₃.
    pub fn eval_matrices(&self, mats: [&RatMatrix; 3]) -> Result<RatMatrix> {
        let n = mats[0].rows();
        for m in mats {
            if !m.is_square() || m.rows() != n {
                return Err(Error::DimensionMismatch {
                    context: "eval_matrices",
                    expected: n,
                    found: m.rows(),
                });
            }
        }
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            if mats[a].mul(mats[b]) != mats[b].mul(mats[a]) {
                return Err(Error::Precondition(format!(
                    "u{} and u{} do not commute",
                    a + 1,
                    b + 1
                )));
            }
        }
        let mut out = RatMatrix::zeros(n, n);
        for (e, c) in &self.terms {
            let term = mats[0]
                .pow(e[0] as usize)
                .mul(&mats[1].pow(e[1] as usize))
                .mul(&mats[2].pow(e[2] as usize));
            out = out.combine(&term, c);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("u{}", i + 1)
                    } else {
                        format!("u{}^{p}", i + 1)
                    }
                })
                .collect();
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if vars.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        self + &(-other)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, other: Poly) -> Poly {
                (&self).$m(&other)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// `Σ_{i<n} x_aⁱ x_b^{e(i)}` for an exponent rule e.
fn telescoping_sum(n: u32, a: usize, b: usize, exponent: impl Fn(u32) -> u32) -> Poly {
    let (xa, xb) = (Poly::shifted_square(a), Poly::shifted_square(b));
    (0..n).fold(Poly::zero(), |acc, i| acc + xa.pow(i) * xb.pow(exponent(i)))
}

/// `x₁ⁿ − x₂ⁿ`
pub fn power_difference(n: u32, a: usize, b: usize) -> Poly {
    Poly::shifted_square(a).pow(n) - Poly::shifted_square(b).pow(n)
}

/// `(u_a − u_b)(u_a + u_b)`
fn square_difference(a: usize, b: usize) -> Poly {
    (Poly::var(a) - Poly::var(b)) * (Poly::var(a) + Poly::var(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TelescopingReport {
    pub n: u32,
    /// Inner exponent `n − i`.
    pub holds_as_printed: bool,
    /// Inner exponent `n − 1 − i`.
    pub holds_corrected: bool,
    /// Left side minus the `n − i` right side.
    pub as_printed_defect: Poly,
}

/// Expands `x₁ⁿ − x₂ⁿ` against `(u₁−u₂)(u₁+u₂) Σ x₁ⁱ x₂^{e}` for both
/// candidate exponents.
pub fn verify_telescoping(n: u32) -> Result<TelescopingReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let lhs = power_difference(n, 1, 2);
    let factor = square_difference(1, 2);
    let printed = &factor * &telescoping_sum(n, 1, 2, |i| n - i);
    let corrected = &factor * &telescoping_sum(n, 1, 2, |i| n - 1 - i);
    let as_printed_defect = &lhs - &printed;
    Ok(TelescopingReport {
        n,
        holds_as_printed: as_printed_defect.is_zero(),
        holds_corrected: lhs == corrected,
        as_printed_defect,
    })
}

/// The double sum `(u₁+u₂)(u₁+u₃) Σ_{i,j<n} x₁^{i+j} x₂^{n−1−i} x₃^{n−1−j}`
/// that multiplies `(u₁−u₂)(u₁−u₃)` in the three-variable identity.
pub fn triple_kernel(n: u32) -> Poly {
    let sum = telescoping_sum(n, 1, 2, |i| n - 1 - i) * telescoping_sum(n, 1, 3, |j| n - 1 - j);
    (Poly::var(1) + Poly::var(2)) * (Poly::var(1) + Poly::var(3)) * sum
}

/// Whether `(x₁ⁿ − x₂ⁿ)(x₁ⁿ − x₃ⁿ) = (u₁−u₂)(u₁−u₃) · triple_kernel(n)`.
pub fn verify_triple_identity(n: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let lhs = power_difference(n, 1, 2) * power_difference(n, 1, 3);
    let rhs = (Poly::var(1) - Poly::var(2)) * (Poly::var(1) - Poly::var(3)) * triple_kernel(n);
    Ok(lhs == rhs)
}
