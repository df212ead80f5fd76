//! Built-in Floer data and the text file format.

mod format;

pub use format::{format_rational, parse, parse_rational, serialize};

use std::fmt;
use std::str::FromStr;

use crate::complex::{FloerData, Generator, GradedComplex, Kind};
use crate::error::{Error, Result};
use crate::linalg::{rat, unit_vector, zero_vector, RatMatrix, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FixtureName {
    Pplus,
    Pminus,
    NPplusModel(usize),
    TrefoilLikeSynthetic,
    NilpotentLadder(usize),
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureName::Pplus => write!(f, "Pplus"),
            FixtureName::Pminus => write!(f, "Pminus"),
            FixtureName::NPplusModel(n) => write!(f, "nPplusModel({n})"),
            FixtureName::TrefoilLikeSynthetic => write!(f, "TrefoilLikeSynthetic"),
            FixtureName::NilpotentLadder(m) => write!(f, "NilpotentLadder({m})"),
        }
    }
}

fn parse_arg(s: &str, prefix: &str) -> Option<usize> {
    let rest = s.strip_prefix(prefix)?;
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| rest.strip_prefix(':'))?;
    inner.trim().parse().ok().filter(|&n: &usize| n >= 1)
}

impl FromStr for FixtureName {
    type Err = Error;

    /// Accepts `Pplus`, `Pminus`, `TrefoilLikeSynthetic`, `nPplusModel(n)`
    /// and `NilpotentLadder(m)`; `name:n` also works for the indexed ones.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Pplus" => Ok(FixtureName::Pplus),
            "Pminus" => Ok(FixtureName::Pminus),
            "TrefoilLikeSynthetic" => Ok(FixtureName::TrefoilLikeSynthetic),
            _ => parse_arg(s, "nPplusModel")
                .map(FixtureName::NPplusModel)
                .or_else(|| parse_arg(s, "NilpotentLadder").map(FixtureName::NilpotentLadder))
                .ok_or_else(|| Error::UnknownFixture(s.to_string())),
        }
    }
}

/// A built-in datum with its distinguished vector, if any, and a
/// description of every entry chosen by convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: FixtureName,
    pub data: FloerData,
    pub distinguished: Option<Vector>,
    pub parameters: String,
}

/// `u(ρ₀)` on P⁺ when not overridden.
pub const DEFAULT_U_RHO0: i64 = 0;

/// P⁺: ρ₀ in degree 0, ρ₄ in degree 4, ∂ = 0, δ = 0, δ′ = ρ₄,
/// `u(ρ₄) = 2ρ₀`, `u(ρ₀) = c·ρ₄`.
pub fn pplus_with(u_rho0: &Rational) -> FloerData {
    let gens = vec![Generator::new("rho0", 0), Generator::new("rho4", 4)];
    let mut u = RatMatrix::zeros(2, 2);
    u.set(0, 1, rat(2));
    u.set(1, 0, u_rho0.clone());
    FloerData::new(
        GradedComplex::zero(gens),
        u,
        zero_vector(2),
        unit_vector(2, 1),
        Kind::HomologySphere,
    )
}

/// P⁻, the dual of P⁺ written in its own basis: ρ₁ = ρ₄*, ρ₅ = ρ₀*,
/// `δ(ρ₁) = 1`, δ′ = 0, `u(ρ₅) = 2ρ₁`, `u(ρ₁) = c·ρ₅`.
pub fn pminus_with(u_rho0: &Rational) -> FloerData {
    let gens = vec![Generator::new("rho1", 1), Generator::new("rho5", 5)];
    let mut u = RatMatrix::zeros(2, 2);
    u.set(0, 1, rat(2));
    u.set(1, 0, u_rho0.clone());
    FloerData::new(
        GradedComplex::zero(gens),
        u,
        unit_vector(2, 0),
        zero_vector(2),
        Kind::HomologySphere,
    )
}

/// Model for the sum of n copies of P⁺: generators `rho0_i` (degree 0) and
/// `rho4_i` (degree 4), ∂ = 0, δ = 0, δ′ = `rho4_1`, `u(rho4_i) = 2 rho0_i`,
/// `u(rho0_i) = rho4_{i+1}` for `i < n`, `u(rho0_n) = 0`.
///
/// Then `u²(rho4_i) = 2 rho4_{i+1}`, so δ′ has n independent even iterates.
pub fn nplus_model(n: usize) -> FloerData {
    assert!(n >= 1, "model needs at least one summand");
    let mut gens = Vec::with_capacity(2 * n);
    for i in 1..=n {
        gens.push(Generator::new(format!("rho0_{i}"), 0));
    }
    for i in 1..=n {
        gens.push(Generator::new(format!("rho4_{i}"), 4));
    }
    let mut u = RatMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        u.set(i, n + i, rat(2));
        if i + 1 < n {
            u.set(n + i + 1, i, rat(1));
        }
    }
    FloerData::new(
        GradedComplex::zero(gens),
        u,
        zero_vector(2 * n),
        unit_vector(2 * n, n),
        Kind::HomologySphere,
    )
}

/// Two generators x1 (degree 1), x5 (degree 5), `u(x1) = 2x5`,
/// `u(x5) = 2x1`, so `u² = 4`.
pub fn trefoil_like() -> FloerData {
    let gens = vec![Generator::new("x1", 1), Generator::new("x5", 5)];
    let u = RatMatrix::from_i64(&[&[0, 2], &[2, 0]]);
    FloerData::new(
        GradedComplex::zero(gens),
        u,
        zero_vector(2),
        zero_vector(2),
        Kind::Admissible,
    )
}

/// `e_1..e_m` in degree 1, `f_1..f_m` in degree 5, `u(e_i) = f_i`,
/// `u(f_i) = 4e_i + e_{i+1}`, δ = `e_k*`, δ′ = 0.
///
/// `u² − 4` is the shift `e_i ↦ e_{i+1}` on each half, of order m, and
/// `e_k*` has φ-span k.
pub fn nilpotent_ladder(m: usize, k: usize) -> FloerData {
    assert!(m >= 1 && (1..=m).contains(&k), "ladder needs 1 <= k <= m");
    let mut gens: Vec<Generator> = (1..=m)
        .map(|i| Generator::new(format!("e{i}"), 1))
        .collect();
    gens.extend((1..=m).map(|i| Generator::new(format!("f{i}"), 5)));
    let mut u = RatMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        u.set(m + i, i, rat(1));
        u.set(i, m + i, rat(4));
        if i + 1 < m {
            u.set(i + 1, m + i, rat(1));
        }
    }
    FloerData::new(
        GradedComplex::zero(gens),
        u,
        unit_vector(2 * m, k - 1),
        zero_vector(2 * m),
        Kind::HomologySphere,
    )
}

pub fn builtin(name: &FixtureName) -> Result<Fixture> {
    builtin_with(name, &rat(DEFAULT_U_RHO0))
}

/// As [`builtin`], with the free entry `u(ρ₀)` of P± set explicitly.
pub fn builtin_with(name: &FixtureName, u_rho0: &Rational) -> Result<Fixture> {
    let (data, distinguished, parameters) = match name {
        FixtureName::Pplus => (pplus_with(u_rho0), None, format!("u(rho0)={u_rho0}*rho4")),
        FixtureName::Pminus => (pminus_with(u_rho0), None, format!("u(rho1)={u_rho0}*rho5")),
        FixtureName::NPplusModel(n) => {
            if *n == 0 {
                return Err(Error::UnknownFixture(name.to_string()));
            }
            (
                nplus_model(*n),
                None,
                format!("n={n}; u(rho0_i)=rho4_(i+1), u(rho0_n)=0"),
            )
        }
        FixtureName::TrefoilLikeSynthetic => (
            trefoil_like(),
            Some(unit_vector(2, 0)),
            "psi=x1".to_string(),
        ),
        FixtureName::NilpotentLadder(m) => {
            if *m == 0 {
                return Err(Error::UnknownFixture(name.to_string()));
            }
            (
                nilpotent_ladder(*m, *m),
                Some(unit_vector(2 * m, 0)),
                format!("m={m}; delta=e{m}*; psi=e1"),
            )
        }
    };
    Ok(Fixture {
        name: name.clone(),
        data,
        distinguished,
        parameters,
    })
}

/// Every fixture the CLI lists, with small indices.
pub fn catalogue() -> Vec<FixtureName> {
    vec![
        FixtureName::Pplus,
        FixtureName::Pminus,
        FixtureName::NPplusModel(1),
        FixtureName::NPplusModel(2),
        FixtureName::NPplusModel(3),
        FixtureName::NPplusModel(4),
        FixtureName::TrefoilLikeSynthetic,
        FixtureName::NilpotentLadder(1),
        FixtureName::NilpotentLadder(2),
        FixtureName::NilpotentLadder(3),
        FixtureName::NilpotentLadder(4),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{dualize, validate};
    use crate::invariants::phi_filtration;

    #[test]
    fn every_builtin_validates() {
        for name in catalogue() {
            let f = builtin(&name).unwrap();
            assert!(
                validate(&f.data).passed(),
                "{name}: {:?}",
                validate(&f.data)
            );
        }
        for c in [0, 1, 2] {
            assert!(validate(&pplus_with(&rat(c))).passed());
            assert!(validate(&pminus_with(&rat(c))).passed());
        }
    }

    #[test]
    fn names_round_trip() {
        for name in catalogue() {
            assert_eq!(name.to_string().parse::<FixtureName>().unwrap(), name);
        }
        assert_eq!(
            "nPplusModel:3".parse::<FixtureName>().unwrap(),
            FixtureName::NPplusModel(3)
        );
        assert!("Pzero".parse::<FixtureName>().is_err());
        assert!("nPplusModel(0)".parse::<FixtureName>().is_err());
    }

    #[test]
    fn pminus_is_dual_of_pplus() {
        let p = pplus_with(&rat(1));
        let m = pminus_with(&rat(1));
        let d = dualize(&m, 5).unwrap();
        // dual basis: rho1 ↔ rho4, rho5 ↔ rho0
        let relabeled = d
            .renamed(&[("rho1", "rho4"), ("rho5", "rho0")])
            .permuted(&[1, 0]);
        assert_eq!(relabeled, p);
    }

    #[test]
    fn ladder_filtration() {
        let f = builtin(&FixtureName::NilpotentLadder(2)).unwrap();
        assert_eq!(
            phi_filtration(&f.data.u, f.distinguished.as_ref().unwrap()).unwrap(),
            2
        );
    }
}
