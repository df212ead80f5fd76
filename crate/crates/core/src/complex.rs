//! ℤ/8-graded complexes carrying a u-map and the δ/δ′ correction data.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, RatMatrix, Rational, Vector};

/// Residue mod 8, stored in `[0, 8)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grading(u8);

impl Grading {
    pub fn new(k: i64) -> Self {
        Grading(k.rem_euclid(8) as u8)
    }

    pub fn residue(self) -> u8 {
        self.0
    }

    pub fn shift(self, by: i64) -> Self {
        Grading::new(i64::from(self.0) + by)
    }

    /// `c − k mod 8`
    pub fn reflect(self, c: i64) -> Self {
        Grading::new(c - i64::from(self.0))
    }

    /// `(−1)^k`; well defined because 8 is even.
    pub fn sign(self) -> i64 {
        if self.0.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub grading: Grading,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Generator {
            name: name.into(),
            grading: Grading::new(degree),
        }
    }
}

/// Per-residue counts, indexed by residue.
pub type GradedDims = [usize; 8];

pub fn format_dims(dims: &GradedDims) -> String {
    let parts: Vec<String> = dims
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(k, d)| format!("{k}:{d}"))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

/// Generators in a fixed order plus a differential of degree −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    pub generators: Vec<Generator>,
    pub differential: RatMatrix,
}

impl GradedComplex {
    pub fn new(generators: Vec<Generator>, differential: RatMatrix) -> Self {
        GradedComplex {
            generators,
            differential,
        }
    }

    pub fn zero(generators: Vec<Generator>) -> Self {
        let n = generators.len();
        GradedComplex {
            generators,
            differential: RatMatrix::zeros(n, n),
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degree(&self, i: usize) -> Grading {
        self.generators[i].grading
    }

    pub fn indices_in(&self, g: Grading) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degree(i) == g).collect()
    }

    pub fn dims(&self) -> GradedDims {
        let mut d = [0; 8];
        for g in &self.generators {
            d[g.grading.residue() as usize] += 1;
        }
        d
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Violations of the complex invariants alone.
    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.len();
        let d = &self.differential;
        if d.rows() != n || d.cols() != n {
            out.push(Violation::shape("differential", n, d));
            return out;
        }
        check_names(&self.generators, &mut out);
        check_degree(self, d, -1, Invariant::DifferentialDegree, &mut out);
        let sq = d.mul(d);
        if !sq.is_zero() {
            out.push(Violation::from_matrix(Invariant::DifferentialSquare, &sq));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    HomologySphere,
    Admissible,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::HomologySphere => "homology_sphere",
            Kind::Admissible => "admissible",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "homology_sphere" => Some(Kind::HomologySphere),
            "admissible" => Some(Kind::Admissible),
            _ => None,
        }
    }
}

/// A graded complex with u of degree −4, δ on degree 1 and δ′ in degree 4,
/// tied together by `∂u − u∂ + ½ δ′∘δ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloerData {
    pub complex: GradedComplex,
    pub u: RatMatrix,
    /// Row vector: the functional δ in the dual generator basis.
    pub delta: Vector,
    /// Column vector: δ′(1).
    pub delta_prime: Vector,
    pub kind: Kind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    MatrixShape,
    GeneratorNames,
    DifferentialDegree,
    DifferentialSquare,
    UDegree,
    DeltaSupport,
    DeltaPrimeSupport,
    DeltaCocycle,
    DeltaPrimeCycle,
    UChain,
    AdmissibleDelta,
    AdmissibleDeltaPrime,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::MatrixShape => "matrix shape",
            Invariant::GeneratorNames => "generator names",
            Invariant::DifferentialDegree => "differential degree",
            Invariant::DifferentialSquare => "differential squares to zero",
            Invariant::UDegree => "u degree",
            Invariant::DeltaSupport => "delta support",
            Invariant::DeltaPrimeSupport => "delta_prime support",
            Invariant::DeltaCocycle => "delta cocycle",
            Invariant::DeltaPrimeCycle => "delta_prime cycle",
            Invariant::UChain => "u-chain relation",
            Invariant::AdmissibleDelta => "admissible delta",
            Invariant::AdmissibleDeltaPrime => "admissible delta_prime",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed invariant with the offending `(row, col, value)` entries;
/// vectors report `(index, 0, value)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub invariant: Invariant,
    pub entries: Vec<(usize, usize, Rational)>,
    pub detail: String,
}

impl Violation {
    fn from_matrix(invariant: Invariant, m: &RatMatrix) -> Self {
        Violation {
            invariant,
            entries: m.iter().map(|(i, j, v)| (i, j, v.clone())).collect(),
            detail: String::new(),
        }
    }

    fn shape(what: &str, n: usize, m: &RatMatrix) -> Self {
        Violation {
            invariant: Invariant::MatrixShape,
            entries: Vec::new(),
            detail: format!("{what} is {}x{}, expected {n}x{n}", m.rows(), m.cols()),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariant)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        for (i, j, v) in self.entries.iter().take(8) {
            write!(f, " [{i},{j}]={v}")?;
        }
        if self.entries.len() > 8 {
            write!(f, " (+{} more)", self.entries.len() - 8)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, inv: Invariant) -> bool {
        self.violations.iter().any(|v| v.invariant == inv)
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidData {
                invariant: v.invariant.name().to_string(),
                detail: v.to_string(),
            }),
        }
    }
}

fn check_names(gens: &[Generator], out: &mut Vec<Violation>) {
    let mut seen = std::collections::BTreeSet::new();
    for g in gens {
        if !seen.insert(g.name.as_str()) {
            out.push(Violation {
                invariant: Invariant::GeneratorNames,
                entries: Vec::new(),
                detail: format!("duplicate generator {}", g.name),
            });
        }
    }
}

fn check_degree(
    c: &GradedComplex,
    m: &RatMatrix,
    shift: i64,
    inv: Invariant,
    out: &mut Vec<Violation>,
) {
    let bad: Vec<_> = m
        .iter()
        .filter(|&(i, j, _)| c.degree(i) != c.degree(j).shift(shift))
        .map(|(i, j, v)| (i, j, v.clone()))
        .collect();
    if !bad.is_empty() {
        out.push(Violation {
            invariant: inv,
            entries: bad,
            detail: format!("entries must have degree {shift}"),
        });
    }
}

fn vector_violation(
    inv: Invariant,
    v: &[Rational],
    keep: impl Fn(usize) -> bool,
) -> Option<Violation> {
    let entries: Vec<_> = v
        .iter()
        .enumerate()
        .filter(|(i, x)| !x.is_zero() && keep(*i))
        .map(|(i, x)| (i, 0, x.clone()))
        .collect();
    (!entries.is_empty()).then(|| Violation {
        invariant: inv,
        entries,
        detail: String::new(),
    })
}

impl FloerData {
    pub fn new(
        complex: GradedComplex,
        u: RatMatrix,
        delta: Vector,
        delta_prime: Vector,
        kind: Kind,
    ) -> Self {
        FloerData {
            complex,
            u,
            delta,
            delta_prime,
            kind,
        }
    }

    /// ∂ = 0, u = 0, δ = 0, δ′ = 0 on the given generators.
    pub fn trivial(generators: Vec<Generator>, kind: Kind) -> Self {
        let n = generators.len();
        FloerData {
            complex: GradedComplex::zero(generators),
            u: RatMatrix::zeros(n, n),
            delta: vec![Rational::zero(); n],
            delta_prime: vec![Rational::zero(); n],
            kind,
        }
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.complex.generators
    }

    pub fn differential(&self) -> &RatMatrix {
        &self.complex.differential
    }

    pub fn dims(&self) -> GradedDims {
        self.complex.dims()
    }

    /// `∂u − u∂ + ½ δ′∘δ`
    pub fn chain_defect(&self) -> RatMatrix {
        let d = self.differential();
        d.mul(&self.u).sub(&self.u.mul(d)).combine(
            &RatMatrix::outer(&self.delta_prime, &self.delta),
            &crate::linalg::ratio(1, 2),
        )
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// Renames generators by `(old, new)` pairs; other names are kept.
    pub fn renamed(&self, map: &[(&str, &str)]) -> FloerData {
        let mut out = self.clone();
        for g in &mut out.complex.generators {
            if let Some((_, new)) = map.iter().find(|(old, _)| *old == g.name) {
                g.name = (*new).to_string();
            }
        }
        out
    }

    /// Reorders the basis: new generator `p` is old generator `order[p]`.
    pub fn permuted(&self, order: &[usize]) -> FloerData {
        let n = self.len();
        assert_eq!(order.len(), n, "permutation length mismatch");
        let mut new_of = vec![usize::MAX; n];
        for (p, &old) in order.iter().enumerate() {
            new_of[old] = p;
        }
        let move_matrix = |m: &RatMatrix| {
            let mut out = RatMatrix::zeros(n, n);
            for (i, j, v) in m.iter() {
                out.set(new_of[i], new_of[j], v.clone());
            }
            out
        };
        FloerData {
            complex: GradedComplex::new(
                order
                    .iter()
                    .map(|&i| self.complex.generators[i].clone())
                    .collect(),
                move_matrix(&self.complex.differential),
            ),
            u: move_matrix(&self.u),
            delta: order.iter().map(|&i| self.delta[i].clone()).collect(),
            delta_prime: order.iter().map(|&i| self.delta_prime[i].clone()).collect(),
            kind: self.kind,
        }
    }
}

/// Checks every FloerData invariant exactly and reports all violations.
pub fn validate(d: &FloerData) -> ValidationReport {
    let mut out = d.complex.check();
    let n = d.len();
    if out.iter().any(|v| v.invariant == Invariant::MatrixShape) {
        return ValidationReport { violations: out };
    }
    if d.u.rows() != n || d.u.cols() != n {
        out.push(Violation::shape("u", n, &d.u));
    }
    for (what, len) in [
        ("delta", d.delta.len()),
        ("delta_prime", d.delta_prime.len()),
    ] {
        if len != n {
            out.push(Violation {
                invariant: Invariant::MatrixShape,
                entries: Vec::new(),
                detail: format!("{what} has length {len}, expected {n}"),
            });
        }
    }
    if out.iter().any(|v| v.invariant == Invariant::MatrixShape) {
        return ValidationReport { violations: out };
    }

    let c = &d.complex;
    check_degree(c, &d.u, -4, Invariant::UDegree, &mut out);
    let one = Grading::new(1);
    let four = Grading::new(4);
    out.extend(vector_violation(Invariant::DeltaSupport, &d.delta, |i| {
        c.degree(i) != one
    }));
    out.extend(vector_violation(
        Invariant::DeltaPrimeSupport,
        &d.delta_prime,
        |i| c.degree(i) != four,
    ));
    out.extend(vector_violation(
        Invariant::DeltaCocycle,
        &c.differential.pullback(&d.delta),
        |_| true,
    ));
    out.extend(vector_violation(
        Invariant::DeltaPrimeCycle,
        &c.differential.mul_vec(&d.delta_prime),
        |_| true,
    ));
    let defect = d.chain_defect();
    if !defect.is_zero() {
        out.push(Violation::from_matrix(Invariant::UChain, &defect));
    }
    if d.kind == Kind::Admissible {
        out.extend(vector_violation(
            Invariant::AdmissibleDelta,
            &d.delta,
            |_| true,
        ));
        out.extend(vector_violation(
            Invariant::AdmissibleDeltaPrime,
            &d.delta_prime,
            |_| true,
        ));
    }
    ValidationReport { violations: out }
}

/// Default dual grading constant.
pub const DUAL_CONSTANT: i64 = 5;

/// Dual data: degrees `k ↦ c − k`, `∂* = −∂ᵀ`, `u* = uᵀ`, `δ* = δ′ᵀ`,
/// `δ′* = δᵀ`. Generator names are kept.
///
/// The sign on ∂* makes the chain relation dualize exactly:
/// `∂*u* − u*∂* + ½ δ′*δ* = (∂u − u∂ + ½ δ′δ)ᵀ`.
pub fn dualize(d: &FloerData, dual_constant: i64) -> Result<FloerData> {
    validate(d).into_result()?;
    if d.kind == Kind::HomologySphere && dual_constant.rem_euclid(8) != DUAL_CONSTANT {
        return Err(Error::Precondition(format!(
            "homology sphere data dualizes only with constant {DUAL_CONSTANT}, got {dual_constant}"
        )));
    }
    let generators = d
        .generators()
        .iter()
        .map(|g| Generator {
            name: g.name.clone(),
            grading: g.grading.reflect(dual_constant),
        })
        .collect();
    Ok(FloerData {
        complex: GradedComplex::new(
            generators,
            d.differential().transpose().scale(&-Rational::one()),
        ),
        u: d.u.transpose(),
        delta: d.delta_prime.clone(),
        delta_prime: d.delta.clone(),
        kind: d.kind,
    })
}

/// True when `u` alone is a chain map, i.e. `δ′∘δ = 0`.
pub fn u_descends(d: &FloerData) -> bool {
    is_zero_vector(&d.delta) || is_zero_vector(&d.delta_prime)
}

/// Homogeneous-degree helper: the matrix restricted to entries from degree
/// `from` into degree `from + shift`.
pub fn degree_block(c: &GradedComplex, m: &RatMatrix, from: Grading, shift: i64) -> RatMatrix {
    let cols = c.indices_in(from);
    let rows = c.indices_in(from.shift(shift));
    m.submatrix(&rows, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, unit_vector};

    fn pplus() -> FloerData {
        let gens = vec![Generator::new("rho0", 0), Generator::new("rho4", 4)];
        let mut u = RatMatrix::zeros(2, 2);
        u.set(0, 1, rat(2));
        FloerData::new(
            GradedComplex::zero(gens),
            u,
            vec![rat(0), rat(0)],
            unit_vector(2, 1),
            Kind::HomologySphere,
        )
    }

    #[test]
    fn grading_arithmetic() {
        assert_eq!(Grading::new(-1).residue(), 7);
        assert_eq!(Grading::new(1).shift(3).residue(), 4);
        assert_eq!(Grading::new(1).shift(-4).residue(), 5);
        assert_eq!(Grading::new(4).reflect(5).residue(), 1);
        assert_eq!(Grading::new(7).sign(), -1);
    }

    #[test]
    fn pplus_validates() {
        assert!(validate(&pplus()).passed());
    }

    #[test]
    fn zero_data_validates() {
        let gens = (0..8).map(|k| Generator::new(format!("g{k}"), k)).collect();
        assert!(validate(&FloerData::trivial(gens, Kind::HomologySphere)).passed());
        assert!(validate(&FloerData::trivial(Vec::new(), Kind::Admissible)).passed());
    }

    #[test]
    fn misplaced_delta_prime_fails_support() {
        let mut d = pplus();
        d.delta_prime = unit_vector(2, 0);
        let r = validate(&d);
        assert!(r.violated(Invariant::DeltaPrimeSupport));
    }

    #[test]
    fn admissible_requires_vanishing_corrections() {
        let mut d = pplus();
        d.kind = Kind::Admissible;
        assert!(validate(&d).violated(Invariant::AdmissibleDeltaPrime));
    }

    #[test]
    fn u_chain_relation_is_checked() {
        // a (deg 1) → b (deg 0); u must intertwine, so u(a') with a' in
        // degree 5 mapping to a forces a matching entry on ∂.
        let gens = vec![
            Generator::new("a", 1),
            Generator::new("b", 0),
            Generator::new("c", 5),
            Generator::new("e", 4),
        ];
        let mut d = RatMatrix::zeros(4, 4);
        d.set(1, 0, rat(1));
        d.set(3, 2, rat(1));
        let mut u = RatMatrix::zeros(4, 4);
        u.set(0, 2, rat(1));
        u.set(1, 3, rat(1));
        let zero = vec![rat(0); 4];
        let ok = FloerData::new(
            GradedComplex::new(gens, d),
            u,
            zero.clone(),
            zero,
            Kind::Admissible,
        );
        assert!(validate(&ok).passed());
        let mut bad = ok.clone();
        bad.u.set(1, 3, rat(2));
        assert!(validate(&bad).violated(Invariant::UChain));
    }

    #[test]
    fn dualize_pplus() {
        let p = pplus();
        let m = dualize(&p, 5).unwrap();
        assert_eq!(m.generators()[0].grading.residue(), 5);
        assert_eq!(m.generators()[1].grading.residue(), 1);
        assert_eq!(m.delta, unit_vector(2, 1));
        assert!(is_zero_vector(&m.delta_prime));
        assert!(validate(&m).passed());
        assert_eq!(dualize(&m, 5).unwrap(), p);
        assert!(dualize(&p, 3).is_err());
    }
}
