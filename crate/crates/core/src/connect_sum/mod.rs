//! Disjoint-union and connected-sum total complexes.
//!
//! Summands, in total-basis order:
//!
//! | tag         | basis           | degree          | present when          |
//! |-------------|-----------------|-----------------|-----------------------|
//! | TensorCC    | `a_i ⊗ b_j`     | `|a| + |b|`     | always                |
//! | CTheta      | `a_i ⊗ θ′`      | `|a|`           | second factor sphere  |
//! | ThetaC      | `θ ⊗ b_j`       | `|b|`           | first factor sphere   |
//! | TensorShift | `(a_i ⊗ b_j)[3]`| `|a| + |b| + 3` | always                |
//!
//! Tensor indices follow the Kronecker convention `i * dim(b) + j`, and
//! `ε = (−1)^{|a|}` always refers to the first tensor factor.

mod cycles;

pub use cycles::{
    build_pair_cycle, build_triple_cycle, factor_operator, product_functional, tensor, tensor3,
    verify_pair_bound, verify_sum_bound, BoundFactor, PairBoundReport, SumBoundReport,
};

use std::fmt;

use num_traits::Zero;

use crate::complex::{validate, FloerData, Generator, GradedComplex, GradedDims, Kind};
use crate::error::{Error, Result};
use crate::homology::{homology, GradedVectorSpace};
use crate::linalg::{is_zero_vector, rat, sub_vectors, RatMatrix, Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SummandTag {
    TensorCC,
    CTheta,
    ThetaC,
    TensorShift,
}

impl SummandTag {
    pub fn name(self) -> &'static str {
        match self {
            SummandTag::TensorCC => "TensorCC",
            SummandTag::CTheta => "CTheta",
            SummandTag::ThetaC => "ThetaC",
            SummandTag::TensorShift => "TensorShift",
        }
    }
}

/// Signs of every component of the total differential.
///
/// ∂₁ = ∂⊗I + ε⊗∂′ is fixed. The rest:
/// Φ₁₂ = s12·(ε^eps12 ⊗ δ̂_b), Φ₁₃ = s13·δ̂⊗I, Φ₁₄ = s14·c·(u⊗I − I⊗u),
/// ∂₂ = d2·∂⊗I, Φ₂₄ = s24·(ε^eps24 ⊗ δ̂′), ∂₃ = d3·∂′, Φ₃₄ = s34·δ̂′⊗I,
/// ∂₄ = d4_left·∂⊗I + d4_right·ε⊗∂′, with `c` the Φ coefficient (2 for the
/// connected sum, 1 for the disjoint union).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignConfig {
    pub s12: i8,
    pub s13: i8,
    pub s14: i8,
    pub s24: i8,
    pub s34: i8,
    pub eps12: bool,
    pub eps24: bool,
    pub d2: i8,
    pub d3: i8,
    pub d4_left: i8,
    pub d4_right: i8,
}

const FIELD_COUNT: usize = 11;
/// Flipping the sign of the u cross term is penalized: it is the one sign
/// fixed by the reference normalisation `Φ₁₄ = 2u⊗I − I⊗2u`.
const S14_WEIGHT: u32 = 10;

impl SignConfig {
    /// The signs as displayed in the reference formulas, with ε placed in ∂₄.
    pub const LITERAL: SignConfig = SignConfig {
        s12: -1,
        s13: 1,
        s14: 1,
        s24: 1,
        s34: 1,
        eps12: false,
        eps24: false,
        d2: 1,
        d3: 1,
        d4_left: -1,
        d4_right: -1,
    };

    fn bits(self) -> [bool; FIELD_COUNT] {
        [
            self.s12 < 0,
            self.s13 < 0,
            self.s14 < 0,
            self.s24 < 0,
            self.s34 < 0,
            self.eps12,
            self.eps24,
            self.d2 < 0,
            self.d3 < 0,
            self.d4_left < 0,
            self.d4_right < 0,
        ]
    }

    fn from_bits(b: [bool; FIELD_COUNT]) -> Self {
        let s = |x: bool| if x { -1 } else { 1 };
        SignConfig {
            s12: s(b[0]),
            s13: s(b[1]),
            s14: s(b[2]),
            s24: s(b[3]),
            s34: s(b[4]),
            eps12: b[5],
            eps24: b[6],
            d2: s(b[7]),
            d3: s(b[8]),
            d4_left: s(b[9]),
            d4_right: s(b[10]),
        }
    }

    /// Weighted count of fields differing from [`SignConfig::LITERAL`].
    pub fn cost(self) -> u32 {
        let (a, b) = (self.bits(), Self::LITERAL.bits());
        (0..FIELD_COUNT)
            .filter(|&i| a[i] != b[i])
            .map(|i| if i == 2 { S14_WEIGHT } else { 1 })
            .sum()
    }

    /// Ties in cost go to configurations that change later fields.
    fn order_key(self) -> (u32, u32) {
        let (a, b) = (self.bits(), Self::LITERAL.bits());
        let mask = (0..FIELD_COUNT)
            .filter(|&i| a[i] != b[i])
            .map(|i| 1u32 << (FIELD_COUNT - 1 - i))
            .sum();
        (self.cost(), mask)
    }

    /// All 2¹¹ configurations, cheapest first.
    pub fn family() -> Vec<SignConfig> {
        let mut all: Vec<SignConfig> = (0u32..1 << FIELD_COUNT)
            .map(|m| {
                let mut b = [false; FIELD_COUNT];
                for (i, bit) in b.iter_mut().enumerate() {
                    *bit = m >> i & 1 == 1;
                }
                SignConfig::from_bits(b)
            })
            .collect();
        all.sort_by_key(|c| c.order_key());
        all
    }
}

impl fmt::Display for SignConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s12={} s13={} s14={} s24={} s34={} eps12={} eps24={} d2={} d3={} d4=({},{})",
            self.s12,
            self.s13,
            self.s14,
            self.s24,
            self.s34,
            self.eps12,
            self.eps24,
            self.d2,
            self.d3,
            self.d4_left,
            self.d4_right
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    DisjointUnion,
    ConnectedSum,
}

/// Index ranges of the summands inside the total basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub na: usize,
    pub nb: usize,
    pub c_theta: Option<usize>,
    pub theta_c: Option<usize>,
    pub shift: usize,
    pub total: usize,
}

impl Layout {
    fn new(na: usize, nb: usize, with_c_theta: bool, with_theta_c: bool) -> Self {
        let mut next = na * nb;
        let c_theta = with_c_theta.then(|| {
            let s = next;
            next += na;
            s
        });
        let theta_c = with_theta_c.then(|| {
            let s = next;
            next += nb;
            s
        });
        let shift = next;
        Layout {
            na,
            nb,
            c_theta,
            theta_c,
            shift,
            total: shift + na * nb,
        }
    }

    pub fn tensor_cc(&self, i: usize, j: usize) -> usize {
        i * self.nb + j
    }

    pub fn tensor_shift(&self, i: usize, j: usize) -> usize {
        self.shift + i * self.nb + j
    }

    pub fn range(&self, tag: SummandTag) -> std::ops::Range<usize> {
        match tag {
            SummandTag::TensorCC => 0..self.na * self.nb,
            SummandTag::CTheta => self.c_theta.map_or(0..0, |s| s..s + self.na),
            SummandTag::ThetaC => self.theta_c.map_or(0..0, |s| s..s + self.nb),
            SummandTag::TensorShift => self.shift..self.total,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectSumComplex {
    pub total: GradedComplex,
    pub tags: Vec<SummandTag>,
    pub signs: SignConfig,
    pub factors: (FloerData, FloerData),
    pub shape: Shape,
    pub layout: Layout,
}

impl ConnectSumComplex {
    pub fn homology(&self) -> Result<GradedVectorSpace> {
        homology(&self.total)
    }

    pub fn homology_dims(&self) -> Result<GradedDims> {
        Ok(self.homology()?.dims)
    }

    pub fn summands(&self) -> Vec<SummandTag> {
        let mut s: Vec<SummandTag> = self.tags.clone();
        s.dedup();
        s
    }

    /// The component of a total-space vector on one summand.
    pub fn restrict(&self, z: &[Rational], tag: SummandTag) -> Vector {
        z[self.layout.range(tag)].to_vec()
    }
}

/// Every differential component as a matrix on the total space, unsigned.
struct Components {
    layout: Layout,
    d1_left: RatMatrix,
    d1_right: RatMatrix,
    p12: [RatMatrix; 2],
    p13: RatMatrix,
    p14: RatMatrix,
    d2: RatMatrix,
    p24: [RatMatrix; 2],
    d3: RatMatrix,
    p34: RatMatrix,
    d4_left: RatMatrix,
    d4_right: RatMatrix,
}

fn components(a: &FloerData, b: &FloerData, phi_coefficient: i64) -> Components {
    let (na, nb) = (a.len(), b.len());
    let layout = Layout::new(
        na,
        nb,
        b.kind == Kind::HomologySphere,
        a.kind == Kind::HomologySphere,
    );
    let n = layout.total;
    let eps = |i: usize| rat(a.generators()[i].grading.sign());
    let (da, db) = (a.differential(), b.differential());

    let mut d1_left = RatMatrix::zeros(n, n);
    let mut d1_right = RatMatrix::zeros(n, n);
    let mut d4_left = RatMatrix::zeros(n, n);
    let mut d4_right = RatMatrix::zeros(n, n);
    for (r, c, v) in da.iter() {
        for j in 0..nb {
            d1_left.set(layout.tensor_cc(r, j), layout.tensor_cc(c, j), v.clone());
            d4_left.set(
                layout.tensor_shift(r, j),
                layout.tensor_shift(c, j),
                v.clone(),
            );
        }
    }
    for (r, c, v) in db.iter() {
        for i in 0..na {
            d1_right.set(layout.tensor_cc(i, r), layout.tensor_cc(i, c), eps(i) * v);
            d4_right.set(
                layout.tensor_shift(i, r),
                layout.tensor_shift(i, c),
                eps(i) * v,
            );
        }
    }

    let mut p14 = RatMatrix::zeros(n, n);
    let coeff = rat(phi_coefficient);
    for (r, c, v) in a.u.iter() {
        for j in 0..nb {
            p14.add_at(
                layout.tensor_shift(r, j),
                layout.tensor_cc(c, j),
                &(&coeff * v),
            );
        }
    }
    for (r, c, v) in b.u.iter() {
        for i in 0..na {
            p14.add_at(
                layout.tensor_shift(i, r),
                layout.tensor_cc(i, c),
                &-(&coeff * v),
            );
        }
    }

    let zero = || RatMatrix::zeros(n, n);
    let mut p12 = [zero(), zero()];
    let mut d2 = zero();
    let mut p24 = [zero(), zero()];
    if let Some(s2) = layout.c_theta {
        for i in 0..na {
            for (j, x) in b.delta.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                p12[0].set(s2 + i, layout.tensor_cc(i, j), x.clone());
                p12[1].set(s2 + i, layout.tensor_cc(i, j), eps(i) * x);
            }
            for (j, x) in b
                .delta_prime
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
            {
                p24[0].set(layout.tensor_shift(i, j), s2 + i, x.clone());
                p24[1].set(layout.tensor_shift(i, j), s2 + i, eps(i) * x);
            }
        }
        for (r, c, v) in da.iter() {
            d2.set(s2 + r, s2 + c, v.clone());
        }
    }
    let mut p13 = zero();
    let mut d3 = zero();
    let mut p34 = zero();
    if let Some(s3) = layout.theta_c {
        for j in 0..nb {
            for (i, x) in a.delta.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                p13.set(s3 + j, layout.tensor_cc(i, j), x.clone());
            }
            for (i, x) in a
                .delta_prime
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
            {
                p34.set(layout.tensor_shift(i, j), s3 + j, x.clone());
            }
        }
        for (r, c, v) in db.iter() {
            d3.set(s3 + r, s3 + c, v.clone());
        }
    }
    Components {
        layout,
        d1_left,
        d1_right,
        p12,
        p13,
        p14,
        d2,
        p24,
        d3,
        p34,
        d4_left,
        d4_right,
    }
}

impl Components {
    fn assemble(&self, s: SignConfig) -> RatMatrix {
        let r = |x: i8| rat(i64::from(x));
        let mut m = self.d1_left.add(&self.d1_right);
        m = m.combine(&self.p12[usize::from(s.eps12)], &r(s.s12));
        m = m.combine(&self.p13, &r(s.s13));
        m = m.combine(&self.p14, &r(s.s14));
        m = m.combine(&self.d2, &r(s.d2));
        m = m.combine(&self.p24[usize::from(s.eps24)], &r(s.s24));
        m = m.combine(&self.d3, &r(s.d3));
        m = m.combine(&self.p34, &r(s.s34));
        m = m.combine(&self.d4_left, &r(s.d4_left));
        m.combine(&self.d4_right, &r(s.d4_right))
    }
}

fn total_generators(
    a: &FloerData,
    b: &FloerData,
    layout: &Layout,
) -> (Vec<Generator>, Vec<SummandTag>) {
    let mut gens = Vec::with_capacity(layout.total);
    let mut tags = Vec::with_capacity(layout.total);
    for x in a.generators() {
        for y in b.generators() {
            gens.push(Generator {
                name: format!("{}.{}", x.name, y.name),
                grading: x.grading.shift(y.grading.residue().into()),
            });
            tags.push(SummandTag::TensorCC);
        }
    }
    if layout.c_theta.is_some() {
        for x in a.generators() {
            gens.push(Generator {
                name: format!("{}.theta'", x.name),
                grading: x.grading,
            });
            tags.push(SummandTag::CTheta);
        }
    }
    if layout.theta_c.is_some() {
        for y in b.generators() {
            gens.push(Generator {
                name: format!("theta.{}", y.name),
                grading: y.grading,
            });
            tags.push(SummandTag::ThetaC);
        }
    }
    for x in a.generators() {
        for y in b.generators() {
            gens.push(Generator {
                name: format!("{}.{}[3]", x.name, y.name),
                grading: x.grading.shift(i64::from(y.grading.residue()) + 3),
            });
            tags.push(SummandTag::TensorShift);
        }
    }
    (gens, tags)
}

fn squares_to_zero(m: &RatMatrix) -> bool {
    m.mul(m).is_zero()
}

fn build(
    a: &FloerData,
    b: &FloerData,
    shape: Shape,
    signs: Option<SignConfig>,
) -> Result<ConnectSumComplex> {
    validate(a).into_result()?;
    validate(b).into_result()?;
    let coefficient = match shape {
        Shape::DisjointUnion => 1,
        Shape::ConnectedSum => 2,
    };
    let comps = components(a, b, coefficient);
    let (signs, differential) = match signs {
        Some(s) => {
            let m = comps.assemble(s);
            if !squares_to_zero(&m) {
                return Err(Error::Precondition(format!(
                    "sign configuration {s} does not square to zero"
                )));
            }
            (s, m)
        }
        None => SignConfig::family()
            .into_iter()
            .map(|s| (s, comps.assemble(s)))
            .find(|(_, m)| squares_to_zero(m))
            .ok_or(Error::NoSignConfig)?,
    };
    let (gens, tags) = total_generators(a, b, &comps.layout);
    Ok(ConnectSumComplex {
        total: GradedComplex::new(gens, differential),
        tags,
        signs,
        factors: (a.clone(), b.clone()),
        shape,
        layout: comps.layout,
    })
}

/// `(C⊗C′) ⊕ (C⊗C′)[3]` with Φ = u⊗I − I⊗u, for two admissible factors.
pub fn disjoint_union_complex(a: &FloerData, b: &FloerData) -> Result<ConnectSumComplex> {
    if a.kind != Kind::Admissible || b.kind != Kind::Admissible {
        return Err(Error::NonAdmissible(
            "disjoint union needs two admissible factors".into(),
        ));
    }
    build(a, b, Shape::DisjointUnion, None)
}

/// The connected-sum complex, with θ summands for homology-sphere factors
/// and the cheapest sign configuration whose total differential squares to
/// zero.
pub fn connected_sum_complex(a: &FloerData, b: &FloerData) -> Result<ConnectSumComplex> {
    build(a, b, Shape::ConnectedSum, None)
}

/// The same complex with a caller-chosen sign configuration.
pub fn connected_sum_with_signs(
    a: &FloerData,
    b: &FloerData,
    signs: SignConfig,
) -> Result<ConnectSumComplex> {
    build(a, b, Shape::ConnectedSum, Some(signs))
}

/// The disjoint union with a caller-chosen sign configuration.
pub fn disjoint_union_with_signs(
    a: &FloerData,
    b: &FloerData,
    signs: SignConfig,
) -> Result<ConnectSumComplex> {
    if a.kind != Kind::Admissible || b.kind != Kind::Admissible {
        return Err(Error::NonAdmissible(
            "disjoint union needs two admissible factors".into(),
        ));
    }
    build(a, b, Shape::DisjointUnion, Some(signs))
}

/// Every configuration of the family whose total differential squares to
/// zero, in family order.
pub fn accepted_sign_configs(
    a: &FloerData,
    b: &FloerData,
    shape: Shape,
) -> Result<Vec<SignConfig>> {
    validate(a).into_result()?;
    validate(b).into_result()?;
    let coefficient = if shape == Shape::DisjointUnion { 1 } else { 2 };
    let comps = components(a, b, coefficient);
    Ok(SignConfig::family()
        .into_iter()
        .filter(|&s| squares_to_zero(&comps.assemble(s)))
        .collect())
}

/// `u(a⊗b, c⊗d) = (ua⊗b, uc⊗d)` on a disjoint-union complex.
pub fn extended_u(c: &ConnectSumComplex) -> Result<RatMatrix> {
    if c.shape != Shape::DisjointUnion {
        return Err(Error::Precondition(
            "extended u is defined on the two-summand disjoint union".into(),
        ));
    }
    Ok(first_factor_u(c, true, true))
}

/// u acting on the first (`true`) or second factor, per summand.
fn first_factor_u(c: &ConnectSumComplex, first_on_cc: bool, first_on_shift: bool) -> RatMatrix {
    let l = &c.layout;
    let (a, b) = (&c.factors.0, &c.factors.1);
    let mut m = RatMatrix::zeros(l.total, l.total);
    let place = |m: &mut RatMatrix, first: bool, at: &dyn Fn(usize, usize) -> usize| {
        if first {
            for (r, col, v) in a.u.iter() {
                for j in 0..l.nb {
                    m.set(at(r, j), at(col, j), v.clone());
                }
            }
        } else {
            for (r, col, v) in b.u.iter() {
                for i in 0..l.na {
                    m.set(at(i, r), at(i, col), v.clone());
                }
            }
        }
    };
    place(&mut m, first_on_cc, &|i, j| l.tensor_cc(i, j));
    place(&mut m, first_on_shift, &|i, j| l.tensor_shift(i, j));
    m
}

/// Checks `(ua⊗b, uc⊗d) = (a⊗ub, uc⊗d) = (a⊗ub, c⊗ud)` in homology for a
/// cycle `z` of a disjoint-union complex. False when the middle expression
/// is not even a cycle.
pub fn kernel_symmetry_check(c: &ConnectSumComplex, z: &[Rational]) -> Result<bool> {
    if c.shape != Shape::DisjointUnion {
        return Err(Error::Precondition(
            "symmetry relations are stated on the disjoint union".into(),
        ));
    }
    let d = &c.total.differential;
    if z.len() != c.layout.total {
        return Err(Error::DimensionMismatch {
            context: "kernel_symmetry_check",
            expected: c.layout.total,
            found: z.len(),
        });
    }
    if !is_zero_vector(&d.mul_vec(z)) {
        return Err(Error::NotACycle(
            "chain is not closed under the total differential".into(),
        ));
    }
    let first = first_factor_u(c, true, true).mul_vec(z);
    let mixed = first_factor_u(c, false, true).mul_vec(z);
    let second = first_factor_u(c, false, false).mul_vec(z);
    if !is_zero_vector(&d.mul_vec(&mixed)) {
        return Ok(false);
    }
    let h = c.homology()?;
    Ok(h.is_boundary(d, &sub_vectors(&first, &mixed))?
        && h.is_boundary(d, &sub_vectors(&mixed, &second))?)
}

/// The model data for a summed complex whose u, δ, δ′ are supplied rather
/// than derived; its graded dimensions must equal the homology of `c`.
pub fn reduce_with_structure(c: &ConnectSumComplex, model: &FloerData) -> Result<FloerData> {
    validate(model).into_result()?;
    if !model.differential().is_zero() {
        return Err(Error::Precondition(
            "model data must have zero differential".into(),
        ));
    }
    let dims = c.homology_dims()?;
    if dims != model.dims() {
        return Err(Error::Precondition(format!(
            "model dims {} differ from homology dims {}",
            crate::complex::format_dims(&model.dims()),
            crate::complex::format_dims(&dims)
        )));
    }
    Ok(model.clone())
}

/// Homology dims of `start # summand # … # summand` (`steps` summands),
/// replacing each intermediate result by `model(k)` for `k` summands so far.
pub fn iterated_sum_dims(
    start: &FloerData,
    summand: &FloerData,
    steps: usize,
    model: impl Fn(usize) -> FloerData,
) -> Result<Vec<GradedDims>> {
    let mut current = start.clone();
    let mut out = Vec::with_capacity(steps);
    for k in 1..=steps {
        let c = connected_sum_complex(&current, summand)?;
        out.push(c.homology_dims()?);
        current = reduce_with_structure(&c, &model(k + 1))?;
    }
    Ok(out)
}

/// `∂̃ ∘ ∂̃`, for reporting.
pub fn total_square(c: &ConnectSumComplex) -> RatMatrix {
    c.total.differential.mul(&c.total.differential)
}
