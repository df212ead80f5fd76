//! Homology of graded complexes and descent of u, δ, δ′ to homology.

use num_traits::Zero;

use crate::complex::{
    u_descends, validate, FloerData, Generator, GradedComplex, GradedDims, Grading,
};
use crate::error::{Error, Result};
use crate::linalg::{
    canonical_basis, dot, is_zero_vector, kernel_basis, solve, zero_vector, RatMatrix, Rational,
    Vector,
};

/// Homology with cycle representatives over the chain generators.
///
/// Representatives are ordered by their leading generator index, so when
/// ∂ = 0 the basis is the generator basis in its original order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVectorSpace {
    pub dims: GradedDims,
    /// Per residue, the representatives in that residue.
    pub basis: [Vec<Vector>; 8],
    /// All representatives in global order, with their residues.
    pub ordered: Vec<(Grading, Vector)>,
    boundaries: Vec<Vector>,
    chain_len: usize,
}

impl GradedVectorSpace {
    pub fn total_dim(&self) -> usize {
        self.ordered.len()
    }

    pub fn degrees(&self) -> Vec<Grading> {
        self.ordered.iter().map(|(g, _)| *g).collect()
    }

    /// Spanning set of the boundaries.
    pub fn boundaries(&self) -> &[Vector] {
        &self.boundaries
    }

    /// Coordinates of the class of cycle `z` in the ordered basis.
    pub fn coordinates(&self, differential: &RatMatrix, z: &[Rational]) -> Result<Vector> {
        if z.len() != self.chain_len {
            return Err(Error::DimensionMismatch {
                context: "homology class",
                expected: self.chain_len,
                found: z.len(),
            });
        }
        if !is_zero_vector(&differential.mul_vec(z)) {
            return Err(Error::NotACycle(
                "vector is not closed under the differential".into(),
            ));
        }
        let mut cols: Vec<Vector> = self.ordered.iter().map(|(_, v)| v.clone()).collect();
        cols.extend(self.boundaries.iter().cloned());
        let m = RatMatrix::from_columns(self.chain_len, &cols);
        let x = solve(&m, z).expect("cycles lie in the span of representatives and boundaries");
        Ok(x[..self.total_dim()].to_vec())
    }

    /// True iff `z` is a boundary.
    pub fn is_boundary(&self, differential: &RatMatrix, z: &[Rational]) -> Result<bool> {
        Ok(is_zero_vector(&self.coordinates(differential, z)?))
    }
}

/// Homology over ℚ, one residue at a time.
pub fn homology(c: &GradedComplex) -> Result<GradedVectorSpace> {
    if let Some(v) = c.check().into_iter().next() {
        return Err(Error::InvalidData {
            invariant: v.invariant.name().into(),
            detail: v.to_string(),
        });
    }
    let n = c.len();
    let d = &c.differential;
    let mut dims = [0; 8];
    let mut basis: [Vec<Vector>; 8] = Default::default();
    let mut ordered = Vec::new();
    let mut all_boundaries = Vec::new();

    for k in 0..8 {
        let g = Grading::new(k);
        let here = c.indices_in(g);
        if here.is_empty() {
            continue;
        }
        let embed = |local: &Vector| -> Vector {
            let mut v = zero_vector(n);
            for (p, &i) in here.iter().enumerate() {
                v[i] = local[p].clone();
            }
            v
        };
        let column_block = d.submatrix(&(0..n).collect::<Vec<_>>(), &here);
        let cycles: Vec<Vector> = kernel_basis(&column_block).iter().map(embed).collect();

        let above = c.indices_in(g.shift(1));
        let image_block = d.submatrix(&here, &above);
        let image_cols: Vec<Vector> = (0..image_block.cols())
            .map(|j| image_block.column(j))
            .collect();
        let boundaries: Vec<Vector> = canonical_basis(here.len(), &image_cols)
            .iter()
            .map(embed)
            .collect();

        // Extend the boundary basis greedily by canonical cycle vectors.
        let mut span = boundaries.clone();
        let mut reps = Vec::new();
        for z in cycles {
            span.push(z.clone());
            if crate::linalg::rank(&RatMatrix::from_dense(&span)) == span.len() {
                reps.push(z);
            } else {
                span.pop();
            }
        }
        dims[k as usize] = reps.len();
        for r in &reps {
            ordered.push((g, r.clone()));
        }
        basis[k as usize] = reps;
        all_boundaries.extend(boundaries);
    }
    let lead = |v: &Vector| v.iter().position(|x| !x.is_zero()).unwrap_or(usize::MAX);
    ordered.sort_by_key(|(_, v)| lead(v));
    Ok(GradedVectorSpace {
        dims,
        basis,
        ordered,
        boundaries: all_boundaries,
        chain_len: n,
    })
}

/// Replaces the data by its homology with induced u₀, δ₀ and δ′₀.
///
/// Requires `δ′∘δ = 0`; the chain relation then says u commutes with ∂.
pub fn reduce_to_homology(d: &FloerData) -> Result<FloerData> {
    validate(d).into_result()?;
    if !u_descends(d) {
        return Err(Error::DescentObstruction);
    }
    let h = homology(&d.complex)?;
    let diff = d.differential();
    let m = h.total_dim();
    let mut u0 = RatMatrix::zeros(m, m);
    for (j, (_, r)) in h.ordered.iter().enumerate() {
        let image = h.coordinates(diff, &d.u.mul_vec(r))?;
        for (i, x) in image.into_iter().enumerate() {
            u0.set(i, j, x);
        }
    }
    let delta0: Vector = h.ordered.iter().map(|(_, r)| dot(&d.delta, r)).collect();
    let delta_prime0 = h.coordinates(diff, &d.delta_prime)?;

    let generators = h
        .ordered
        .iter()
        .enumerate()
        .map(|(idx, (g, r))| {
            let support: Vec<usize> = (0..r.len()).filter(|&i| !r[i].is_zero()).collect();
            let name = match support.as_slice() {
                [single] if r[*single] == Rational::from_integer(1.into()) => {
                    d.generators()[*single].name.clone()
                }
                _ => format!("z{idx}"),
            };
            Generator { name, grading: *g }
        })
        .collect();
    let reduced = FloerData::new(
        GradedComplex::zero(generators),
        u0,
        delta0,
        delta_prime0,
        d.kind,
    );
    debug_assert!(validate(&reduced).passed());
    Ok(reduced)
}

/// `f(x)` for a homogeneous functional and class sharing one residue.
///
/// Both are given in the coordinates of a homology basis with residues
/// `degrees`; the basis pairs with its dual as the Kronecker delta.
pub fn pair(f: &[Rational], x: &[Rational], degrees: &[Grading]) -> Result<Rational> {
    if f.len() != degrees.len() || x.len() != degrees.len() {
        return Err(Error::DimensionMismatch {
            context: "pair",
            expected: degrees.len(),
            found: if f.len() != degrees.len() {
                f.len()
            } else {
                x.len()
            },
        });
    }
    let support = |v: &[Rational]| -> Result<Option<Grading>> {
        let mut deg = None;
        for (g, c) in degrees.iter().zip(v) {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(*g),
                Some(d) if d != *g => {
                    return Err(Error::DegreeMismatch("argument is not homogeneous".into()))
                }
                _ => {}
            }
        }
        Ok(deg)
    };
    if let (Some(a), Some(b)) = (support(f)?, support(x)?) {
        if a != b {
            return Err(Error::DegreeMismatch(format!(
                "functional on degree {a} applied to class in degree {b}"
            )));
        }
    }
    Ok(dot(f, x))
}
