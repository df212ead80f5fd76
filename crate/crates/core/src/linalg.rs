//! Exact rational scalars and sparse linear algebra.
//!
//! Everything downstream (homology, connected sums, invariants) reduces to
//! rank, kernel and solve computations over the rationals. Elimination is
//! exact; pivots are chosen with a Markowitz-style rule on the active
//! submatrix to limit fill-in and coefficient growth.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Dense column vector over the rationals.
pub type Vector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vector(len: usize) -> Vector {
    vec![Rational::zero(); len]
}

pub fn unit_vector(len: usize, at: usize) -> Vector {
    let mut v = zero_vector(len);
    v[at] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(v: &[Rational], c: &Rational) -> Vector {
    v.iter().map(|x| x * c).collect()
}

/// Renders a vector as `(a, b, c)` with exact rationals.
pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Sparse rational matrix. Column `j` holds the image of the `j`-th basis
/// vector, so matrices act on column vectors from the left.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix({}x{}", self.rows, self.cols)?;
        for ((i, j), v) in &self.entries {
            write!(f, " [{i},{j}]={v}")?;
        }
        write!(f, ")")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// `column · row`, the rank-one map `x ↦ (row · x) column`.
    pub fn outer(column: &[Rational], row: &[Rational]) -> Self {
        let mut m = Self::zeros(column.len(), row.len());
        for (i, c) in column.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    m.set(i, j, c * r);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Sets an entry; storing zero removes it.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of {}x{}",
            self.rows,
            self.cols
        );
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let next = self.get(i, j) + v;
        self.set(i, j, next);
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn column(&self, j: usize) -> Vector {
        let mut v = zero_vector(self.rows);
        for (&(i, jj), x) in &self.entries {
            if jj == j {
                v[i] = x.clone();
            }
        }
        v
    }

    pub fn row(&self, i: usize) -> Vector {
        let mut v = zero_vector(self.cols);
        for (&(_, j), x) in self.entries.range((i, 0)..(i + 1, 0)) {
            v[j] = x.clone();
        }
        v
    }

    pub fn to_dense(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut other_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.rows];
        for (&(k, j), v) in &other.entries {
            other_rows[k].push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &other_rows[k] {
                *acc.entry((i, j)).or_insert_with(Rational::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        RatMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: acc,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = zero_vector(self.rows);
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    /// Row vector times matrix, i.e. the pullback `f ↦ f ∘ self`.
    pub fn pullback(&self, f: &[Rational]) -> Vector {
        assert_eq!(self.rows, f.len(), "functional length mismatch");
        let mut out = zero_vector(self.cols);
        for (&(i, j), a) in &self.entries {
            if !f[i].is_zero() {
                out[j] += &f[i] * a;
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.combine(other, &-Rational::one())
    }

    /// `self + c·other`
    pub fn combine(&self, other: &RatMatrix, c: &Rational) -> RatMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix sum shape mismatch"
        );
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            out.add_at(i, j, &(v * c));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> RatMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Self::identity(self.rows);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    /// Kronecker product; basis index of `(i, k)` is `i * other.rows + k`.
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (&(i, j), a) in &self.entries {
            for (&(k, l), b) in &other.entries {
                out.entries
                    .insert((i * other.rows + k, j * other.cols + l), a * b);
            }
        }
        out
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> RatMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (p, &i) in row_idx.iter().enumerate() {
            row_pos[i] = p;
        }
        let mut col_pos = vec![usize::MAX; self.cols];
        for (p, &j) in col_idx.iter().enumerate() {
            col_pos[j] = p;
        }
        let mut out = Self::zeros(row_idx.len(), col_idx.len());
        for (&(i, j), v) in &self.entries {
            if row_pos[i] != usize::MAX && col_pos[j] != usize::MAX {
                out.entries.insert((row_pos[i], col_pos[j]), v.clone());
            }
        }
        out
    }

    fn sparse_rows(&self) -> Vec<BTreeMap<usize, Rational>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            rows[i].insert(j, v.clone());
        }
        rows
    }
}

/// Result of Gauss–Jordan elimination: every pivot row has a leading 1 in its
/// pivot column and zeros in every other pivot column.
struct Reduced {
    /// `(pivot column, reduced row)` pairs, in pivot selection order.
    pivots: Vec<(usize, BTreeMap<usize, Rational>)>,
}

/// Gauss–Jordan elimination restricted to pivot columns `< pivot_limit`.
///
/// Pivot choice: among nonzero active entries, minimise the Markowitz count
/// `(r - 1)(c - 1)`, preferring smaller numerator/denominator size and then the
/// lowest `(column, row)` so that the result is deterministic.
fn gauss_jordan(mut rows: Vec<BTreeMap<usize, Rational>>, pivot_limit: usize) -> Reduced {
    rows.retain(|r| !r.is_empty());
    let mut active: Vec<usize> = (0..rows.len()).collect();
    let mut done: Vec<usize> = Vec::new();
    let mut pivot_of_row: Vec<usize> = vec![usize::MAX; rows.len()];

    loop {
        let mut col_count: BTreeMap<usize, usize> = BTreeMap::new();
        for &r in &active {
            for &c in rows[r].keys().take_while(|&&c| c < pivot_limit) {
                *col_count.entry(c).or_default() += 1;
            }
        }
        let mut best: Option<(usize, u64, usize, usize)> = None;
        for &r in &active {
            let row_len = rows[r].range(..pivot_limit).count();
            for (&c, v) in rows[r].range(..pivot_limit) {
                let cost = (row_len - 1) * (col_count[&c] - 1);
                let size = v.numer().bits() + v.denom().bits();
                let key = (cost, size, c, r);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, _, pc, pr)) = best else { break };

        let inv = rows[pr][&pc].recip();
        for v in rows[pr].values_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[pr].clone();
        for r in active.iter().chain(done.iter()).copied() {
            if r == pr {
                continue;
            }
            let Some(factor) = rows[r].get(&pc).cloned() else {
                continue;
            };
            for (&c, pv) in &pivot_row {
                let entry = rows[r].entry(c).or_insert_with(Rational::zero);
                *entry -= &factor * pv;
                if entry.is_zero() {
                    rows[r].remove(&c);
                }
            }
        }
        active.retain(|&r| r != pr);
        active.retain(|&r| rows[r].range(..pivot_limit).next().is_some());
        pivot_of_row[pr] = pc;
        done.push(pr);
    }

    Reduced {
        pivots: done
            .into_iter()
            .map(|r| (pivot_of_row[r], std::mem::take(&mut rows[r])))
            .collect(),
    }
}

/// Rank over ℚ.
pub fn rank(m: &RatMatrix) -> usize {
    gauss_jordan(m.sparse_rows(), m.cols).pivots.len()
}

/// Basis of the null space, in reduced column echelon form.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vector> {
    let reduced = gauss_jordan(m.sparse_rows(), m.cols);
    let mut is_pivot = vec![false; m.cols];
    for (pc, _) in &reduced.pivots {
        is_pivot[*pc] = true;
    }
    let raw: Vec<Vector> = (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = unit_vector(m.cols, f);
            for (pc, row) in &reduced.pivots {
                if let Some(x) = row.get(&f) {
                    v[*pc] = -x.clone();
                }
            }
            v
        })
        .collect();
    canonical_basis(m.cols, &raw)
}

/// Reduced row echelon basis (standard left-to-right pivots) of the span of
/// `vectors`. Unique for the subspace, whatever pivoting produced the input.
pub fn canonical_basis(len: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut rows: Vec<Vector> = vectors.to_vec();
    let mut out_rows = 0;
    for col in 0..len {
        let Some(p) = (out_rows..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(out_rows, p);
        let inv = rows[out_rows][col].recip();
        for x in rows[out_rows].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[out_rows].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == out_rows || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        out_rows += 1;
        if out_rows == rows.len() {
            break;
        }
    }
    rows.truncate(out_rows);
    rows
}

/// Dimension of the span of `vectors`.
pub fn span_dim(vectors: &[Vector]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let len = first.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != len) {
        return Err(Error::DimensionMismatch {
            context: "span_dim",
            expected: len,
            found: bad.len(),
        });
    }
    Ok(rank(&RatMatrix::from_dense(vectors)))
}

/// Some solution of `m x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Vector> {
    assert_eq!(m.rows, b.len(), "right-hand side length mismatch");
    let mut rows = m.sparse_rows();
    for (i, x) in b.iter().enumerate() {
        if !x.is_zero() {
            rows[i].insert(m.cols, x.clone());
        }
    }
    let reduced = gauss_jordan(rows, m.cols);
    // Inconsistent rows reduce to a lone right-hand-side entry; the residual
    // check below catches them.
    let mut x = zero_vector(m.cols);
    for (pc, row) in &reduced.pivots {
        if let Some(v) = row.get(&m.cols) {
            x[*pc] = v.clone();
        }
    }
    (m.mul_vec(&x) == b).then_some(x)
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.rows;
    let mut rows = m.sparse_rows();
    for (i, row) in rows.iter_mut().enumerate() {
        row.insert(n + i, Rational::one());
    }
    let reduced = gauss_jordan(rows, n);
    if reduced.pivots.len() != n {
        return None;
    }
    let mut inv = RatMatrix::zeros(n, n);
    for (pc, row) in &reduced.pivots {
        for (&c, v) in row.range(n..) {
            inv.set(*pc, c - n, v.clone());
        }
    }
    Some(inv)
}

/// Indices of a maximal independent subset, chosen greedily in order.
pub fn independent_subset(vectors: &[Vector]) -> Vec<usize> {
    let mut kept: Vec<Vector> = Vec::new();
    let mut idx = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if is_zero_vector(v) {
            continue;
        }
        kept.push(v.clone());
        if rank(&RatMatrix::from_dense(&kept)) == kept.len() {
            idx.push(i);
        } else {
            kept.pop();
        }
    }
    idx
}
