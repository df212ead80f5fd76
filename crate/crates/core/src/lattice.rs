//! The −nE8 lattice: membership, norms, extremality and congruent vectors.
//!
//! E8 is the set of vectors in ℝ⁸ whose coordinates are all integers or all
//! half-odd-integers with even coordinate sum. Coordinates are stored
//! doubled, so a block is valid iff its doubled entries share a parity and
//! sum to a multiple of 4. The form is negative definite: `v² = −Σ vᵢ²`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{ratio, Rational};

pub const BLOCK: usize = 8;

/// Environment variable capping enumeration workers.
pub const THREADS_ENV: &str = "FLOER_WORKBENCH_THREADS";

/// Lattice vector in doubled coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    doubled: Vec<i64>,
}

fn block_ok(b: &[i64]) -> bool {
    let parity = b[0].rem_euclid(2);
    b.iter().all(|x| x.rem_euclid(2) == parity) && b.iter().sum::<i64>().rem_euclid(4) == 0
}

fn check_len(len: usize) -> Result<usize> {
    if len == 0 || !len.is_multiple_of(BLOCK) {
        return Err(Error::NonMember(format!(
            "{len} coordinates is not a positive multiple of 8"
        )));
    }
    Ok(len / BLOCK)
}

/// Membership for coordinates given as rationals, `n` blocks.
pub fn is_member(coords: &[Rational], n: usize) -> Result<bool> {
    if coords.len() != BLOCK * n || n == 0 {
        return Err(Error::DimensionMismatch {
            context: "is_member",
            expected: BLOCK * n,
            found: coords.len(),
        });
    }
    let mut doubled = Vec::with_capacity(coords.len());
    for c in coords {
        let d = c * Rational::from_integer(2.into());
        if !d.is_integer() {
            return Ok(false);
        }
        match i64::try_from(d.to_integer()) {
            Ok(x) => doubled.push(x),
            Err(_) => return Ok(false),
        }
    }
    Ok(doubled.chunks(BLOCK).all(block_ok))
}

impl LatticeVector {
    /// From doubled coordinates; rejects non-members.
    pub fn from_doubled(doubled: Vec<i64>) -> Result<Self> {
        check_len(doubled.len())?;
        if !doubled.chunks(BLOCK).all(block_ok) {
            return Err(Error::NonMember(format!(
                "{:?} (doubled) fails the E8 block rule",
                doubled
            )));
        }
        Ok(LatticeVector { doubled })
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self> {
        Self::from_doubled(coords.iter().map(|x| 2 * x).collect())
    }

    pub fn from_rationals(coords: &[Rational]) -> Result<Self> {
        let n = check_len(coords.len())?;
        if !is_member(coords, n)? {
            return Err(Error::NonMember(
                "coordinates fail the E8 block rule".into(),
            ));
        }
        Ok(LatticeVector {
            doubled: coords
                .iter()
                .map(|c| {
                    i64::try_from((c * Rational::from_integer(2.into())).to_integer())
                        .expect("checked")
                })
                .collect(),
        })
    }

    pub fn zero(blocks: usize) -> Self {
        LatticeVector {
            doubled: vec![0; BLOCK * blocks],
        }
    }

    /// `e₁ + e₂ + e₃ + e₄` in one block.
    pub fn w0() -> Self {
        Self::from_integers(&[1, 1, 1, 1, 0, 0, 0, 0]).expect("member")
    }

    /// `n` copies of `w0()` side by side.
    pub fn w0_power(n: usize) -> Self {
        Self::repeat(&Self::w0(), n)
    }

    pub fn repeat(block: &LatticeVector, n: usize) -> Self {
        LatticeVector {
            doubled: block
                .doubled
                .iter()
                .copied()
                .cycle()
                .take(block.doubled.len() * n)
                .collect(),
        }
    }

    pub fn concat(parts: &[LatticeVector]) -> Self {
        LatticeVector {
            doubled: parts
                .iter()
                .flat_map(|p| p.doubled.iter().copied())
                .collect(),
        }
    }

    pub fn blocks(&self) -> usize {
        self.doubled.len() / BLOCK
    }

    pub fn block(&self, b: usize) -> LatticeVector {
        LatticeVector {
            doubled: self.doubled[b * BLOCK..(b + 1) * BLOCK].to_vec(),
        }
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.doubled.iter().map(|&d| ratio(d, 2)).collect()
    }

    /// `Σ vᵢ²` in quarter units (`Σ (2vᵢ)²`).
    fn quad4(&self) -> i64 {
        self.doubled.iter().map(|x| x * x).sum()
    }

    /// `|v²|`, always an even integer for members.
    pub fn abs_norm(&self) -> i64 {
        self.quad4() / 4
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector {
            doubled: self
                .doubled
                .iter()
                .zip(&other.doubled)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> LatticeVector {
        LatticeVector {
            doubled: self.doubled.iter().map(|a| a * k).collect(),
        }
    }

    /// Whether `(self − other)/2` is a lattice vector.
    pub fn congruent(&self, other: &LatticeVector) -> bool {
        if self.doubled.len() != other.doubled.len() {
            return false;
        }
        let diff: Vec<i64> = self
            .doubled
            .iter()
            .zip(&other.doubled)
            .map(|(a, b)| a - b)
            .collect();
        if diff.iter().any(|d| d.rem_euclid(2) != 0) {
            return false;
        }
        let half: Vec<i64> = diff.iter().map(|d| d / 2).collect();
        half.chunks(BLOCK).all(block_ok)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `v² = −Σ vᵢ²`
pub fn norm(v: &LatticeVector) -> Rational {
    ratio(-v.quad4(), 4)
}

/// A class mod 2·lattice, by representative.
#[derive(Clone, Debug)]
pub struct W2Class {
    pub representative: LatticeVector,
}

impl W2Class {
    pub fn new(representative: LatticeVector) -> Self {
        W2Class { representative }
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.representative.congruent(v)
    }
}

impl PartialEq for W2Class {
    fn eq(&self, other: &Self) -> bool {
        self.representative.congruent(&other.representative)
    }
}

impl Eq for W2Class {}

/// Search state for one block: doubled entries `w_i + 2 d_i` with every
/// `d_i ≡ parity (mod 2)` and `Σ d_i ≡ 0 (mod 4)`.
struct BlockSearch<'a> {
    w: &'a [i64],
    parity: i64,
}

/// Smallest `(w + 2d)²` over `d ≡ parity (mod 2)`.
fn min_square(w: i64, parity: i64) -> i64 {
    // w + 2d ranges over a residue class mod 4
    let r = (w + 2 * parity).rem_euclid(4);
    let m = r.min(4 - r);
    m * m
}

/// Every choice of doubled coordinates `v = w + 2d` with `d ≡ class(w)` such
/// that `Σ v² = target` (all in quarter units), lexicographically ordered
/// within each block, over all blocks in order.
fn enumerate_blocks(w: &[i64], target: i64, exact: bool, threads: usize) -> Vec<Vec<i64>> {
    let blocks = w.len() / BLOCK;
    // Lower bound for the remaining blocks, used to prune.
    let block_min: Vec<i64> = (0..blocks)
        .map(|b| {
            let wb = &w[b * BLOCK..(b + 1) * BLOCK];
            (0..2)
                .map(|p| wb.iter().map(|&x| min_square(x, p)).sum::<i64>())
                .min()
                .unwrap_or(0)
        })
        .collect();
    let mut tail_min = vec![0; blocks + 1];
    for b in (0..blocks).rev() {
        tail_min[b] = tail_min[b + 1] + block_min[b];
    }

    // All block vectors for block 0 up to the budget, then extend.
    let mut partial: Vec<(Vec<i64>, i64)> = vec![(Vec::new(), 0)];
    for b in 0..blocks {
        let wb = &w[b * BLOCK..(b + 1) * BLOCK];
        let step = |(prefix, used): &(Vec<i64>, i64)| -> Vec<(Vec<i64>, i64)> {
            let budget = target - used - tail_min[b + 1];
            let last = b + 1 == blocks;
            block_members(wb, budget)
                .into_iter()
                .filter(|(_, q)| !last || !exact || *q == budget)
                .map(|(v, q)| {
                    let mut p = prefix.clone();
                    p.extend(v);
                    (p, used + q)
                })
                .collect()
        };
        partial = if threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool");
            pool.install(|| partial.par_iter().flat_map_iter(step).collect())
        } else {
            partial.iter().flat_map(step).collect()
        };
    }
    let mut out: Vec<Vec<i64>> = partial.into_iter().map(|(v, _)| v).collect();
    out.sort();
    out
}

/// Block vectors `wb + 2d` in the class of `wb` with `Σ v² ≤ budget`,
/// paired with their squared length (quarter units).
fn block_members(wb: &[i64], budget: i64) -> Vec<(Vec<i64>, i64)> {
    let mut out = Vec::new();
    if budget < 0 {
        return out;
    }
    for parity in 0..2 {
        let search = BlockSearch { w: wb, parity };
        let mut v = Vec::with_capacity(BLOCK);
        search.descend(0, budget, 0, &mut v, &mut out);
    }
    out.sort();
    out
}

impl BlockSearch<'_> {
    fn descend(
        &self,
        i: usize,
        budget: i64,
        dsum: i64,
        v: &mut Vec<i64>,
        out: &mut Vec<(Vec<i64>, i64)>,
    ) {
        if i == BLOCK {
            if dsum.rem_euclid(4) == 0 {
                let q = v.iter().map(|x| x * x).sum();
                out.push((v.clone(), q));
            }
            return;
        }
        let rest: i64 = self.w[i + 1..]
            .iter()
            .map(|&x| min_square(x, self.parity))
            .sum();
        let room = budget - rest;
        if room < 0 {
            return;
        }
        let bound = isqrt(room);
        let w = self.w[i];
        // v = w + 2d, |v| ≤ bound, d ≡ parity (mod 2)
        let lo = (-bound - w).div_euclid(2) - 1;
        let hi = (bound - w).div_euclid(2) + 1;
        for d in lo..=hi {
            if d.rem_euclid(2) != self.parity {
                continue;
            }
            let x = w + 2 * d;
            let sq = x * x;
            if sq > room {
                continue;
            }
            v.push(x);
            self.descend(i + 1, budget - sq, dsum + d, v, out);
            v.pop();
        }
    }
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Worker count from the environment, default 1.
pub fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n: &usize| n >= 1)
        .unwrap_or(1)
}

/// All v with `v² = w²` and `v ≡ w (mod 2)`, lexicographically ordered.
pub fn congruent_vectors(w: &LatticeVector) -> Vec<LatticeVector> {
    congruent_vectors_with_threads(w, threads_from_env())
}

pub fn congruent_vectors_with_threads(w: &LatticeVector, threads: usize) -> Vec<LatticeVector> {
    enumerate_blocks(&w.doubled, w.quad4(), true, threads)
        .into_iter()
        .map(|doubled| LatticeVector { doubled })
        .collect()
}

/// Class members with `|v²| ≤ bound`, ordered.
pub fn class_members_upto(w: &LatticeVector, abs_norm_bound: i64) -> Vec<LatticeVector> {
    enumerate_blocks(&w.doubled, 4 * abs_norm_bound, false, 1)
        .into_iter()
        .map(|doubled| LatticeVector { doubled })
        .collect()
}

/// Whether `|w²|` is minimal in the class of w mod 2·lattice.
pub fn is_extremal(w: &LatticeVector) -> bool {
    let n = w.abs_norm();
    n == 0 || class_members_upto(w, n - 2).is_empty()
}

/// Sign attached to each congruent vector in the η count.
pub trait SignRule: Sync {
    fn sign(&self, v: &LatticeVector) -> i64;
    fn name(&self) -> &'static str;
}

/// Every vector counts +1.
#[derive(Clone, Copy, Debug, Default)]
pub struct AllPlus;

impl SignRule for AllPlus {
    fn sign(&self, _: &LatticeVector) -> i64 {
        1
    }

    fn name(&self) -> &'static str {
        "plus"
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaResult {
    pub vectors: Vec<LatticeVector>,
    pub count: i64,
    pub extremal: bool,
}

pub fn eta(w: &LatticeVector, rule: &dyn SignRule) -> EtaResult {
    eta_with_threads(w, rule, threads_from_env())
}

pub fn eta_with_threads(w: &LatticeVector, rule: &dyn SignRule, threads: usize) -> EtaResult {
    let vectors = congruent_vectors_with_threads(w, threads);
    let count = vectors.iter().map(|v| rule.sign(v)).sum();
    EtaResult {
        vectors,
        count,
        extremal: is_extremal(w),
    }
}

/// `k = −w²/2 − 1`
pub fn min_charge_k(w: &LatticeVector) -> Result<u64> {
    let n = w.abs_norm();
    if n < 2 {
        return Err(Error::Precondition(format!("norm -{n} is not at most -2")));
    }
    // members always have even norm
    Ok((n / 2 - 1) as u64)
}

/// Parses `w0`, `w0^n`, `0`, `0^n`, or 8n comma-separated coordinates
/// (integers or `p/2`).
pub fn parse_class(spec: &str, blocks: usize) -> Result<LatticeVector> {
    let spec = spec.trim();
    let repeat = |base: LatticeVector, exp: Option<&str>| -> Result<LatticeVector> {
        let n = match exp {
            None => blocks,
            Some(e) => e
                .parse()
                .map_err(|_| Error::Precondition(format!("bad exponent {e}")))?,
        };
        if n != blocks {
            return Err(Error::Precondition(format!(
                "class has {n} blocks, expected {blocks}"
            )));
        }
        Ok(LatticeVector::repeat(&base, n))
    };
    let (head, exp) = match spec.split_once('^') {
        Some((h, e)) => (h, Some(e)),
        None => (spec, None),
    };
    match head {
        "w0" => repeat(LatticeVector::w0(), exp),
        "0" if exp.is_some() || blocks == 1 => repeat(LatticeVector::zero(1), exp),
        _ => {
            let coords: Vec<Rational> = spec
                .split(',')
                .map(|t| crate::fixtures::parse_rational(t.trim()))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Precondition(format!("cannot parse class {spec}")))?;
            if coords.len() != BLOCK * blocks {
                return Err(Error::DimensionMismatch {
                    context: "class",
                    expected: BLOCK * blocks,
                    found: coords.len(),
                });
            }
            LatticeVector::from_rationals(&coords)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn membership_examples() {
        assert!(is_member(&ints(&[1, 1, 0, 0, 0, 0, 0, 0]), 1).unwrap());
        assert!(is_member(&vec![ratio(1, 2); 8], 1).unwrap());
        assert!(!is_member(&ints(&[1, 0, 0, 0, 0, 0, 0, 0]), 1).unwrap());
        assert!(is_member(&ints(&[1; 3]), 1).is_err());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&LatticeVector::zero(1)), rat(0));
        assert_eq!(norm(&LatticeVector::w0()), rat(-4));
        assert_eq!(
            norm(&LatticeVector::from_integers(&[1, 1, 0, 0, 0, 0, 0, 0]).unwrap()),
            rat(-2)
        );
    }

    #[test]
    fn extremality() {
        assert!(is_extremal(&LatticeVector::zero(1)));
        assert!(is_extremal(&LatticeVector::w0()));
        let bumped = LatticeVector::w0().add(
            &LatticeVector::from_integers(&[1, 1, 0, 0, 0, 0, 0, 0])
                .unwrap()
                .scaled(2),
        );
        assert!(!is_extremal(&bumped));
    }

    #[test]
    fn charge_index() {
        assert_eq!(min_charge_k(&LatticeVector::w0()).unwrap(), 1);
        assert_eq!(
            min_charge_k(&LatticeVector::from_integers(&[1, -1, 0, 0, 0, 0, 0, 0]).unwrap())
                .unwrap(),
            0
        );
        assert_eq!(min_charge_k(&LatticeVector::w0_power(2)).unwrap(), 3);
        assert!(min_charge_k(&LatticeVector::zero(1)).is_err());
    }

    #[test]
    fn zero_class_has_only_zero() {
        let r = eta(&LatticeVector::zero(1), &AllPlus);
        assert_eq!(r.count, 1);
        assert_eq!(r.vectors, vec![LatticeVector::zero(1)]);
    }

    #[test]
    fn enumeration_is_thread_independent() {
        let w = LatticeVector::w0_power(2);
        assert_eq!(
            congruent_vectors_with_threads(&w, 1),
            congruent_vectors_with_threads(&w, 4)
        );
    }

    #[test]
    fn class_parsing() {
        assert_eq!(parse_class("w0", 1).unwrap(), LatticeVector::w0());
        assert_eq!(parse_class("w0^2", 2).unwrap(), LatticeVector::w0_power(2));
        assert!(parse_class("w0^2", 3).is_err());
        assert_eq!(
            parse_class("1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2", 1)
                .unwrap()
                .abs_norm(),
            2
        );
        assert!(parse_class("1,0,0,0,0,0,0,0", 1).is_err());
    }
}
