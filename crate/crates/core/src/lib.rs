//! Exact-arithmetic workbench for ℤ/8-graded Floer-type chain complexes.
//!
//! The crate models a chain complex over ℚ together with a u-map of degree
//! −4 and the δ/δ′ correction data, and builds on it:
//!
//! * [`linalg`]: exact sparse rational linear algebra.
//! * [`complex`]: the graded data model, validation and duality.
//! * [`homology`]: homology, reduction to a zero-differential presentation,
//!   and the canonical pairing.
//! * [`connect_sum`]: disjoint-union and connected-sum total complexes, the
//!   extended u-action and the cycle constructions behind the connected-sum
//!   lower bound.
//! * [`invariants`]: φ in its span and filtration forms, nilpotency orders,
//!   and the h-invariant.
//! * [`lattice`]: the −nE8 lattice, extremal vectors and η counts.
//! * [`polyid`]: polynomial identities in commuting variables.
//! * [`fixtures`]: built-in data and a text file format.
//! * [`random`]: seeded generators of valid data.
//! * [`cli`]: the command-line surface.

pub mod cli;
pub mod complex;
pub mod connect_sum;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod polyid;
pub mod random;

pub use complex::{dualize, validate, FloerData, Generator, GradedComplex, Grading, Kind};
pub use error::{Error, Result};
pub use homology::{homology, reduce_to_homology, GradedVectorSpace};
pub use linalg::{RatMatrix, Rational, Vector};
