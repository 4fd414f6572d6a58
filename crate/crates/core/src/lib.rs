//! Exact combinatorics of binary codes over the Boolean semiring.
//!
//! The library works with two presentations of the same data: a code (a set
//! of subsets of `[n]`) and a binary matrix whose rows are the codewords.
//! On top of that it provides:
//!
//! - trunks, roots, neuron classification, reduction, and canonical labels
//!   for isomorphism testing ([`code`]);
//! - canonical forms of vanishing ideals, the canonicality criterion, and
//!   intersection/union completions with independent fixpoint oracles
//!   ([`ideal`]);
//! - the Galois adjoints of a matrix, residuation, and image computations
//!   ([`galois`]);
//! - morphisms between codes as tuples of trunk generators, canonical
//!   representatives, adjoints, and the factorization test ([`morphism`]);
//! - covering maps, the trunk-count and defect bigrading, free neurons, and
//!   collision witnesses ([`covering`]);
//! - exact Boolean rank and monomial rank with certificates, bounds, the
//!   covering-chain heuristic, and a rank-additivity scanner ([`rank`]);
//! - breadth-first enumeration of the covering poset with DOT and JSON
//!   export ([`poset`]);
//! - the randomized and exhaustive law suites behind the CLI `verify`
//!   command ([`verify`]).

pub mod bits;
pub mod code;
pub mod covering;
pub mod error;
pub mod galois;
pub mod ideal;
pub mod matrix;
pub mod morphism;
pub mod poset;
pub mod rank;
pub mod text;
pub mod verify;

pub use bits::{Mask, MAX_NEURONS};
pub use code::{Code, NeuronStatus, Reduction};
pub use error::{Error, Result};
pub use matrix::BitMatrix;
