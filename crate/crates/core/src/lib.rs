//! Exact computation with self-similar groups on rooted trees and their
//! tree enveloping algebras.
//!
//! A group acting on the regular rooted tree `X*` is described by a wreath
//! recursion: each generator carries a permutation of the alphabet and one
//! section word per letter. From that single piece of data this crate
//! computes, exactly (big integers and reduced rationals, no floating point
//! in any result):
//!
//! - level permutations, level-quotient orders (Schreier-Sims) and
//!   Hausdorff-dimension sequences of the group ([`permgrp`]);
//! - the finite quotients of the tree enveloping algebra over GF(p) or the
//!   rationals: span dimensions, ideal codimensions, filtration growth,
//!   nil degrees and invertibility certificates ([`algrep`]);
//! - recursive relator families under the substitution `a -> aca, b -> d,
//!   d -> c, c -> b` and their soundness at level truncations ([`present`]);
//! - the closed forms the computations are compared against ([`formulas`]).
//!
//! GF(2) linear algebra is bit-packed (64 entries per machine word); the
//! level-7 quotient of the Grigorchuk algebra (4782-dimensional, rows of
//! 16384 bits) is the design point.

pub mod algrep;
pub mod error;
pub mod exact;
pub mod formulas;
pub mod permgrp;
pub mod present;
pub mod report;
pub mod selfsim;

pub use error::{Error, Result};
pub use exact::{BigCount, FieldSpec, Scalar, TruncSeries};
pub use selfsim::{Alphabet, GeneratorSymbol, GroupWord, Vertex, WreathRecursion};
