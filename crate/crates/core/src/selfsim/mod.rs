//! Alphabets, vertices, group words, wreath recursions and the section /
//! action calculus, plus the built-in group zoo, contraction certificates
//! and orbit growth.
//!
//! Conventions (fixed once, tested by the bimodule identities):
//! - right action throughout: `v^(gh) = (v^g)^h`, permutations compose as
//!   `(pi rho)(x) = rho(pi(x))`;
//! - sections satisfy `(gh)@v = (g@v)(h@(v^g))` and `(g@v)@w = g@(vw)`;
//!   for inverses `(g^-1)@x = (g@(x^(pi_g^-1)))^-1`;
//! - letters are `1..q` in all textual formats and `0..q-1` internally;
//!   vertices of `X^n` are indexed lexicographically with letter 1 smallest
//!   and the first letter most significant.

mod contraction;
mod format;
mod orbit;
mod recursion;
mod word;
mod zoo;

pub use contraction::{contraction_certificate, ContractionParams, ContractionReport};
pub use format::{parse_group_file, serialize_group_file};
pub use orbit::orbit_growth;
pub use recursion::{Generator, WreathRecursion};
pub use word::{Alphabet, GeneratorSymbol, GroupWord, Vertex};
pub use zoo::{builtin_group, zoo_names};
