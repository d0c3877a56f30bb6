//! The tree enveloping algebra by level truncation.
//!
//! Elements are exact-field linear combinations of group words; evaluation
//! sends an element to the corresponding combination of level-n
//! permutation matrices (`pi^n = eps o psi^n`), a ring homomorphism at
//! every level. Dimensions, codimensions and filtration growth are all
//! read off echelonized span bases of vectorized matrices.
//!
//! Levels form a tower: the truncation map to the previous level carries
//! the level-(n+1) image onto the level-n image, so an element that
//! evaluates to zero at level n is zero at every level below. Quantities
//! that live in the infinite algebra (filtration growth, ideal quotients)
//! are certified by the stabilization contract: computed at increasing
//! levels until two consecutive levels agree, reported with the certifying
//! level.

mod element;
mod engine;
mod expr;
mod matrix;

pub use element::{letter_basis, letter_element, AlgebraElement, Letter, LetterWord};
pub use engine::{
    algebra_dimension, algebra_hausdorff_sequence, algebra_span, branch_block_identity,
    branching_ideal_char2, branching_ideal_charne2, distinct_powers, evaluate,
    evaluate_letter_word, filtration_dims, graded_nil_sample, ideal_closure, ideal_quotient_dims,
    laurent_x, nil_degree, product_identity_check, subspace_relation, subspace_span, AlgCaps,
    DistinctPowersReport, FiltrationGens, FiltrationReport, GradedNilReport, HausdorffPoint,
    IdealQuotientReport, NilReport, ProductCheck, Relation, SubspaceSpec,
};
pub use engine::nil_degree_of_matrix as matrix_nil_degree;
pub use expr::{parse_element, parse_element_with, symbol_table};
pub use matrix::{LevelMatrix, SpanBasis};

