//! Recursive presentations: the substitution `a -> aca, b -> d, d -> c,
//! c -> b` (and its letter-level twin `A -> ACA, B -> D, C -> B, D -> C`),
//! relator-family generation, soundness checking at level truncations, and
//! the block classification of sigma-images of branching-ideal words.
//!
//! Only soundness is checked: a passing report says every relator holds in
//! the level quotients up to the checked level. Completeness of a
//! presentation is not decidable by truncation and is out of scope.

mod check;
mod presets;
mod sigma;

pub use check::{check_relators, sigma_block_check, BlockClass, RelatorCheck, RelatorReport, SigmaBlockReport};
pub use presets::{generate_relators, preset_names, Preset, Relator, RelatorBody, RelatorSet};
pub use sigma::{sigma_apply_element, sigma_apply_letters, sigma_apply_word, Substitution};
