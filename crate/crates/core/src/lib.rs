//! Generalised golden ratios of digit alphabets.
//!
//! For an alphabet `A = {a_0 < … < a_d}` the generalised golden ratio
//! `𝒢(A)` is the smallest base above which some number has a unique
//! nontrivial expansion over `A`. Ternary alphabets reduce to a single
//! parameter `m` and are evaluated to certified enclosures in [`golden`];
//! arbitrary alphabets get numeric brackets from [`univoque`].

pub mod golden;
pub mod numerics;
pub mod univoque;
pub mod verify;
pub mod words;
