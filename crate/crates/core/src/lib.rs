//! Truncation games on words, their kernel positions, and the exact
//! enumerative combinatorics around them: Bernoulli numbers and polynomials
//! of the second kind, connected permutations and related sequences.
//!
//! The crate is organised bottom up:
//!
//! - [`exactnum`]: big integers, rationals, combinatorial numbers, polynomials
//!   and truncated power series.
//! - [`gamecore`]: generic truncation games and a memoized Grundy oracle.
//! - [`sbt`]: the factorization-based kernel test for strongly Bernoulli type games.
//! - [`games`]: the five concrete games and the counts of their kernels.
//! - [`bernoulli`]: Bernoulli numbers and polynomials of the second kind and related sequences.
//! - [`perms`]: permutation encodings, connected permutations and the elevation map.

pub mod bernoulli;
pub mod error;
pub mod exactnum;
pub mod gamecore;
pub mod games;
pub mod perms;
pub mod sbt;

pub use error::{Error, Result};
pub use gamecore::{Letter, Move, TruncationGame, Word};
pub use games::{spec, FactorType, Game, GameId};
