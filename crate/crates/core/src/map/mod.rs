//! Rational maps over `Q`: parsing, normalization, iteration, good reduction
//! and reduction modulo a prime.

pub mod expr;
mod rational_map;
mod reduced;

pub use rational_map::{IteratePair, ProjValue, RationalMapQ};
pub use reduced::{IteratePairFp, ReducedMap};
