//! Linear finite state machines over GF(2).
//!
//! Binary machines `m' = A m + B u` are studied through the connection
//! polynomial `det(I - X A)` and the series `adj(I - X A) / Q`; rational
//! machines generalize the entries of `A` to rational power series.

pub mod analysis;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod gf2;
pub mod io;
pub mod lfsm;
pub mod matrix;
pub mod rational;
pub mod search;

pub use error::{Error, Result};
pub use gf2::{BitSequence, FactorTable, Fraction, Gf2Poly, Primitivity, RationalSeries};
pub use lfsm::Lfsm;
pub use rational::Rlfsm;
pub use matrix::{BitMatrix, F2Vec, PolyMatrix};
