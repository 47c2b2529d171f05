//! Arithmetic in GF(2)[X], GF(2)(X) and GF(2)[[X]] restricted to rational
//! series, plus the number theory needed for primitivity.

pub mod factor;
pub mod minpoly;
pub mod order;
pub mod poly;
pub mod sequence;
pub mod series;

pub use factor::FactorTable;
pub use minpoly::{berlekamp_massey, min_poly, LinearComplexity};
pub use order::{is_irreducible, is_primitive, primitive_count, x_order, Primitivity};
pub use poly::Gf2Poly;
pub use sequence::BitSequence;
pub use series::{Fraction, RationalSeries};
