//! Dense matrices over GF(2) and GF(2)[X].

mod bitmatrix;
mod bitvec;
mod polymatrix;

pub use bitmatrix::BitMatrix;
pub use bitvec::F2Vec;
pub use polymatrix::PolyMatrix;

#[cfg(test)]
pub(crate) use bitmatrix::tests::{charpoly_oracle, matrix_strategy};
