//! Construction and analysis of quasi-cyclic LDPC and generalized LDPC
//! codes described by polynomial matrices over GF(2)[x]/(x^N+1).

pub mod analysis;
pub mod bitmatrix;
pub mod channel;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod gf2poly;
pub mod gldpc;
pub mod polymat;
pub mod rank;

pub use bitmatrix::BitMatrix;
pub use error::{Error, Result};
pub use gf2poly::{BinaryPoly, RingModulus};
pub use polymat::{IndexSet, PolyMatrix};
