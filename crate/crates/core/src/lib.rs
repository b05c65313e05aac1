//! Root data, their Langlands duals, affine Weyl groups and the K-theory of
//! the associated group C*-algebras, computed with exact arithmetic.

pub mod alcove;
pub mod bredon;
pub mod chernoracle;
pub mod clifford;
pub mod error;
pub mod finitegroup;
pub mod linalg;
pub mod rootdata;
pub mod snf;

pub use error::{Error, Result};
