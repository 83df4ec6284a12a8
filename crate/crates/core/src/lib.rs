//! Exact computations with elementary operators `T -> sum A_i T B_i` on
//! rational `n x n` matrices.
//!
//! Everything is over `Q` with arbitrary precision. Lengths come from the rank
//! of the realignment `sum vec(A_i) vec(B_i)^T`, inverses are checked on both
//! sides, and annihilators are checked by composing with the target.
//!
//! ```
//! use elementary_ops::exactnum::Matrix;
//! use elementary_ops::invert::inverse_elemop;
//! use elementary_ops::ElemOp;
//!
//! let a = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
//! let b = Matrix::from_ints(&[&[2, 0], &[1, 2]]);
//! let ups = ElemOp::upsilon(&a, &b).unwrap();
//! assert_eq!(ups.length(), 2);
//! let inv = inverse_elemop(&ups).unwrap().inverse.unwrap();
//! assert_eq!(inv.length(), 2);
//! ```

pub mod annihil;
pub mod cli;
pub mod error;
pub mod elemop;
pub mod exactnum;
pub mod invert;
pub mod json;
pub mod pencil;
pub mod random;
pub mod selftest;
pub mod shiftspace;

pub use elemop::ElemOp;
pub use error::{Error, Result};
