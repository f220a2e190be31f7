//! Exact tensor-train decompositions with sparse cores, built from chains of
//! derivative functions.
//!
//! A tensor is described by partial maps `f_k(i, state) -> Option<state>` on
//! each side of a middle position and a middle function that turns the two
//! accumulated states into a value. [`constructor`] enumerates the reachable
//! states and emits a [`TtTensor`] whose side cores are 0/1 selection
//! matrices. [`tt`] contracts, multiplies and rounds such tensors, [`search`]
//! finds nonzero entries, and [`games`] and [`problems`] hold worked builders.
//!
//! ```
//! use ctt::DerivativeSpec;
//! use ctt::tt::count_exact;
//!
//! // Binary strings of length 6 with no two adjacent ones.
//! let spec = DerivativeSpec::new(
//!     vec![2; 6],
//!     5,
//!     |_, i, prev: &u8| if i == 1 && *prev == 1 { None } else { Some(i as u8) },
//!     |i, left, _| (!(i == 1 && *left == 1)).then_some(1.0),
//! )?;
//! let t = spec.build()?;
//! assert_eq!(count_exact(&t)?, 21.into());
//! # Ok::<(), ctt::Error>(())
//! ```

pub mod constructor;
pub mod error;
pub mod exec;
pub mod games;
mod linalg;
pub mod oracles;
pub mod problems;
pub mod search;
pub mod tt;

pub use constructor::{DerivativeSpec, StateTable};
pub use error::{Error, Result};
pub use exec::Exec;
pub use search::SearchResult;
pub use tt::{Core, DenseCore, Matrix, OpCount, Orientation, SparseCore, TtTensor, Value, WeightVectors};
