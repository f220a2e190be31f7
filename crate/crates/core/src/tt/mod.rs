//! Tensor-train data model and operations.

mod contract;
mod core;
mod hadamard;
mod reduce;
mod round;
pub mod serial;
pub mod structure;
mod tensor;

pub use self::core::{Core, DenseCore, Matrix, Orientation, SparseCore};
pub use contract::{
    contract_modes, contract_product, conv_op_bound, convolve_rank_one, count_exact, eval_entry, ContractionMode,
    OpCount, Value, WeightVectors,
};
pub use hadamard::hadamard;
pub use reduce::reduce_exact;
pub use round::{selection_prefix, tt_round, ZERO_CUTOFF};
pub use tensor::{unravel, TtTensor};
