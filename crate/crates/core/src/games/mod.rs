//! Semivalue payoffs of cooperative games.
//!
//! For each player the builders produce tensors indexed by coalition
//! membership whose contraction is the payoff sum. Shoes uses a pair of
//! frozen-mode tensors, airport and one-seller a weight tensor times a
//! TT-Tucker value tensor, and majority and bankruptcy a single difference
//! tensor over the other players.

mod payoff;
mod random;
mod seller;
mod spec;
mod tensors;

pub use payoff::{payoff, payoff_detail, payoffs, PayoffDetail, PayoffVector};
pub use random::random_game;
pub use seller::{one_seller_iterative, one_seller_iterative_for, SellerRun};
pub use spec::{GameFamily, GameKind, GameSpec, WeightFn};
pub use tensors::{build_game_tensors, GameTensors};
