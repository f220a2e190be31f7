//! Turns chains of derivative functions into sparse tensor trains.
//!
//! A [`DerivativeSpec`] holds, for every mode except the middle one, a partial
//! map `(k, i, state) -> Option<state>`, and a middle function
//! `(i, left_state, right_state) -> Option<value>`. The left states are
//! accumulated from the first mode towards the middle, the right states from
//! the last mode towards the middle. [`enumerate_images`] collects every
//! reachable state per bond and [`build_tt`] emits one selection core per
//! side mode plus a dense middle core.

mod build;
mod cluster;
mod merge;
mod spec;
mod table;

pub use build::{build_tt, enumerate_images, BuildOptions, DEFAULT_MAX_STATES};
pub use cluster::{cluster_states, Average, ClusterOptions, RealState};
pub use merge::merge_indistinguishable;
pub use spec::{DerivativeSpec, State};
pub use table::StateTable;
