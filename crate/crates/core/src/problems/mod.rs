//! Worked builders for counting and search problems.

pub mod knapsack;
pub mod partition;
pub mod permanent;
pub mod qtt;
pub mod queens;
pub mod sat;
pub mod sawtooth;
pub mod subsets;
pub mod sum;
