#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x >= 0.0)` also rejects NaN

pub mod benchmark;
pub mod cli;
pub mod metrics;
pub mod model;
pub mod report;
pub mod simulator;
pub mod stats;
