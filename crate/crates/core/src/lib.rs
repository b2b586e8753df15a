#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod covariance;
pub mod error;
pub mod inference;
pub mod linalg;
pub mod operator;
pub mod oracle;
pub mod panel;
pub mod simulation;
pub mod tables;

#[cfg(test)]
pub(crate) mod testutil;
