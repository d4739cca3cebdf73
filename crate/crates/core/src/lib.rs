//! Monte Carlo simulator for spectrum, infrastructure and access sharing
//! between millimeter-wave cellular operators.
//!
//! A drop places each operator's base stations and users as Poisson point
//! processes, draws a blockage state and shadowing for every link, attaches
//! users to base stations and evaluates per-user SINR and rate. Drops are
//! pooled into empirical CDFs, density sweeps and blind-versus-coordinated
//! comparisons.

// Negated comparisons below are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod allocation;
pub mod analytic;
pub mod channel;
pub mod cli;
pub mod config;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod metrics;
pub mod report;
pub mod rng;
pub mod scenario;

pub use error::{Error, Result};
