//! File formats, worker pools and command drivers for the `steerbound`
//! binary. Everything numeric lives in `steerbound_core`; this crate reads
//! and writes files, fans scans out over threads and keeps the output order
//! fixed.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod commands;
pub mod csv;
pub mod error;
pub mod formats;
pub mod grid;
pub mod parallel;

pub use error::CliError;
