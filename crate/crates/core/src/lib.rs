//! Steering-inequality bounds with tolerance for imperfect measurement bases.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure numerical
//! code:
//!
//! - [`numerics`]: dense complex matrices, Hermitian eigenvalues, operator
//!   norms, partial traces and stable log-binomials.
//! - [`bases`]: measurement-basis sets, their overlap structure `C_xy`,
//!   prime-dimension MUBs, seeded perturbations and the entropic
//!   uncertainty check.
//! - [`steering`]: conditional states, the steering functional, the local
//!   hidden state bounds and the exact deterministic-strategy oracle.
//! - [`models`]: the k-copy singlet model and the photonic multi-photon
//!   singlet with polarization-rotated bases.
//!
//! File formats, the command-line interface and parallel scans live in the
//! `steerbound` crate.
#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

extern crate alloc;

pub mod bases;
mod error;
pub mod models;
pub mod numerics;
pub mod steering;

pub use error::{Error, Result};
pub use num_complex::Complex64;
