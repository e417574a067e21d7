//! Geometric measure of entanglement (GME) of pure multi-qubit states by
//! variational optimization.
//!
//! The crate simulates the measurement statistics of a product-unitary
//! ansatz `U†(θ)|Ψ⟩` on a dense statevector and minimizes either the global
//! infidelity (`VDGE`) or, as a warm-up stage, a two-qubit local cost built
//! from random pair partitions (`iVDGE`). Both use complex SPSA. Exact
//! classical oracles for the GME are provided for benchmarking.
//!
//! Everything here is pure computation over caller-owned RNG streams, so the
//! crate is `no_std` (with `alloc`). The `std` feature only swaps `libm` for
//! the platform float routines.
//!
//! # Bit order
//!
//! Qubit `j` is bit `j` of the basis index; qubit 0 is the least
//! significant bit.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod cspsa;
mod error;
pub mod gme;
pub mod hamiltonians;
pub mod noise;
mod optimize;
pub mod rng;
pub mod statevector;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use rng::{derive_seed, RngStream};
