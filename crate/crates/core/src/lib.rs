//! Numerical verification of the Poisson-vs-Gaussian local limit expansion,
//! the total-variation bounds it implies for the jittering / rounding /
//! variance-stabilizing kernels, and the variance asymptotics of Szasz
//! (Poisson-weight Bernstein) c.d.f. and density estimators.
//!
//! The crate is `no_std`-compatible (`alloc` required): all transcendental
//! math is routed through `libm`, so results are identical with and without
//! the `std` feature. Everything is a pure function of its inputs; the only
//! stateful object is the RNG handed to the samplers, and Monte Carlo runs
//! derive one counter-based substream per replication from a single seed.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod fit;
pub mod kahan;
pub mod lecam;
pub mod llt;
pub mod moments;
pub mod normal;
pub mod poisson;
pub mod rng;
pub mod sums;
pub mod szasz;

mod fp;

pub use error::{Error, Result};
pub use poisson::PoissonParam;
