//! Sharp Bohr radii and refined Bohr functionals for Schur-class functions
//! and holomorphic maps on the unit polydisk.
//!
//! The crate has three layers:
//!
//! * a small numeric layer ([`realroots`]) that isolates the real roots of a
//!   polynomial in `(0, 1)` and reports the maximal one, with square-free
//!   handling so that double roots touching zero are not missed;
//! * the radius catalog ([`radii`]) and the functional evaluators
//!   ([`series`], [`functionals`], [`polydisk`]), which assemble each radius
//!   equation exactly and evaluate the refined majorant sums on truncated
//!   series with certified tail bounds;
//! * a verification layer ([`verify`]) that sweeps seeded random samples
//!   below the sharp radius (the inequality must hold) and locates the
//!   crossover of the extremal families above it (the inequality must fail),
//!   checking the crossover against the radius equation.
//!
//! The crate is `no_std`-compatible (`alloc` required); disable the default
//! `std` feature for embedded use. All computations are deterministic for a
//! fixed seed.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod error;
pub mod functionals;
pub mod polydisk;
pub mod radii;
pub mod realroots;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
