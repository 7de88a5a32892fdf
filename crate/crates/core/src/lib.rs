//! Exact arithmetic for polytopal sphere packings.
//!
//! Balls live in inversive coordinates, Möbius maps are Lorentz matrices and
//! the whole stack is generic over [`Scalar`], so the same code runs over
//! `ℚ(√m)` ([`Quad`]) or over tolerant floats ([`Approx`]).

pub mod apollonian;
pub mod descartes;
pub mod error;
pub mod inversive;
pub mod io;
pub mod linalg;
pub mod polytopes;
pub mod scalar;
pub mod sections;

pub use error::{Error, Result};
pub use inversive::{Ball, Geometry, LorentzMap, Packing};
pub use linalg::Mat;
pub use scalar::{Approx, Quad, Rat, Scalar};
