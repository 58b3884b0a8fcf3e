//! Harmonic analysis on finite Gelfand pairs: double cosets, the Hecke
//! algebra, spherical functions and the spherical transform, Sobolev spaces
//! `H^s_γ`, and a harness that checks the classical inequalities numerically.

pub mod cosets;
pub mod error;
pub mod group;
pub mod harness;
pub mod hecke;
mod linalg;
pub mod pair;
pub mod sobolev;
pub mod spherical;

pub use error::{Error, Result};
