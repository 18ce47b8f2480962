//! Continuous-time quantum walks of two interacting particles on a ring.
//!
//! Bosons, fermions and hard-core bosons with nearest-neighbour hopping `J`
//! and nearest-neighbour interaction `V` on `L_t = 2L + 1` periodic sites:
//! exact two-particle spectra (full and per total quasi-momentum), time
//! evolution with position/momentum correlations, and the second-order
//! effective model of the bound composite.

pub mod blochsolve;
pub mod commands;
pub mod config;
pub mod dynamics;
pub mod effective;
pub mod error;
pub mod fock;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod model;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{LatticeSpec, Statistics};
