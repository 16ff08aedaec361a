//! Numerical construction of singly periodic Scherk-Costa minimal surfaces.
//!
//! The crate is organised bottom-up: [`quadrature`] integrates, [`param_algebra`]
//! places the ends, [`periods`] evaluates residues and period balances,
//! [`solver`] closes the periods, [`surface_mesh`] builds the immersion and
//! [`verify`] checks the quantitative estimates the construction relies on.

pub mod cli;
pub mod error;
pub mod param_algebra;
pub mod periods;
pub mod quadrature;
pub mod solver;
pub mod surface_mesh;
pub mod verify;

pub use error::{Error, Result};
