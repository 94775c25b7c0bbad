//! Exact computation of the rational generating series of Hecke operators for
//! the symplectic group `Sp_n` through the spherical (Satake) map.
//!
//! The crate is organized bottom-up:
//!
//! * [`kernel`]: exact coefficient and polynomial arithmetic;
//! * [`glhecke`]: the `GL_n` side (`phi`, `l_p`, images `omega(t)`);
//! * [`spseries`]: generator images and the truncated series `Omega(E)`, `Omega(F)`;
//! * [`inversion`]: recovery of Hecke-operator coefficients by linear solving;
//! * [`verify`]: executable identity checks and golden fixtures;
//! * [`pipeline`] and [`cache`]: orchestration and the on-disk `omega` cache.

pub mod cache;
pub mod error;
pub mod fixtures;
pub mod glhecke;
pub mod inversion;
pub mod kernel;
pub mod pipeline;
pub mod spseries;
pub mod verify;

pub use error::{Error, Result};
