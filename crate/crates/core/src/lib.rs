//! Orlik-Solomon algebras of hyperplane arrangements and free resolutions
//! over the exterior algebra, with exact arithmetic.

pub mod error;
pub mod exterior;
pub mod field;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod local_systems;
pub mod module;
pub mod resolution;
pub mod series;
pub mod squarefree;
pub mod verify;
pub mod arrangement;
pub mod bgg;

pub use error::{Error, Result};
