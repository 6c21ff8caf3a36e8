//! Element-order spectra of finite symplectic and orthogonal groups.

// matrix code indexes several arrays with one counter
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exactmath;
pub mod gf;
pub mod groups;
pub mod matgrp;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
