//! Temporarily trimmed during bring-up; full module list restored as each
//! module lands.

pub mod arith;
pub mod bigfloat;
pub mod brandt;
pub mod elliptic;
mod error;
pub mod linalg;
pub mod modsym;
pub mod newform;
pub mod polyz;
pub mod ratlattice;

pub use elliptic::{EllipticCurve, LocalData, RealPeriodData};
pub use error::{Error, Result};
