//! Exact-arithmetic laboratory for level-n Zhu algebras of the rank one
//! Heisenberg and the universal Virasoro vertex operator algebras, together
//! with the functors between Zhu-algebra modules and N-gradable modules.
//!
//! Everything is computed over the rationals inside explicit weight and
//! degree windows. Any computation that would leave its window fails with
//! [`Error::TruncationExceeded`] instead of silently clipping.

pub mod error;
pub mod functor;
pub mod linalg;
pub mod rational;
pub mod voa;
pub mod zhu;

pub use error::{Error, Result};
pub use rational::Q;
